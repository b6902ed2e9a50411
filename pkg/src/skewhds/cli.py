"""Command line front end.  Every command prints one JSON report on stdout.

Exit status: 0 verified, 1 verification failed (witness in the report),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import designs, digits, invariants, reference, spread, twinprime
from .field import FieldError, gf3, make_field
from .permpoly import eval_spread_g

SCHEMA = 1
HEAVY_ORDER = 10_000


class UsageError(Exception):
    pass


def _modulus(text):
    if text is None:
        return None
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise UsageError(f"bad modulus {text!r}; expected comma-separated coefficients, constant first")


def _field3(args):
    if args.m < 1 or args.m % 2 == 0:
        raise UsageError("--m must be a positive odd integer")
    return gf3(args.m, _modulus(getattr(args, "modulus", None)))


def _param(F, raw):
    """Element code; a negative integer -n denotes the additive inverse of code n."""
    if raw is None:
        return None
    v = int(raw)
    code = F.neg(F.coerce(-v)) if v < 0 else F.coerce(v)
    return code


def _family_set(F, family, raw):
    param = _param(F, raw)
    if family in ("dy", "rt"):
        if param is None:
            param = 1
        if param == 0:
            raise UsageError(f"--param must be a nonzero element for family {family}")
    return designs.family_set(F, family, param)


def _report(args, field, result, started):
    out = {"schema": SCHEMA, "command": args.argv, "field": field, "seed": args.seed, "result": result}
    if args.timing:
        out["timing"] = round(time.perf_counter() - started, 3)
    return out


def _threads(args):
    return args.threads or os.cpu_count() or 1


# -- field --

def cmd_field_info(args):
    F = make_field(args.p, args.m, _modulus(args.modulus))
    res = {"order": F.q, "generator": F.generator,
           "trace_zero_count": int((F.trace_table == 0).sum())}
    if F.p == 3 and F.m % 2:
        res["alpha"] = F.alpha
    if F.p != 2:
        res["nonzero_squares"] = int(F.squares().size)
    return F.spec.to_dict(), res, True


# -- ds --

def cmd_ds_build(args):
    F = _field3(args)
    S = _family_set(F, args.family, args.param)
    payload = S.to_dict()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, sort_keys=True) + "\n")
    return F.spec.to_dict(), payload, True


def _load_or_build(args):
    if getattr(args, "input", None):
        S = designs.ElementSet.from_dict(json.loads(Path(args.input).read_text()))
        return S.group, S
    if args.family is None or args.m is None:
        raise UsageError("give --family and --m, or --input")
    F = _field3(args)
    return F, _family_set(F, args.family, args.param)


def cmd_ds_verify(args):
    F, S = _load_or_build(args)
    rep = designs.is_difference_set(S)
    skew = designs.is_skew(S)
    expected = designs.skew_params(F.q)
    ok = rep.ok and skew and rep.params == expected
    res = {"family": S.family, "param": S.param, "difference_set": rep.to_dict(), "skew": skew,
           "skew_hadamard": ok, "expected": list(expected.as_tuple())}
    if not rep.ok:
        bad = int(np.flatnonzero(rep.counts[1:] != np.bincount(rep.counts[1:]).argmax())[0]) + 1
        res["witness"] = {"element": bad, "count": int(rep.counts[bad])}
    return F.spec.to_dict(), res, ok


def cmd_ds_chars(args):
    F, S = _load_or_build(args)
    rep = designs.character_report(S)
    return F.spec.to_dict(), {"family": S.family, "param": S.param, **rep}, rep["ok"]


def cmd_ds_triples(args):
    F, S = _load_or_build(args)
    prof = invariants.triple_profile(S, workers=_threads(args))
    res = {"family": S.family, "param": S.param, **prof.to_dict()}
    ok = prof.total == invariants.expected_total(F.q)
    if args.csv:
        from .plotting import write_histogram_csv
        write_histogram_csv(args.csv, prof)
    if args.plot:
        from .plotting import plot_profiles
        plot_profiles({f"{S.family}({S.param})": prof}, args.plot, title=f"m = {F.m}")
    return F.spec.to_dict(), res, ok


def cmd_ds_equiv(args):
    F = _field3(args)
    D1 = _family_set(F, args.family1, args.param1)
    D2 = _family_set(F, args.family2, args.param2)
    if args.full:
        if F.m > 3:
            raise UsageError("--full is limited to m <= 3")
        w = invariants.full_equivalence_search(D1, D2)
        mode = "full"
    else:
        w = invariants.semilinear_equivalence_search(D1, D2)
        mode = "semilinear"
    res = {"mode": mode, "witness": w.to_dict() if w else "not-found"}
    if w is None and mode == "full":
        res["inequivalent"] = True
    return F.spec.to_dict(), res, True


# -- spread --

def cmd_spread_build(args):
    F = _field3(args)
    S = spread.build_ree_tits_spread(F)
    res = {"lines": len(S), "points": spread.num_points(F.q)}
    ok = True
    if args.verify:
        if F.q > 243:
            raise UsageError("spread verification is limited to q <= 243")
        rep = spread.verify_spread(S)
        bc = spread.ball_criterion_check(eval_spread_g, F)
        res.update({k: rep[k] for k in ("disjoint", "cover", "isotropic")})
        res["ball_criterion"] = bc
        res["violations"] = rep["violations"]
        ok = rep["ok"] and bc
    return F.spec.to_dict(), res, ok


# -- digits --

def cmd_digits_verify(args):
    if args.m < 1 or args.m % 2 == 0:
        raise UsageError("--m must be a positive odd integer")
    if args.m > digits.MAX_SCAN_M:
        raise UsageError(f"--m is limited to {digits.MAX_SCAN_M}")
    rep = digits.digits_report(args.m)
    return None, rep, _digits_ok(rep)


def _digits_ok(rep):
    ok = rep["theorem61"]["ok"]
    if "carry_bound" in rep:
        ok = ok and rep["carry_bound"]["ok"] and rep["lemma_base"] and rep["lemma_base2"] and rep["lemma_chain"]
    return bool(ok)


# -- twin --

def _skew_input(args, F):
    fam = args.skew_family
    if fam == "paley":
        return designs.paley_set(F)
    if F.p != 3 or F.m % 2 == 0:
        raise UsageError(f"family {fam} needs a field GF(3^m), m odd; got order {F.q}")
    return _family_set(F, fam, args.skew_param)


def cmd_twin_build(args):
    q = args.q
    try:
        G = twinprime.twin_group(q)
    except FieldError as e:
        raise UsageError(str(e))
    if args.variant == "classical":
        S = twinprime.stanton_sprott(q)
    elif args.variant == "skew":
        side = "left" if q % 4 == 3 else "right"
        E = _skew_input(args, G.F1 if side == "left" else G.F2)
        S = twinprime.skew_variation(q, E, side)
    else:
        if q % 4 != 3:
            raise UsageError("the pds variant needs q = 3 (mod 4)")
        E = _skew_input(args, G.F1)
        Q = designs.ElementSet(G.F2, G.F2.squares())
        S = twinprime.pds_variation(q, E, Q)
    res = {"variant": args.variant, "q": q, "v": G.order, "k": S.size,
           "expected": list(twinprime.twin_params(q))}
    ok = True
    if args.verify:
        if G.order > HEAVY_ORDER and not args.heavy:
            raise UsageError(f"group order {G.order} exceeds {HEAVY_ORDER}; pass --heavy to verify")
        rep = twinprime.verify_twin(S, q)
        res["verification"] = rep
        ok = rep["ok"]
    return G.to_dict(), res, ok


# -- repro --

def _labelled_set(F, label):
    fam, sign = reference.LABEL_FAMILY[label]
    param = None if sign is None else (1 if sign > 0 else F.neg(1))
    return designs.family_set(F, fam, param)


def _repro_table(m, args, out_dir):
    F = gf3(m)
    profiles = {lab: invariants.triple_profile(_labelled_set(F, lab), workers=_threads(args))
                for lab in reference.LABELS}
    rows, ok = [], True
    for lab in reference.LABELS:
        p = profiles[lab]
        exp = reference.MIN_MAX[m][lab]
        match = (p.min, p.max) == exp and p.total == invariants.expected_total(F.q)
        row = {"set": lab, "min": p.min, "max": p.max, "expected": list(exp), "match": match}
        if m == 5 and lab in reference.MULTIPLICITIES_M5:
            want = reference.MULTIPLICITIES_M5[lab]
            got = {v: p.histogram.get(v, 0) for v in want}
            row["multiplicities"] = {str(k): v for k, v in got.items()}
            row["match"] = match = match and got == want
        row["histogram"] = p.to_dict()["histogram"]
        rows.append(row)
        ok &= match
    if out_dir:
        from .plotting import plot_min_max, plot_profiles, write_histogram_csv, write_table_csv
        out = Path(out_dir)
        write_table_csv(out / f"table_m{m}.csv", ["set", "min", "max", "expected_min", "expected_max", "match"],
                        [(r["set"], r["min"], r["max"], *r["expected"], r["match"]) for r in rows])
        for lab, p in profiles.items():
            write_histogram_csv(out / f"triples_m{m}_{_slug(lab)}.csv", p)
        plot_profiles(profiles, out / f"triples_m{m}.png", title=f"Triple intersection profiles, m = {m}")
        plot_min_max([(r["set"], r["min"], r["max"]) for r in rows], out / f"minmax_m{m}.png",
                     title=f"min/max T{{a,b}}, m = {m}")
    return {"m": m, "rows": rows}, ok


def _slug(label):
    return label.replace("(", "_").replace(")", "").replace("-", "m")


def _repro_equiv_m3(args, out_dir):
    F = gf3(3)
    sets = {lab: _labelled_set(F, lab) for lab in reference.LABELS}
    pairs, ok = [], True
    for i, a in enumerate(reference.LABELS):
        for b in reference.LABELS[i + 1:]:
            w = invariants.full_equivalence_search(sets[a], sets[b])
            good = w is not None and w.verify(sets[a], sets[b])
            pairs.append({"pair": [a, b], "witness": w.to_dict() if w else "not-found", "verified": good})
            ok &= good
    return {"m": 3, "pairs": pairs}, ok


def _repro_appendix(args, out_dir):
    reps = [digits.digits_report(m) for m in (3, 5, 7, 9)]
    ok = all(_digits_ok(r) for r in reps)
    if out_dir:
        from .plotting import plot_lhs_distribution
        for m in (5, 7, 9):
            ctx = digits.DigitContext(m)
            s = digits.digit_sums_table(m)
            a = np.arange(ctx.q - 1)
            lhs = s + s[digits.second_argument(a, ctx)]
            vals, cnt = np.unique(lhs, return_counts=True)
            plot_lhs_distribution(dict(zip(vals.tolist(), cnt.tolist())), m, Path(out_dir) / f"digit_sums_m{m}.png")
    return {"reports": reps}, ok


def _repro_characters(args, out_dir):
    rows, ok = [], True
    for m in (3, 5):
        F = gf3(m)
        for lab in reference.LABELS:
            rep = designs.character_report(_labelled_set(F, lab))
            rows.append({"m": m, "set": lab, "ok": rep["ok"], "tally": rep["tally"]})
            ok &= rep["ok"]
    F = gf3(5)
    rng = np.random.default_rng(args.seed)
    allowed = designs.corollary_values(F)
    cor = []
    for _ in range(50):
        a, b = (int(x) for x in rng.integers(1, F.q, 2))
        val = designs.corollary_exponential_sum(F, a, b)
        cor.append({"a": a, "beta": b, "value": val.to_list(), "ok": val in allowed})
        ok &= val in allowed
    return {"families": rows, "corollary_m5": cor}, ok


def _repro_spread(args, out_dir):
    F = gf3(3)
    rep = spread.verify_spread(spread.build_ree_tits_spread(F))
    bc = {q: spread.ball_criterion_check(eval_spread_g, gf3(m)) for q, m in ((27, 3), (243, 5))}
    ok = rep["ok"] and all(bc.values())
    return {"q27": {k: rep[k] for k in ("lines", "points", "disjoint", "cover", "isotropic")},
            "ball_criterion": {str(k): v for k, v in bc.items()}}, ok


def _repro_twin(args, out_dir):
    from .field import field_from_order
    rows, ok = [], True
    for q in (3, 7):
        E = designs.paley_set(field_from_order(q))
        F2 = field_from_order(q + 2)
        Q = designs.ElementSet(F2, F2.squares())
        built = {"classical": twinprime.stanton_sprott(q), "skew": twinprime.skew_variation(q, E),
                 "pds": twinprime.pds_variation(q, E, Q)}
        for name, S in built.items():
            rep = twinprime.verify_twin(S, q)
            rows.append({"q": q, "variant": name, "ok": rep["ok"], "params": [rep["v"], rep["k"], rep["lambda"]]})
            ok &= rep["ok"]
        same = built["skew"] == built["classical"]
        rows.append({"q": q, "skew_equals_classical": same})
        ok &= same
    if args.heavy:
        S = twinprime.skew_variation(241, designs.rt_set(gf3(5), 1), "right")
        rep = twinprime.verify_twin(S, 241)
        rows.append({"q": 241, "variant": "skew-right RT(1)", "ok": rep["ok"],
                     "params": [rep["v"], rep["k"], rep["lambda"]]})
        ok &= rep["ok"]
    return {"rows": rows}, ok


REPRO = {
    "table-m5": lambda a, o: _repro_table(5, a, o),
    "table-m7": lambda a, o: _repro_table(7, a, o),
    "equiv-m3": _repro_equiv_m3,
    "appendix": _repro_appendix,
    "characters": _repro_characters,
    "spread": _repro_spread,
    "twin": _repro_twin,
}


# fields GF(3^m) each target works in (twin also uses prime fields named in its rows)
REPRO_FIELDS = {"table-m5": (5,), "table-m7": (7,), "equiv-m3": (3,), "appendix": (),
                "characters": (3, 5), "spread": (3, 5), "twin": (5,)}


def cmd_repro(args):
    targets = list(REPRO) if args.target == "all" else [args.target]
    out, ok = {}, True
    for t in targets:
        res, good = REPRO[t](args, args.out_dir)
        out[t] = {"ok": good, **res}
        ok &= good
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
        (Path(args.out_dir) / f"report_{args.target}.json").write_text(json.dumps(out, sort_keys=True, indent=1) + "\n")
    ms = sorted({m for t in targets for m in REPRO_FIELDS[t]})
    field = [gf3(m).spec.to_dict() for m in ms]
    return field, out, ok


# -- parser --

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker cap (default: all cores)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="add wall time to the report")

    p = _Parser(prog="skewhds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    fld = sub.add_parser("field").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    fi = fld.add_parser("info", parents=[common])
    fi.add_argument("--p", type=int, required=True)
    fi.add_argument("--m", type=int, required=True)
    fi.add_argument("--modulus")
    fi.set_defaults(func=cmd_field_info)

    ds = sub.add_parser("ds").add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def set_args(sp, required=True):
        sp.add_argument("--family", choices=designs.FAMILIES, required=required)
        sp.add_argument("--m", type=int, required=required)
        sp.add_argument("--param", type=int)
        sp.add_argument("--modulus")

    b = ds.add_parser("build", parents=[common])
    set_args(b)
    b.add_argument("--out")
    b.set_defaults(func=cmd_ds_build)
    for name, fn in (("verify", cmd_ds_verify), ("chars", cmd_ds_chars), ("triples", cmd_ds_triples)):
        sp = ds.add_parser(name, parents=[common])
        set_args(sp, required=False)
        sp.add_argument("--input", help="set JSON written by 'ds build'")
        if name == "triples":
            sp.add_argument("--csv")
            sp.add_argument("--plot")
        sp.set_defaults(func=fn)
    e = ds.add_parser("equiv", parents=[common])
    mode = e.add_mutually_exclusive_group(required=True)
    mode.add_argument("--full", action="store_true")
    mode.add_argument("--semilinear", action="store_true")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--modulus")
    e.add_argument("--family1", choices=designs.FAMILIES, required=True)
    e.add_argument("--param1", type=int)
    e.add_argument("--family2", choices=designs.FAMILIES, required=True)
    e.add_argument("--param2", type=int)
    e.set_defaults(func=cmd_ds_equiv)

    sp = sub.add_parser("spread").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sb = sp.add_parser("build", parents=[common])
    sb.add_argument("--m", type=int, required=True)
    sb.add_argument("--modulus")
    sb.add_argument("--verify", action="store_true")
    sb.set_defaults(func=cmd_spread_build)

    dg = sub.add_parser("digits").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    dv = dg.add_parser("verify", parents=[common])
    dv.add_argument("--m", type=int, required=True)
    dv.set_defaults(func=cmd_digits_verify)

    tw = sub.add_parser("twin").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    tb = tw.add_parser("build", parents=[common])
    tb.add_argument("--q", type=int, required=True)
    tb.add_argument("--variant", choices=("classical", "skew", "pds"), default="classical")
    tb.add_argument("--skew-family", choices=designs.FAMILIES, default="paley")
    tb.add_argument("--skew-param", type=int)
    tb.add_argument("--verify", action="store_true")
    tb.add_argument("--heavy", action="store_true")
    tb.set_defaults(func=cmd_twin_build)

    rp = sub.add_parser("repro", parents=[common])
    rp.add_argument("target", choices=[*REPRO, "all"])
    rp.add_argument("--out-dir", help="write CSV tables and PNG figures here")
    rp.add_argument("--heavy", action="store_true", help="include the q=241 twin-prime verification")
    rp.set_defaults(func=cmd_repro)
    return p


def run(argv=None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser = build_parser()
    started = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        args.argv = argv
        field, result, ok = args.func(args)
    except UsageError as e:
        print(f"skewhds: error: {e}", file=sys.stderr)
        return 2
    except (FieldError, ValueError) as e:
        print(f"skewhds: error: {e}", file=sys.stderr)
        return 2
    json.dump(_report(args, field, result, started), stdout, sort_keys=True, indent=1)
    stdout.write("\n")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
