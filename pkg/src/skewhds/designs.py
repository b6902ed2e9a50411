"""Candidate sets (Paley, Ding-Yuan, Ree-Tits) and their exhaustive verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dfield

import numpy as np

from .eisenstein import EisensteinInt, skew_character_values, sqrt_minus_power_of_3
from .field import GF, FieldError, FieldSpec, make_field
from .permpoly import eval_dy, eval_f

FAMILIES = ("paley", "dy", "rt")


class ElementSet:
    """Dense membership bitmap over a finite abelian group.

    The group is any object with `order`, `add`, `sub` and `neg` acting on
    integer codes (a `GF`, or a `ProductGroup` from the twinprime module).
    """

    def __init__(self, group, members=None, bitmap=None, family=None, param=None):
        self.group = group
        if bitmap is None:
            bitmap = np.zeros(group.order, dtype=bool)
            if members is not None:
                bitmap[np.asarray(members, dtype=np.int64)] = True
        self.bitmap = np.asarray(bitmap, dtype=bool)
        if self.bitmap.shape != (group.order,):
            raise ValueError("bitmap length must equal the group order")
        self.size = int(self.bitmap.sum())
        self.family = family
        self.param = param

    def __len__(self):
        return self.size

    def __contains__(self, x):
        return bool(self.bitmap[int(x)])

    def __eq__(self, other):
        return isinstance(other, ElementSet) and self.group == other.group and np.array_equal(self.bitmap, other.bitmap)

    def __repr__(self):
        tag = f"{self.family}({self.param})" if self.family else "set"
        return f"<ElementSet {tag} |D|={self.size} in group of order {self.group.order}>"

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.bitmap)

    def packed(self) -> np.ndarray:
        return pack_bits(self.bitmap)

    def negate(self) -> "ElementSet":
        return ElementSet(self.group, self.group.neg(self.members))

    def translate(self, g: int) -> "ElementSet":
        """D + g."""
        return ElementSet(self.group, self.group.add(self.members, np.full(self.size, int(g))))

    def map(self, fn) -> "ElementSet":
        return ElementSet(self.group, fn(self.members))

    def to_dict(self) -> dict:
        spec = self.group.spec.to_dict() if hasattr(self.group, "spec") else self.group.to_dict()
        return {"field": spec, "family": self.family, "param": self.param,
                "members": [int(x) for x in self.members]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ElementSet":
        spec = FieldSpec.from_dict(d["field"])
        F = make_field(spec.p, spec.m, spec.modulus)
        return cls(F, d["members"], family=d.get("family"), param=d.get("param"))


def pack_bits(bitmap: np.ndarray) -> np.ndarray:
    """Pack a boolean array (last axis) into little-endian uint64 words."""
    bitmap = np.asarray(bitmap, dtype=bool)
    n = bitmap.shape[-1]
    pad = (-n) % 64
    if pad:
        bitmap = np.concatenate([bitmap, np.zeros(bitmap.shape[:-1] + (pad,), dtype=bool)], axis=-1)
    return np.packbits(bitmap, axis=-1, bitorder="little").view(np.uint64)


@dataclass(frozen=True)
class DesignParams:
    v: int
    k: int
    lam: int

    def consistent(self) -> bool:
        return self.k * (self.k - 1) == self.lam * (self.v - 1)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)


def skew_params(v: int) -> DesignParams:
    return DesignParams(v, (v - 1) // 2, (v - 3) // 4)


# -- constructions --

def _require_skew_field(F: GF):
    if F.p != 3 or F.m % 2 == 0:
        raise FieldError("construction needs GF(3^m) with m odd")


def paley_set(F: GF) -> ElementSet:
    if F.q % 4 != 3:
        raise FieldError(f"Paley sets need q = 3 (mod 4), got q = {F.q}")
    return ElementSet(F, F.squares(), family="paley", param=None)


def dy_set(F: GF, u: int) -> ElementSet:
    _require_skew_field(F)
    u = F.coerce(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    return ElementSet(F, eval_dy(F, u, F.nonzero()), family="dy", param=u)


def rt_set(F: GF, a: int) -> ElementSet:
    """D_a = {f_a(x^2) : x != 0}."""
    _require_skew_field(F)
    a = F.coerce(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    xs = F.nonzero()
    return ElementSet(F, eval_f(F, a, F.mul(xs, xs)), family="rt", param=a)


def family_set(F: GF, family: str, param: int | None = None) -> ElementSet:
    if family == "paley":
        return paley_set(F)
    if family == "dy":
        return dy_set(F, 1 if param is None else param)
    if family == "rt":
        return rt_set(F, 1 if param is None else param)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


# -- difference counting --

@dataclass
class DifferenceReport:
    params: DesignParams
    ok: bool
    deviation_histogram: dict[int, int]
    counts: np.ndarray = dfield(repr=False)

    def to_dict(self) -> dict:
        return {"v": self.params.v, "k": self.params.k, "lambda": self.params.lam, "ok": self.ok,
                "deviation_histogram": {str(k): v for k, v in sorted(self.deviation_histogram.items())}}


def difference_counts(S: ElementSet, chunk_elems: int = 1 << 21) -> np.ndarray:
    """counts[g] = #{(x, y) in D^2 : x != y, x - y = g}."""
    G = S.group
    D = S.members
    counts = np.zeros(G.order, dtype=np.int64)
    rows = max(1, chunk_elems // max(1, D.size))
    for lo in range(0, D.size, rows):
        xs = D[lo:lo + rows]
        diffs = G.sub(np.repeat(xs, D.size), np.tile(D, xs.size))
        counts += np.bincount(diffs, minlength=G.order)
    counts[0] -= D.size
    return counts


def is_difference_set(S: ElementSet) -> DifferenceReport:
    counts = difference_counts(S)
    nonid = counts[1:]
    vals, mult = np.unique(nonid, return_counts=True)
    hist = {int(v): int(c) for v, c in zip(vals, mult)}
    ok = len(hist) == 1
    lam = int(vals[0]) if ok else -1
    return DifferenceReport(DesignParams(S.group.order, S.size, lam), ok, hist, counts)


def is_skew(S: ElementSet) -> bool:
    """0 not in D, D and -D disjoint, |D| = (v-1)/2."""
    v = S.group.order
    if v % 2 == 0 or S.bitmap[0] or 2 * S.size != v - 1:
        return False
    return not np.any(S.bitmap & S.bitmap[S.group.neg(np.arange(v))])


def is_skew_hadamard(S: ElementSet) -> bool:
    if not is_skew(S):
        return False
    rep = is_difference_set(S)
    return rep.ok and rep.params == skew_params(S.group.order)


# -- exact character sums --

def _require_char3(F):
    if not isinstance(F, GF) or F.p != 3:
        raise FieldError("ternary character sums need a field of characteristic 3")


def additive_character_sum(S: ElementSet, beta: int) -> EisensteinInt:
    """sum over d in D of w^Tr(beta d)."""
    F = S.group
    _require_char3(F)
    if int(beta) == 0:
        raise ValueError("beta must be nonzero; the trivial character gives |D|")
    tr = F.trace(F.mul(int(beta), S.members))
    c = np.bincount(tr, minlength=3)
    return EisensteinInt.from_trace_counts(*c)


def character_values(S: ElementSet, chunk: int = 256) -> list[EisensteinInt]:
    """psi_beta(D) for beta = 1 .. q-1, in code order."""
    F = S.group
    _require_char3(F)
    D = S.members
    out = []
    for lo in range(1, F.q, chunk):
        betas = np.arange(lo, min(F.q, lo + chunk))
        tr = F.trace(F.mul(betas[:, None], D[None, :]))
        c = np.stack([(tr == t).sum(axis=1) for t in range(3)], axis=1)
        out.extend(EisensteinInt.from_trace_counts(*row) for row in c)
    return out


def character_report(S: ElementSet) -> dict:
    F = S.group
    _require_char3(F)
    if F.m % 2 == 0:
        raise FieldError("m must be odd")
    allowed = skew_character_values(F.m)
    target_norm = (F.q + 1) // 4
    vals = character_values(S)
    first_bad = None
    tally = {str(v): 0 for v in allowed}
    for beta, val in enumerate(vals, start=1):
        if val not in allowed or val.norm() != target_norm:
            first_bad = {"beta": beta, "value": val.to_list(), "norm": val.norm()}
            break
        tally[str(val)] += 1
    return {"ok": first_bad is None, "allowed": [v.to_list() for v in allowed],
            "norm": target_norm, "tally": tally, "first_failure": first_bad,
            "congruence_ok": first_bad is None and all(congruence_holds(v, F.m) for v in vals)}


def check_character_values(S: ElementSet) -> bool:
    return character_report(S)["ok"]


def congruence_holds(value: EisensteinInt, m: int) -> bool:
    """value == (3^h - 1)/2 modulo 3^h in Z[w], h = (m-1)/2."""
    mod = 3 ** ((m - 1) // 2)
    return (value - (mod - 1) // 2).divisible_by(mod)


def corollary_exponential_sum(F: GF, a: int, beta: int) -> EisensteinInt:
    """sum over x != 0 of chi(x) w^Tr(x^(alpha+2) + gamma x),
    gamma = beta^(alpha-1) a^alpha - beta^(2(alpha-1)) a^(2 alpha)."""
    _require_skew_field(F)
    if int(a) == 0 or int(beta) == 0:
        raise ValueError("a and beta must be nonzero")
    al = F.alpha
    gamma = F.sub(F.mul(F.pow(beta, al - 1), F.pow(a, al)),
                  F.mul(F.pow(beta, 2 * (al - 1)), F.pow(a, 2 * al)))
    xs = F.nonzero()
    tr = F.trace(F.add(F.pow(xs, al + 2), F.mul(gamma, xs)))
    chi = F.chi(xs)
    total = EisensteinInt(0, 0)
    for sign in (1, -1):
        c = np.bincount(tr[chi == sign], minlength=3)
        total = total + sign * EisensteinInt.from_trace_counts(*c)
    return total


def corollary_values(F: GF) -> tuple[EisensteinInt, EisensteinInt]:
    s = sqrt_minus_power_of_3(F.m)
    return s, -s
