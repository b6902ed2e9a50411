"""Ternary digit sums and the carry analysis of s(a) + s((q-1)/2 - a(alpha+2)) >= m.

All index arithmetic on the length-m digit/carry sequences is cyclic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_SCAN_M = 13
MAX_LEMMA_M = 9


@dataclass(frozen=True)
class DigitContext:
    m: int

    def __post_init__(self):
        if self.m < 1 or self.m % 2 == 0:
            raise ValueError("m must be a positive odd integer")

    @property
    def q(self) -> int:
        return 3 ** self.m

    @property
    def r(self) -> int:
        return (self.m + 1) // 2

    @property
    def alpha(self) -> int:
        return 3 ** self.r

    @property
    def half(self) -> int:
        return (self.q - 1) // 2

    def admissible(self) -> range:
        return range(self.q - 1)


def ternary_digits(n: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(n % 3)
        n //= 3
    return out


def digit_sum(a: int, m: int) -> int:
    """Digit sum of the least positive residue of a mod 3^m - 1; 0 when 3^m - 1 divides a."""
    n = 3 ** m - 1
    r = a % n
    if r == 0:
        return 0
    return sum(ternary_digits(r, m))


def digit_sums_table(m: int) -> np.ndarray:
    """s(a) for a = 0 .. 3^m - 2 (vectorised)."""
    a = np.arange(3 ** m - 1, dtype=np.int64)
    s = np.zeros_like(a)
    t = a.copy()
    for _ in range(m):
        s += t % 3
        t //= 3
    return s


def second_argument(a, ctx: DigitContext):
    return (ctx.half - a * (ctx.alpha + 2)) % (ctx.q - 1)


def stickelberger_lhs(a: int, ctx: DigitContext) -> int:
    return digit_sum(a, ctx.m) + digit_sum(second_argument(a, ctx), ctx.m)


def verify_digit_bound(ctx: DigitContext) -> dict:
    if ctx.m > MAX_SCAN_M:
        raise ValueError(f"scan limited to m <= {MAX_SCAN_M}")
    s = digit_sums_table(ctx.m)
    a = np.arange(ctx.q - 1, dtype=np.int64)
    lhs = s + s[second_argument(a, ctx)]
    i = int(lhs.argmin())
    eq = np.flatnonzero(lhs == ctx.m)
    return {
        "m": ctx.m,
        "ok": bool(lhs.min() >= ctx.m),
        "min_lhs": int(lhs[i]),
        "argmin": i,
        "equality_count": int(eq.size),
        "equality_beyond_trivial": [int(x) for x in eq if x not in (0, ctx.half)][:50],
    }


@dataclass(frozen=True)
class CarryRecord:
    a: int
    m: int
    r: int
    digits: tuple[int, ...]
    b: tuple[int, ...]
    s: tuple[int, ...]
    c: tuple[int, ...]
    passes: int

    def check_invariants(self) -> None:
        m = self.m
        for i in range(m):
            assert self.digits[i] in (0, 1, 2)
            assert self.b[i] == 5 + self.digits[i] - self.digits[i - 1] - self.digits[(i - self.r) % m]
            assert 1 <= self.b[i] <= 7
            assert self.s[i] in (0, 1, 2)
            assert self.c[i] in (0, 1, 2, 3)
            assert self.s[i] == self.b[i] - 3 * self.c[i] + self.c[i - 1]

    def s_value(self) -> int:
        return sum(d * 3 ** i for i, d in enumerate(self.s))


class CarryError(RuntimeError):
    pass


def carry_record(a: int, ctx: DigitContext) -> CarryRecord:
    """Cyclic base-3 normalisation of sum b_i 3^i; carries wrap from digit m-1 to 0."""
    m, r = ctx.m, ctx.r
    if not 0 <= a <= ctx.q - 2:
        raise ValueError("a must lie in [0, q-2]")
    if a == ctx.half:
        raise ValueError("a = (q-1)/2 is excluded: the target residue is 0 mod q-1")
    d = ternary_digits(a, m)
    b = [5 + d[i] - d[i - 1] - d[(i - r) % m] for i in range(m)]
    c = [0] * m
    passes = 0
    while True:
        passes += 1
        changed = False
        for i in range(m):
            new = (b[i] + c[i - 1]) // 3
            if new != c[i]:
                c[i] = new
                changed = True
        if not changed:
            break
        if passes > m + 2:
            raise CarryError(f"carry propagation did not settle for a={a}, m={m}")
    s = [b[i] + c[i - 1] - 3 * c[i] for i in range(m)]
    rec = CarryRecord(a, m, r, tuple(d), tuple(b), tuple(s), tuple(c), passes)
    rec.check_invariants()
    if rec.s_value() % (ctx.q - 1) != second_argument(a, ctx):
        raise CarryError(f"carry record for a={a} does not reproduce the target residue")
    return rec


def records(ctx: DigitContext):
    for a in ctx.admissible():
        if a != ctx.half:
            yield carry_record(a, ctx)


def verify_carry_bound(ctx: DigitContext) -> dict:
    """sum c_i <= 2m and lhs = 5m - 2 sum c_i for every admissible a."""
    worst = 0
    bookkeeping = True
    for rec in records(ctx):
        sc = sum(rec.c)
        worst = max(worst, sc)
        if stickelberger_lhs(rec.a, ctx) != 5 * ctx.m - 2 * sc:
            bookkeeping = False
    return {"ok": worst <= 2 * ctx.m and bookkeeping, "max_carry_sum": worst, "bookkeeping": bookkeeping}


def _lemma_base_holds(rec: CarryRecord) -> bool:
    m, r, c, a = rec.m, rec.r, rec.c, rec.digits
    for i in range(m):
        if c[i] == 3:
            if not (c[i - 1] == 2 and c[(i - r) % m] <= 2 and a[i] == 2
                    and a[i - 1] == 0 and a[(i - r) % m] == 0):
                return False
    return True


def _lemma_base2_holds(rec: CarryRecord) -> bool:
    m, r, c = rec.m, rec.r, rec.c
    for i in range(m):
        if c[i] == 3 and c[(i - r) % m] == 2 and c[i - 1] == 2:
            if c[(i - r - 1) % m] > 2:
                return False
    return True


def _chain_holds(rec: CarryRecord) -> bool:
    """Run-of-2s conclusions along the r-stride ordering i, i-r, i-2r, ..."""
    m, r, c, a = rec.m, rec.r, rec.c, rec.digits

    def C(i, k):
        return c[(i - k * r) % m]

    def A(i, k):
        return a[(i - k * r) % m]

    for i in range(m):
        if c[i] != 3:
            continue
        # maximal run c_{i-r} = ... = c_{i-Lr} = 2
        L = 0
        while L + 1 < m and C(i, L + 1) == 2:
            L += 1
        # run termination: for every t <= L, c_{i-(t+1)r} <= 2 (t = 0 is c_{i-r} <= 2)
        for t in range(0, L + 1):
            if t + 1 <= m and C(i, t + 1) > 2 and (t + 1) % m != 0:
                return False
        if L == m - 1:
            return False
        # digit conclusions for every t >= 3 covered by the run
        for t in range(3, L + 1):
            if A(i, 0) != 2:
                return False
            if any(A(i, k) > 1 for k in range(1, t)):
                return False
            if A(i, t - 2) + A(i, t - 1) > 1:
                return False
            if t + 1 <= L:
                # the extended run c_{i-(t+1)r} = 2 as well
                if A(i, t) > 1 or A(i, t - 1) + A(i, t) > 1:
                    return False
        # between two 3-carries (or back to i itself) some carry is below 2
        t = 1
        while t <= m and not (C(i, t) == 3):
            t += 1
        if t <= m:
            if t == 1:
                return False
            if not any(C(i, l) < 2 for l in range(1, t)):
                return False
    return True


def verify_lemma_base(ctx: DigitContext) -> bool:
    if ctx.m > MAX_LEMMA_M:
        raise ValueError(f"lemma checks limited to m <= {MAX_LEMMA_M}")
    return all(_lemma_base_holds(rec) for rec in records(ctx))


def verify_lemma_base2(ctx: DigitContext) -> bool:
    if ctx.m > MAX_LEMMA_M:
        raise ValueError(f"lemma checks limited to m <= {MAX_LEMMA_M}")
    return all(_lemma_base2_holds(rec) for rec in records(ctx))


def verify_lemma_chain(ctx: DigitContext) -> bool:
    if ctx.m > MAX_LEMMA_M:
        raise ValueError(f"lemma checks limited to m <= {MAX_LEMMA_M}")
    return all(_chain_holds(rec) for rec in records(ctx))


def carry_statistics(ctx: DigitContext) -> dict:
    """How often each hypothesis of the lemmas actually fires (non-vacuity evidence)."""
    threes = 0
    run3 = 0
    for rec in records(ctx):
        for i in range(ctx.m):
            if rec.c[i] == 3:
                threes += 1
                L = 0
                while L + 1 < ctx.m and rec.c[(i - (L + 1) * ctx.r) % ctx.m] == 2:
                    L += 1
                run3 += L >= 3
    return {"carry3_positions": threes, "runs_of_length_ge_3": run3}


def digits_report(m: int) -> dict:
    ctx = DigitContext(m)
    out = {"m": m, "theorem61": verify_digit_bound(ctx)}
    if m <= MAX_LEMMA_M:
        out["carry_bound"] = verify_carry_bound(ctx)
        out["lemma_base"] = verify_lemma_base(ctx)
        out["lemma_base2"] = verify_lemma_base2(ctx)
        out["lemma_chain"] = verify_lemma_chain(ctx)
        out["hypothesis_counts"] = carry_statistics(ctx)
    return out
