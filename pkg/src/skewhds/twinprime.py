"""Twin prime power difference sets in (F_q, +) x (F_{q+2}, +).

Elements of the product group are encoded as i * (q + 2) + j for the pair
(x_i, y_j) of field codes.
"""

from __future__ import annotations

import cmath

import numpy as np

from .designs import ElementSet, is_difference_set, is_skew_hadamard
from .field import GF, FieldError, field_from_order, prime_power

PRIME_POWER_LIMIT = 10 ** 7


class ProductGroup:
    def __init__(self, F1: GF, F2: GF):
        if F1.q % 2 == 0 or F2.q % 2 == 0:
            raise FieldError("both factors must have odd order")
        self.F1, self.F2 = F1, F2
        self.n2 = F2.q
        self.order = F1.q * F2.q

    def __eq__(self, other):
        return isinstance(other, ProductGroup) and self.F1 == other.F1 and self.F2 == other.F2

    def __hash__(self):
        return hash((self.F1, self.F2))

    def to_dict(self) -> dict:
        return {"product": [self.F1.spec.to_dict(), self.F2.spec.to_dict()]}

    def encode(self, i, j):
        return np.asarray(i, dtype=np.int64) * self.n2 + np.asarray(j, dtype=np.int64)

    def split(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x // self.n2, x % self.n2

    def add(self, x, y):
        (i1, j1), (i2, j2) = self.split(x), self.split(y)
        return self.encode(self.F1.add(i1, i2), self.F2.add(j1, j2))

    def sub(self, x, y):
        (i1, j1), (i2, j2) = self.split(x), self.split(y)
        return self.encode(self.F1.sub(i1, i2), self.F2.sub(j1, j2))

    def neg(self, x):
        i, j = self.split(x)
        return self.encode(self.F1.neg(i), self.F2.neg(j))


def is_odd_prime_power(n: int) -> bool:
    if n > PRIME_POWER_LIMIT:
        raise ValueError(f"prime power test limited to n <= {PRIME_POWER_LIMIT}")
    pp = prime_power(n)
    return pp is not None and pp[0] != 2


def twin_group(q: int) -> ProductGroup:
    if not (is_odd_prime_power(q) and is_odd_prime_power(q + 2)):
        raise FieldError(f"q = {q} and q + 2 = {q + 2} must both be odd prime powers")
    return ProductGroup(field_from_order(q), field_from_order(q + 2))


def twin_params(q: int) -> tuple[int, int, int]:
    n = (q + 1) ** 2 // 4
    return (4 * n - 1, 2 * n - 1, n - 1)


def _assemble(G: ProductGroup, blocks) -> ElementSet:
    parts = [G.encode(*np.meshgrid(xs, ys, indexing="ij")).ravel() for xs, ys in blocks]
    return ElementSet(G, np.concatenate(parts))


def stanton_sprott(q: int) -> ElementSet:
    """{(x, y) : x, y != 0, chi(x) = chi(y)} + F_q x {0}."""
    G = twin_group(q)
    F1, F2 = G.F1, G.F2
    sq1, nsq1 = F1.squares(), np.flatnonzero(F1.chi_table == -1)
    sq2, nsq2 = F2.squares(), np.flatnonzero(F2.chi_table == -1)
    S = _assemble(G, [(sq1, sq2), (nsq1, nsq2), (F1.elements(), [0])])
    S.family = "classical"
    return S


def _check_skew_input(E: ElementSet, F: GF):
    if E.group != F:
        raise FieldError("E must live in the matching factor field")
    if not is_skew_hadamard(E):
        raise ValueError("E is not a skew Hadamard difference set")


def skew_variation(q: int, E: ElementSet, side: str = "left") -> ElementSet:
    """E x squares + (-E) x nonsquares + F_q x {0}; side="right" puts E in F_{q+2}.

    For side="right" (q = 1 mod 4) the roles swap: the squares/nonsquares
    split is taken in F_q and E, -E sit in F_{q+2}; the F_q x {0} block stays.
    """
    G = twin_group(q)
    F1, F2 = G.F1, G.F2
    if side == "left":
        if q % 4 != 3:
            raise ValueError("side='left' needs q = 3 (mod 4)")
        _check_skew_input(E, F1)
        sq, nsq = F2.squares(), np.flatnonzero(F2.chi_table == -1)
        blocks = [(E.members, sq), (E.negate().members, nsq), (F1.elements(), [0])]
    elif side == "right":
        if q % 4 != 1:
            raise ValueError("side='right' needs q = 1 (mod 4)")
        _check_skew_input(E, F2)
        sq, nsq = F1.squares(), np.flatnonzero(F1.chi_table == -1)
        blocks = [(sq, E.members), (nsq, E.negate().members), (F1.elements(), [0])]
    else:
        raise ValueError("side must be 'left' or 'right'")
    S = _assemble(G, blocks)
    S.family = f"skew-{side}"
    return S


def is_partial_difference_set(Q: ElementSet, params) -> bool:
    """Q (0 not in Q) hits members lam1 times and nonzero non-members lam2 times."""
    v, k, lam1, lam2 = params
    if Q.bitmap[0]:
        raise ValueError("0 must not lie in Q")
    if Q.group.order != v or Q.size != k:
        return False
    from .designs import difference_counts
    counts = difference_counts(Q)
    inside = counts[Q.bitmap]
    outside = counts[1:][~Q.bitmap[1:]]
    return bool(np.all(inside == lam1) and np.all(outside == lam2))


def pds_params(q: int) -> tuple[int, int, int, int]:
    return (q + 2, (q + 1) // 2, (q - 3) // 4, (q + 1) // 4)


def pds_variation(q: int, E: ElementSet, Q: ElementSet) -> ElementSet:
    """E x Q + (-E) x (F_{q+2}^* minus Q) + F_q x {0}."""
    G = twin_group(q)
    F1, F2 = G.F1, G.F2
    if q % 4 != 3:
        raise ValueError("the PDS variation needs q = 3 (mod 4)")
    _check_skew_input(E, F1)
    if Q.group != F2:
        raise FieldError("Q must live in F_{q+2}")
    if not is_partial_difference_set(Q, pds_params(q)):
        raise ValueError(f"Q is not a {pds_params(q)} partial difference set")
    rest = np.flatnonzero(~Q.bitmap)
    rest = rest[rest != 0]
    S = _assemble(G, [(E.members, Q.members), (E.negate().members, rest), (F1.elements(), [0])])
    S.family = "pds"
    return S


def verify_twin(S: ElementSet, q: int) -> dict:
    rep = is_difference_set(S)
    expected = twin_params(q)
    ok = rep.ok and rep.params.as_tuple() == expected
    return {"q": q, "expected": list(expected), "ok": ok, **rep.to_dict()}


def _field_characters(F: GF) -> np.ndarray:
    """(q, q) complex table chi_beta(x) = exp(2 pi i Tr(beta x) / p)."""
    xs = F.elements()
    tr = F.trace(F.mul(xs[:, None], xs[None, :]))
    return np.exp(2j * np.pi * tr / F.p)


def character_moduli(S: ElementSet) -> np.ndarray:
    """|phi(D)|^2 for every character of the product group (trivial one first)."""
    G = S.group
    C1, C2 = _field_characters(G.F1), _field_characters(G.F2)
    i, j = G.split(S.members)
    vals = C1[:, i] @ C2[:, j].T  # sum over members of chi1(beta1 x) chi2(beta2 y)
    return np.abs(vals.ravel()) ** 2


def character_check(S: ElementSet, q: int, tol: float = 1e-6) -> bool:
    """Every nontrivial character has |phi(D)|^2 = n, i.e. |(-1 +- sqrt(-(4n-1)))/2|^2."""
    n = (q + 1) ** 2 // 4
    target = abs((-1 + cmath.sqrt(-(4 * n - 1))) / 2) ** 2
    mods = character_moduli(S)[1:]
    return bool(np.all(np.abs(mods - target) <= tol))
