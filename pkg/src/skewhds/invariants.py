"""Triple intersection numbers T{a,b} = |D & (D+a) & (D+b)| and equivalence searches.

The profile kernel packs every translate D+a into uint64 words once, then
for each a streams all b > a through AND + popcount.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .designs import ElementSet, pack_bits
from .field import GF


@dataclass
class TripleProfile:
    min: int
    max: int
    histogram: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    def weighted_sum(self) -> int:
        return sum(v * c for v, c in self.histogram.items())

    def to_dict(self) -> dict:
        return {"min": self.min, "max": self.max, "total": self.total,
                "histogram": {str(v): c for v, c in sorted(self.histogram.items())}}

    def csv_rows(self) -> list[tuple[int, int]]:
        return sorted(self.histogram.items())

    @classmethod
    def from_counts(cls, counts: np.ndarray) -> "TripleProfile":
        nz = np.flatnonzero(counts)
        hist = {int(v): int(counts[v]) for v in nz}
        return cls(int(nz.min()), int(nz.max()), hist)


def translate_bitmaps(S: ElementSet) -> np.ndarray:
    """(v, v) bool array whose row a is the bitmap of D + a."""
    G = S.group
    v = G.order
    xs = np.arange(v, dtype=np.int64)
    out = np.empty((v, v), dtype=bool)
    step = max(1, (1 << 20) // v)
    for lo in range(0, v, step):
        a = np.arange(lo, min(v, lo + step), dtype=np.int64)
        out[lo:lo + a.size] = S.bitmap[G.sub(xs[None, :], a[:, None])]
    return out


def triple_number(S: ElementSet, a: int, b: int) -> int:
    a, b = int(a), int(b)
    if a == b or a == 0 or b == 0:
        raise ValueError("a and b must be distinct nonzero elements")
    ta = S.translate(a).bitmap
    tb = S.translate(b).bitmap
    return int(np.count_nonzero(S.bitmap & ta & tb))


def _profile_block(Dpk: np.ndarray, TR: np.ndarray, rows, maxval: int) -> np.ndarray:
    hist = np.zeros(maxval + 1, dtype=np.int64)
    for a in rows:
        X = Dpk & TR[a]
        cnt = np.bitwise_count(TR[a + 1:] & X).sum(axis=1, dtype=np.int64)
        hist += np.bincount(cnt, minlength=maxval + 1)
    return hist


def triple_profile(S: ElementSet, workers: int | None = None) -> TripleProfile:
    """Histogram of T{a,b} over all unordered pairs of distinct nonzero a, b."""
    v = S.group.order
    TR = pack_bits(translate_bitmaps(S))
    Dpk = S.packed()
    rows = np.arange(1, v - 1)
    workers = max(1, int(workers or 1))
    if workers == 1:
        counts = _profile_block(Dpk, TR, rows, S.size)
    else:
        # strided split balances the shrinking b-ranges; merge is order-free
        parts = [rows[w::workers] for w in range(workers)]
        with ThreadPoolExecutor(workers) as pool:
            counts = sum(pool.map(lambda r: _profile_block(Dpk, TR, r, S.size), parts))
    return TripleProfile.from_counts(counts)


def triple_matrix(S: ElementSet) -> np.ndarray:
    """Full (v, v) matrix of |D & (D+a) & (D+b)|, diagonal and zero row included."""
    TR = pack_bits(translate_bitmaps(S))
    Dpk = S.packed()
    v = S.group.order
    out = np.empty((v, v), dtype=np.int64)
    for a in range(v):
        out[a] = np.bitwise_count(TR & (Dpk & TR[a])).sum(axis=1)
    return out


def row_sums_ok(S: ElementSet, lam: int) -> bool:
    """sum over b not in {0, a} of T{a,b} equals lam (k - 2) for every nonzero a."""
    T = triple_matrix(S)
    v = S.group.order
    rows = T[1:, 1:].sum(axis=1) - np.diagonal(T)[1:]
    return bool(np.all(rows == lam * (S.size - 2)))


def expected_total(v: int) -> int:
    return comb(v - 1, 2)


# -- additive automorphisms --

def apply_linear(F: GF, M: np.ndarray, codes) -> np.ndarray:
    """x -> M x on polynomial-basis coordinate vectors over GF(p)."""
    d = F.digits[np.asarray(codes, dtype=np.int64)]
    return F.encode(d @ np.asarray(M, dtype=np.int64).T % F.p)


def _det_mod(M: np.ndarray, p: int) -> int:
    M = [list(map(int, row)) for row in np.asarray(M) % p]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for r in range(c + 1, n):
            f = M[r][c] * inv % p
            M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return det % p


def random_automorphism(F: GF, rng: np.random.Generator) -> np.ndarray:
    """Uniform invertible m x m matrix over GF(p) by rejection."""
    while True:
        M = rng.integers(0, F.p, size=(F.m, F.m))
        if _det_mod(M, F.p):
            return M


def semilinear_map(F: GF, c: int, j: int, sign: int, codes) -> np.ndarray:
    """x -> sign * c * x^(p^j)."""
    y = F.mul(int(c), F.frobenius(np.asarray(codes, dtype=np.int64), j))
    return F.neg(y) if sign < 0 else y


def profile_invariance_test(S: ElementSet, trials: int, seed: int = 0, kind: str = "linear") -> bool:
    """Profiles of sigma(D) + g equal the profile of D for random sigma, g."""
    F = S.group
    rng = np.random.default_rng(seed)
    base = triple_profile(S)
    for _ in range(trials):
        if kind == "linear":
            img = apply_linear(F, random_automorphism(F, rng), S.members)
        else:
            c = int(rng.integers(1, F.q))
            j = int(rng.integers(0, F.m))
            img = semilinear_map(F, c, j, 1, S.members)
        g = int(rng.integers(0, F.q))
        T = ElementSet(F, F.add(img, np.full(img.size, g)))
        if triple_profile(T).histogram != base.histogram:
            return False
    return True


# -- equivalence witnesses --

@dataclass
class EquivalenceWitness:
    """sigma(D1) = D2 + g, sigma either a GF(p)-matrix or x -> sign * c * x^(p^j)."""
    g: int
    matrix: list | None = None
    c: int | None = None
    j: int | None = None
    sign: int = 1

    def apply(self, F: GF, codes) -> np.ndarray:
        if self.matrix is not None:
            return apply_linear(F, np.array(self.matrix), codes)
        return semilinear_map(F, self.c, self.j, self.sign, codes)

    def verify(self, D1: ElementSet, D2: ElementSet) -> bool:
        F = D1.group
        img = ElementSet(F, self.apply(F, D1.members))
        return img == D2.translate(self.g)

    def to_dict(self) -> dict:
        if self.matrix is not None:
            return {"matrix": self.matrix, "g": self.g}
        return {"c": self.c, "j": self.j, "sign": self.sign, "g": self.g}


def _element_sum(F: GF, codes: np.ndarray) -> np.ndarray:
    """Sum of each row of codes (last axis) in the additive group."""
    return F.encode(F.digits[codes].sum(axis=-2) % F.p)


def _find_translation(F: GF, images: np.ndarray, D2: ElementSet) -> np.ndarray:
    """For each row of images (sigma(D1) as codes), the g with sigma(D1) = D2 + g, else -1.

    With k invertible mod p, g is forced: sum(sigma D1) = sum(D2) + k g.
    """
    images = np.atleast_2d(images)
    k = images.shape[1]
    n = images.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    if k != D2.size:
        return out
    if k % F.p:
        kinv = pow(k % F.p, -1, F.p)
        s2 = _element_sum(F, D2.members[None, :])[0]
        gs = F.mul(F.from_int(kinv), F.sub(_element_sum(F, images), np.full(n, s2)))
        cand = [gs]
    else:
        cand = [np.full(n, g) for g in range(F.q)]
    for gs in cand:
        back = F.sub(images, gs[:, None])
        hit = D2.bitmap[back].all(axis=1) & (out < 0)
        out[hit] = gs[hit]
    return out


def semilinear_equivalence_search(D1: ElementSet, D2: ElementSet) -> EquivalenceWitness | None:
    """Exhaust x -> sign*c*x^(p^j) + g; None does not prove inequivalence."""
    F = D1.group
    if D2.group != F:
        raise ValueError("sets live in different fields")
    if F.q % 4 == 3:
        coeffs, signs = F.squares(), (1, -1)
    else:
        coeffs, signs = F.nonzero(), (1,)
    for j in range(F.m):
        frob = F.frobenius(D1.members, j)
        for sign in signs:
            imgs = F.mul(coeffs[:, None], frob[None, :])
            if sign < 0:
                imgs = F.neg(imgs)
            gs = _find_translation(F, imgs, D2)
            found = np.flatnonzero(gs >= 0)
            if found.size:
                i = int(found[0])
                return EquivalenceWitness(g=int(gs[i]), c=int(coeffs[i]), j=j, sign=sign)
    return None


@lru_cache(maxsize=8)
def invertible_matrices(p: int, m: int) -> np.ndarray:
    """GL(m, p) in lexicographic order of the flattened entries (read-only, cached)."""
    mats = np.array(list(itertools.product(range(p), repeat=m * m)), dtype=np.int64).reshape(-1, m, m)
    keep = [i for i, M in enumerate(mats) if _det_mod(M, p)]
    out = mats[keep]
    out.setflags(write=False)
    return out


def full_equivalence_search(D1: ElementSet, D2: ElementSet) -> EquivalenceWitness | None:
    """Exhaust GL(m, p) and all translations; None proves inequivalence."""
    F = D1.group
    if D2.group != F:
        raise ValueError("sets live in different fields")
    if F.m > 3:
        raise ValueError("full search is limited to m <= 3")
    mats = invertible_matrices(F.p, F.m)
    d1 = F.digits[D1.members]
    for lo in range(0, len(mats), 2048):
        block = mats[lo:lo + 2048]
        imgs = F.encode(np.einsum("kj,nij->nki", d1, block) % F.p)
        gs = _find_translation(F, imgs, D2)
        found = np.flatnonzero(gs >= 0)
        if found.size:
            i = int(found[0])
            return EquivalenceWitness(g=int(gs[i]), matrix=block[i].tolist())
    return None
