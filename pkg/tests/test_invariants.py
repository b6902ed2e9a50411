from collections import Counter
from itertools import combinations

import numpy as np
import pytest

from skewhds.designs import ElementSet, dy_set, paley_set, rt_set
from skewhds.field import gf3, is_irreducible, make_field
from skewhds.invariants import (
    EquivalenceWitness, TripleProfile, apply_linear, expected_total, full_equivalence_search,
    invertible_matrices, profile_invariance_test, random_automorphism, row_sums_ok,
    semilinear_equivalence_search, semilinear_map, translate_bitmaps, triple_matrix, triple_number,
    triple_profile,
)


def brute_profile(S):
    F = S.group
    D = set(int(x) for x in S.members)
    hist = Counter()
    for a, b in combinations(range(1, F.q), 2):
        t = sum(1 for x in D if F.sub(x, a) in D and F.sub(x, b) in D)
        hist[t] += 1
    return dict(hist)


def gram_triples(S):
    """T = M^T M with M[x, a] = D[x] D[x - a]."""
    F = S.group
    xs = F.elements()
    Dx = S.bitmap.astype(np.int64)
    M = Dx[:, None] * Dx[F.sub(xs[:, None], xs[None, :])]
    return M.T @ M


def test_translate_bitmaps_rows():
    F = gf3(3)
    D = rt_set(F, 1)
    TR = translate_bitmaps(D)
    for a in (0, 4, 26):
        assert np.array_equal(TR[a], D.translate(a).bitmap)


def test_triple_number_symmetry_and_lambda():
    F = gf3(3)
    D = paley_set(F)
    assert triple_number(D, 3, 7) == triple_number(D, 7, 3)
    for a in range(1, 27):
        assert int(np.count_nonzero(D.bitmap & D.translate(a).bitmap)) == 6
    with pytest.raises(ValueError):
        triple_number(D, 3, 3)
    with pytest.raises(ValueError):
        triple_number(D, 0, 3)


@pytest.mark.parametrize("family", ["paley", "rt", "dy"])
def test_profile_matches_brute_force_m3(family):
    F = gf3(3)
    S = {"paley": paley_set(F), "rt": rt_set(F, 1), "dy": dy_set(F, F.neg(1))}[family]
    prof = triple_profile(S)
    assert prof.histogram == brute_profile(S)
    assert prof.total == expected_total(27) == 325


def test_triple_matrix_matches_gram_oracle():
    for m in (3, 5):
        F = gf3(m)
        S = rt_set(F, 1)
        assert np.array_equal(triple_matrix(S), gram_triples(S))


def test_profile_independent_of_worker_count():
    S = dy_set(gf3(5), 1)
    base = triple_profile(S, workers=1)
    for w in (2, 3, 8):
        assert triple_profile(S, workers=w) == base


def test_profile_sums():
    S = rt_set(gf3(5), 1)
    p = triple_profile(S)
    assert p.total == 29161
    assert p.weighted_sum() == 242 * 60 * 119 // 2
    d = p.to_dict()
    assert d["min"] == 24 and d["max"] == 35 and d["histogram"]["24"] == 75
    assert p.csv_rows()[0] == (24, 75)
    assert TripleProfile.from_counts(np.array([0, 2, 0, 5])) == TripleProfile(1, 3, {1: 2, 3: 5})


@pytest.mark.parametrize("m", [3, 5])
def test_row_sum_identity(m):
    F = gf3(m)
    lam = (F.q - 3) // 4
    for S in (paley_set(F), rt_set(F, 1), rt_set(F, F.neg(1)), dy_set(F, 1), dy_set(F, F.neg(1))):
        assert row_sums_ok(S, lam)
    T = triple_matrix(rt_set(F, 1))
    assert int(T[1, 1:].sum() - T[1, 1]) == {3: 66, 5: 7140}[m]


def test_row_sum_identity_brute_m3():
    F = gf3(3)
    S = rt_set(F, 1)
    D = set(int(x) for x in S.members)
    for a in range(1, 27):
        tot = sum(sum(1 for x in D if F.sub(x, a) in D and F.sub(x, b) in D) for b in range(1, 27) if b != a)
        assert tot == 6 * 11


def test_random_automorphism_is_invertible():
    F = gf3(3)
    rng = np.random.default_rng(0)
    for _ in range(20):
        M = random_automorphism(F, rng)
        img = apply_linear(F, M, F.elements())
        assert np.unique(img).size == 27
        assert np.array_equal(apply_linear(F, M, F.add(5, F.elements())),
                              F.add(apply_linear(F, M, np.full(27, 5)), img))


def test_invertible_matrix_count():
    assert len(invertible_matrices(3, 2)) == 48
    assert len(invertible_matrices(3, 3)) == 11232


def test_profile_invariance():
    assert profile_invariance_test(rt_set(gf3(3), 1), trials=100, seed=1)
    assert profile_invariance_test(dy_set(gf3(5), 1), trials=10, seed=2)
    assert profile_invariance_test(rt_set(gf3(5), 1), trials=10, seed=3, kind="semilinear")


def test_invariance_test_catches_a_non_automorphism():
    # a permutation that is not additive changes the profile of some set
    F = gf3(3)
    S = rt_set(F, 1)
    perm = np.random.default_rng(5).permutation(27)
    T = ElementSet(F, perm[S.members])
    assert triple_profile(T).histogram != triple_profile(S).histogram


def test_modulus_independence_m5():
    moduli = [m for m in ([2, 1, 0, 0, 0, 1], [1, 2, 0, 0, 0, 1], [2, 0, 1, 0, 0, 1]) if is_irreducible(m, 3)]
    other = make_field(3, 5, moduli[0])
    base = gf3(5)
    assert other != base
    for build in (paley_set, lambda F: rt_set(F, 1), lambda F: dy_set(F, F.neg(1))):
        assert triple_profile(build(base)).histogram == triple_profile(build(other)).histogram


def test_semilinear_planted_witness():
    F = gf3(5)
    D1 = rt_set(F, 1)
    g0 = 77
    D2 = ElementSet(F, F.add(semilinear_map(F, 2, 1, 1, D1.members), np.full(D1.size, g0)))
    w = semilinear_equivalence_search(D1, D2)
    assert w is not None and w.verify(D1, D2)


def test_semilinear_rt_scaling_witness():
    F = gf3(5)
    b = 7
    a = F.pow(b, F.alpha + 1)
    w = semilinear_equivalence_search(rt_set(F, 1), rt_set(F, a))
    assert w is not None and w.verify(rt_set(F, 1), rt_set(F, a))


def test_semilinear_rt_vs_dy_not_found():
    F = gf3(5)
    assert semilinear_equivalence_search(rt_set(F, 1), dy_set(F, 1)) is None
    # consistent with the distinct profiles
    assert triple_profile(rt_set(F, 1)) != triple_profile(dy_set(F, 1))


def test_full_search_m3():
    F = gf3(3)
    P, R = paley_set(F), rt_set(F, 1)
    w = full_equivalence_search(R, P)
    assert w is not None and w.verify(R, P)
    assert set(w.to_dict()) == {"matrix", "g"}
    assert full_equivalence_search(P, ElementSet(F, range(1, 14))) is None
    with pytest.raises(ValueError):
        full_equivalence_search(rt_set(gf3(5), 1), rt_set(gf3(5), 1))


def test_witness_serialisation():
    w = EquivalenceWitness(g=3, c=2, j=1, sign=-1)
    assert w.to_dict() == {"c": 2, "j": 1, "sign": -1, "g": 3}
