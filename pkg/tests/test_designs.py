import cmath
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skewhds.designs import (
    DesignParams, ElementSet, additive_character_sum, character_report, character_values,
    check_character_values, congruence_holds, corollary_exponential_sum, corollary_values, difference_counts,
    dy_set, family_set, is_difference_set, is_skew, is_skew_hadamard, pack_bits, paley_set, rt_set, skew_params,
)
from skewhds.eisenstein import EisensteinInt, SQRT_MINUS_3, skew_character_values, sqrt_minus_power_of_3
from skewhds.field import FieldError, gf3, make_field

W = cmath.exp(2j * cmath.pi / 3)


def brute_differences(F, members):
    counts = [0] * F.q
    for x in members:
        for y in members:
            if x != y:
                counts[F.sub(int(x), int(y))] += 1
    return counts


# -- Eisenstein integers --

ints = st.integers(-50, 50)
eis = st.builds(EisensteinInt, ints, ints)


@settings(max_examples=200, deadline=None)
@given(eis, eis, eis)
def test_eisenstein_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == EisensteinInt(0, 0)
    assert (x * y).norm() == x.norm() * y.norm()
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-9
    assert abs(complex(x.conjugate()) - complex(x).conjugate()) < 1e-9
    assert x.norm() == round(abs(complex(x)) ** 2)


def test_sqrt_minus_3():
    assert SQRT_MINUS_3 * SQRT_MINUS_3 == EisensteinInt(-3, 0)
    s = sqrt_minus_power_of_3(5)
    assert s * s == EisensteinInt(-243, 0)
    with pytest.raises(ValueError):
        sqrt_minus_power_of_3(4)
    assert skew_character_values(5) == (EisensteinInt(4, 9), EisensteinInt(-5, -9))
    assert skew_character_values(3) == (EisensteinInt(1, 3), EisensteinInt(-2, -3))
    assert str(EisensteinInt(4, 9)) == "4+9w"
    with pytest.raises(ValueError):
        EisensteinInt(1, 2).halve()
    with pytest.raises(TypeError):
        EisensteinInt.coerce(1.5)


# -- constructions --

def test_paley_small_fields():
    assert paley_set(make_field(3, 1)).members.tolist() == [1]
    assert paley_set(make_field(7, 1)).members.tolist() == [1, 2, 4]
    with pytest.raises(FieldError):
        paley_set(make_field(5, 1))


def test_paley_27():
    S = paley_set(gf3(3))
    rep = is_difference_set(S)
    assert S.size == 13 and rep.ok
    assert rep.params == DesignParams(27, 13, 6)
    assert rep.counts.tolist() == brute_differences(S.group, S.members)


def test_rt_and_dy_guards():
    F = gf3(3)
    with pytest.raises(ValueError):
        rt_set(F, 0)
    with pytest.raises(ValueError):
        dy_set(F, 0)
    with pytest.raises(FieldError):
        rt_set(make_field(3, 2), 1)
    with pytest.raises(ValueError):
        family_set(F, "nope")


@pytest.mark.parametrize("m", [1, 3, 5])
def test_every_family_member_is_skew_hadamard(m):
    F = gf3(m)
    assert is_skew_hadamard(paley_set(F))
    for a in F.nonzero():
        D = rt_set(F, a)
        assert 0 not in D
        assert is_skew_hadamard(D), a
    for u in F.nonzero():
        assert is_skew_hadamard(dy_set(F, u)), u


def test_skew_partition():
    F = gf3(5)
    for u in (1, F.neg(1)):
        D = dy_set(F, u)
        both = D.bitmap.astype(int) + D.negate().bitmap.astype(int)
        assert both[0] == 0 and np.all(both[1:] == 1)


def test_difference_counts_match_brute_force():
    F = gf3(3)
    rng = np.random.default_rng(3)
    for _ in range(5):
        members = rng.choice(27, size=11, replace=False)
        S = ElementSet(F, members)
        c = difference_counts(S)
        assert c.tolist() == brute_differences(F, members)
        assert c.sum() == 11 * 10


def test_adversarial_set_is_not_a_design():
    F = gf3(3)
    S = ElementSet(F, range(13))
    rep = is_difference_set(S)
    assert not rep.ok
    assert len(rep.deviation_histogram) > 1
    assert sum(v * c for v, c in rep.deviation_histogram.items()) == 13 * 12
    assert not is_skew_hadamard(S)


def test_trace_zero_set_is_not_skew():
    F = gf3(3)
    S = ElementSet(F, [x for x in F.nonzero() if F.trace(int(x)) == 0])
    assert S.size == 8
    assert not is_skew(S) and not is_skew_hadamard(S)


def test_set_operations_and_serialisation():
    F = gf3(3)
    D = rt_set(F, 1)
    assert D.translate(5).translate(F.neg(5)) == D
    assert D.negate().negate() == D
    d = json.loads(D.to_json())
    assert d["members"] == sorted(d["members"])
    assert d["field"] == {"p": 3, "m": 3, "modulus": [1, 0, 2, 1]}
    assert ElementSet.from_dict(d) == D
    words = pack_bits(D.bitmap)
    assert words.dtype == np.uint64 and int(np.bitwise_count(words).sum()) == 13
    assert skew_params(243).as_tuple() == (243, 121, 60)
    assert DesignParams(243, 121, 60).consistent()
    with pytest.raises(ValueError):
        ElementSet(F, bitmap=np.zeros(5, dtype=bool))


# -- characters --

def test_full_nonzero_set_sums_to_minus_one():
    F = gf3(3)
    S = ElementSet(F, F.nonzero())
    for beta in (1, 2, 17):
        assert additive_character_sum(S, beta) == EisensteinInt(-1, 0)
    with pytest.raises(ValueError):
        additive_character_sum(S, 0)


def test_paley_27_beta_1():
    val = additive_character_sum(paley_set(gf3(3)), 1)
    assert val in (EisensteinInt(1, 3), EisensteinInt(-2, -3))


def test_character_sum_matches_complex_oracle():
    F = gf3(5)
    D = rt_set(F, 1)
    vals = character_values(D)
    for beta in (1, 7, 100, 242):
        z = sum(W ** int(F.trace(F.mul(beta, int(d)))) for d in D.members)
        assert abs(complex(vals[beta - 1]) - z) < 1e-9


@pytest.mark.parametrize("m", [3, 5])
def test_character_values_for_families(m):
    F = gf3(m)
    for D in (paley_set(F), rt_set(F, 1), rt_set(F, F.neg(1)), dy_set(F, 1), dy_set(F, F.neg(1))):
        rep = character_report(D)
        assert rep["ok"] and rep["congruence_ok"]
        assert rep["norm"] == (F.q + 1) // 4
        assert sum(rep["tally"].values()) == F.q - 1


def test_rt1_m5_tally():
    rep = character_report(rt_set(gf3(5), 1))
    assert rep["tally"] == {"4+9w": 121, "-5-9w": 121}


def test_random_set_fails_character_check():
    F = gf3(3)
    S = ElementSet(F, np.random.default_rng(7).choice(np.arange(1, 27), 13, replace=False))
    assert not is_skew_hadamard(S)
    rep = character_report(S)
    assert not rep["ok"] and rep["first_failure"]["beta"] >= 1
    assert not check_character_values(S)


def test_fourier_inversion():
    F = gf3(3)
    D = dy_set(F, 1)
    vals = character_values(D)
    powers = [EisensteinInt(1, 0), EisensteinInt(0, 1), EisensteinInt(-1, -1)]
    for x in range(27):
        acc = EisensteinInt(D.size, 0)
        for beta in range(1, 27):
            acc = acc + vals[beta - 1] * powers[(-F.trace(F.mul(beta, x))) % 3]
        assert acc == EisensteinInt(27 * int(x in D), 0)


def test_congruence():
    assert congruence_holds(EisensteinInt(4, 9), 5)  # 4 = (9 - 1)/2
    assert not congruence_holds(EisensteinInt(5, 9), 5)


def test_corollary_sum():
    F = gf3(3)
    val = corollary_exponential_sum(F, 1, 1)
    assert val in corollary_values(F)
    assert val.norm() == 27
    with pytest.raises(ValueError):
        corollary_exponential_sum(F, 0, 1)


def test_corollary_sum_m5_random_pairs():
    F = gf3(5)
    allowed = corollary_values(F)
    assert allowed == (EisensteinInt(9, 18), EisensteinInt(-9, -18))
    rng = np.random.default_rng(11)
    for a, b in rng.integers(1, F.q, size=(50, 2)):
        val = corollary_exponential_sum(F, int(a), int(b))
        assert val in allowed and val.norm() == F.q
