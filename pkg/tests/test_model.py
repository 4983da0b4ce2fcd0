import itertools
import math

import pytest
from hypothesis import given, strategies as st

from sixvertex.enumeration import enumerate_states
from sixvertex.errors import DegenerateEta, IceViolation, InvalidConvention
from sixvertex.model import (ETA_CUBE, Asm, SixVertexState, SpectralConfig, VertexKind,
                             WeightConvention, asm_from_state, boltzmann_weight,
                             classify_vertex, count_letters, state_from_asm, state_weight)

SIGNED, COUNTING = WeightConvention.SIGNED, WeightConvention.COUNTING


def test_weight_examples():
    assert boltzmann_weight("a", 0.0, ETA_CUBE, SIGNED) == pytest.approx(1.0, abs=1e-15)
    assert boltzmann_weight("b", 0.0, ETA_CUBE, SIGNED) == pytest.approx(-1.0, abs=1e-15)
    assert boltzmann_weight("b", 0.0, ETA_CUBE, COUNTING) == pytest.approx(1.0, abs=1e-15)
    assert boltzmann_weight(VertexKind("c", 2), 0.37, 1.1, SIGNED) == 1.0


@given(st.floats(-3, 3))
def test_counting_vs_signed_at_cube_root(delta):
    a_s = boltzmann_weight("a", delta, ETA_CUBE, SIGNED)
    b_s = boltzmann_weight("b", delta, ETA_CUBE, SIGNED)
    assert boltzmann_weight("a", delta, ETA_CUBE, COUNTING) == pytest.approx(a_s, abs=1e-14)
    assert boltzmann_weight("b", delta, ETA_CUBE, COUNTING) == pytest.approx(-b_s, abs=1e-14)


def test_weight_errors():
    with pytest.raises(DegenerateEta):
        boltzmann_weight("a", 0.1, math.pi, SIGNED)
    with pytest.raises(InvalidConvention):
        boltzmann_weight("a", 0.1, 0.9, COUNTING)


def test_classify_table():
    assert classify_vertex(1, 1, 1, 1) == VertexKind("a", 1)
    assert classify_vertex(1, -1, 1, -1) == VertexKind("c", 1)
    with pytest.raises(IceViolation):
        classify_vertex(1, -1, -1, 1)


def test_classify_covers_exactly_the_ice_patterns():
    kinds = set()
    for pattern in itertools.product((1, -1), repeat=4):
        h_left, h_right, v_top, v_bottom = pattern
        inward = (h_left == 1) + (h_right == -1) + (v_top == -1) + (v_bottom == 1)
        if inward == 2:
            kinds.add(classify_vertex(*pattern))
        else:
            with pytest.raises(IceViolation):
                classify_vertex(*pattern)
    assert len(kinds) == 6
    assert {k.letter for k in kinds} == {"a", "b", "c"}


def test_n1_state():
    (s,) = list(enumerate_states(1))
    assert asm_from_state(s).m == ((1,),)
    assert state_weight(s, SpectralConfig(0.7, [0.4], [0.1])) == 1.0


def test_identity_state_n2():
    s = state_from_asm(Asm([[1, 0], [0, 1]]))
    s.validate()
    kinds = s.kinds()
    assert kinds[0][0].letter == kinds[1][1].letter == "c"
    assert asm_from_state(s).m == ((1, 0), (0, 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip(n):
    for s in enumerate_states(n):
        s.validate()
        a = asm_from_state(s)
        a.validate()
        assert state_from_asm(a) == s


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_row_and_column_telescoping_agree(n):
    for s in enumerate_states(n):
        for i in range(n):
            for j in range(n):
                assert s.h[i][j] - s.h[i][j + 1] == s.v[i][j] - s.v[i + 1][j]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c_vertex_count(n):
    for s in enumerate_states(n):
        assert count_letters(s)["c"] == n + 2 * asm_from_state(s).minus_ones()


def test_state_weights_n2_all_zero():
    # the identity state has two b vertices and the anti-diagonal state two a
    # vertices, so both weigh +1 in either convention
    cfg = SpectralConfig.homogeneous(2)
    for s in enumerate_states(2):
        letters = count_letters(s)
        assert letters["c"] == 2 and letters["b"] in (0, 2)
        assert state_weight(s, cfg, COUNTING) == pytest.approx(1.0, abs=1e-14)
        assert state_weight(s, cfg, SIGNED) == pytest.approx(1.0, abs=1e-14)


@given(st.lists(st.floats(-2, 2), min_size=6, max_size=6))
def test_convention_ratio_is_sign_of_b_count(vals):
    cfg = SpectralConfig(ETA_CUBE, vals[:3], vals[3:])
    for s in enumerate_states(3):
        b = count_letters(s)["b"]
        signed, counting = state_weight(s, cfg, SIGNED), state_weight(s, cfg, COUNTING)
        assert counting == pytest.approx((-1) ** b * signed, abs=1e-12)


def test_genericity_flag():
    cfg = SpectralConfig(ETA_CUBE, [0.1, 0.2], [0.3, 0.1 + math.pi])
    assert not cfg.is_generic()
    assert cfg.min_pair_sine()[1] == ("x1", "y2")
    assert SpectralConfig(ETA_CUBE, [0.1, 0.2], [0.3, 0.4]).is_generic()


def test_config_validation():
    with pytest.raises(ValueError):
        SpectralConfig(ETA_CUBE, [0.1], [0.2, 0.3])
    with pytest.raises(ValueError):
        SpectralConfig(ETA_CUBE, [], [])


def test_asm_validation_rejects_bad_matrix():
    with pytest.raises(ValueError):
        Asm([[1, 0], [1, 0]]).validate()
    with pytest.raises(ValueError):
        Asm([[0, 1, 0], [1, 1, -1], [0, -1, 1]]).validate()


def test_state_validation_rejects_bad_boundary():
    s = state_from_asm(Asm([[1]]))
    with pytest.raises(ValueError):
        SixVertexState([[-1, -1]], s.v).validate()
