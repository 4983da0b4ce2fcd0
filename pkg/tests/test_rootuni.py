import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import numeric_derivative, quad_fourier
from sixvertex.errors import DegenerateParameters, DimensionMismatch, RankDeficient
from sixvertex.model import ETA_CUBE, SpectralConfig, random_config
from sixvertex.rootuni import (TrigPoly, UPartition, allowed_frequencies, cyclic_residual,
                               degree_residual, f_direct, f_from_z, p_determinant,
                               p_trigpoly, ratio_spread, sample_fourier,
                               single_variable_spectrum, solve_null, third_coeff_check,
                               union_constant, union_symmetry_residual)

coeff = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=30)
@given(st.integers(0, 8).flatmap(lambda d: st.tuples(st.just(d), st.lists(coeff, min_size=d + 1,
                                                                           max_size=d + 1))))
def test_sampling_recovers_coefficients(case):
    d, cs = case
    p = TrigPoly(d, cs)
    q = sample_fourier(p, d, offset=0.123)
    assert np.allclose(q.complex_coeffs(), p.complex_coeffs(), atol=1e-10)


def test_trigpoly_matches_quadrature():
    p = TrigPoly(3, (1 + 2j, -0.5, 0.25j, 3.0))
    for freq in (3, 1, -1, -3, 2):
        assert quad_fourier(p, freq) == pytest.approx(complex(p.coeff(freq)), abs=1e-12)
    assert p.parity == -1


def test_derivative():
    p = TrigPoly(2, (0.3, 1.0 - 1j, 0.7j))
    for order in (1, 2):
        dp = p.derivative(order)
        for u in (0.2, 1.1):
            assert dp(u) == pytest.approx(numeric_derivative(p, u, order), rel=1e-5)


def test_allowed_frequencies():
    assert allowed_frequencies(1) == [1, -1]
    assert allowed_frequencies(2) == [4, 2, -2, -4]
    for n in range(1, 7):
        freqs = allowed_frequencies(n)
        assert len(freqs) == 2 * n
        assert all((3 * n - f) % 6 for f in freqs)


def test_n1_closed_form():
    # Z = 1, so f(u) = sin(u - y) up to the normalization
    cfg = SpectralConfig(ETA_CUBE, [0.3], [0.8])
    f = f_from_z(cfg)
    for u in (0.1, 0.9, 2.0):
        assert f(u).real == pytest.approx(math.sin(u - 0.8), abs=1e-14)
    g = solve_null([0.8])
    assert ratio_spread(f, g)[1] <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_f_from_z_interpolates(n, rng):
    cfg = random_config(rng, n, ETA_CUBE)
    f = f_from_z(cfg)
    for u in rng.uniform(0, math.pi, size=5):
        assert f(u).real == pytest.approx(f_direct(cfg, u), rel=1e-9, abs=1e-12)
        assert abs(f(u).imag) <= 1e-9 * max(1.0, abs(f(u)))
    assert cyclic_residual(f) <= 1e-9
    assert third_coeff_check(f, n) <= 1e-9


def test_f_from_z_rejects_wrong_eta():
    with pytest.raises(ValueError):
        f_from_z(SpectralConfig(0.9, [0.1, 0.2], [0.3, 0.5]))


def test_f_from_z_degenerate():
    with pytest.raises(DegenerateParameters):
        f_from_z(SpectralConfig(ETA_CUBE, [0.1, 0.4], [0.4, 0.9]))


@pytest.mark.parametrize("n", [2, 3])
def test_cyclic_negative_control(n, rng):
    cfg = random_config(rng, n, 0.9)
    f = f_from_z(cfg, check_eta=False)
    assert cyclic_residual(f) > 1e-3


def test_third_check_dimension():
    with pytest.raises(DimensionMismatch):
        third_coeff_check(TrigPoly(3, (1, 0, 0, 1)), 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_three_reconstructions_agree(n, rng):
    cfg = random_config(rng, n, ETA_CUBE)
    us = UPartition.from_config(cfg).us
    f = f_from_z(cfg)
    g = solve_null(us)
    samples = rng.uniform(0, math.pi, size=12)
    assert np.max(np.abs(g(np.array(us)))) <= 1e-9
    assert ratio_spread(f, g, samples)[1] <= 1e-8
    p = lambda u: p_determinant(u, us)
    assert ratio_spread(p, f, samples)[1] <= 1e-8
    assert ratio_spread(p_trigpoly(us), p, samples)[1] <= 1e-8


def test_solve_null_rank_deficient():
    with pytest.raises(RankDeficient):
        solve_null([0.1, 0.1, 0.1])
    with pytest.raises(DimensionMismatch):
        solve_null([0.1, 0.2])


def test_partition_round_trip():
    cfg = SpectralConfig(ETA_CUBE, [0.1, 0.2, 0.3], [0.4, 0.5, 0.6])
    part = UPartition.from_config(cfg)
    assert part.n == 3 and part.us == (0.2, 0.3, 0.4, 0.5, 0.6)
    assert part.to_config() == cfg


@pytest.mark.parametrize("n", [2, 3, 4])
def test_union_symmetry(n, rng):
    cfg = random_config(rng, n, ETA_CUBE)
    assert union_symmetry_residual(cfg) <= 1e-9
    assert union_symmetry_residual(random_config(rng, n, 0.9)) > 1e-3


def test_union_constant_independent_of_everything():
    rng = np.random.default_rng(5)
    consts = []
    for _ in range(4):
        c = union_constant(random_config(rng, 3, ETA_CUBE))
        assert np.max(np.abs(c - c.mean())) <= 1e-8 * abs(c.mean())
        consts.append(c.mean())
    consts = np.array(consts)
    assert np.max(np.abs(consts - consts.mean())) <= 1e-8 * abs(consts.mean())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_degree_in_one_variable(n, rng):
    cfg = random_config(rng, n, 1.2)
    for var in "xy":
        assert degree_residual(cfg, var, n - 1) <= 1e-9
    spec = single_variable_spectrum(cfg, "x", 0)
    assert abs(spec[n - 1]) > 1e-6 * max(abs(v) for v in spec.values())
