import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import z2_explicit
from sixvertex.enumeration import brute_z
from sixvertex.errors import DegenerateParameters
from sixvertex.ikdet import (basic_equation_residual, basic_equation_terms, det_full_pivot,
                             ik_matrix, ik_normalization, ik_z, relative_diff,
                             shifted_det_sum, transformed)
from sixvertex.model import ETA_CUBE, SpectralConfig, random_config


def test_full_pivot_matches_numpy(rng):
    for n in range(1, 8):
        a = rng.normal(size=(n, n))
        assert float(det_full_pivot(a)) == pytest.approx(np.linalg.det(a), rel=1e-12)
    assert det_full_pivot(np.zeros((3, 3))) == 0


def test_n1_is_one():
    assert ik_z(SpectralConfig(0.9, [0.4], [1.1])) == pytest.approx(1.0, rel=1e-15)


@given(st.lists(st.floats(-1.4, 1.4), min_size=4, max_size=4), st.floats(0.3, 2.8))
def test_n2_matches_explicit_sum(vals, eta):
    cfg = SpectralConfig(eta, vals[:2], vals[2:])
    if not cfg.is_generic(1e-3):
        return
    assert ik_z(cfg) == pytest.approx(z2_explicit(vals[:2], vals[2:], eta), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_raw_formula_differs_by_normalization(n, rng):
    cfg = random_config(rng, n, 1.7)
    raw = ik_z(cfg, normalized=False)
    assert raw == pytest.approx(ik_normalization(n, 1.7) * ik_z(cfg), rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("eta", [ETA_CUBE, 0.9, 1.7])
def test_matches_brute(n, eta):
    rng = np.random.default_rng(100 * n)
    for _ in range(5):
        cfg = random_config(rng, n, eta)
        assert relative_diff(ik_z(cfg), brute_z(cfg)) <= 1e-9


def test_degenerate_pair_is_named():
    cfg = SpectralConfig(0.9, [0.3, 0.3], [0.1, 0.7])
    with pytest.raises(DegenerateParameters) as info:
        ik_z(cfg)
    assert info.value.pair == ("x1", "x2")
    with pytest.raises(DegenerateParameters):
        ik_matrix(SpectralConfig(0.9, [0.3], [0.3 + 0.45]))


@pytest.mark.parametrize("N", [3, 4, 5, 6])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_shifted_dets_vanish_at_root(n, N):
    rng = np.random.default_rng(N * 10 + n)
    for _ in range(5):
        cfg = random_config(rng, n, 2 * math.pi / N)
        assert shifted_det_sum(cfg, N, relative=True) <= 1e-9


def test_shifted_dets_control_off_root(rng):
    cfg = random_config(rng, 3, 1.0)
    assert shifted_det_sum(cfg, 3, relative=True) > 1e-3


@pytest.mark.parametrize("N", [3, 4, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_basic_equation(n, N):
    rng = np.random.default_rng(7 * N + n)
    cfg = random_config(rng, n, 2 * math.pi / N)
    assert basic_equation_residual(cfg, N) <= 1e-9
    if N == 3:
        # product form and general form agree up to the common factor
        assert basic_equation_residual(cfg, 3, product_form=False) <= 1e-9


def test_basic_equation_control(rng):
    cfg = random_config(rng, 3, 1.0)
    assert basic_equation_residual(cfg, 3) > 1e-3
    assert len(basic_equation_terms(cfg, 4)) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quasiperiodicity(n, rng):
    cfg = random_config(rng, n, 1.3)
    z = ik_z(cfg)
    for k in range(n):
        assert ik_z(cfg.with_x(k, cfg.xs[k] + math.pi)) == pytest.approx((-1) ** (n - 1) * z, rel=1e-9)
        assert ik_z(cfg.with_y(k, cfg.ys[k] - math.pi)) == pytest.approx((-1) ** (n - 1) * z, rel=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("eta", [ETA_CUBE, 0.7, 2.1])
def test_transform_invariance(n, eta, rng):
    cfg = random_config(rng, n, eta)
    assert relative_diff(ik_z(cfg), ik_z(transformed(cfg))) <= 1e-9


@settings(max_examples=20)
@given(st.permutations(range(4)), st.permutations(range(4)))
def test_symmetric_within_sets(px, py):
    cfg = SpectralConfig(1.1, [0.1, 0.4, 0.9, 1.3], [0.2, 0.6, 1.0, 1.5])
    perm = SpectralConfig(1.1, [cfg.xs[i] for i in px], [cfg.ys[i] for i in py])
    assert relative_diff(ik_z(cfg), ik_z(perm)) <= 1e-12
