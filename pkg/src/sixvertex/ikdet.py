"""Izergin-Korepin determinant and the shifted-matrix identities at eta = 2pi/N.

Linear algebra runs in ``numpy.longdouble`` (80-bit on x86) with full
pivoting; the sine prefactors are accumulated as (mantissa, exponent)
pairs so long products neither overflow nor lose digits to cancellation
of huge and tiny factors.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import DegenerateParameters
from .model import GENERIC_THRESHOLD, SpectralConfig

LD = np.longdouble


def _sin(x) -> np.longdouble:
    return np.sin(LD(x))


def det_full_pivot(a) -> np.longdouble:
    """Determinant by Gaussian elimination with full pivoting, in long double."""
    m = np.array(a, dtype=LD)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    sign = 1
    det = LD(1)
    for k in range(n):
        sub = np.abs(m[k:, k:])
        p, q = np.unravel_index(np.argmax(sub), sub.shape)
        p += k
        q += k
        if m[p, q] == 0:
            return LD(0)
        if p != k:
            m[[k, p]] = m[[p, k]]
            sign = -sign
        if q != k:
            m[:, [k, q]] = m[:, [q, k]]
            sign = -sign
        piv = m[k, k]
        det *= piv
        if k + 1 < n:
            factors = m[k + 1:, k] / piv
            m[k + 1:, k:] -= np.outer(factors, m[k, k:])
    return det * sign


class _Product:
    """Running product kept as mantissa * 2**exponent."""

    def __init__(self):
        self.mant = LD(1)
        self.exp = 0

    def mul(self, x):
        m, e = np.frexp(LD(x))
        self.mant *= m
        self.exp += int(e)
        m, e = np.frexp(self.mant)
        self.mant = m
        self.exp += int(e)
        return self

    def div(self, x):
        m, e = np.frexp(LD(x))
        self.mant /= m
        self.exp -= int(e)
        m, e = np.frexp(self.mant)
        self.mant = m
        self.exp += int(e)
        return self

    def value(self, scale=LD(1)) -> np.longdouble:
        m, e = np.frexp(LD(scale))
        return np.ldexp(self.mant * m, self.exp + int(e))


def _guard(value, label: tuple[str, str], what: str, threshold: float):
    if abs(float(value)) < threshold:
        raise DegenerateParameters(
            f"|{what}| = {abs(float(value)):.3e} below {threshold:g} for pair {label[0]},{label[1]}",
            pair=label, value=float(value))


def ik_matrix(cfg: SpectralConfig, shift: int = 0,
              threshold: float = GENERIC_THRESHOLD) -> np.ndarray:
    """M_ij = 1/(sin(x_i - y_j + eta/2) sin(x_i - y_j - eta/2)), x_1 shifted by shift*eta."""
    n, eta = cfg.n, LD(cfg.eta)
    xs = [LD(x) for x in cfg.xs]
    xs[0] = xs[0] + shift * eta
    m = np.empty((n, n), dtype=LD)
    for i in range(n):
        for j in range(n):
            d = xs[i] - LD(cfg.ys[j])
            sp, sm = np.sin(d + eta / 2), np.sin(d - eta / 2)
            _guard(sp, (f"x{i + 1}", f"y{j + 1}"), "sin(x-y+eta/2)", threshold)
            _guard(sm, (f"x{i + 1}", f"y{j + 1}"), "sin(x-y-eta/2)", threshold)
            m[i, j] = 1 / (sp * sm)
    return m


def _check_generic(cfg: SpectralConfig, threshold: float):
    n = cfg.n
    for i in range(n):
        for k in range(i + 1, n):
            _guard(_sin(LD(cfg.xs[i]) - LD(cfg.xs[k])), (f"x{i + 1}", f"x{k + 1}"),
                   "sin(x-x')", threshold)
            _guard(_sin(LD(cfg.ys[i]) - LD(cfg.ys[k])), (f"y{i + 1}", f"y{k + 1}"),
                   "sin(y-y')", threshold)


def ik_normalization(n: int, eta: float) -> float:
    """Ratio of the raw determinant formula to the state sum with the a, b, c=1 weights.

    The bare formula carries the c = sin(eta) normalization and the
    ordering sign of the two sine products.
    """
    return (-1) ** (n * (n - 1) // 2) * math.sin(eta) ** (n * (n - 1))


def ik_z_ld(cfg: SpectralConfig, threshold: float = GENERIC_THRESHOLD,
            normalized: bool = True) -> np.longdouble:
    _check_generic(cfg, threshold)
    n, eta = cfg.n, LD(cfg.eta)
    m = ik_matrix(cfg, threshold=threshold)
    prod = _Product()
    for x in cfg.xs:
        for y in cfg.ys:
            d = LD(x) - LD(y)
            prod.mul(np.sin(d + eta / 2)).mul(np.sin(d - eta / 2))
    for i in range(n):
        for k in range(i + 1, n):
            prod.div(_sin(LD(cfg.xs[i]) - LD(cfg.xs[k])))
            prod.div(_sin(LD(cfg.ys[i]) - LD(cfg.ys[k])))
    if normalized:
        if n > 1:
            prod.div(np.sin(eta) ** (n * (n - 1)))
        if (n * (n - 1) // 2) % 2:
            prod.mant = -prod.mant
    return prod.value(det_full_pivot(m))


def ik_z(cfg: SpectralConfig, threshold: float = GENERIC_THRESHOLD,
         normalized: bool = True) -> float:
    """Partition function from the Izergin-Korepin determinant.

    With ``normalized`` (default) the result equals the state sum with
    weights a, b, c = 1 exactly; otherwise the bare determinant formula,
    which is larger by :func:`ik_normalization`.

    Raises DegenerateParameters if any sine in a denominator (matrix
    entries or the x/y Vandermonde-type products) is below ``threshold``.
    """
    return float(ik_z_ld(cfg, threshold, normalized))


def shifted_dets(cfg: SpectralConfig, N: int,
                 threshold: float = GENERIC_THRESHOLD) -> list[np.longdouble]:
    return [det_full_pivot(ik_matrix(cfg, k, threshold)) for k in range(N)]


def shifted_det_sum(cfg: SpectralConfig, N: int, threshold: float = GENERIC_THRESHOLD,
                    relative: bool = False) -> float:
    """Sum over k < N of det M with x_1 -> x_1 + k*eta.

    Vanishes when eta = 2pi/N. The shift uses ``cfg.eta`` as given, so a
    configuration with eta off the root of unity serves as a negative control.
    With ``relative=True`` the sum is divided by max_k |det M^(k)|.
    """
    if N < 3:
        raise ValueError("N must be at least 3")
    dets = shifted_dets(cfg, N, threshold)
    total = float(sum(dets, LD(0)))
    if relative:
        scale = max(abs(float(d)) for d in dets)
        return abs(total) / scale if scale else abs(total)
    return total


def basic_equation_terms(cfg: SpectralConfig, N: int, product_form: bool | None = None,
                         threshold: float = GENERIC_THRESHOLD) -> list[float]:
    """The N summands of the functional equation for Z in x_1.

    General form: Z(x_1 + k eta) prod_{i>1} sin(x_1 - x_i + k eta)
    / prod_j [sin(x_1 - y_j + (k+1/2) eta) sin(x_1 - y_j + (k-1/2) eta)].
    For N = 3 the product form replaces the bracket by sin(x_1 - y_j + k eta)
    (``product_form`` defaults to ``N == 3``).
    """
    if N < 3:
        raise ValueError("N must be at least 3")
    if product_form is None:
        product_form = N == 3
    eta = LD(cfg.eta)
    x1 = LD(cfg.xs[0])
    terms = []
    for k in range(N):
        shifted = cfg.with_x(0, float(x1 + k * eta))
        z = ik_z_ld(shifted, threshold)
        prod = _Product()
        for xi in cfg.xs[1:]:
            prod.mul(np.sin(x1 - LD(xi) + k * eta))
        for y in cfg.ys:
            d = x1 - LD(y)
            if product_form:
                prod.mul(np.sin(d + k * eta))
            else:
                prod.div(np.sin(d + (k + LD(0.5)) * eta)).div(np.sin(d + (k - LD(0.5)) * eta))
        terms.append(float(prod.value(z)))
    return terms


def basic_equation_residual(cfg: SpectralConfig, N: int, product_form: bool | None = None,
                            threshold: float = GENERIC_THRESHOLD) -> float:
    """|sum of terms| / max |term|."""
    terms = basic_equation_terms(cfg, N, product_form, threshold)
    scale = max(abs(t) for t in terms)
    total = math.fsum(terms)
    return abs(total) / scale if scale else abs(total)


def transformed(cfg: SpectralConfig) -> SpectralConfig:
    """x -> pi/2 - x, y -> -y, eta -> pi - eta."""
    return SpectralConfig(math.pi - cfg.eta, [math.pi / 2 - x for x in cfg.xs],
                          [-y for y in cfg.ys])


def relative_diff(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def max_relative_spread(values: Sequence[complex]) -> float:
    """max |v - mean| / |mean| for a list of (complex) ratios."""
    arr = np.asarray(values, dtype=complex)
    mean = arr.mean()
    return float(np.max(np.abs(arr - mean)) / abs(mean))
