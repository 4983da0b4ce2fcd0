"""Trigonometric-polynomial machinery at eta = 2pi/3.

With x_1 = u singled out and the other 2n-1 parameters collected in
``us`` (x_2..x_n then y_1..y_n), f(u) = Z(u) prod sin(u - u_i) is a
trigonometric polynomial of degree 3n-2 whose frequencies divisible by
three vanish. Its remaining 2n coefficients span the one-dimensional
nullspace of the interpolation system f(u_j) = 0, which is also reached
by the determinant P.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (DegenerateParameters, DimensionMismatch, IllConditioned,
                     RankDeficient)
from .ikdet import ik_z
from .model import ETA_CUBE, GENERIC_THRESHOLD, SpectralConfig, is_cube_root_eta

DEFAULT_SAMPLES = np.linspace(0.05, math.pi, 23, endpoint=False)


@dataclass(frozen=True)
class TrigPoly:
    """``scale * sum_k coeffs[k] * exp(i (maxfreq - 2k) u)``.

    Coefficients may be complex floats or exact Fractions; ``scale`` keeps
    a common complex factor out of the exact part.
    """

    maxfreq: int
    coeffs: tuple
    scale: complex = 1

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.maxfreq + 1:
            raise DimensionMismatch(
                f"maxfreq {self.maxfreq} needs {self.maxfreq + 1} coefficients, got {len(self.coeffs)}")

    @property
    def parity(self) -> int:
        return -1 if self.maxfreq % 2 else 1

    def frequencies(self) -> list[int]:
        return [self.maxfreq - 2 * k for k in range(self.maxfreq + 1)]

    def coeff(self, freq: int):
        k, rem = divmod(self.maxfreq - freq, 2)
        if rem or not 0 <= k <= self.maxfreq:
            return 0
        return self.coeffs[k]

    def complex_coeffs(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs]) * complex(self.scale)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        freqs = np.array(self.frequencies(), dtype=float)
        phases = np.exp(1j * np.multiply.outer(u, freqs))
        return phases @ self.complex_coeffs()

    def derivative(self, order: int = 1) -> "TrigPoly":
        """Exact when the coefficients are exact: powers of i go into ``scale``."""
        coeffs = [c * f ** order for c, f in zip(self.coeffs, self.frequencies())]
        return TrigPoly(self.maxfreq, coeffs, complex(self.scale) * 1j ** order)

    def normalized(self) -> "TrigPoly":
        """Rescale so the largest coefficient is real, positive and of magnitude 1."""
        c = self.complex_coeffs()
        big = c[np.argmax(np.abs(c))]
        return TrigPoly(self.maxfreq, tuple(c / big))

    @classmethod
    def constant(cls, value=1.0) -> "TrigPoly":
        return cls(0, (value,))


def allowed_frequencies(n: int) -> list[int]:
    """Frequencies 3n-2k, k = 1..3n-1, skipping k divisible by 3 (descending)."""
    return [3 * n - 2 * k for k in range(1, 3 * n) if k % 3]


def sample_fourier(fn, maxfreq: int, offset: float = 0.0) -> TrigPoly:
    """Recover a trigonometric polynomial of known maxfreq and parity from samples.

    Samples at u_j = offset + pi j/(d+1); after removing exp(i d u) the
    problem is polynomial interpolation at roots of unity, i.e. one FFT.
    """
    d = maxfreq
    m = d + 1
    u = offset + math.pi * np.arange(m) / m
    g = np.array([complex(fn(x)) for x in u]) * np.exp(-1j * d * u)
    c = np.fft.ifft(g) * np.exp(2j * np.arange(m) * offset)
    return TrigPoly(d, tuple(c))


@dataclass(frozen=True)
class UPartition:
    """u = x_1 and us = (x_2..x_n, y_1..y_n)."""

    u: float
    us: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "us", tuple(float(v) for v in self.us))
        if len(self.us) % 2 == 0:
            raise DimensionMismatch(f"need 2n-1 parameters, got {len(self.us)}")

    @property
    def n(self) -> int:
        return (len(self.us) + 1) // 2

    @classmethod
    def from_config(cls, cfg: SpectralConfig) -> "UPartition":
        return cls(cfg.xs[0], cfg.xs[1:] + cfg.ys)

    def to_config(self, eta: float = ETA_CUBE, u: float | None = None) -> SpectralConfig:
        n = self.n
        u = self.u if u is None else u
        return SpectralConfig(eta, (u,) + self.us[:n - 1], self.us[n - 1:])

    def is_generic(self, threshold: float = GENERIC_THRESHOLD) -> bool:
        return all(abs(math.sin(a - b)) > threshold
                   for a, b in itertools.combinations(self.us, 2))


def f_direct(cfg: SpectralConfig, u) -> float:
    """Z with x_1 = u times prod sin(u - u_i)."""
    part = UPartition.from_config(cfg)
    z = ik_z(cfg.with_x(0, float(u)))
    return z * math.prod(math.sin(u - v) for v in part.us)


def _best_offset(cfg: SpectralConfig, m: int) -> float:
    # keep every sample node away from the zeros of the guarded sines
    eta = cfg.eta
    bad = list(cfg.xs[1:]) + [y + s * eta / 2 for y in cfg.ys for s in (1, -1)]
    best, best_score = 0.0, -1.0
    for k in range(32):
        theta = (k + 0.5) / 32 * math.pi / m
        nodes = theta + math.pi * np.arange(m) / m
        score = min(abs(math.sin(node - b)) for node in nodes for b in bad)
        if score > best_score:
            best, best_score = theta, score
    if best_score < 1e-6:
        raise IllConditioned("no sampling grid avoids the degenerate points")
    return best


def f_from_z(cfg: SpectralConfig, check_eta: bool = True) -> TrigPoly:
    """Fourier coefficients of f(u) = Z(u) prod sin(u - u_i), maxfreq 3n-2.

    ``check_eta=False`` allows other crossing parameters (negative controls).
    """
    if check_eta and not is_cube_root_eta(cfg.eta):
        raise ValueError(f"f_from_z needs eta = 2pi/3, got {cfg.eta!r}")
    if not UPartition.from_config(cfg).is_generic():
        _, pair = cfg.min_pair_sine()
        raise DegenerateParameters(f"parameters {pair} coincide mod pi", pair=pair)
    d = 3 * cfg.n - 2
    offset = _best_offset(cfg, d + 1)
    return sample_fourier(lambda u: f_direct(cfg, u), d, offset)


def cyclic_residual(f: TrigPoly, samples=DEFAULT_SAMPLES) -> float:
    """max |f(u) + f(u + 2pi/3) + f(u + 4pi/3)| / max |f(u)| over the samples."""
    u = np.asarray(samples, dtype=float)
    total = f(u) + f(u + 2 * math.pi / 3) + f(u + 4 * math.pi / 3)
    scale = np.max(np.abs(f(u)))
    return float(np.max(np.abs(total)) / scale)


def third_coeff_check(f: TrigPoly, n: int) -> float:
    """max |b_{3k}| / max |b| for k = 1..n-1, where b_k sits at frequency 3n-2k."""
    if f.maxfreq != 3 * n - 2:
        raise DimensionMismatch(f"expected maxfreq {3 * n - 2}, got {f.maxfreq}")
    mags = np.abs(f.complex_coeffs())
    if n == 1:
        return 0.0
    thirds = [mags[3 * k - 1] for k in range(1, n)]
    return float(max(thirds) / mags.max())


def _system(us: Sequence[float]) -> tuple[int, list[int], np.ndarray]:
    if len(us) % 2 == 0:
        raise DimensionMismatch(f"need 2n-1 parameters, got {len(us)}")
    n = (len(us) + 1) // 2
    freqs = allowed_frequencies(n)
    a = np.exp(1j * np.multiply.outer(np.asarray(us, dtype=float), freqs))
    return n, freqs, a


def _embed(n: int, freqs: list[int], values) -> TrigPoly:
    d = 3 * n - 2
    coeffs = [0j] * (d + 1)
    for f, v in zip(freqs, values):
        coeffs[(d - f) // 2] = complex(v)
    return TrigPoly(d, tuple(coeffs))


def solve_null(us: Sequence[float], small: float = 1e-6, gap: float = 1e-3) -> TrigPoly:
    """The trigonometric polynomial on the allowed frequencies vanishing at every u_j.

    Requires numerical rank 2n-1: padding the singular values of the
    (2n-1) x 2n system with the structural zero, the smallest must be below
    ``small`` and the second smallest above ``gap`` (both relative to the largest).
    """
    n, freqs, a = _system(us)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    sv = np.append(s, 0.0)
    if not (sv[-1] < small * sv[0] and sv[-2] > gap * sv[0]):
        raise RankDeficient(f"singular values {sv} do not isolate a 1-dimensional nullspace")
    return _embed(n, freqs, vh[-1].conj()).normalized()


def _check_block(a: np.ndarray, max_cond: float):
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] == 0 or s[0] / s[-1] > max_cond:
        raise IllConditioned(f"determinant columns are nearly dependent (cond {s[0] / max(s[-1], 1e-300):.3e})")


def p_determinant(u: float, us: Sequence[float], max_cond: float = 1e12) -> complex:
    """det of the 2n x 2n matrix with rows t^w, w in the allowed frequencies,
    and columns t = exp(iu), t_j = exp(i u_j)."""
    n, freqs, a = _system(us)
    _check_block(a.T, max_cond)
    col = np.exp(1j * np.asarray(freqs, dtype=float) * u)
    return complex(np.linalg.det(np.column_stack([col, a.T])))


def p_trigpoly(us: Sequence[float], max_cond: float = 1e12) -> TrigPoly:
    """P as a function of u, by cofactor expansion along the first column."""
    n, freqs, a = _system(us)
    block = a.T
    _check_block(block, max_cond)
    cof = [(-1) ** q * np.linalg.det(np.delete(block, q, axis=0)) for q in range(len(freqs))]
    return _embed(n, freqs, cof)


def ratio_spread(num, den, samples=DEFAULT_SAMPLES) -> tuple[complex, float]:
    """Mean of num(u)/den(u) over the samples and its relative spread."""
    r = np.array([complex(num(u)) / complex(den(u)) for u in samples])
    mean = r.mean()
    return complex(mean), float(np.max(np.abs(r - mean)) / abs(mean))


def union_symmetry_residual(cfg: SpectralConfig, pairs=None) -> float:
    """max over x_i <-> y_j swaps of |Z(swapped) - Z| / |Z|; all n^2 swaps by default."""
    z = ik_z(cfg)
    if pairs is None:
        pairs = itertools.product(range(cfg.n), range(cfg.n))
    return max(abs(ik_z(cfg.swap_xy(i, j)) - z) / abs(z) for i, j in pairs)


def union_constant(cfg: SpectralConfig, samples=DEFAULT_SAMPLES) -> np.ndarray:
    """P / (prod_j sin(u-u_j) prod_{j<j'} sin(u_j-u_j') Z) at each sample u.

    Its u- and parameter-independence is what makes Z symmetric in the
    union of both parameter sets at eta = 2pi/3.
    """
    part = UPartition.from_config(cfg)
    pairs = math.prod(math.sin(a - b) for a, b in itertools.combinations(part.us, 2))
    out = []
    for u in samples:
        p = p_determinant(u, part.us)
        out.append(p / (f_direct(cfg, u) * pairs))
    return np.array(out)


def single_variable_spectrum(cfg: SpectralConfig, var: str, index: int,
                             width: int | None = None) -> dict[int, complex]:
    """Fourier coefficients of Z in one parameter over a full 2pi period.

    ``var`` is "x" or "y"; the FFT resolves frequencies |w| < width/2
    (default 4n + 4), so degree and parity can be read off.
    """
    n = cfg.n
    m = width or 4 * n + 4
    setter = cfg.with_x if var == "x" else cfg.with_y
    others = [v for k, v in enumerate(cfg.xs) if not (var == "x" and k == index)] + \
             [v for k, v in enumerate(cfg.ys) if not (var == "y" and k == index)]
    eta = cfg.eta
    bad = [o + s for o in others for s in (0.0, eta / 2, -eta / 2)]
    best, score = 0.0, -1.0
    for k in range(32):
        theta = (k + 0.5) / 32 * 2 * math.pi / m
        nodes = theta + 2 * math.pi * np.arange(m) / m
        sc = min(abs(math.sin(x - b)) for x in nodes for b in bad)
        if sc > score:
            best, score = theta, sc
    nodes = best + 2 * math.pi * np.arange(m) / m
    vals = np.array([ik_z(setter(index, float(x))) for x in nodes])
    c = np.fft.fft(vals) / m
    freqs = np.fft.fftfreq(m, d=1.0 / m).astype(int)
    return {int(w): complex(ck * np.exp(-1j * w * best)) for w, ck in zip(freqs, c)}


def degree_residual(cfg: SpectralConfig, var: str, index: int) -> float:
    """Relative weight of Fourier modes violating degree <= n-1 or parity (-1)^(n-1)."""
    n = cfg.n
    spec = single_variable_spectrum(cfg, var, index)
    scale = max(abs(v) for v in spec.values())
    bad = [abs(v) for w, v in spec.items() if abs(w) > n - 1 or (w - (n - 1)) % 2]
    return max(bad) / scale if bad else 0.0
