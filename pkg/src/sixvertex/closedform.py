"""Exact counting formulas for refined and doubly refined ASM statistics.

Everything here is exact (``int`` and ``fractions.Fraction``); floats
appear only where a trigonometric function has to be evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .errors import NearSingular, NonIntegerQuotient, OutOfRange, TableMismatch
from .rootuni import TrigPoly


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return q


@lru_cache(maxsize=None)
def a_total(n: int) -> int:
    """Number of n x n ASMs via A_{k+1}/A_k = (3k+1)! k! / ((2k+1)! (2k)!), A_1 = 1."""
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    a = 1
    for k in range(1, n):
        f = math.factorial
        a = _exact_div(a * f(3 * k + 1) * f(k), f(2 * k + 1) * f(2 * k))
    return a


@lru_cache(maxsize=None)
def a_refined(n: int, r: int) -> int:
    """A(n, r): ASMs of order n with the top-row 1 in column r.

    A(n,r) = A_{n-1} binom(n+r-2, r-1) binom(2n-r-1, n-r) / binom(2n-2, n-1),
    which is the factorial formula with the quotient taken last.
    """
    if not 1 <= r <= n:
        raise OutOfRange(f"r={r} outside [1, {n}]")
    if n == 1:
        return 1
    num = a_total(n - 1) * math.comb(n + r - 2, r - 1) * math.comb(2 * n - r - 1, n - r)
    return _exact_div(num, math.comb(2 * n - 2, n - 1))


def recursion_check(n: int, r: int) -> bool:
    """(2n-r-1) r A(n,r+1) == (n-r)(n+r-1) A(n,r)."""
    if not 1 <= r <= n - 1:
        raise OutOfRange(f"r={r} outside [1, {n - 1}]")
    return (2 * n - r - 1) * r * a_refined(n, r + 1) == (n - r) * (n + r - 1) * a_refined(n, r)


@dataclass(frozen=True)
class IntPoly:
    """Univariate polynomial with exact coefficients in ascending powers of t."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, *coeffs) -> "IntPoly":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPoly") -> "IntPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self[k] + other[k] for k in range(size)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if not isinstance(other, IntPoly):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def deriv(self) -> "IntPoly":
        return IntPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


T = IntPoly.of(0, 1)
ONE = IntPoly.of(1)


def gen_poly(n: int) -> IntPoly:
    """A(t) = sum_r A(n,r) t^(n-r)."""
    return IntPoly(tuple(a_refined(n, n - k) for k in range(n)))


def ode_residual_A(n: int) -> IntPoly:
    """t(1-t) A'' + 2(1-n-t) A' + n(n-1) A; identically zero."""
    a = gen_poly(n)
    d1 = a.deriv()
    d2 = d1.deriv()
    return (T * (ONE - T)) * d2 + (IntPoly.of(2 * (1 - n), -2)) * d1 + a * (n * (n - 1))


def gbinom(alpha: Fraction, m: int) -> Fraction:
    """Generalized binomial coefficient as a falling-factorial product."""
    out = Fraction(1)
    for j in range(m):
        out *= Fraction(alpha - j, m - j)
    return out


def f_closed_coefficients(n: int) -> list[tuple[int, Fraction]]:
    """(frequency 4-3n+6m, binom(n-4/3, m) binom(n-2/3, n-m-1)) for m = 0..n-1."""
    return [(4 - 3 * n + 6 * m,
             gbinom(Fraction(3 * n - 4, 3), m) * gbinom(Fraction(3 * n - 2, 3), n - m - 1))
            for m in range(n)]


def f_closed(n: int) -> TrigPoly:
    """sum_m binom(n-4/3, m) binom(n-2/3, n-m-1) sin((4-3n+6m) u), exact coefficients.

    Stored in the exponential basis with coefficients +beta at w and -beta
    at -w and scale 1/(2i).
    """
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    d = 3 * n - 2
    coeffs = [Fraction(0)] * (d + 1)
    for w, beta in f_closed_coefficients(n):
        coeffs[(d - w) // 2] += beta
        coeffs[(d + w) // 2] -= beta
    return TrigPoly(d, tuple(coeffs), scale=-0.5j)


def f_closed_value(n: int, u: float, dps: int = 40) -> float:
    """f_closed(n) at u, summed in ``dps``-digit arithmetic.

    Near u = 0 the sine sum cancels down to O(u^(2n-1)), so double
    precision loses most of its digits there.
    """
    with mpmath.workdps(dps):
        x = mpmath.mpf(u)
        total = mpmath.fsum(mpmath.mpf(beta.numerator) / beta.denominator * mpmath.sin(w * x)
                            for w, beta in f_closed_coefficients(n))
        return float(total)


def derivatives_at_zero(n: int) -> list[Fraction]:
    """Exact parts of f^(l)(0), l = 0..2n-2 (the i^l and scale factors dropped)."""
    f = f_closed(n)
    return [sum((c * w ** l for c, w in zip(f.coeffs, f.frequencies())), Fraction(0))
            for l in range(2 * n - 1)]


def moment_relations(n: int) -> list[Fraction]:
    """sum_m b+_m w_m p(w_m^2) for p(x) = x^lam, lam = 0..n-2; all vanish."""
    coeffs = f_closed_coefficients(n)
    return [sum((beta * w ** (2 * lam + 1) for w, beta in coeffs), Fraction(0))
            for lam in range(n - 1)]


def ode_residual_f(n: int, u: float, tol: float = 1e-8, dps: int = 40) -> float:
    """|f'' - 6(n-1) cot(3u) f' - (3n-2)(3n-4) f| / max |term| at u, f = f_closed(n).

    Derivatives come from multiplying each coefficient by its frequency;
    the sums are taken in ``dps``-digit arithmetic.
    """
    s3 = math.sin(3 * u)
    if abs(s3) < tol:
        raise NearSingular(f"sin(3u) = {s3:.3e} at u = {u}")
    with mpmath.workdps(dps):
        x = mpmath.mpf(u)
        f = d1 = d2 = mpmath.mpf(0)
        for w, beta in f_closed_coefficients(n):
            b = mpmath.mpf(beta.numerator) / beta.denominator
            f += b * mpmath.sin(w * x)
            d1 += b * w * mpmath.cos(w * x)
            d2 -= b * w * w * mpmath.sin(w * x)
        terms = [d2, -6 * (n - 1) * mpmath.cot(3 * x) * d1, -(3 * n - 2) * (3 * n - 4) * f]
        scale = max(abs(t) for t in terms)
        return float(abs(mpmath.fsum(terms)) / scale)


def counting_ratio(u: float) -> float:
    """b(u)/a(u) with the counting weights at eta = 2pi/3."""
    return math.sin(math.pi / 3 - u) / math.sin(math.pi / 3 + u)


def f_product_form(n: int, u: float, refined=None) -> float:
    """sin^(2n-1)(u) sin^(n-1)(u + pi/3) sum_r A(n,r) (b/a)^(n-r).

    ``refined`` is the list [A(n,1), ..., A(n,n)]; defaults to the closed form.
    """
    if refined is None:
        refined = [a_refined(n, r) for r in range(1, n + 1)]
    t = counting_ratio(u)
    poly = sum(a * t ** (n - r) for r, a in enumerate(refined, start=1))
    return math.sin(u) ** (2 * n - 1) * math.sin(u + math.pi / 3) ** (n - 1) * poly


def f_closed_vs_product(n: int, samples, refined=None) -> tuple[float, float]:
    """Ratio f_closed / product form averaged over the samples, and its relative spread."""
    r = np.array([f_closed_value(n, u) / f_product_form(n, u, refined) for u in samples])
    mean = r.mean()
    return float(mean), float(np.max(np.abs(r - mean)) / abs(mean))


@dataclass
class ExactReport:
    identity: str
    n: int
    cells: int = 0
    details: dict = field(default_factory=dict)
    passed: bool = True


def _tables(n: int, tables):
    if tables is not None:
        return tables
    from .enumeration import double_top_bottom, double_top_left
    corner, c = double_top_left(n)
    return double_top_bottom(n), corner, c


def bc_relations(n: int, tables=None) -> ExactReport:
    """Check the top-bottom / top-left relations cell by cell.

    * A(n,1) = C(n;2,2) (n >= 2)
    * B(n;r,rt) = [r=rt=1] A(n,1) + C(n;r,rt+1) + C(n;r+1,rt) - C(n;r+1,rt+1)
    * C(n;r,2) - C(n;r+1,2) = B(n;r,1) = A(n-1,r-1), r >= 2

    C with an index outside [2, n] is taken as 0. ``tables`` is
    (B, A(n,1), C) as returned by the enumeration module.
    """
    b, corner, c = _tables(n, tables)

    def C(r, rt):
        return c.get(r, rt, default=0)

    rep = ExactReport("bc_relations", n)
    if n >= 2:
        rep.cells += 1
        if corner != C(2, 2):
            raise TableMismatch(f"A({n},1)={corner} but C({n};2,2)={C(2, 2)}", cell=(2, 2))
    for r in range(1, n + 1):
        for rt in range(1, n + 1):
            rhs = C(r, rt + 1) + C(r + 1, rt) - C(r + 1, rt + 1)
            if r == rt == 1:
                rhs += corner
            rep.cells += 1
            if b.get(r, rt) != rhs:
                raise TableMismatch(f"B({n};{r},{rt})={b.get(r, rt)} but C-combination gives {rhs}",
                                    cell=(r, rt))
    for r in range(2, n + 1):
        diff = C(r, 2) - C(r + 1, 2)
        rep.cells += 1
        if not diff == b.get(r, 1) == a_refined(n - 1, r - 1):
            raise TableMismatch(
                f"C({n};{r},2)-C({n};{r + 1},2)={diff}, B({n};{r},1)={b.get(r, 1)}, "
                f"A({n - 1},{r - 1})={a_refined(n - 1, r - 1)}", cell=(r, 2))
    return rep


def b_identity(n: int, tables=None) -> ExactReport:
    """B(n;r+1,rt+1) - B(n;r,rt) against the refined numbers, for r, rt in [1, n-1]."""
    b, _, _ = _tables(n, tables)
    A = a_refined
    rep = ExactReport("b_identity", n)
    for r in range(1, n):
        for rt in range(1, n):
            num = (A(n - 1, r) * (A(n, rt + 1) - A(n, rt))
                   + A(n - 1, rt) * (A(n, r + 1) - A(n, r)))
            q, rem = divmod(num, A(n, 1))
            rep.cells += 1
            if rem:
                raise NonIntegerQuotient(f"{num} not divisible by A({n},1)={A(n, 1)}", cell=(r, rt))
            lhs = b.get(r + 1, rt + 1) - b.get(r, rt)
            if lhs != q:
                raise TableMismatch(f"cell ({r},{rt}): B difference {lhs} vs {q}", cell=(r, rt))
    return rep


def _gh(n: int) -> tuple[IntPoly, IntPoly]:
    a = gen_poly(n)
    half = Fraction(1, 2)
    g = (ONE - T) * a
    h = (IntPoly.of(1, 1) * (n - half)) * a \
        + (IntPoly.of(1, -1) * IntPoly.of(half, -1)) * (a * (1 - n)) \
        - (IntPoly.of(1, -1) * IntPoly.of(1, -1, 1)) * a.deriv()
    return g, h


def divided_difference(g: IntPoly, h: IntPoly) -> dict[tuple[int, int], Fraction]:
    """(H(t)G(s) - H(s)G(t)) / (t - s) as {(deg_t, deg_s): coefficient}, exactly."""
    num: dict[tuple[int, int], Fraction] = {}
    for i, hc in enumerate(h.coeffs):
        for j, gc in enumerate(g.coeffs):
            num[(i, j)] = num.get((i, j), 0) + hc * gc
            num[(j, i)] = num.get((j, i), 0) - hc * gc
    # synthetic division in t: coefficients are polynomials in s (dicts)
    deg_t = max((i for i, _ in num), default=0)
    rows = [{} for _ in range(deg_t + 1)]
    for (i, j), v in num.items():
        rows[i][j] = rows[i].get(j, 0) + v
    quotient = [dict() for _ in range(deg_t)]
    carry: dict[int, Fraction] = {}
    for i in range(deg_t, 0, -1):
        q = dict(rows[i])
        for j, v in carry.items():
            q[j + 1] = q.get(j + 1, 0) + v
        quotient[i - 1] = q
        carry = q
    remainder = dict(rows[0])
    for j, v in carry.items():
        remainder[j + 1] = remainder.get(j + 1, 0) + v
    if any(v != 0 for v in remainder.values()):
        raise ArithmeticError("numerator is not divisible by (t - s)")
    return {(i, j): v for i, q in enumerate(quotient) for j, v in q.items() if v != 0}


def double_gen_check(n: int, tables=None) -> ExactReport:
    """sum B(n;r,rt) t^(n-r) s^(rt-1) == const (H(t)G(s) - H(s)G(t))/(t - s), const fitted."""
    b, _, _ = _tables(n, tables)
    lhs = {(n - r, rt - 1): Fraction(b.get(r, rt))
           for r in range(1, n + 1) for rt in range(1, n + 1) if b.get(r, rt)}
    g, h = _gh(n)
    rhs = divided_difference(g, h)
    key = next(iter(sorted(rhs)), None)
    if key is None or key not in lhs:
        raise TableMismatch(f"supports differ at {key}", cell=key)
    const = lhs[key] / rhs[key]
    rep = ExactReport("double_gen_check", n, details={"const": const})
    for k in sorted(set(lhs) | set(rhs)):
        rep.cells += 1
        if lhs.get(k, 0) != const * rhs.get(k, 0):
            r, rt = n - k[0], k[1] + 1
            raise TableMismatch(f"coefficient of t^{k[0]} s^{k[1]}: {lhs.get(k, 0)} vs "
                                f"{const * rhs.get(k, 0)}", cell=(r, rt))
    return rep
