"""Lattice states, vertex weights and the state <-> ASM bijection.

Edges are encoded as +/-1. A horizontal edge is +1 when its arrow points
right, a vertical edge is +1 when its arrow points up. With domain-wall
boundaries, row i of the lattice has ``h[i][0] = +1`` and ``h[i][n] = -1``;
column j has ``v[0][j] = +1`` and ``v[n][j] = -1``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import DegenerateEta, IceViolation, InvalidConvention

ETA_CUBE = 2 * math.pi / 3
GENERIC_THRESHOLD = 1e-8
ETA_TOL = 1e-12


class WeightConvention(enum.Enum):
    SIGNED = "signed"
    COUNTING = "counting"

    @classmethod
    def parse(cls, value) -> "WeightConvention":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class VertexKind(NamedTuple):
    letter: str
    variant: int


# (h_left, h_right, v_top, v_bottom) -> kind
_VERTEX_TABLE = {
    (+1, +1, +1, +1): VertexKind("a", 1),
    (-1, -1, -1, -1): VertexKind("a", 2),
    (+1, +1, -1, -1): VertexKind("b", 1),
    (-1, -1, +1, +1): VertexKind("b", 2),
    (+1, -1, +1, -1): VertexKind("c", 1),
    (-1, +1, -1, +1): VertexKind("c", 2),
}


def is_cube_root_eta(eta: float, tol: float = ETA_TOL) -> bool:
    return abs(eta - ETA_CUBE) <= tol


def classify_vertex(h_left: int, h_right: int, v_top: int, v_bottom: int) -> VertexKind:
    key = (h_left, h_right, v_top, v_bottom)
    try:
        return _VERTEX_TABLE[key]
    except KeyError:
        raise IceViolation(f"arrow pattern {key} violates the ice rule") from None


def boltzmann_weight(kind: VertexKind | str, delta: float, eta: float,
                     convention=WeightConvention.SIGNED, tol: float = GENERIC_THRESHOLD) -> float:
    """Weight of a vertex of the given kind at spectral difference ``delta = x - y``.

    ``signed``:   a = sin(delta + eta/2)/sin(eta), b = sin(delta - eta/2)/sin(eta)
    ``counting``: a = 2/sqrt(3) sin(pi/3 + delta), b = 2/sqrt(3) sin(pi/3 - delta),
                  only at eta = 2pi/3.
    c is 1 in both.
    """
    letter = kind if isinstance(kind, str) else kind.letter
    convention = WeightConvention.parse(convention)
    s = math.sin(eta)
    if abs(s) < tol:
        raise DegenerateEta(f"|sin(eta)| = {abs(s):.3e} is below {tol:g}")
    if convention is WeightConvention.COUNTING and not is_cube_root_eta(eta):
        raise InvalidConvention(f"counting weights need eta = 2pi/3, got {eta!r}")
    if letter == "c":
        return 1.0
    if convention is WeightConvention.SIGNED:
        if letter == "a":
            return math.sin(delta + eta / 2) / s
        if letter == "b":
            return math.sin(delta - eta / 2) / s
    else:
        k = 2 / math.sqrt(3)
        if letter == "a":
            return k * math.sin(math.pi / 3 + delta)
        if letter == "b":
            return k * math.sin(math.pi / 3 - delta)
    raise ValueError(f"unknown vertex letter {letter!r}")


@dataclass(frozen=True)
class SpectralConfig:
    """Crossing parameter plus row (``xs``, top row first) and column (``ys``) parameters."""

    eta: float
    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "ys", tuple(float(y) for y in self.ys))
        object.__setattr__(self, "eta", float(self.eta))
        if len(self.xs) != len(self.ys):
            raise ValueError(f"got {len(self.xs)} row and {len(self.ys)} column parameters")
        if len(self.xs) < 1:
            raise ValueError("lattice size must be at least 1")

    @property
    def n(self) -> int:
        return len(self.xs)

    @classmethod
    def homogeneous(cls, n: int, eta: float = ETA_CUBE, u: float = 0.0) -> "SpectralConfig":
        """All parameters zero except x_1 = u."""
        return cls(eta, (u,) + (0.0,) * (n - 1), (0.0,) * n)

    def labelled(self) -> list[tuple[str, float]]:
        return ([(f"x{i + 1}", x) for i, x in enumerate(self.xs)]
                + [(f"y{j + 1}", y) for j, y in enumerate(self.ys)])

    def min_pair_sine(self) -> tuple[float, tuple[str, str] | None]:
        """Smallest |sin(u - v)| over distinct pairs of xs+ys, with the pair's labels."""
        best, pair = math.inf, None
        for (la, a), (lb, b) in itertools.combinations(self.labelled(), 2):
            s = abs(math.sin(a - b))
            if s < best:
                best, pair = s, (la, lb)
        return best, pair

    def is_generic(self, threshold: float = GENERIC_THRESHOLD) -> bool:
        return self.min_pair_sine()[0] > threshold

    def with_x(self, i: int, value: float) -> "SpectralConfig":
        xs = list(self.xs)
        xs[i] = value
        return SpectralConfig(self.eta, xs, self.ys)

    def with_y(self, j: int, value: float) -> "SpectralConfig":
        ys = list(self.ys)
        ys[j] = value
        return SpectralConfig(self.eta, self.xs, ys)

    def swap_xy(self, i: int, j: int) -> "SpectralConfig":
        """Exchange x_i and y_j (0-based)."""
        return self.with_x(i, self.ys[j]).with_y(j, self.xs[i])


def _as_rows(a) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(e) for e in row) for row in a)


@dataclass(frozen=True)
class SixVertexState:
    """Arrow orientations: ``h`` is n x (n+1), ``v`` is (n+1) x n."""

    h: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "h", _as_rows(self.h))
        object.__setattr__(self, "v", _as_rows(self.v))

    @property
    def n(self) -> int:
        return len(self.h)

    def vertex(self, i: int, j: int) -> tuple[int, int, int, int]:
        return self.h[i][j], self.h[i][j + 1], self.v[i][j], self.v[i + 1][j]

    def kinds(self) -> list[list[VertexKind]]:
        n = self.n
        return [[classify_vertex(*self.vertex(i, j)) for j in range(n)] for i in range(n)]

    def validate(self) -> None:
        n = self.n
        if any(len(row) != n + 1 for row in self.h) or len(self.v) != n + 1 \
                or any(len(row) != n for row in self.v):
            raise ValueError("edge arrays have the wrong shape")
        for i in range(n):
            if self.h[i][0] != 1 or self.h[i][n] != -1:
                raise ValueError(f"row {i + 1} violates the domain-wall boundary")
        for j in range(n):
            if self.v[0][j] != 1 or self.v[n][j] != -1:
                raise ValueError(f"column {j + 1} violates the domain-wall boundary")
        self.kinds()


@dataclass(frozen=True)
class Asm:
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "m", _as_rows(self.m))

    @property
    def n(self) -> int:
        return len(self.m)

    def validate(self) -> None:
        n = self.n
        lines = list(self.m) + [tuple(self.m[i][j] for i in range(n)) for j in range(n)]
        for line in lines:
            if len(line) != n:
                raise ValueError("matrix is not square")
            nz = [e for e in line if e != 0]
            if any(e not in (-1, 1) for e in nz) or not nz or nz[0] != 1 \
                    or any(a == b for a, b in zip(nz, nz[1:])) or nz[-1] != 1:
                raise ValueError(f"line {line} does not alternate in sign from +1 to +1")

    def top_one(self) -> int:
        """1-based column of the 1 in the top row."""
        return self.m[0].index(1) + 1

    def bottom_one(self) -> int:
        return self.m[-1].index(1) + 1

    def left_one(self) -> int:
        """1-based row of the 1 in the left column."""
        return [row[0] for row in self.m].index(1) + 1

    def minus_ones(self) -> int:
        return sum(row.count(-1) for row in self.m)


def asm_from_state(s: SixVertexState) -> Asm:
    n = s.n
    m = [[(s.h[i][j] - s.h[i][j + 1]) // 2 for j in range(n)] for i in range(n)]
    return Asm(m)


def state_from_asm(a: Asm) -> SixVertexState:
    n = a.n
    h = [[1 - 2 * sum(a.m[i][:j]) for j in range(n + 1)] for i in range(n)]
    v = [[1 - 2 * sum(a.m[k][j] for k in range(i)) for j in range(n)] for i in range(n + 1)]
    return SixVertexState(h, v)


def state_weight(s: SixVertexState, cfg: SpectralConfig, conv=WeightConvention.SIGNED) -> float:
    if s.n != cfg.n:
        raise ValueError(f"state has n={s.n}, config has n={cfg.n}")
    w = 1.0
    for i, row in enumerate(s.kinds()):
        for j, kind in enumerate(row):
            w *= boltzmann_weight(kind, cfg.xs[i] - cfg.ys[j], cfg.eta, conv)
    return w


def count_letters(s: SixVertexState) -> dict[str, int]:
    counts = {"a": 0, "b": 0, "c": 0}
    for row in s.kinds():
        for kind in row:
            counts[kind.letter] += 1
    return counts


def weights_table(cfg: SpectralConfig, conv=WeightConvention.SIGNED) -> list[list[dict[str, float]]]:
    """Per-vertex weights ``table[i][j][letter]``."""
    return [[{letter: boltzmann_weight(letter, x - y, cfg.eta, conv) for letter in "abc"}
             for y in cfg.ys] for x in cfg.xs]


def random_config(rng, n: int, eta: float = ETA_CUBE, low: float = 0.0,
                  high: float = math.pi / 2, threshold: float = GENERIC_THRESHOLD,
                  guard=None, max_tries: int = 1000) -> SpectralConfig:
    """Draw parameters uniformly from (low, high), rejecting non-generic draws.

    ``guard`` is an optional extra predicate the config must satisfy.
    """
    for _ in range(max_tries):
        vals = rng.uniform(low, high, size=2 * n)
        cfg = SpectralConfig(eta, vals[:n], vals[n:])
        if cfg.is_generic(threshold) and (guard is None or guard(cfg)):
            return cfg
    raise RuntimeError("could not draw a generic configuration")
