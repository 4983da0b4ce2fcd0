"""Exhaustive enumeration of domain-wall states and boundary statistics.

A state is walked row by row as a sequence of column masks: bit j of
``masks[i]`` is set when column j has accumulated its +1 above row
boundary i (equivalently the vertical arrow there points down). Row i is
the transition ``masks[i] -> masks[i+1]``; the ASM entry is the bit
difference, and the transition table only admits rows whose partial sums
stay in {0, 1} and end at 1.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import SizeTooLarge
from .model import (Asm, SixVertexState, SpectralConfig, WeightConvention,
                    weights_table)

DEFAULT_CEILING = 8
THREADS_ENV = "SIXVERTEX_THREADS"


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@lru_cache(maxsize=None)
def transitions(n: int) -> dict[int, tuple[int, ...]]:
    """Admissible next masks for every mask of width n."""
    table = {}
    for prev in range(1 << n):
        out = []

        def walk(j, s, nxt):
            if j == n:
                if s == 1:
                    out.append(nxt)
                return
            if (prev >> j) & 1:
                walk(j + 1, s, nxt | (1 << j))
                if s == 1:
                    walk(j + 1, 0, nxt)
            else:
                walk(j + 1, s, nxt)
                if s == 0:
                    walk(j + 1, 1, nxt | (1 << j))

        walk(0, 0, 0)
        table[prev] = tuple(out)
    return table


def _check_size(n: int, ceiling: int | None) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    limit = DEFAULT_CEILING if ceiling is None else ceiling
    if n > limit:
        raise SizeTooLarge(f"n={n} exceeds the enumeration ceiling {limit}")


def mask_paths(n: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every admissible mask sequence (length n+1), optionally fixing masks[1]."""
    succ = transitions(n)
    starts = succ[0] if first is None else (first,)
    path = [0] * (n + 1)
    for start in starts:
        path[1] = start
        stack = [(1, iter(succ[start]))]
        if n == 1:
            yield tuple(path)
            continue
        while stack:
            depth, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                continue
            path[depth + 1] = nxt
            if depth + 1 == n:
                yield tuple(path)
            else:
                stack.append((depth + 1, iter(succ[nxt])))


def asm_from_masks(masks: tuple[int, ...]) -> Asm:
    n = len(masks) - 1
    return Asm([[((masks[i + 1] >> j) & 1) - ((masks[i] >> j) & 1) for j in range(n)]
                for i in range(n)])


def state_from_masks(masks: tuple[int, ...]) -> SixVertexState:
    n = len(masks) - 1
    h = []
    for i in range(n):
        row, s = [1], 0
        for j in range(n):
            s += ((masks[i + 1] >> j) & 1) - ((masks[i] >> j) & 1)
            row.append(1 - 2 * s)
        h.append(row)
    v = [[1 - 2 * ((masks[i] >> j) & 1) for j in range(n)] for i in range(n + 1)]
    return SixVertexState(h, v)


def enumerate_states(n: int, ceiling: int | None = None) -> Iterator[SixVertexState]:
    _check_size(n, ceiling)
    for masks in mask_paths(n):
        yield state_from_masks(masks)


def enumerate_asms(n: int, ceiling: int | None = None) -> Iterator[Asm]:
    _check_size(n, ceiling)
    for masks in mask_paths(n):
        yield asm_from_masks(masks)


def _row_letters(n: int, prev: int, nxt: int) -> str:
    letters, s = [], 0
    for j in range(n):
        top, bot = (prev >> j) & 1, (nxt >> j) & 1
        s_new = s + bot - top
        if s != s_new:
            letters.append("c")
        elif s == 0:
            # arrows right: a when the vertical arrows point up, else b
            letters.append("a" if top == 0 else "b")
        else:
            letters.append("b" if top == 0 else "a")
        s = s_new
    return "".join(letters)


def _partial_z(n: int, cfg: SpectralConfig, conv: WeightConvention, first: int | None):
    table = weights_table(cfg, conv)
    row_cache: dict[tuple[int, int, int], float] = {}

    def row_weight(i, prev, nxt):
        key = (i, prev, nxt)
        w = row_cache.get(key)
        if w is None:
            w = 1.0
            for j, letter in enumerate(_row_letters(n, prev, nxt)):
                w *= table[i][j][letter]
            row_cache[key] = w
        return w

    terms = []
    for masks in mask_paths(n, first):
        w = 1.0
        for i in range(n):
            w *= row_weight(i, masks[i], masks[i + 1])
        terms.append(w)
    return math.fsum(terms)


def _pool_map(fn, args, threads):
    if threads is None or threads <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(threads, len(args))) as pool:
        return list(pool.map(fn, *zip(*args)))


def brute_z(cfg: SpectralConfig, conv=WeightConvention.SIGNED, ceiling: int | None = None,
            threads: int | None = None) -> float:
    """Sum of state weights over all domain-wall states."""
    conv = WeightConvention.parse(conv)
    n = cfg.n
    _check_size(n, ceiling)
    firsts = transitions(n)[0]
    parts = _pool_map(_partial_z, [(n, cfg, conv, f) for f in firsts], threads)
    return math.fsum(parts)


@dataclass(frozen=True)
class CountTable:
    """Exact boundary statistics; ``data`` is 0-based storage, :meth:`get` is 1-based.

    ``double_top_left`` stores C(n; r, rt) for r, rt in [2, n].
    """

    n: int
    kind: str
    data: tuple

    def _offset(self) -> int:
        return 2 if self.kind == "double_top_left" else 1

    def get(self, r: int, rt: int | None = None, default: int | None = None) -> int:
        lo, hi = self._offset(), self.n
        idx = (r,) if rt is None else (r, rt)
        if any(k < lo or k > hi for k in idx):
            if default is not None:
                return default
            raise IndexError(f"index {idx} outside [{lo}, {hi}] for {self.kind}")
        if rt is None:
            return self.data[r - lo]
        return self.data[r - lo][rt - lo]

    def total(self) -> int:
        if self.kind == "refined_top":
            return sum(self.data)
        return sum(sum(row) for row in self.data)

    def as_lists(self):
        if self.kind == "refined_top":
            return list(self.data)
        return [list(row) for row in self.data]


@dataclass(frozen=True)
class BoundaryStats:
    n: int
    total: int
    refined: tuple[int, ...]
    top_bottom: tuple[tuple[int, ...], ...]
    top_left: tuple[tuple[int, ...], ...]  # full n x n, [r-1][rt-1]
    corner: int  # states with the top-row 1 in column 1


def _partial_stats(n: int, first: int | None):
    refined = [0] * n
    tb = [[0] * n for _ in range(n)]
    tl = [[0] * n for _ in range(n)]
    full = (1 << n) - 1
    total = 0
    for masks in mask_paths(n, first):
        total += 1
        r = masks[1].bit_length() - 1
        rb = (full ^ masks[n - 1]).bit_length() - 1
        rl = next(i for i in range(n) if masks[i + 1] & 1)
        refined[r] += 1
        tb[r][rb] += 1
        tl[r][rl] += 1
    return total, refined, tb, tl


@lru_cache(maxsize=16)
def _stats(n: int, threads: int | None) -> BoundaryStats:
    firsts = transitions(n)[0]
    parts = _pool_map(_partial_stats, [(n, f) for f in firsts], threads)
    total = sum(p[0] for p in parts)
    refined = [sum(p[1][r] for p in parts) for r in range(n)]
    tb = [[sum(p[2][r][c] for p in parts) for c in range(n)] for r in range(n)]
    tl = [[sum(p[3][r][c] for p in parts) for c in range(n)] for r in range(n)]
    return BoundaryStats(n, total, tuple(refined), tuple(map(tuple, tb)),
                         tuple(map(tuple, tl)), tl[0][0])


def boundary_stats(n: int, ceiling: int | None = None, threads: int | None = None) -> BoundaryStats:
    """All boundary statistics of order-n ASMs in a single enumeration pass."""
    _check_size(n, ceiling)
    return _stats(n, threads)


def count_states(n: int, ceiling: int | None = None, threads: int | None = None) -> int:
    return boundary_stats(n, ceiling, threads).total


def refined_top(n: int, ceiling: int | None = None, threads: int | None = None) -> CountTable:
    return CountTable(n, "refined_top", boundary_stats(n, ceiling, threads).refined)


def double_top_bottom(n: int, ceiling: int | None = None, threads: int | None = None) -> CountTable:
    return CountTable(n, "double_top_bottom", boundary_stats(n, ceiling, threads).top_bottom)


def double_top_left(n: int, ceiling: int | None = None,
                    threads: int | None = None) -> tuple[int, CountTable]:
    st = boundary_stats(n, ceiling, threads)
    data = tuple(tuple(row[1:]) for row in st.top_left[1:])
    return st.corner, CountTable(n, "double_top_left", data)
