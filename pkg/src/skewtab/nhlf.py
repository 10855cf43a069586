"""Weighted sums over a shape's height functions: hook weights and caps.

The central identity: the number of standard fillings of a skew shape
equals N! divided by the outer hook product, times the sum over all
height functions of the product of hook lengths at cells carrying a
horizontal lozenge.  `count_nhlf` evaluates this exactly in integers;
`partition_function` evaluates arbitrary log weight fields in floating
point through a streaming log-sum accumulator.
"""
from __future__ import annotations

import math
from typing import Callable, Iterable

from .shapes import SkewShape, hook_table
from .tiling import (ENUM_GUARD, HeightFunction, Tiling, _as_region,
                     _decode_up, iter_flat_cells, iter_height_maps)


class LogSum:
    """Streaming accumulator for log(sum of exp(terms)).

    Keeps the running maximum and a rescaled mantissa sum, so the result
    is stable and insensitive to the order terms arrive in.
    """

    __slots__ = ("_max", "_acc", "count")

    def __init__(self):
        self._max = -math.inf
        self._acc = 0.0
        self.count = 0

    def add(self, logw: float) -> "LogSum":
        self.count += 1
        if logw == -math.inf:
            return self
        if logw <= self._max:
            self._acc += math.exp(logw - self._max)
        else:
            self._acc = self._acc * math.exp(self._max - logw) + 1.0
            self._max = logw
        return self

    def merge(self, other: "LogSum") -> "LogSum":
        """Absorb another accumulator in place (exact, no value round trip)."""
        self.count += other.count
        if other._max == -math.inf:
            return self
        if other._max <= self._max:
            self._acc += other._acc * math.exp(other._max - self._max)
        else:
            self._acc = self._acc * math.exp(self._max - other._max) + other._acc
            self._max = other._max
        return self

    @property
    def value(self) -> float:
        if self.count == 0:
            return -math.inf
        return self._max + math.log(self._acc)

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"LogSum(value={self.value!r}, count={self.count})"


class WeightField:
    """Log weight per lozenge, as a function of (type, x, y).

    `cell_logs` is set for fields supported on horizontal lozenges only
    (types 1 and 2 weightless); the enumeration and sampling code uses it
    as a fast path.  `tag` records provenance for run manifests, and
    `capped_cells` lists the cells a capped field actually clipped.
    """

    __slots__ = ("tag", "cell_logs", "capped_cells", "_fn")

    def __init__(self, fn: Callable[[int, int, int], float], tag: str,
                 cell_logs: dict | None = None):
        self._fn = fn
        self.tag = tag
        self.cell_logs = cell_logs
        self.capped_cells = None

    def __call__(self, typ: int, x: int, y: int) -> float:
        return self._fn(typ, x, y)

    def __repr__(self) -> str:
        return f"WeightField({self.tag})"


def uniform_weights() -> WeightField:
    return WeightField(lambda t, x, y: 0.0, "uniform", cell_logs={})


def hook_weights(shape: SkewShape, scale: float | None = None) -> WeightField:
    """log hook length on horizontal lozenges, 0 on the others.

    With `scale` = N the hook is divided by sqrt(N) first (the weighting
    under which the partition function has an N-independent scale).
    """
    table = hook_table(shape.outer)
    half_log = 0.5 * math.log(scale) if scale is not None else 0.0
    logs = {cell: math.log(hv) - half_log for cell, hv in table.items()}
    tag = "hook" if scale is None else f"hook/sqrt({scale:g})"

    def fn(t: int, x: int, y: int) -> float:
        return logs[(x, y)] if t == 3 else 0.0

    return WeightField(fn, tag, cell_logs=logs)


def capped_weights(shape: SkewShape, N: int, eps: float) -> WeightField:
    """Scaled hook weights with the log clipped from below at log(eps)."""
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    base = hook_weights(shape, scale=N)
    flo = math.log(eps)
    logs = {cell: max(lw, flo) for cell, lw in base.cell_logs.items()}
    capped = frozenset(c for c, lw in base.cell_logs.items() if lw < flo)

    def fn(t: int, x: int, y: int) -> float:
        return logs[(x, y)] if t == 3 else 0.0

    w = WeightField(fn, f"hook_capped({eps:g})", cell_logs=logs)
    w.capped_cells = capped
    return w


def custom_weights(fn: Callable[[int, int, int], float],
                   tag: str = "custom") -> WeightField:
    return WeightField(fn, tag)


def tiling_weight(h, w: WeightField) -> float:
    """Total log weight of the tiling encoded by a height function."""
    if isinstance(h, Tiling):
        return sum(w(l.type, l.x, l.y) for l in h.lozenges)
    region = h.region
    hd = h.h
    logs = w.cell_logs
    if logs is not None:
        total = 0.0
        for chain in region.chains.values():
            prev = hd[chain[0]]
            for v in chain[1:]:
                cur = hd[v]
                if cur == prev:
                    total += logs.get(v, 0.0)
                prev = cur
        return total
    total = 0.0
    for p in region.up_triangles():
        typ, anchor = _decode_up(p, hd)
        total += w(typ, anchor[0], anchor[1])
    return total


def partition_function(shape, w: WeightField,
                       guard: int = ENUM_GUARD) -> LogSum:
    """Exhaustive log partition function of the weight field over the shape."""
    region = _as_region(shape)
    acc = LogSum()
    logs = w.cell_logs
    if logs is not None:
        for flats in iter_flat_cells(region, guard):
            acc.add(sum(logs.get(c, 0.0) for c in flats))
        return acc
    for hmap in iter_height_maps(region, guard):
        acc.add(tiling_weight(HeightFunction(region, hmap, validate=False), w))
    return acc


def count_nhlf(shape, guard: int = ENUM_GUARD) -> int:
    """Exact filling count: N!/hookproduct * sum over tilings of hook products.

    All arithmetic is integer; the hook product sum runs over the
    horizontal-lozenge cells of every height function.
    """
    region = _as_region(shape)
    shape = region.shape
    if not shape.outer:
        return 1
    table = hook_table(shape.outer)
    total = 0
    for flats in iter_flat_cells(region, guard):
        term = 1
        for c in flats:
            term *= table[c]
        total += term
    num = math.factorial(shape.size) * total
    den = table.product()
    assert num % den == 0, "hook sum did not divide the factorial evenly"
    return num // den


def cap_gaps(shape, N: int, eps_list: Iterable[float],
             guard: int = ENUM_GUARD) -> list[float]:
    """Per-cell normalized loss of capping, one value per eps, single pass.

    Each gap is (log Z_capped - log Z) / N with both partition functions
    under hook/sqrt(N) weights; capping only raises weights, so gaps are
    nonnegative.
    """
    eps_list = list(eps_list)
    for eps in eps_list:
        if not 0.0 < eps <= 1.0:
            raise ValueError(f"eps must lie in (0, 1], got {eps}")
    region = _as_region(shape)
    base = hook_weights(region.shape, scale=N).cell_logs
    floors = [math.log(e) for e in eps_list]
    capped_tables = [{c: max(lw, flo) for c, lw in base.items()} for flo in floors]
    acc = LogSum()
    acc_eps = [LogSum() for _ in eps_list]
    for flats in iter_flat_cells(region, guard):
        acc.add(sum(base[c] for c in flats))
        for tab, a in zip(capped_tables, acc_eps):
            a.add(sum(tab[c] for c in flats))
    z = acc.value
    return [(a.value - z) / N for a in acc_eps]


def cap_gap(shape, N: int, eps: float, guard: int = ENUM_GUARD) -> float:
    return cap_gaps(shape, N, [eps], guard)[0]
