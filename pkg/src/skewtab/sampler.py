"""Single-site Metropolis dynamics over a region's height functions.

The chain proposes, at a uniformly random free vertex, the other legal
height value (each free vertex has at most two), and accepts with the
Metropolis rule min(1, exp(delta log weight)).  The proposal is its own
inverse, so detailed balance holds for any weight field.

`estimate_logZ` wires the same kernel into a two leg annealed importance
sampler.  Leg one starts from the pointwise lowest height function, whose
pinning potential makes the start distribution effectively a point mass,
and relaxes the pin along a ladder of decreasing strengths kappa; leg two
turns on the weight field along an inverse temperature schedule.  Jackknife
resampling over particles gives the standard error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .nhlf import WeightField, tiling_weight, uniform_weights
from .tiling import (HeightFunction, Tiling, _as_region, _decode_up,
                     _flip_interval, heights_to_tiling, iter_height_maps,
                     minimal_extension)

REVALIDATE_EVERY = 1_000_000


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


class ChainState:
    """Mutable Metropolis state: heights, cached log weight, counters."""

    __slots__ = ("region", "weights", "h", "logw", "rng", "seed",
                 "step_count", "free", "_next_check")

    def __init__(self, region, weights: WeightField, h: dict, seed: int):
        self.region = region
        self.weights = weights
        self.h = dict(h)
        self.rng = _rng(seed)
        self.seed = seed
        self.step_count = 0
        self.free = region.free
        self.logw = self._full_logw()
        self._next_check = REVALIDATE_EVERY

    @classmethod
    def start(cls, shape_or_region, weights: WeightField | None = None,
              seed: int = 0) -> "ChainState":
        """Fresh chain at the pointwise lowest height function."""
        region = _as_region(shape_or_region)
        if weights is None:
            weights = uniform_weights()
        h = minimal_extension(region.fixed, region).h
        if not region.mask_ok(h):
            raise ValueError("lowest extension leaves the support mask")
        return cls(region, weights, h, seed)

    def _full_logw(self) -> float:
        return tiling_weight(HeightFunction(self.region, self.h,
                                            validate=False), self.weights)

    def revalidate(self) -> float:
        """Recompute the cached log weight; returns the drift it absorbed."""
        fresh = self._full_logw()
        drift = fresh - self.logw
        self.logw = fresh
        return drift

    def height_function(self) -> HeightFunction:
        return HeightFunction(self.region, self.h, validate=False)

    def __repr__(self) -> str:
        return (f"ChainState(seed={self.seed}, steps={self.step_count}, "
                f"logw={self.logw:.6g})")


def _delta_logw(region, hd: dict, v, new: int, w: WeightField) -> float:
    """Log weight change of setting h[v] = new, via the three triangles at v."""
    logs = w.cell_logs
    i, j = v
    old = hd[v]
    if logs is not None:
        # only horizontal lozenges at cells v and v + e3 can toggle
        delta = 0.0
        p3 = (i - 1, j - 1)
        if p3 in region.vertices:
            lw = logs.get(v, 0.0)
            delta += lw * ((new == hd[p3]) - (old == hd[p3]))
        q3 = (i + 1, j + 1)
        if q3 in region.vertices:
            lw = logs.get(q3, 0.0)
            delta += lw * ((hd[q3] == new) - (hd[q3] == old))
        return delta
    ups = []
    for p in (v, (i - 1, j), (i - 1, j - 1)):
        if (
            p in region.vertices
            and (p[0] + 1, p[1]) in region.vertices
            and (p[0] + 1, p[1] + 1) in region.vertices
        ):
            ups.append(p)
    before = 0.0
    for p in ups:
        typ, a = _decode_up(p, hd)
        before += w(typ, a[0], a[1])
    hd[v] = new
    after = 0.0
    for p in ups:
        typ, a = _decode_up(p, hd)
        after += w(typ, a[0], a[1])
    hd[v] = old
    return after - before


def glauber_step(state: ChainState, w: WeightField | None = None) -> ChainState:
    """One Metropolis proposal at a uniform free vertex; mutates the state.

    Passing a field other than the state's own is allowed but makes the
    cached log weight track the passed field from here on.
    """
    if w is None:
        w = state.weights
    free = state.free
    state.step_count += 1
    if not free:
        return state
    v = free[int(state.rng.integers(len(free)))]
    hd = state.h
    lo, hi = _flip_interval(state.region, hd, v)
    if hi <= lo:
        return state
    new = lo + hi - hd[v]
    delta = _delta_logw(state.region, hd, v, new, w)
    if delta >= 0 or state.rng.random() < math.exp(delta):
        hd[v] = new
        state.logw += delta
    if state.step_count >= state._next_check:
        state._next_check += REVALIDATE_EVERY
        state.revalidate()
    return state


def sample(shape, w: WeightField | None = None, burn_in: int | None = None,
           n_samples: int = 100, thin: int | None = None,
           seed: int = 0) -> list[Tiling]:
    """Draw tilings from the weight field's Gibbs measure.

    Defaults: burn_in = 20 * (number of vertices)^2 proposals, thinning of
    one sweep (one proposal per free vertex) between draws.  Fixed seed,
    fixed output.
    """
    region = _as_region(shape)
    if w is None:
        w = uniform_weights()
    if burn_in is None:
        burn_in = 20 * len(region.vertices) ** 2
    if thin is None:
        thin = max(1, len(region.free))
    if burn_in < 0 or thin < 1 or n_samples < 0:
        raise ValueError("burn_in >= 0, thin >= 1 and n_samples >= 0 required")
    state = ChainState.start(region, w, seed)
    for _ in range(burn_in):
        glauber_step(state)
    out = []
    for _ in range(n_samples):
        for _ in range(thin):
            glauber_step(state)
        out.append(heights_to_tiling(state.height_function()))
    return out


@dataclass
class DensityField:
    """Per up-triangle frequencies of the three lozenge types."""

    region: object
    anchors: tuple
    freqs: np.ndarray  # shape (len(anchors), 3), rows sum to 1
    n: int

    def rows(self):
        for (x, y), f in zip(self.anchors, self.freqs):
            yield x, y, float(f[0]), float(f[1]), float(f[2]), self.n


def density(samples: list[Tiling]) -> DensityField:
    """Empirical lozenge type frequencies per upward triangle."""
    if not samples:
        raise ValueError("density needs at least one sample")
    region = samples[0].region
    if region is None or any(t.region is not region for t in samples):
        raise ValueError("samples must share one region")
    ups = region.up_triangles()
    index = {p: k for k, p in enumerate(ups)}
    counts = np.zeros((len(ups), 3))
    for t in samples:
        for l in t.lozenges:
            if l.type == 3:
                p = (l.x - 1, l.y - 1)
            elif l.type == 1:
                p = (l.x, l.y)
            else:
                p = (l.x, l.y + 1)
            counts[index[p], l.type - 1] += 1
    return DensityField(region, ups, counts / len(samples), len(samples))


@dataclass
class LogZEstimate:
    """Annealed importance sampling output with a jackknife standard error."""

    value: float
    stderr: float
    particles: int
    schedule: tuple
    baseline: str
    log_count: float | None = None
    kappa_levels: tuple = field(default=(), repr=False)

    def __float__(self) -> float:
        return self.value


def _check_schedule(schedule) -> list[float]:
    s = [float(b) for b in schedule]
    if not s:
        raise ValueError("schedule must not be empty")
    if abs(s[0]) > 1e-12:
        raise ValueError(f"schedule must start at 0, got {s[0]}")
    for a, b in zip(s, s[1:]):
        if b < a:
            raise ValueError(f"schedule must be nondecreasing, got {a} -> {b}")
    if s[-1] > 1.0 + 1e-12:
        raise ValueError(f"schedule must end at or below 1, got {s[-1]}")
    return s


def estimate_logZ(shape, w: WeightField | None = None, schedule=None,
                  sweeps_per_level: int = 12, particles: int = 64,
                  seed: int = 0, baseline: str = "mcmc",
                  kappa_segments: int = 24) -> LogZEstimate:
    """Annealed importance sampling estimate of log Z with standard error.

    baseline = "mcmc" reaches the uniform measure through a pinning ladder
    estimated by the same annealing run; baseline = "exact" substitutes the
    exhaustive state count (subject to the enumeration guard).  A schedule
    stopping short of 1 estimates the partially tempered partition function.
    """
    region = _as_region(shape)
    if w is None:
        w = uniform_weights()
    sched = _check_schedule(schedule if schedule is not None
                            else np.linspace(0.0, 1.0, 17))
    if baseline not in ("mcmc", "exact"):
        raise ValueError(f"unknown baseline {baseline!r}")
    if particles < 2:
        raise ValueError("need at least 2 particles for a standard error")
    free = region.free
    hmin = minimal_extension(region.fixed, region).h
    if not free:
        value = sched[-1] * tiling_weight(
            HeightFunction(region, hmin, validate=False), w)
        return LogZEstimate(value, 0.0, particles, tuple(sched), baseline,
                            log_count=0.0)

    log_count = None
    if baseline == "exact":
        n_states = sum(1 for _ in iter_height_maps(region))
        log_count = math.log(n_states)
        kappas = [0.0]
    else:
        kappa_max = len(free) * math.log(region.depth + 1) + 40.0
        kappas = [kappa_max * (1.0 - t / kappa_segments) ** 2
                  for t in range(kappa_segments + 1)]

    steps = sweeps_per_level * len(free)
    logs = w.cell_logs

    def pin(hd):
        return sum(hd[v] - hmin[v] for v in free)

    def run_particle(pseed: int) -> float:
        state = ChainState(region, w, hmin, pseed)
        hd = state.h
        lw = 0.0

        def mix(beta: float, kappa: float, nsteps: int = steps):
            rng = state.rng
            for _ in range(nsteps):
                v = free[int(rng.integers(len(free)))]
                lo, hi = _flip_interval(region, hd, v)
                if hi <= lo:
                    continue
                new = lo + hi - hd[v]
                d = 0.0
                if beta:
                    d = beta * _delta_logw(region, hd, v, new, w)
                if kappa:
                    d -= kappa * (new - hd[v])
                if d >= 0 or rng.random() < math.exp(d):
                    hd[v] = new

        if baseline == "exact":
            # no pinning ladder: burn in to the uniform measure directly
            mix(0.0, 0.0, 20 * len(region.vertices) ** 2)
        # leg one: release the pin (target at kappa_max is the start point)
        for k0, k1 in zip(kappas, kappas[1:]):
            mix(0.0, k0)
            lw += (k0 - k1) * pin(hd)
        if len(kappas) > 1:
            mix(0.0, kappas[-1])
        # leg two: turn on the weights
        for b0, b1 in zip(sched, sched[1:]):
            mix(b0, 0.0)
            lw += (b1 - b0) * tiling_weight(
                HeightFunction(region, hd, validate=False), w)
        return lw

    base_rng = _rng(seed)
    lws = np.array([run_particle(int(base_rng.integers(2 ** 63)))
                    for _ in range(particles)])
    m = lws.max()
    total = float(m + math.log(np.exp(lws - m).mean()))
    # delete-one jackknife over particles
    jack = []
    for i in range(particles):
        rest = np.delete(lws, i)
        mr = rest.max()
        jack.append(mr + math.log(np.exp(rest - mr).mean()))
    jack = np.array(jack)
    stderr = float(math.sqrt(max((particles - 1) * jack.var(), 0.0)))
    value = total + (log_count if log_count is not None else 0.0)
    return LogZEstimate(value, stderr, particles, tuple(sched), baseline,
                        log_count=log_count, kappa_levels=tuple(kappas))
