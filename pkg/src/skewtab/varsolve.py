"""Variational limit shape solver and the growth constant assembly.

For a profile pair (psi, phi) the scaled tiling regions converge to a
planar domain U bounded by the two axes, two diagonal ramps, and the tail
curve head(c) + (T_phi(c) + d)(1, 1), where T_phi(c) is the diagonal chord
of phi's hypograph on the diagonal through c and the depth d is the
largest diagonal slack sup_c (T_psi(c) - T_phi(c)).  Boundary heights are
gamma(x, y) = max(0, min(x, y, d)).

The functional maximized over height profiles f with gradient in the
slope triangle is the tiling entropy sigma(s, t) plus the weight term
rho(x, y) * (1 - s - t), where rho is the capped log of the scaled hook
limit hbar(x, y) = (psi^{-1}(y) - x) + (psi(x) - y).  Coordinate ascent
over a three coloring of a triangulated grid solves it: each update is a
one dimensional concave maximization on the node's feasible interval,
found by bisection on the derivative.

The growth constant of the family is then Psi_max - k(psi) - 1 in the
normalization log f_N ~ 0.5 N log N + c N, where k(psi) is the integral
of log hbar over psi's full hypograph.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .entropy import lobachevsky
from .exact import count_determinant
from .shapes import StableProfile

DEFAULT_MESH = 64
DEFAULT_EPS = 0.05
DEFAULT_TOL = 1e-4
_PI = math.pi


# ---------------------------------------------------------------------------
# continuum geometry of a profile pair


def _diag_chord(pts, c: float) -> float:
    """Length T of the diagonal ray head(c) + t (1, 1) inside the hypograph.

    pts is a nonincreasing breakpoint list with an implicit drop to 0 past
    the end; the ray starts at (0, c) for c >= 0, else (-c, 0).
    """
    if not pts:
        return 0.0
    hx, hy = (0.0, c) if c >= 0 else (-c, 0.0)
    # feasibility g(t) = hy + t - curve(hx + t) is increasing in t
    from .shapes import _pl_left

    if hy > _pl_left(pts, hx) + 1e-12:
        return 0.0
    best = 0.0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        t0, t1 = x0 - hx, x1 - hx
        if t1 <= 0:
            best = max(best, 0.0)
            continue
        t0 = max(t0, 0.0)
        if x1 == x0:
            # vertical drop: the ray can only touch it at one t
            t = x0 - hx
            if t >= 0 and y1 <= hy + t <= y0 + 1e-12:
                best = max(best, t)
            continue
        m = (y1 - y0) / (x1 - x0)  # <= 0
        # hy + t <= y0 + m (hx + t - x0)  <=>  t (1 - m) <= y0 - hy + m (hx - x0)
        bound = (y0 - hy + m * (hx - x0)) / (1.0 - m)
        if bound < t0 - 1e-12:
            break
        best = max(best, min(bound, t1))
        if bound < t1:
            break
    return max(best, 0.0)


def _critical_diagonals(profile: StableProfile) -> list[float]:
    phi0 = profile.phi_top
    xmax = profile.phi_width
    cs = {-xmax, phi0}
    if -xmax < 0.0 < phi0:
        cs.add(0.0)  # chord heads switch axes here, kinking both chord maps
    for x, y in profile.phi:
        c = y - x
        if -xmax - 1e-12 <= c <= phi0 + 1e-12:
            cs.add(min(max(c, -xmax), phi0))
    return sorted(cs)


def profile_depth(profile: StableProfile) -> float:
    """Largest diagonal slack between the outer and inner hypographs."""
    if not profile.phi:
        raise ValueError("depth of a straight profile is not defined")
    # the slack is piecewise linear in the diagonal, with kinks only on
    # diagonals through breakpoints of either curve
    cs = set(_critical_diagonals(profile))
    for x, y in profile.psi:
        cs.add(y - x)
    cs.add(profile.width * -1.0)
    cs.add(profile.height)
    phi0, xmax = profile.phi_top, profile.phi_width
    best = 0.0
    for c in cs:
        if not (-xmax - 1e-12 <= c <= phi0 + 1e-12):
            continue
        best = max(best,
                   _diag_chord(profile.psi, c) - _diag_chord(profile.phi, c))
    return best


def profile_domain(profile: StableProfile) -> list[tuple[float, float]]:
    """Polygon bounding the scaled regions: axes, ramps and the tail curve."""
    if not profile.phi:
        raise ValueError("straight profiles bound a degenerate (pinned) domain")
    d = profile_depth(profile)
    phi0, xmax = profile.phi_top, profile.phi_width
    pts: list[tuple[float, float]] = [(0.0, 0.0), (xmax, 0.0)]
    for c in _critical_diagonals(profile):
        t = _diag_chord(profile.phi, c) + d
        hx, hy = (0.0, c) if c >= 0 else (-c, 0.0)
        pts.append((hx + t, hy + t))
    pts.append((0.0, phi0))
    out = []
    for p in pts:
        if not out or abs(p[0] - out[-1][0]) > 1e-11 or abs(p[1] - out[-1][1]) > 1e-11:
            out.append(p)
    if len(out) > 2 and abs(out[0][0] - out[-1][0]) < 1e-11 \
            and abs(out[0][1] - out[-1][1]) < 1e-11:
        out.pop()
    return out


def _gamma_factory(depth: float) -> Callable:
    def gamma(x, y):
        return np.maximum(0.0, np.minimum(np.minimum(x, y), depth))

    return gamma


def hbar(profile: StableProfile) -> Callable:
    """Scaled hook limit (psi^{-1}(y) - x) + (psi(x) - y) as a vectorized map."""
    psi_x = np.array([p[0] for p in profile.psi])
    psi_y = np.array([p[1] for p in profile.psi])
    # append the implicit terminal drop so lookups past the end give 0
    if psi_y[-1] > 0:
        psi_x = np.append(psi_x, psi_x[-1])
        psi_y = np.append(psi_y, 0.0)
    inv_y = psi_y[::-1]
    inv_x = psi_x[::-1]

    def fn(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        px = np.interp(x, psi_x, psi_y)
        iy = np.interp(y, inv_y, inv_x)
        return (iy - x) + (px - y)

    return fn


@dataclass
class Functional:
    """Domain, boundary data and weight density of one variational problem."""

    polygon: list
    gamma: Callable
    rho: Callable | None
    eps: float
    depth: float
    tag: str
    profile: StableProfile | None = None

    @property
    def bbox(self) -> float:
        arr = np.array(self.polygon)
        return float(max(arr[:, 0].max(), arr[:, 1].max()))


def build_functional(profile: StableProfile, eps: float = DEFAULT_EPS) -> Functional:
    """Entropy-plus-hook-weight functional of a profile pair with inner part."""
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if not profile.phi:
        raise ValueError(
            "straight profiles pin the height profile completely; "
            "constant() handles them without a solve"
        )
    poly = profile_domain(profile)
    depth = profile_depth(profile)
    hb = hbar(profile)
    log_eps = math.log(eps)

    def rho(x, y):
        return np.maximum(np.log(np.maximum(hb(x, y), 1e-300)), log_eps)

    return Functional(poly, _gamma_factory(depth), rho, eps, depth,
                      f"profile(eps={eps:g})", profile)


def unit_hexagon_functional() -> Functional:
    """Pure entropy on the side 1 hexagon, boundary pinned to the box heights.

    Its maximum is the entropy constant of unit boxed plane partitions,
    which `exact.macmahon` approximates from below at finite n.
    """
    poly = [(1.0, 0.0), (0.0, 0.0), (0.0, 1.0), (1.0, 2.0), (2.0, 2.0), (2.0, 1.0)]
    return Functional(poly, _gamma_factory(1.0), None, 1.0, 1.0, "unit-hexagon")


# ---------------------------------------------------------------------------
# triangulated mesh


def _contains(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    x, y = points[:, 0], points[:, 1]
    inside = np.zeros(len(points), dtype=bool)
    n = len(poly)
    for k in range(n):
        x0, y0 = poly[k]
        x1, y1 = poly[(k + 1) % n]
        cond = (y0 > y) != (y1 > y)
        if y1 == y0:
            continue
        xs = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
        inside ^= cond & (x < xs)
    return inside


def _seg_dist(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    d = np.full(len(points), np.inf)
    n = len(poly)
    for k in range(n):
        a = poly[k]
        b = poly[(k + 1) % n]
        ab = b - a
        den = float(ab @ ab)
        if den == 0:
            continue
        t = np.clip(((points - a) @ ab) / den, 0.0, 1.0)
        proj = a + t[:, None] * ab
        d = np.minimum(d, np.hypot(*(points - proj).T))
    return d


class MeshProfile:
    """Triangulated height profile over a polygon.

    Nodes sit on a square grid of pitch ell; cells split along the main
    diagonal into an 'up' triangle (v, v+ex, v+ex+ey) and a 'down' one
    (v, v+ey, v+ex+ey).  Boundary and exterior nodes are pinned to gamma.
    """

    __slots__ = ("xy", "ij", "tris", "up", "cent", "free", "f", "ell",
                 "psi_value", "kkt_residual", "sweeps", "converged",
                 "refine_gap", "restart_spread", "restart_l2", "tag")

    def __init__(self, xy, ij, tris, up, cent, free, f, ell, tag=""):
        self.xy = xy
        self.ij = ij
        self.tris = tris
        self.up = up
        self.cent = cent
        self.free = free
        self.f = f
        self.ell = ell
        self.psi_value = math.nan
        self.kkt_residual = math.inf
        self.sweeps = 0
        self.converged = False
        self.refine_gap = math.nan
        self.restart_spread = 0.0
        self.restart_l2 = 0.0
        self.tag = tag

    def slopes(self) -> tuple[np.ndarray, np.ndarray]:
        f = self.f
        t0, t1, t2 = self.tris.T
        s = np.where(self.up, f[t1] - f[t0], f[t2] - f[t1]) / self.ell
        t = np.where(self.up, f[t2] - f[t1], f[t1] - f[t0]) / self.ell
        return s, t


def _build_mesh(poly, ell: float, gamma: Callable, tag: str = "") -> MeshProfile:
    P = np.asarray(poly, dtype=float)
    nx = int(math.ceil(P[:, 0].max() / ell - 1e-9))
    ny = int(math.ceil(P[:, 1].max() / ell - 1e-9))
    ii, jj = np.meshgrid(np.arange(nx + 1), np.arange(ny + 1), indexing="ij")
    ij_all = np.column_stack([ii.ravel(), jj.ravel()])

    def nid(i, j):
        return i * (ny + 1) + j

    tris = []
    ups = []
    for i in range(nx):
        for j in range(ny):
            tris.append((nid(i, j), nid(i + 1, j), nid(i + 1, j + 1)))
            ups.append(True)
            tris.append((nid(i, j), nid(i, j + 1), nid(i + 1, j + 1)))
            ups.append(False)
    tris = np.array(tris, dtype=np.int64)
    ups = np.array(ups, dtype=bool)
    xy_all = ij_all * ell
    cent = (xy_all[tris[:, 0]] + xy_all[tris[:, 1]] + xy_all[tris[:, 2]]) / 3.0
    keep = _contains(cent, P)
    tris = tris[keep]
    ups = ups[keep]
    cent = cent[keep]
    used = np.unique(tris)
    remap = -np.ones(len(ij_all), dtype=np.int64)
    remap[used] = np.arange(len(used))
    tris = remap[tris]
    ij = ij_all[used]
    xy = xy_all[used]
    inside = _contains(xy, P)
    dist = _seg_dist(xy, P)
    free = inside & (dist > 1e-9)
    f = np.asarray(gamma(xy[:, 0], xy[:, 1]), dtype=float).copy()
    return MeshProfile(xy, ij, tris, ups, cent, free, f, ell, tag)


# ---------------------------------------------------------------------------
# coordinate ascent


def _dsig(s, t):
    ec = 1e-12
    s = np.clip(s, ec, 1.0 - ec)
    t = np.clip(t, ec, 1.0 - ec)
    u = np.clip(1.0 - s - t, ec, 1.0 - ec)
    lu = np.log(2.0 * np.sin(_PI * u))
    return lu - np.log(2.0 * np.sin(_PI * s)), lu - np.log(2.0 * np.sin(_PI * t))


def _sigma_clip(s, t):
    s = np.clip(s, 0.0, 1.0)
    t = np.clip(t, 0.0, 1.0)
    u = np.clip(1.0 - s - t, 0.0, 1.0)
    return (lobachevsky(s * _PI) + lobachevsky(t * _PI)
            + lobachevsky(u * _PI)) / _PI


def evaluate_psi(mesh: MeshProfile, functional: Functional) -> float:
    """Functional value of the mesh heights (slopes clipped to the triangle)."""
    s, t = mesh.slopes()
    u = np.clip(1.0 - np.clip(s, 0, 1) - np.clip(t, 0, 1), 0.0, 1.0)
    vals = _sigma_clip(s, t)
    if functional.rho is not None:
        vals = vals + functional.rho(mesh.cent[:, 0], mesh.cent[:, 1]) * u
    return float(vals.sum() * 0.5 * mesh.ell ** 2)


class _Groups:
    """Per color incidence tables for vectorized node updates."""

    def __init__(self, mesh: MeshProfile, rho_tri: np.ndarray):
        self.rho_tri = rho_tri
        n = len(mesh.xy)
        incid: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for t_idx, tri in enumerate(mesh.tris):
            for slot, v in enumerate(tri):
                incid[v].append((t_idx, slot))
        sc_up, tc_up = (-1, 1, 0), (0, -1, 1)
        sc_dn, tc_dn = (0, -1, 1), (-1, 1, 0)
        self.groups = []
        color = (mesh.ij[:, 0] + mesh.ij[:, 1]) % 3
        for c in range(3):
            nodes = np.nonzero(mesh.free & (color == c))[0]
            k = len(nodes)
            tri_g = np.zeros((k, 6), dtype=np.int64)
            sc = np.zeros((k, 6))
            tc = np.zeros((k, 6))
            valid = np.zeros((k, 6), dtype=bool)
            for row, v in enumerate(nodes):
                for col, (t_idx, slot) in enumerate(incid[v][:6]):
                    tri_g[row, col] = t_idx
                    if mesh.up[t_idx]:
                        sc[row, col] = sc_up[slot]
                        tc[row, col] = tc_up[slot]
                    else:
                        sc[row, col] = sc_dn[slot]
                        tc[row, col] = tc_dn[slot]
                    valid[row, col] = True
            self.groups.append((nodes, tri_g, sc, tc, valid))


def _node_envelope(mesh, grp, f):
    """Per node slope bases and the feasible interval of its height."""
    nodes, tri_g, sc, tc, valid = grp
    ell = mesh.ell
    t0, t1, t2 = mesh.tris.T
    sl = np.where(mesh.up, f[t1] - f[t0], f[t2] - f[t1])
    tl = np.where(mesh.up, f[t2] - f[t1], f[t1] - f[t0])
    x = f[nodes]
    sb = sl[tri_g] - sc * x[:, None]
    tb = tl[tri_g] - tc * x[:, None]
    lo = np.full(len(nodes), -np.inf)
    hi = np.full(len(nodes), np.inf)
    for c, b in ((sc, sb), (tc, tb), (-(sc + tc), ell - sb - tb)):
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = -b / c
        take_lo = valid & (c > 0)
        take_hi = valid & (c < 0)
        lo = np.maximum(lo, np.where(take_lo, bound, -np.inf).max(axis=1))
        hi = np.minimum(hi, np.where(take_hi, bound, np.inf).min(axis=1))
    return x, sb, tb, lo, hi


def _group_gfun(mesh, grp, sb, tb, rho_tri):
    nodes, tri_g, sc, tc, valid = grp
    ell = mesh.ell
    rho_g = rho_tri[tri_g]

    def gfun(x):
        s = (sc * x[:, None] + sb) / ell
        t = (tc * x[:, None] + tb) / ell
        ds, dt = _dsig(s, t)
        term = np.where(valid, ds * sc + dt * tc - rho_g * (sc + tc), 0.0)
        return term.sum(axis=1) * (0.5 * ell)

    return gfun


def _update_group(mesh, grp, f, rho_tri) -> None:
    nodes = grp[0]
    if len(nodes) == 0:
        return
    x, sb, tb, lo, hi = _node_envelope(mesh, grp, f)
    gfun = _group_gfun(mesh, grp, sb, tb, rho_tri)
    pad = 1e-9 * mesh.ell
    lo2 = lo + pad
    hi2 = hi - pad
    empty = hi2 < lo2
    a = np.where(empty, x, lo2)
    b = np.where(empty, x, hi2)
    ga = gfun(a)
    gb = gfun(b)
    at_left = ga <= 0
    at_right = gb >= 0
    root = ~(at_left | at_right | empty)
    aa, bb = a.copy(), b.copy()
    for _ in range(46):
        mid = 0.5 * (aa + bb)
        gm = gfun(mid)
        pos = gm > 0
        aa = np.where(root & pos, mid, aa)
        bb = np.where(root & ~pos, mid, bb)
    out = np.where(at_left, a, np.where(at_right, b, 0.5 * (aa + bb)))
    out = np.where(empty, 0.5 * (lo + hi), out)
    f[nodes] = out


def _kkt(mesh, groups: _Groups, f) -> float:
    """Projected gradient residual: how far each free node could still move."""
    worst = 0.0
    for grp in groups.groups:
        nodes = grp[0]
        if len(nodes) == 0:
            continue
        x, sb, tb, lo, hi = _node_envelope(mesh, grp, f)
        g = _group_gfun(mesh, grp, sb, tb, groups.rho_tri)(x)
        target = np.clip(x + g, np.minimum(lo, x), np.maximum(hi, x))
        move = np.abs(target - x)
        move[lo > hi] = 0.0
        if len(move):
            worst = max(worst, float(move.max()))
    return worst


def _solve_mesh(mesh: MeshProfile, functional: Functional, tol: float,
                max_sweeps: int, stall: float = 1e-12) -> None:
    rho_tri = (functional.rho(mesh.cent[:, 0], mesh.cent[:, 1])
               if functional.rho is not None else np.zeros(len(mesh.tris)))
    rho_tri = np.asarray(rho_tri, dtype=float)
    groups = _Groups(mesh, rho_tri)
    f = mesh.f
    prev = -np.inf
    stalled = 0
    for sweep in range(1, max_sweeps + 1):
        for grp in groups.groups:
            _update_group(mesh, grp, f, rho_tri)
        cur = evaluate_psi(mesh, functional)
        if abs(cur - prev) <= stall * max(1.0, abs(cur)):
            stalled += 1
        else:
            stalled = 0
        prev = cur
        if stalled >= 3 or sweep % 100 == 0 or sweep == max_sweeps:
            res = _kkt(mesh, groups, f)
            mesh.kkt_residual = res
            mesh.sweeps = sweep
            if res <= tol:
                mesh.converged = True
                break
            if stalled >= 3:
                stalled = 0  # keep sweeping toward the tolerance
    mesh.psi_value = evaluate_psi(mesh, functional)


def _interp_init(coarse: MeshProfile, fine: MeshProfile, gamma) -> None:
    """Seed fine free nodes from the coarse solution, gamma as the fallback."""
    table = {(int(i), int(j)): v
             for (i, j), v in zip(coarse.ij, coarse.f)}
    ratio = coarse.ell
    for idx in np.nonzero(fine.free)[0]:
        x, y = fine.xy[idx]
        xi = x / ratio
        yj = y / ratio
        i = int(math.floor(xi + 1e-12))
        j = int(math.floor(yj + 1e-12))
        fi = xi - i
        fj = yj - j
        a = table.get((i, j))
        b = table.get((i + 1, j))
        c = table.get((i + 1, j + 1))
        d = table.get((i, j + 1))
        if fj <= fi:
            vals = (a, b, c)
            if any(v is None for v in vals):
                continue
            fine.f[idx] = a + fi * (b - a) + fj * (c - b)
        else:
            vals = (a, d, c)
            if any(v is None for v in vals):
                continue
            fine.f[idx] = a + fj * (d - a) + fi * (c - d)


def maximize(functional: Functional, gamma: Callable | None = None,
             ell: float | None = None, tol: float = DEFAULT_TOL,
             mesh_n: int = DEFAULT_MESH, restarts: int = 1, seed: int = 0,
             multigrid: bool = True, max_sweeps: int = 4000) -> MeshProfile:
    """Maximize the functional over mesh height profiles pinned to gamma.

    Runs coarse to fine over three mesh levels (unless multigrid is off),
    then repeats from perturbed starts if restarts > 1, keeping the best.
    The returned mesh carries the value, the projected gradient residual
    and the refinement gap between the last two levels.
    """
    if gamma is None:
        gamma = functional.gamma
    if ell is None:
        ell = functional.bbox / mesh_n
    else:
        mesh_n = max(4, round(functional.bbox / ell))
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    rng = np.random.default_rng(seed)
    levels = [mesh_n]
    if multigrid and mesh_n >= 16:
        levels = [max(8, mesh_n // 4), max(12, mesh_n // 2), mesh_n]
    best: MeshProfile | None = None
    finals: list[MeshProfile] = []
    for r in range(restarts):
        coarse: MeshProfile | None = None
        gap = math.nan
        for li, n in enumerate(levels):
            mesh = _build_mesh(functional.polygon, functional.bbox / n, gamma,
                               functional.tag)
            if coarse is not None:
                _interp_init(coarse, mesh, gamma)
            if r > 0 and li == 0:
                noise = 0.25 * functional.depth
                mesh.f[mesh.free] += rng.uniform(-noise, noise,
                                                 mesh.free.sum())
            budget = max_sweeps if li == len(levels) - 1 else max_sweeps // 2
            _solve_mesh(mesh, functional, tol, budget)
            if coarse is not None:
                gap = abs(mesh.psi_value - coarse.psi_value)
            coarse = mesh
        coarse.refine_gap = gap
        finals.append(coarse)
        if best is None or coarse.psi_value > best.psi_value:
            best = coarse
    if len(finals) > 1:
        vals = [m.psi_value for m in finals]
        best.restart_spread = max(vals) - min(vals)
        l2 = 0.0
        for m in finals[1:]:
            if len(m.f) == len(finals[0].f):
                l2 = max(l2, float(np.sqrt(np.mean((m.f - finals[0].f) ** 2))))
        best.restart_l2 = l2
    return best


# ---------------------------------------------------------------------------
# the constant


def k_psi(profile: StableProfile) -> float:
    """Integral of log hbar over the full hypograph of psi.

    The inner y integral is exact on each linear piece of psi^{-1}; the
    outer integral runs adaptive quadrature per psi segment.
    """
    pts = list(profile.psi)
    pieces = []  # (y_lo, y_hi, alpha, beta): psi^{-1}(y) = alpha + beta y
    if pts[-1][1] > 0:
        pieces.append((0.0, pts[-1][1], pts[-1][0], 0.0))
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y1 >= y0 - 1e-15:
            continue  # flat piece: no inverse mass
        if x1 == x0:
            pieces.append((y1, y0, x0, 0.0))
        else:
            beta = (x1 - x0) / (y1 - y0)
            alpha = x0 - beta * y0
            pieces.append((y1, y0, alpha, beta))

    def anti(aa, bb, y):
        u = aa + bb * y
        if u < 1e-300:
            return 0.0
        return (u / bb) * (math.log(u) - 1.0)

    def inner(x):
        px = profile.psi_at(x)
        if px <= 0:
            return 0.0
        total = 0.0
        for ylo, yhi, alpha, beta in pieces:
            y0 = max(ylo, 0.0)
            y1 = min(yhi, px)
            if y1 <= y0:
                continue
            aa = alpha - x + px
            bb = beta - 1.0
            total += anti(aa, bb, y1) - anti(aa, bb, y0)
        return total

    total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x1 > x0 + 1e-15:
                total += integrate.quad(inner, x0, x1, epsabs=1e-12,
                                        epsrel=1e-12, limit=500)[0]
    return total


@dataclass
class ConstantResult:
    """Growth constant estimate with its error budget."""

    value: float
    psi_max: float
    k_psi: float
    budget: dict = field(default_factory=dict)
    mesh: MeshProfile | None = None

    def __float__(self) -> float:
        return self.value


def constant(profile: StableProfile, ell: float | None = None,
             eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL,
             mesh_n: int = DEFAULT_MESH, restarts: int = 1,
             seed: int = 0) -> ConstantResult:
    """Growth constant of the family: Psi_max - k(psi) - 1.

    The constant c is normalized by log f_N ~ 0.5 N log N + c N along the
    family.  Straight profiles (empty phi) have a fully pinned height
    profile, so Psi_max = 0 there and no solve is run.
    """
    k = k_psi(profile)
    if not profile.phi:
        return ConstantResult(-1.0 - k, 0.0, k,
                              budget={"quadrature": 1e-9, "optimizer": 0.0})
    functional = build_functional(profile, eps)
    mesh = maximize(functional, ell=ell, tol=tol, mesh_n=mesh_n,
                    restarts=restarts, seed=seed)
    psi = mesh.psi_value
    budget = {
        "quadrature": 1e-9,
        "optimizer": mesh.kkt_residual,
        "refinement": mesh.refine_gap,
        "cap": eps * eps * (1.0 - math.log(eps)),
    }
    return ConstantResult(psi - k - 1.0, psi, k, budget=budget, mesh=mesh)


def _finite_n_point(args) -> float:
    family, n = args
    shape = family(n)
    if shape.size != n:
        raise ValueError(f"family produced {shape.size} cells for size {n}")
    return (math.log(count_determinant(shape)) - 0.5 * n * math.log(n)) / n


def finite_n_constant(shape_family: Callable, sizes, threads: int | None = None
                      ) -> list[float]:
    """Exact finite size constants (log f_N - 0.5 N log N) / N along a family.

    shape_family maps a size N to a SkewShape of exactly that size.  With
    threads > 1 the determinants run in a process pool (the family must be
    picklable).
    """
    sizes = [int(n) for n in sizes]
    if any(n < 1 for n in sizes):
        raise ValueError("sizes must be positive")
    if threads is None:
        threads = int(os.environ.get("SKEWTAB_THREADS", "1"))
    jobs = [(shape_family, n) for n in sizes]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_finite_n_point, jobs))
    return [_finite_n_point(j) for j in jobs]
