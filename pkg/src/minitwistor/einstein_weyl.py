"""Einstein-Weyl spaces as families of real minitwistor lines.

A point of the space ``M_k`` is written ``(u, v, theta)``: ``u = (s + t) / 2``
and ``v = (t - s) / 2`` in ``(0, pi)`` are built from lifted angles of the two
ends ``xi``, ``eta`` of the real arc, and ``theta`` is the circle angle.  The
lines ``u = 0`` and ``u = pi`` are the two axes, where the hyperplanes become
vertical.  ``(u, v, theta + pi)`` and ``(-u, v, theta)`` are the same point.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateAnchor, DegeneratePoint, NoConvergence
from .hyperelliptic_curve import (
    BranchConfig,
    circle_geometry,
    circle_zw,
    disk_coords,
    disk_point,
    monomials,
)
from .minitwistor_surface import SurfacePoint, projective_distance, pullback, s1_act
from .seifert import BoundaryData, SeifertSolver, fit_hyperplanes, hyperplane_system

P = np.polynomial.polynomial
TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class EWPoint:
    """Point of ``M_k`` in chart coordinates.

    Axis points carry ``axis`` (``"I"`` or ``"I'"``) and the root ``lam`` of
    the vertical hyperplane over the outer interval; ``u`` and ``theta`` are
    then irrelevant.
    """

    k: BoundaryData
    u: float
    v: float
    theta: float = 0.0
    axis: str | None = None
    lam: float | None = None

    @classmethod
    def on_axis(cls, k: BoundaryData, axis: str, lam: float) -> "EWPoint":
        if axis not in ("I", "I'"):
            raise ValueError("axis must be 'I' or \"I'\"")
        return cls(k, 0.0 if axis == "I" else math.pi, float("nan"), 0.0, axis, float(lam))

    @property
    def s(self) -> float:
        return self.u - self.v

    @property
    def t(self) -> float:
        return self.u + self.v

    @property
    def is_axis(self) -> bool:
        return self.axis is not None


def axis_hyperplane(cfg: BranchConfig, k: BoundaryData, axis: str, lam: float) -> np.ndarray:
    """Vertical hyperplane through ``rho`` (or ``rho'``) and ``z = lam``."""
    pick = k.choices if axis == "I" else tuple(1 - c for c in k.choices)
    roots = [cfg.interval(i)[c] for i, c in enumerate(pick)] + [float(lam)]
    c = np.concatenate([P.polyfromroots(roots), [0.0, 0.0]])
    return c / np.linalg.norm(c)


def ew_chart(solver: SeifertSolver, p: EWPoint) -> np.ndarray:
    """Hyperplane coefficients of a point of ``M_k`` in ``CP_{g+3}``."""
    if p.is_axis:
        return axis_hyperplane(solver.cfg, p.k, p.axis, p.lam)
    c, _ = solver.hyperplane(p.k, p.s, p.t)
    return s1_act(p.theta, pullback(c))


def chart_many(solver: SeifertSolver, k: BoundaryData, u, v, theta: float = 0.0, guess=None) -> tuple:
    """Vectorized :func:`ew_chart` for interior points.

    Returns
    -------
    coeffs : ndarray, shape (n, g + 4)
    phis : ndarray, shape (n, g)
        Lifted tangency angles.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    s, t = u - v, u + v
    c, _, _, _, phis = solver.hyperplanes(k, s, t, guess)
    return s1_act(theta, pullback(c)), phis


def tangent_basis(cfg: BranchConfig, coeffs, nodes) -> np.ndarray:
    """Orthonormal basis of perturbations keeping the tangencies, modulo scale.

    First order tangency to a sphere at a node ``p`` only asks ``delta . m(p)
    = 0``; the accompanying derivative condition fixes how ``p`` moves.
    """
    g = cfg.genus
    rows = [np.asarray(coeffs, dtype=float)]
    for p in nodes:
        rows.append(np.real(p.monomials(g)))
    A = np.array(rows)
    A = A / np.linalg.norm(A, axis=1, keepdims=True)
    _, sv, vt = np.linalg.svd(A)
    return vt[g + 1 :]


def _node_points(cfg: BranchConfig, phis, theta: float) -> list:
    pts = []
    for i, ph in enumerate(phis):
        z, w = circle_zw(cfg, i, ph)
        pts.append(s1_act(theta, SurfacePoint(complex(z), complex(w), 0j)))
    return pts


# --- spacelike geodesics ------------------------------------------------------


@dataclass(frozen=True)
class Geodesic:
    """Spacelike geodesic through the two lifts of a disk point.

    Attributes
    ----------
    anchor : tuple
        ``(z, w)`` of the disk point; the two lifts are ``(z, w, +-y)``.
    s, t : ndarray
        Lifted outer angles of the samples, ``s`` covering one full turn.
    coeffs : ndarray, shape (n, g + 4)
    closure_gap : float
        Projective distance between the first and the last hyperplane.
    simple : bool
    crossings : dict
        Number of passages through each axis.
    transversality : float
        Smallest singular value of the incidence conditions on the tangent
        spaces along the curve.
    """

    k: BoundaryData
    anchor: tuple
    s: np.ndarray = field(repr=False)
    t: np.ndarray = field(repr=False)
    coeffs: np.ndarray = field(repr=False)
    closure_gap: float = 0.0
    simple: bool = True
    crossings: dict = field(default_factory=dict)
    transversality: float = 0.0
    min_separation: float = 0.0

    @property
    def u(self) -> np.ndarray:
        return 0.5 * (self.s + self.t)

    @property
    def v(self) -> np.ndarray:
        return 0.5 * (self.t - self.s)

    def samples(self) -> list:
        return [EWPoint(self.k, float(a) % TWO_PI, float(b), 0.0) for a, b in zip(self.u, self.v)]


def _oriented(solver, k, s, t, guess=None):
    # Seifert hyperplanes oriented positive at the outer circle point halfway
    # along the arc from xi to eta
    g = solver.genus
    phis = solver.solve(k, s, t, guess)
    A = hyperplane_system(solver.cfg, phis, s, t)
    c, _, _, _ = fit_hyperplanes(A)
    zm, wm = circle_zw(solver.cfg, g, s + 0.5 * np.mod(t - s, TWO_PI))
    sign = np.sign(np.einsum("ij,ij->i", c, monomials(g, zm, wm)))
    return c * np.where(sign == 0, 1.0, sign)[:, None], phis


def solve_through(solver, k, d, s, lap: int = 0, iters: int = 60, eps: float = 1e-4) -> tuple:
    """For each lifted ``s`` find ``t`` with the hyperplane ``h(s, t)`` through ``d``.

    ``t`` is searched in ``(s, s + 2 pi)`` shifted by ``2 pi lap``.  Uses a
    vectorized bisection; the oriented incidence value is negative for short
    arcs and positive for long ones.

    Raises
    ------
    DegenerateAnchor
        If some bracket does not change sign.
    """
    g = solver.genus
    md = monomials(g, d[0], d[1]).real
    s = np.asarray(s, dtype=float)
    off = TWO_PI * lap
    lo = s + eps + off
    hi = s + TWO_PI - eps + off
    c_lo, ph_lo = _oriented(solver, k, s, lo)
    c_hi, ph_hi = _oriented(solver, k, s, hi)
    f_lo = c_lo @ md
    f_hi = c_hi @ md
    if np.any(f_lo * f_hi > 0):
        raise DegenerateAnchor("incidence does not change sign along the fiber; anchor too close to the boundary")
    guess = ph_lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        c_mid, guess = _oriented(solver, k, s, mid, guess)
        f_mid = c_mid @ md
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
        if np.max(hi - lo) < 1e-14 * (1 + np.max(np.abs(s))):
            break
    t = 0.5 * (lo + hi)
    c, phis = _oriented(solver, k, s, t, guess)
    return t, c, phis


def _segments_cross(p, q):
    # proper crossings between non adjacent segments of two polylines
    a0, a1 = p[:-1], p[1:]
    b0, b1 = q[:-1], q[1:]

    def orient(x, y, z):
        return np.sign((y[..., 0] - x[..., 0]) * (z[..., 1] - x[..., 1]) - (y[..., 1] - x[..., 1]) * (z[..., 0] - x[..., 0]))

    A0, A1 = a0[:, None], a1[:, None]
    B0, B1 = b0[None, :], b1[None, :]
    d1 = orient(A0, A1, B0) * orient(A0, A1, B1)
    d2 = orient(B0, B1, A0) * orient(B0, B1, A1)
    return (d1 < 0) & (d2 < 0)


def curve_is_simple(u: np.ndarray, v: np.ndarray) -> tuple:
    """Self intersection test of a closed curve on the cylinder ``u mod 2 pi``.

    ``u`` must be continuous and advance by ``2 pi`` over the samples, whose
    last point repeats the first.  Returns ``(simple, min_separation)``.
    """
    pts = np.stack([u, v], axis=1)
    n = len(pts) - 1
    idx = np.arange(n)
    near = np.abs(idx[:, None] - idx[None, :])
    adjacent = (near <= 1) | (near >= n - 1)
    crossing = False
    sep = np.inf
    for shift in (-TWO_PI, 0.0, TWO_PI):
        q = pts + np.array([shift, 0.0])
        cross = _segments_cross(pts, q)
        if shift == 0.0:
            cross &= ~adjacent
        crossing |= bool(np.any(cross))
        d = np.linalg.norm(pts[:-1, None, :] - q[None, :-1, :], axis=-1)
        if shift == 0.0:
            d = np.where(adjacent, np.inf, d)
        sep = min(sep, float(np.min(d)))
    return not crossing, sep


def _axis_crossings(u: np.ndarray) -> dict:
    i_count = int(np.sum(np.abs(np.diff(np.floor(u / TWO_PI)))))
    ip_count = int(np.sum(np.abs(np.diff(np.floor((u - np.pi) / TWO_PI)))))
    return {"I": i_count, "I'": ip_count}


def anchor_lift(cfg: BranchConfig, d) -> tuple:
    """The two real points of ``T`` over a disk point.

    Raises
    ------
    DegenerateAnchor
        If the point is not strictly inside the outer disk, where both lifts
        coincide.
    """
    z, w = float(d[0]), float(d[1])
    y2 = -float(cfg.f(z)) - w * w
    a, b = disk_coords(cfg, z, w)
    if not (a * a + b * b < 1 - 1e-9 and y2 > 0):
        raise DegenerateAnchor("anchor is not inside the outer disk")
    y = math.sqrt(y2)
    return SurfacePoint(complex(z), complex(w), complex(y)), SurfacePoint(complex(z), complex(w), complex(-y))


def geodesic_spacelike(solver: SeifertSolver, k: BoundaryData, d, steps: int = 512) -> Geodesic:
    """Trace the spacelike geodesic of ``M_k`` through both lifts of ``d``.

    Parameters
    ----------
    d : tuple of float
        ``(z, w)`` inside the outer disk.
    steps : int
        Number of ``xi`` positions around the boundary circle.
    """
    cfg = solver.cfg
    g = cfg.genus
    x, y = anchor_lift(cfg, d)
    s = TWO_PI * np.arange(steps + 1) / steps
    t, c, phis = solve_through(solver, k, (float(d[0]), float(d[1])), s)
    coeffs = pullback(c)
    gap = projective_distance(coeffs[0], coeffs[-1])
    u = 0.5 * (s + t)
    v = 0.5 * (t - s)
    simple, sep = curve_is_simple(u, v)
    margin = np.inf
    mx, my = np.real(x.monomials(g)), np.real(y.monomials(g))
    M = np.array([mx / np.linalg.norm(mx), my / np.linalg.norm(my)])
    for n in range(steps):
        basis = tangent_basis(cfg, coeffs[n], _node_points(cfg, phis[n], 0.0))
        margin = min(margin, float(np.linalg.svd(M @ basis.T, compute_uv=False)[-1]))
    return Geodesic(k, (float(d[0]), float(d[1])), s, t, coeffs, gap, simple, _axis_crossings(u), margin, sep)


def random_anchors(cfg: BranchConfig, n: int, rng: np.random.Generator, radius: float = 0.9) -> list:
    """Uniform random points of the outer disk, within ``radius`` in disk coordinates."""
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    a = rng.uniform(0, TWO_PI, n)
    z, w = disk_point(cfg, r * np.cos(a), r * np.sin(a))
    return [(float(p), float(q)) for p, q in zip(z, w)]


def zoll_suite(solver: SeifertSolver, k: BoundaryData, trials: int = 20, seed: int = 0, steps: int = 512) -> dict:
    """Trace geodesics through random anchors and summarize their shape."""
    rng = np.random.default_rng(seed)
    rows = []
    for d in random_anchors(solver.cfg, trials, rng):
        t0 = time.perf_counter()
        geo = geodesic_spacelike(solver, k, d, steps)
        rows.append(
            {
                "anchor": list(d),
                "closure_gap": geo.closure_gap,
                "simple": geo.simple,
                "crossings_I": geo.crossings["I"],
                "crossings_I_prime": geo.crossings["I'"],
                "transversality": geo.transversality,
                "min_separation": geo.min_separation,
                "seconds": time.perf_counter() - t0,
            }
        )
    return {
        "k": k.k,
        "trials": trials,
        "max_closure_gap": max(r["closure_gap"] for r in rows),
        "all_simple": all(r["simple"] for r in rows),
        "all_cross_axes_once": all(r["crossings_I"] == 1 and r["crossings_I_prime"] == 1 for r in rows),
        "min_transversality": min(r["transversality"] for r in rows),
        "geodesics": rows,
    }


# --- disk foliations ----------------------------------------------------------


def arc_points(cfg: BranchConfig, coeffs, s: float, t: float, n: int = 128) -> np.ndarray:
    """Samples of the arc cut from the outer disk by a ``c_y = 0`` hyperplane, in disk coordinates."""
    g = cfg.genus
    c = np.asarray(coeffs, dtype=float)
    zs, _ = circle_zw(cfg, g, s)
    zt, _ = circle_zw(cfg, g, t)
    lo, hi = sorted((float(zs), float(zt)))
    m, ell = 0.5 * (lo + hi), 0.5 * (hi - lo)
    z = m - ell * np.cos(np.pi * np.arange(n + 1) / n)
    if abs(c[g + 2]) < 1e-12:
        a, _ = disk_coords(cfg, np.array([lo]), np.array([0.0]))
        b = np.linspace(-1, 1, n + 1)
        return np.stack([np.full(n + 1, a[0]), b * math.sqrt(max(0.0, 1 - a[0] ** 2))], axis=1)
    w = -P.polyval(z, c[: g + 2]) / c[g + 2]
    a, b = disk_coords(cfg, z, w)
    return np.stack([a, b], axis=1)


@dataclass(frozen=True)
class FoliationReport:
    """Disjointness and coverage of the arcs of one fiber over ``xi``."""

    k: int
    xi_angle: float
    lap: int
    crossings: int
    min_separation: float
    coverage: float
    multiple: float
    end_diameters: tuple
    passed: bool


def foliation_check(solver: SeifertSolver, k: BoundaryData, xi_angle: float, lap: int = 0, grid: int = 200, arcs: int = 64, fiber: int = 256) -> FoliationReport:
    """Check that the arcs through ``xi`` foliate the outer disk.

    Coverage counts sign changes of the oriented incidence function along the
    fiber at every point of a ``grid x grid`` lattice inside the unit disk:
    one change means the point lies on exactly one arc.  Disjointness is
    checked on ``arcs`` sampled arcs by sign changes of every other arc's
    incidence function away from ``xi``.
    """
    cfg = solver.cfg
    g = cfg.genus
    s = float(xi_angle)
    off = TWO_PI * lap
    ts = s + off + TWO_PI * (np.arange(fiber) + 0.5) / fiber
    c, _ = _oriented(solver, k, np.full(fiber, s), ts)
    ax = -1 + 2 * (np.arange(grid) + 0.5) / grid
    A, B = np.meshgrid(ax, ax, indexing="ij")
    inside = A**2 + B**2 < 1
    z, w = disk_point(cfg, A[inside], B[inside])
    vals = monomials(g, z, w) @ c.T
    ext = np.concatenate([-np.ones((len(z), 1)), np.sign(vals), np.ones((len(z), 1))], axis=1)
    changes = np.sum(ext[:, 1:] * ext[:, :-1] < 0, axis=1)
    coverage = float(np.mean(changes >= 1))
    multiple = float(np.mean(changes > 1))

    ta = s + off + TWO_PI * (np.arange(arcs) + 0.5) / arcs
    ca, _ = _oriented(solver, k, np.full(arcs, s), ta)
    pts = [arc_points(cfg, ca[i], s, ta[i]) for i in range(arcs)]
    xi_ab = np.array(disk_coords(cfg, *circle_zw(cfg, g, s)))
    crossings = 0
    sep = np.inf
    for i in range(arcs):
        p = pts[i]
        keep = np.linalg.norm(p - xi_ab, axis=1) > 0.05
        if not np.any(keep):
            continue
        zz, ww = disk_point(cfg, p[keep, 0], p[keep, 1])
        mono = monomials(g, zz, ww)
        for j in range(arcs):
            if j == i:
                continue
            vals_j = mono @ ca[j]
            scale = np.linalg.norm(mono, axis=1) * np.linalg.norm(ca[j])
            sig = vals_j[np.abs(vals_j) > 1e-12 * scale]
            if sig.size and np.any(sig != sig[0]) and np.any(np.sign(sig) != np.sign(sig[0])):
                crossings += 1
            q = pts[j]
            d = np.min(np.linalg.norm(p[keep][:, None, :] - q[None, :, :], axis=-1))
            sep = min(sep, float(d))
    diam = tuple(float(np.max(np.linalg.norm(pts[i] - pts[i][0], axis=1))) for i in (0, arcs - 1))
    passed = crossings == 0 and sep > 1e-4 and coverage >= 0.999 and multiple == 0.0
    return FoliationReport(k.k, s, lap, crossings, sep, coverage, multiple, diam, passed)


# --- conformal structure ------------------------------------------------------


@dataclass(frozen=True)
class ConformalMetric:
    """Conformal Lorentzian form at a regular point of ``M_k``.

    ``linear`` maps a coefficient perturbation to ``(a0, a1, b0)``: the
    residual intersection with the line is ``(a0 + a1 x)**2 = b0**2 (1 - x**2)``
    in the circle parameter ``x``, and the form is ``a1**2 + b0**2 - a0**2``.
    Positive means two real residual points, zero a double one.  The scale
    makes the circle direction have norm one.
    """

    base: EWPoint
    hyperplane: np.ndarray
    basis: np.ndarray
    linear: np.ndarray
    matrix: np.ndarray

    def form(self, delta) -> float:
        a0, a1, b0 = self.linear @ np.asarray(delta, dtype=float)
        return float(a1 * a1 + b0 * b0 - a0 * a0)

    @property
    def signature(self) -> tuple:
        ev = np.linalg.eigvalsh(self.matrix)
        tol = 1e-10 * np.max(np.abs(ev))
        return int(np.sum(ev > tol)), int(np.sum(ev < -tol))

    @property
    def is_lorentzian(self) -> bool:
        return self.signature == (2, 1)


def conformal_metric(solver: SeifertSolver, p: EWPoint) -> ConformalMetric:
    """Conformal Lorentzian form of ``M_k`` at an interior point.

    Raises
    ------
    DegeneratePoint
        Near the axes, where the circle direction degenerates.
    """
    if p.is_axis or min(abs(math.remainder(p.u, math.pi)), p.v, math.pi - p.v) < 1e-6:
        raise DegeneratePoint("conformal form requested on or next to an axis or boundary")
    cfg = solver.cfg
    g = cfg.genus
    c0, phis = solver.hyperplane(p.k, p.s, p.t)
    H = s1_act(p.theta, pullback(c0))
    lin = _residual_map(cfg, c0, phis, p.s, p.t)
    R = _rotation(g, -p.theta)
    linear = lin @ R
    basis = tangent_basis(cfg, H, _node_points(cfg, phis, p.theta))
    L = linear @ basis.T
    D = np.diag([-1.0, 1.0, 1.0])
    Q = L.T @ D @ L
    d_theta = np.zeros(g + 4)
    d_theta[-2], d_theta[-1] = -H[-1], H[-2]
    a = linear @ d_theta
    norm = a[1] ** 2 + a[2] ** 2 - a[0] ** 2
    if norm <= 0:
        raise DegeneratePoint("circle direction is not spacelike")
    return ConformalMetric(p, H, basis, linear / math.sqrt(norm), Q / norm)


def _rotation(g: int, theta: float) -> np.ndarray:
    R = np.eye(g + 4)
    c, s = math.cos(theta), math.sin(theta)
    R[-2:, -2:] = [[c, -s], [s, c]]
    return R


def _residual_map(cfg: BranchConfig, c0, phis, s, t) -> np.ndarray:
    # linear map delta -> (a0, a1, b0) in the base frame where c_y = 0
    g = cfg.genus
    Pc, cw = np.asarray(c0[: g + 2]), float(c0[g + 2])
    zs, _ = circle_zw(cfg, g, s)
    zt, _ = circle_zw(cfg, g, t)
    lo, hi = sorted((float(zs), float(zt)))
    m, ell = 0.5 * (lo + hi), 0.5 * (hi - lo)
    N = P.polyadd(P.polymul(Pc, Pc), cw * cw * cfg.f_poly())
    lc = N[-1]
    nodes_z = [float(circle_zw(cfg, i, ph)[0]) for i, ph in enumerate(phis)]
    nodes_x = [(m - z) / ell for z in nodes_z]
    div = P.polyfromroots(nodes_x) if g else np.array([1.0])
    # z(x) = m - ell x, so z**j is the j-th power of that linear polynomial
    zpow = [np.array([1.0])]
    for _ in range(g + 1):
        zpow.append(P.polymul(zpow[-1], [m, -ell]))
    P_x = sum(Pc[j] * np.pad(zpow[j], (0, g + 2 - len(zpow[j]))) for j in range(g + 2))
    out = np.zeros((3, g + 4))
    for j in range(g + 2):
        q, _ = P.polydiv(np.pad(zpow[j], (0, g + 2 - len(zpow[j]))), div)
        q = np.pad(q, (0, 2))[:2]
        out[0, j], out[1, j] = q[0], q[1]
    q, _ = P.polydiv(-P_x / cw, div)
    q = np.pad(q, (0, 2))[:2]
    out[0, g + 2], out[1, g + 2] = q[0], q[1]
    out[2, g + 3] = math.sqrt(lc) / cw * (-ell) ** g * ell
    return out


# --- null surfaces and timelike geodesics -------------------------------------


@dataclass(frozen=True)
class NullSurface:
    """Lines of ``M_k`` through a real point ``q`` of the outer sphere.

    ``u``, ``v`` have shape ``(n_theta, n_s + 1)``; row ``j`` is the curve in
    the slice ``theta = thetas[j]``.
    """

    k: BoundaryData
    q: SurfacePoint
    thetas: np.ndarray
    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)


def null_surface(solver: SeifertSolver, k: BoundaryData, q: SurfacePoint, n_theta: int = 16, n_s: int = 64) -> NullSurface:
    """Sample the surface of lines through ``q`` slice by slice in ``theta``.

    In the slice ``theta`` the condition is incidence of the Seifert
    hyperplane with the cone point ``(z, w cos theta + y sin theta)``, a
    geodesic problem in that slice.
    """
    cfg = solver.cfg
    thetas = TWO_PI * (np.arange(n_theta) + 0.5) / n_theta
    s = TWO_PI * np.arange(n_s + 1) / n_s
    U = np.empty((n_theta, n_s + 1))
    V = np.empty_like(U)
    for j, th in enumerate(thetas):
        base = s1_act(-th, q)
        d = (float(base.z.real), float(base.w.real))
        anchor_lift(cfg, d)
        t, _, _ = solve_through(solver, k, d, s)
        U[j], V[j] = 0.5 * (s + t), 0.5 * (t - s)
    return NullSurface(k, q, thetas, U, V)


def null_defect(solver: SeifertSolver, surf: NullSurface, j: int, i: int, h: float = 1e-5) -> float:
    """Normalized determinant of the form restricted to the surface tangent plane.

    Zero for a null (degenerate) tangent plane, negative for a Lorentzian one
    and positive for a definite one.  Tangents come from central differences
    of the incidence solution in ``s`` and ``theta``.
    """
    k = surf.k
    s0 = float(surf.u[j, i] - surf.v[j, i])
    th0 = float(surf.thetas[j])
    cm = conformal_metric(solver, EWPoint(k, float(surf.u[j, i]), float(surf.v[j, i]), th0))

    def member(s, th):
        d = s1_act(-th, surf.q)
        t, c, _ = solve_through(solver, k, (float(d.z.real), float(d.w.real)), np.array([s]))
        H = s1_act(th, pullback(c[0]))
        return H * np.sign(H @ cm.hyperplane)

    T = np.array(
        [
            (member(s0 + h, th0) - member(s0 - h, th0)) / (2 * h),
            (member(s0, th0 + h) - member(s0, th0 - h)) / (2 * h),
        ]
    )
    T = T - np.outer(T @ cm.hyperplane, cm.hyperplane)
    G = np.array([[_bilinear(cm, a, b) for b in T] for a in T])
    scale = np.linalg.norm(cm.linear @ T[0]) ** 2 * np.linalg.norm(cm.linear @ T[1]) ** 2
    return float(np.linalg.det(G) / scale) if scale > 0 else 0.0


def _bilinear(cm: ConformalMetric, a, b) -> float:
    x, y = cm.linear @ a, cm.linear @ b
    return float(-x[0] * y[0] + x[1] * y[1] + x[2] * y[2])


def _chart_derivative(solver, k, u, v, th, du, dv, dth, h):
    c1, _ = solver.hyperplane(k, (u + h * du) - (v + h * dv), (u + h * du) + (v + h * dv))
    c0, _ = solver.hyperplane(k, (u - h * du) - (v - h * dv), (u - h * du) + (v - h * dv))
    return (s1_act(th + h * dth, pullback(c1)) - s1_act(th - h * dth, pullback(c0))) / (2 * h)


@dataclass(frozen=True)
class TimelikeCurve:
    """Lines through a non-real point of ``T``, traced by continuation in the chart."""

    k: BoundaryData
    q: SurfacePoint
    points: np.ndarray = field(repr=False)
    forms: np.ndarray = field(repr=False)


def _incidence(solver, k, q, x):
    H = s1_act(x[2], pullback(solver.hyperplane(k, x[0] - x[1], x[0] + x[1])[0]))
    val = H @ q.monomials(solver.genus) / np.linalg.norm(q.monomials(solver.genus))
    return np.array([val.real, val.imag]), H


def timelike_geodesic(solver: SeifertSolver, p: EWPoint, z: complex, steps: int = 20, h: float = 0.01) -> TimelikeCurve:
    """Lines through a non-real point of the line at ``p`` over ``z``.

    The point is the lift with the larger imaginary ``y`` part.  Traces the
    one dimensional solution set of the complex incidence condition from
    ``p`` in both directions with a predictor-corrector scheme, and records
    the conformal form of each step's chart tangent.
    """
    from .minitwistor_surface import line_points

    k = p.k
    H0 = ew_chart(solver, p)
    cands = line_points(solver.cfg, H0, [z])
    q = max(cands, key=lambda c: c.y.imag)
    x0 = np.array([p.u, p.v, p.theta])
    eps = 1e-6

    def jac(x):
        f0, _ = _incidence(solver, k, q, x)
        J = np.empty((2, 3))
        for j in range(3):
            e = np.zeros(3)
            e[j] = eps
            J[:, j] = (_incidence(solver, k, q, x + e)[0] - _incidence(solver, k, q, x - e)[0]) / (2 * eps)
        return f0, J

    pts, forms = [x0.copy()], []
    for direction in (1.0, -1.0):
        x = x0.copy()
        prev = None
        for _ in range(steps):
            _, J = jac(x)
            tan = np.linalg.svd(J)[2][-1]
            if prev is not None and tan @ prev < 0:
                tan = -tan
            if prev is None:
                tan = tan * direction
            prev = tan
            forms.append(_chart_form(solver, k, x, tan))
            x = x + h * tan
            for _ in range(8):
                f, J = jac(x)
                x = x - np.linalg.lstsq(J, f, rcond=None)[0]
                if np.linalg.norm(f) < 1e-12:
                    break
            if np.linalg.norm(_incidence(solver, k, q, x)[0]) > 1e-8:
                raise NoConvergence("timelike continuation lost the incidence condition")
            pts.append(x.copy())
    return TimelikeCurve(k, q, np.array(pts), np.array(forms))


def _chart_form(solver, k, x, tan, h=1e-6):
    cm = conformal_metric(solver, EWPoint(k, x[0], x[1], x[2]))
    delta = _chart_derivative(solver, k, x[0], x[1], x[2], tan[0], tan[1], tan[2], h)
    delta = delta - (delta @ cm.hyperplane) * cm.hyperplane
    return cm.form(delta) / max(np.linalg.norm(cm.linear @ delta) ** 2, 1e-300)
