"""Hyperelliptic curves with real branch points.

The curve is ``w**2 = -f(z)`` with ``f(z) = prod(z - b)`` over the ``2g + 2``
real branch points ``l_1 < l'_1 < ... < l_{g+1} < l'_{g+1}``.  The intervals
``K_i = [l_i, l'_i]`` carry the real circles of the curve (there ``-f >= 0``)
and double as branch cuts.

Sheet convention
----------------
The global analytic branch is ``W(z) = -1j * prod(sqrt(z - l_i) * sqrt(z - l'_i))``
with principal square roots.  It is analytic off the cuts and its limit from
the upper half plane is positive on the outermost interval.  A point off the
cuts has sheet ``+1`` when ``w = W(z)``.  A point on a cut has sheet
``sign(w)``, so the real circles read ``+`` where ``w > 0``.  Ramification
points always carry sheet ``+1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, QuadratureFailure, RamificationPoint

CURVE_TOL = 1e-10
QUAD_TOL = 1e-10
QUAD_FAIL = 1e-7

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)
_GL_NODES_LO, _GL_WEIGHTS_LO = np.polynomial.legendre.leggauss(10)


@dataclass(frozen=True)
class BranchConfig:
    """Ordered real branch points of a hyperelliptic curve.

    Parameters
    ----------
    genus : int
        Genus ``g >= 1``.
    branch_points : tuple of float
        ``2g + 2`` strictly increasing reals, paired into intervals.
    """

    genus: int
    branch_points: tuple

    def __post_init__(self):
        pts = tuple(float(x) for x in self.branch_points)
        object.__setattr__(self, "branch_points", pts)
        if int(self.genus) != self.genus or self.genus < 1:
            raise ConfigError(f"genus must be a positive integer, got {self.genus!r}")
        if len(pts) != 2 * self.genus + 2:
            raise ConfigError(
                f"expected {2 * self.genus + 2} branch points, got {len(pts)}"
            )
        if not all(np.isfinite(pts)):
            raise ConfigError("branch points must be finite")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ConfigError("branch points must be strictly increasing")

    @classmethod
    def from_points(cls, points: Sequence[float]) -> "BranchConfig":
        points = tuple(points)
        if len(points) < 4 or len(points) % 2:
            raise ConfigError(
                f"need an even number (>= 4) of branch points, got {len(points)}"
            )
        return cls(len(points) // 2 - 1, points)

    @classmethod
    def from_text(cls, text: str) -> "BranchConfig":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ConfigError("expected two lines: genus, then branch points")
        try:
            genus = int(lines[0])
            points = tuple(float(tok) for tok in lines[1].split())
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return cls(genus, points)

    def to_text(self) -> str:
        return f"{self.genus}\n" + " ".join(repr(x) for x in self.branch_points) + "\n"

    @property
    def points(self) -> np.ndarray:
        return np.array(self.branch_points)

    @property
    def lower(self) -> np.ndarray:
        """Left endpoints ``l_i`` (ramification points ``r_i``)."""
        return self.points[0::2]

    @property
    def upper(self) -> np.ndarray:
        """Right endpoints ``l'_i`` (ramification points ``r'_i``)."""
        return self.points[1::2]

    @property
    def min_gap(self) -> float:
        return float(np.min(np.diff(self.points)))

    def interval(self, i: int) -> tuple:
        """Endpoints of the ``i``-th real interval, ``0 <= i <= g``."""
        return float(self.lower[i]), float(self.upper[i])

    def gap(self, i: int) -> tuple:
        """Endpoints of the gap between intervals ``i`` and ``i + 1``."""
        return float(self.upper[i]), float(self.lower[i + 1])

    def f(self, z):
        """The branch polynomial ``prod(z - b)``."""
        z = np.asarray(z)
        return np.prod(z[..., None] - self.points, axis=-1)

    def f_poly(self) -> np.ndarray:
        """Coefficients of ``f`` in increasing degree."""
        return np.polynomial.polynomial.polyfromroots(self.points)

    def scaled(self, factor: float) -> "BranchConfig":
        return BranchConfig(self.genus, tuple(factor * x for x in self.branch_points))


G1 = BranchConfig(1, (-2.0, -1.0, 1.0, 2.0))
G2 = BranchConfig(2, (-5.0, -4.0, -2.0, -1.0, 1.0, 2.0))
G3 = BranchConfig(3, (-7.0, -6.0, -4.0, -3.0, -1.0, 0.0, 2.0, 3.0))


def _sanitize(z) -> np.ndarray:
    # turn a signed zero imaginary part into +0.0 so real inputs read the upper limit
    z = np.asarray(z, dtype=complex)
    return z.real + 1j * (z.imag + 0.0)


def branch_w(cfg: BranchConfig, z) -> np.ndarray:
    """Global analytic branch ``W`` of ``sqrt(-f)`` with cuts on the intervals."""
    z = _sanitize(z)
    lo = np.sqrt(z[..., None] - cfg.lower)
    hi = np.sqrt(z[..., None] - cfg.upper)
    return -1j * np.prod(lo * hi, axis=-1)


def _branch_w_offset(cfg: BranchConfig, a: complex, dz) -> np.ndarray:
    # W(a + dz) with each factor's argument formed as (a - b) + dz, so the
    # factor vanishing at a branch point a is exact for tiny dz
    dz = np.asarray(dz, dtype=complex)
    lo = np.sqrt(_sanitize((a - cfg.lower) + dz[..., None]))
    hi = np.sqrt(_sanitize((a - cfg.upper) + dz[..., None]))
    return -1j * np.prod(lo * hi, axis=-1)


def _on_cut(cfg: BranchConfig, z: np.ndarray) -> np.ndarray:
    x = z.real[..., None]
    inside = (x > cfg.lower) & (x < cfg.upper)
    return (z.imag == 0) & inside.any(axis=-1)


def eval_w(cfg: BranchConfig, z, sheet: int = 1):
    """Value of ``w`` over ``z`` on the given sheet.

    Parameters
    ----------
    cfg : BranchConfig
    z : complex or array_like
    sheet : {+1, -1}

    Returns
    -------
    complex or ndarray
        ``w`` with ``w**2 = -f(z)``.  Zero at branch points.
    """
    if sheet not in (1, -1):
        raise ValueError("sheet must be +1 or -1")
    zz = _sanitize(z)
    W = branch_w(cfg, zz)
    on_cut = _on_cut(cfg, zz)
    real_val = np.sqrt(np.abs(cfg.f(zz.real)))
    out = np.where(on_cut, sheet * real_val + 0j, sheet * W)
    return out[()] if out.ndim == 0 else out


def sheet_of(cfg: BranchConfig, z, w) -> np.ndarray:
    """Sheet tag of the point ``(z, w)`` under the documented convention."""
    zz = _sanitize(z)
    w = np.asarray(w, dtype=complex)
    W = branch_w(cfg, zz)
    on_cut = _on_cut(cfg, zz)
    off = np.where(np.abs(w - W) <= np.abs(w + W), 1, -1)
    cut = np.where(w.real >= 0, 1, -1)
    out = np.where(on_cut, cut, off)
    ram = np.abs(W) == 0
    out = np.where(ram, 1, out)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class CurvePoint:
    """A point ``(z, w)`` of the curve with its sheet tag."""

    z: complex
    w: complex
    sheet: int = 1

    def involution(self) -> "CurvePoint":
        """Image under ``(z, w) -> (z, -w)``."""
        if self.w == 0:
            return self
        return CurvePoint(self.z, -self.w, -self.sheet)

    def residual(self, cfg: BranchConfig) -> float:
        fz = complex(cfg.f(self.z))
        scale = max(1.0, float(np.prod(np.abs(self.z) + np.abs(cfg.points))))
        return abs(self.w**2 + fz) / scale

    def is_ramification(self) -> bool:
        return self.w == 0


def curve_point(cfg: BranchConfig, z: complex, sheet: int = 1) -> CurvePoint:
    """Point over ``z`` on the given sheet."""
    z = complex(_sanitize(z))
    w = complex(eval_w(cfg, z, sheet))
    if w == 0:
        return CurvePoint(z, 0j, 1)
    return CurvePoint(z, w, sheet)


def ramification_point(cfg: BranchConfig, i: int, primed: bool = False) -> CurvePoint:
    """The ramification point ``r_i`` (or ``r'_i``) with ``0 <= i <= g``."""
    x = cfg.upper[i] if primed else cfg.lower[i]
    return CurvePoint(complex(x), 0j, 1)


def continue_w(cfg: BranchConfig, zs: Sequence[complex], w0: complex) -> np.ndarray:
    """Analytically continue ``w`` along a densely sampled path.

    Each step keeps the root of ``w**2 = -f`` closest to the previous value.
    """
    zs = np.asarray(zs, dtype=complex)
    roots = np.sqrt(-cfg.f(zs) + 0j)
    out = np.empty_like(roots)
    prev = complex(w0)
    for n, r in enumerate(roots):
        prev = r if abs(r - prev) <= abs(r + prev) else -r
        out[n] = prev
    return out


def holomorphic_basis(p: CurvePoint, genus: int) -> np.ndarray:
    """Integrand vector ``(1, z, ..., z**(g-1)) / w``.

    Raises
    ------
    RamificationPoint
        If ``w = 0``.
    """
    if p.w == 0:
        raise RamificationPoint(f"w = 0 at z = {p.z}")
    return np.power(complex(p.z), np.arange(genus)) / p.w


def monomials(genus: int, z, w, y=None) -> np.ndarray:
    """Embedding coordinates ``(1, z, ..., z**(g+1), w[, y])`` along the last axis."""
    z = np.asarray(z)
    cols = [np.power(z[..., None], np.arange(genus + 2)), np.asarray(w)[..., None]]
    if y is not None:
        cols.append(np.asarray(y)[..., None])
    dtype = np.result_type(*cols)
    return np.concatenate([c.astype(dtype) for c in cols], axis=-1)


@dataclass(frozen=True)
class EmbeddedPoint:
    """Homogeneous coordinates in ``CP_{g+2}`` or ``CP_{g+3}``."""

    coords: tuple
    ambient: str


def embed(p: CurvePoint, genus: int, ambient: str = "CP_{g+2}") -> EmbeddedPoint:
    """Embed a curve point by monomials; the curve sits at ``y = 0`` in ``CP_{g+3}``."""
    if ambient == "CP_{g+2}":
        coords = monomials(genus, complex(p.z), complex(p.w))
    elif ambient == "CP_{g+3}":
        coords = monomials(genus, complex(p.z), complex(p.w), 0j)
    else:
        raise ValueError(f"unknown ambient {ambient!r}")
    return EmbeddedPoint(tuple(complex(c) for c in coords), ambient)


def hyperplane_section(cfg: BranchConfig, coeffs: Sequence[float]) -> list:
    """All intersection points of a hyperplane of ``CP_{g+2}`` with the curve.

    The hyperplane is ``P(z) + c_w w = 0`` with ``P`` of degree ``g + 1``.
    The ``2g + 2`` points are the roots of ``P**2 + c_w**2 f``.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    g = cfg.genus
    P, cw = coeffs[: g + 2], coeffs[g + 2]
    if cw == 0:
        raise ValueError("vertical hyperplanes meet the curve in doubled points")
    N = np.polynomial.polynomial.polyadd(
        np.polynomial.polynomial.polymul(P, P), cw**2 * cfg.f_poly()
    )
    roots = np.polynomial.polynomial.polyroots(N)
    out = []
    for z in roots:
        w = -np.polynomial.polynomial.polyval(z, P) / cw
        out.append(CurvePoint(complex(z), complex(w), int(sheet_of(cfg, z, w))))
    return out


# --- real circles -------------------------------------------------------------


def circle_geometry(cfg: BranchConfig, i: int) -> tuple:
    """Center and half width of the interval ``K_i``."""
    a, b = cfg.interval(i)
    return 0.5 * (a + b), 0.5 * (b - a)


def cofactor(cfg: BranchConfig, i: int, z) -> np.ndarray:
    """``prod_{j != i} (z - l_j)(z - l'_j)``, positive on ``K_i``."""
    z = np.asarray(z)
    others = np.delete(cfg.points, [2 * i, 2 * i + 1])
    return np.prod(z[..., None] - others, axis=-1)


def circle_zw(cfg: BranchConfig, i: int, phi) -> tuple:
    """Smooth angular parameterization of the real circle over ``K_i``.

    ``z = m - l cos(phi)`` and ``w = l sin(phi) sqrt(G(z))`` where ``G`` is the
    cofactor.  ``phi = 0`` is ``r_i``, ``phi = pi`` is ``r'_i`` and
    ``0 < phi < pi`` is the ``w > 0`` half.
    """
    m, ell = circle_geometry(cfg, i)
    phi = np.asarray(phi, dtype=float)
    z = m - ell * np.cos(phi)
    w = ell * np.sin(phi) * np.sqrt(cofactor(cfg, i, z))
    return z, w


def circle_dzw(cfg: BranchConfig, i: int, phi) -> tuple:
    """Derivatives ``dz/dphi`` and ``dw/dphi`` along the circle."""
    m, ell = circle_geometry(cfg, i)
    phi = np.asarray(phi, dtype=float)
    z = m - ell * np.cos(phi)
    G = cofactor(cfg, i, z)
    others = np.delete(cfg.points, [2 * i, 2 * i + 1])
    logd = np.sum(1.0 / (z[..., None] - others), axis=-1)
    sq = np.sqrt(G)
    dz = ell * np.sin(phi)
    dw = ell * np.cos(phi) * sq + ell * np.sin(phi) * 0.5 * sq * logd * dz
    return dz, dw


def circle_angle(cfg: BranchConfig, i: int, z, w) -> np.ndarray:
    """Inverse of :func:`circle_zw`, with values in ``(-pi, pi]``."""
    m, ell = circle_geometry(cfg, i)
    z = np.real(np.asarray(z, dtype=complex))
    w = np.real(np.asarray(w, dtype=complex))
    G = cofactor(cfg, i, np.clip(z, *cfg.interval(i)))
    return np.arctan2(w / (ell * np.sqrt(G)), (m - z) / ell)


def circle_point(cfg: BranchConfig, i: int, phi: float) -> CurvePoint:
    """Curve point at angle ``phi`` on the real circle over ``K_i``."""
    z, w = circle_zw(cfg, i, phi)
    z, w = float(z), float(w)
    if w == 0:
        return CurvePoint(complex(z), 0j, 1)
    return CurvePoint(complex(z), complex(w), 1 if w > 0 else -1)


def circle_index(cfg: BranchConfig, z: float) -> int:
    """Index of the interval containing the real number ``z`` or ``-1``."""
    inside = np.nonzero((z >= cfg.lower) & (z <= cfg.upper))[0]
    return int(inside[0]) if inside.size else -1


def disk_coords(cfg: BranchConfig, z, w) -> tuple:
    """Coordinates on the outer disk in which it becomes the unit disk."""
    g = cfg.genus
    m, ell = circle_geometry(cfg, g)
    z = np.asarray(z, dtype=float)
    a = (z - m) / ell
    b = np.asarray(w, dtype=float) / (ell * np.sqrt(cofactor(cfg, g, z)))
    return a, b


def disk_point(cfg: BranchConfig, a, b) -> tuple:
    """Inverse of :func:`disk_coords`."""
    g = cfg.genus
    m, ell = circle_geometry(cfg, g)
    z = m + ell * np.asarray(a, dtype=float)
    w = ell * np.asarray(b, dtype=float) * np.sqrt(cofactor(cfg, g, z))
    return z, w


# --- cycles and quadrature ----------------------------------------------------


@dataclass(frozen=True)
class CyclePath:
    """A real homology cycle given as interval pieces with sheets.

    ``kind`` is ``"circle"`` (the real circle over ``K_i``, ``0 <= i <= g``) or
    ``"gap"`` (the cycle ``A_i`` over the gap after ``K_i``, ``0 <= i < g``).
    Both are traversed with increasing ``z`` on sheet ``+`` first.
    """

    kind: str
    index: int
    segments: tuple

    @property
    def cycle_id(self) -> str:
        return ("Sigma_" if self.kind == "circle" else "A_") + str(self.index + 1)


def cycle(cfg: BranchConfig, kind: str, index: int) -> CyclePath:
    if kind == "circle":
        if not 0 <= index <= cfg.genus:
            raise ValueError("circle index out of range")
        a, b = cfg.interval(index)
    elif kind == "gap":
        if not 0 <= index < cfg.genus:
            raise ValueError("gap index out of range")
        a, b = cfg.gap(index)
    else:
        raise ValueError(f"unknown cycle kind {kind!r}")
    return CyclePath(kind, index, (((a, b), 1), ((b, a), -1)))


@dataclass(frozen=True)
class PolygonPath:
    """A polygonal path in the ``z`` plane lifted by ``sign * W``.

    The path must not cross a cut; it may start or end at branch points.
    """

    vertices: tuple
    sign: int = 1


def _contour_cycle(cfg: BranchConfig, path: CyclePath) -> tuple:
    # trapezoid rule on an ellipse with foci at the cycle's endpoints; the
    # integrand is periodic and analytic in the angle, so convergence is geometric
    g = cfg.genus
    (a, b), _ = path.segments[0]
    c, ell = 0.5 * (a + b), 0.5 * (b - a)
    others = [x for x in cfg.branch_points if x not in (a, b)]
    d = min(abs(x - c) for x in others)
    rho = 0.5 * math.acosh(d / ell)
    powers = np.arange(g)
    prev, n = None, 32
    while True:
        theta = 2 * np.pi * np.arange(n) / n
        zeta = theta + 1j * rho
        z = _sanitize(c + ell * np.cos(zeta))
        dz = -ell * np.sin(zeta)
        W = branch_w(cfg, z)
        vals = dz / W
        if path.kind == "gap":
            vals = np.where(z.imag >= 0, vals, -vals)
        val = (z[:, None] ** powers * vals[:, None]).sum(axis=0) * (2 * np.pi / n)
        if prev is not None:
            err = float(np.max(np.abs(val - prev)))
            scale = max(float(np.max(np.abs(val))), 1e-300)
            if err <= 1e-3 * QUAD_TOL * scale:
                break
            if n >= 1 << 16:
                if err > QUAD_FAIL * scale:
                    raise QuadratureFailure(f"{path.cycle_id}: error {err:.3e}")
                break
        prev, n = val, 2 * n
    if path.kind == "circle":
        mid = float(np.real(branch_w(cfg, c)))
        val = val if mid > 0 else -val
    return val, err


def _segment_pieces(fun, t_lo, t_hi, tol):
    # adaptive Gauss-Legendre on [t_lo, t_hi] for a vector valued integrand
    def gl(lo, hi, nodes, weights):
        half = 0.5 * (hi - lo)
        t = lo + half * (nodes + 1.0)
        return half * (fun(t) * weights[:, None]).sum(axis=0)

    total = 0.0
    stack = [(t_lo, t_hi)]
    n_panels = 0
    worst = 0.0
    while stack:
        lo, hi = stack.pop()
        hi_val = gl(lo, hi, _GL_NODES, _GL_WEIGHTS)
        lo_val = gl(lo, hi, _GL_NODES_LO, _GL_WEIGHTS_LO)
        err = float(np.max(np.abs(hi_val - lo_val)))
        if err <= tol * (hi - lo) / (t_hi - t_lo) or n_panels > 4000:
            total = total + hi_val
            worst = max(worst, err)
            n_panels += 1
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi))
            stack.append((lo, mid))
    return total, worst, n_panels


def _is_branch(cfg: BranchConfig, z: complex) -> bool:
    return bool(np.min(np.abs(z - cfg.points)) <= 1e-14 * (1 + abs(z)))


def _near_branch(cfg: BranchConfig, z: complex, scale: float) -> bool:
    return bool(np.min(np.abs(z - cfg.points)) < 1e-3 * scale)


def _segment_integral(cfg: BranchConfig, a: complex, b: complex, sign: int):
    g = cfg.genus
    powers = np.arange(g)
    sa, sb = _is_branch(cfg, a), _is_branch(cfg, b)
    na = sa or _near_branch(cfg, a, abs(b - a))
    nb = sb or _near_branch(cfg, b, abs(b - a))
    if na and nb:
        m = 0.5 * (a + b)
        v1, e1 = _segment_integral(cfg, a, m, sign)
        v2, e2 = _segment_integral(cfg, m, b, sign)
        return v1 + v2, e1 + e2
    flip = 1.0
    if nb:
        a, b, flip = b, a, -1.0
        sa, na = sb, nb
    delta = b - a

    if sa:
        # z = a + delta t^2 removes the square root singularity at t = 0
        def fun(t):
            dz = delta * t * t
            z = a + dz
            W = sign * _branch_w_offset(cfg, a, dz)
            return (z[:, None] ** powers) * (2 * delta * t / W)[:, None]

    elif na:
        # same substitution next to a branch point keeps the integrand bounded
        def fun(t):
            z = a + delta * t * t
            W = sign * branch_w(cfg, z)
            return (z[:, None] ** powers) * (2 * delta * t / W)[:, None]

    else:

        def fun(t):
            z = a + delta * t
            W = sign * branch_w(cfg, z)
            return (z[:, None] ** powers) * (delta / W)[:, None]

    coarse = np.abs(fun(0.5 * (_GL_NODES + 1.0))).max() * abs(delta)
    tol = QUAD_TOL * 1e-3 * max(float(coarse), 1e-300)
    val, err, panels = _segment_pieces(fun, 0.0, 1.0, tol)
    if err > QUAD_FAIL * max(float(np.max(np.abs(val))), float(coarse), 1e-300):
        raise QuadratureFailure(f"segment {a}->{b}: error {err:.3e} after {panels} panels")
    return flip * val, err


def _check_no_crossing(cfg: BranchConfig, a: complex, b: complex):
    if (a.imag > 0 and b.imag < 0) or (a.imag < 0 and b.imag > 0):
        t = a.imag / (a.imag - b.imag)
        x = a.real + t * (b.real - a.real)
        if circle_index(cfg, x) >= 0 and not _is_branch(cfg, complex(x)):
            raise ValueError("path segment crosses a branch cut")


def integrate_basis(cfg: BranchConfig, path) -> np.ndarray:
    """Integral of the holomorphic basis over a cycle or a polygonal path.

    Parameters
    ----------
    cfg : BranchConfig
    path : CyclePath or PolygonPath

    Returns
    -------
    ndarray of complex, shape (g,)

    Raises
    ------
    QuadratureFailure
        If the estimated error exceeds ``1e-7`` relative.
    """
    if isinstance(path, CyclePath):
        return _contour_cycle(cfg, path)[0]
    if not isinstance(path, PolygonPath):
        raise TypeError("path must be a CyclePath or PolygonPath")
    total = np.zeros(cfg.genus, dtype=complex)
    verts = [complex(_sanitize(v)) for v in path.vertices]
    for a, b in zip(verts, verts[1:]):
        if a == b:
            continue
        _check_no_crossing(cfg, a, b)
        total = total + _segment_integral(cfg, a, b, path.sign)[0]
    return total


def cycle_error(cfg: BranchConfig, path: CyclePath) -> float:
    """Estimated absolute quadrature error of a cycle integral."""
    return _contour_cycle(cfg, path)[1]
