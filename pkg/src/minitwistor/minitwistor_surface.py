"""The compact surface ``T``: double cover of the cone branched along the curve.

In the affine chart ``T`` is ``w**2 + y**2 = -f(z)``, equivalently
``u v = -f(z)`` with ``u = w + 1j y`` and ``v = w - 1j y``.  A hyperplane of
``CP_{g+3}`` is a real vector ``(c_0, ..., c_{g+1}, c_w, c_y)`` acting on the
monomials ``(1, z, ..., z**(g+1), w, y)``.

The circle acts by ``u -> exp(1j theta) u``, which rotates ``(w, y)`` and,
identically, ``(c_w, c_y)`` by the angle ``theta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotInFamily
from .hyperelliptic_curve import BranchConfig, circle_angle, circle_index
from .jacobian import _wrap

P = np.polynomial.polynomial


@dataclass(frozen=True)
class SurfacePoint:
    """A point of ``T``.

    ``chart`` is ``"affine"`` for finite points and ``"p_inf"`` or
    ``"p_inf_bar"`` for the two points over the cone vertex (``u = inf`` and
    ``v = inf`` respectively).
    """

    z: complex
    w: complex
    y: complex
    chart: str = "affine"

    @classmethod
    def from_uv(cls, z: complex, u: complex, v: complex) -> "SurfacePoint":
        return cls(complex(z), complex(0.5 * (u + v)), complex((u - v) / 2j))

    @classmethod
    def at_infinity(cls, which: str = "p_inf") -> "SurfacePoint":
        if which not in ("p_inf", "p_inf_bar"):
            raise ValueError(which)
        return cls(complex("nan"), complex("nan"), complex("nan"), which)

    @property
    def u(self) -> complex:
        return self.w + 1j * self.y

    @property
    def v(self) -> complex:
        return self.w - 1j * self.y

    def residual(self, cfg: BranchConfig) -> float:
        if self.chart != "affine":
            return 0.0
        fz = complex(cfg.f(self.z))
        scale = max(1.0, abs(fz), abs(self.w) ** 2, abs(self.y) ** 2)
        return abs(self.w**2 + self.y**2 + fz) / scale

    def sigma(self) -> "SurfacePoint":
        """Real structure ``(z, u, v) -> (conj z, conj v, conj u)``."""
        if self.chart == "p_inf":
            return SurfacePoint.at_infinity("p_inf_bar")
        if self.chart == "p_inf_bar":
            return SurfacePoint.at_infinity("p_inf")
        return SurfacePoint(self.z.conjugate(), self.w.conjugate(), self.y.conjugate())

    def is_real(self, tol: float = 1e-12) -> bool:
        s = self.sigma()
        return self.chart == "affine" and max(abs(s.z - self.z), abs(s.w - self.w), abs(s.y - self.y)) < tol

    def monomials(self, genus: int) -> np.ndarray:
        z = complex(self.z)
        return np.concatenate([z ** np.arange(genus + 2), [self.w, self.y]])


def lift_to_T(cfg: BranchConfig, z: complex, w: complex) -> tuple:
    """The two points of ``T`` over a point ``(z, w)`` of the cone."""
    y = np.sqrt(complex(-cfg.f(z) - w * w))
    return SurfacePoint(complex(z), complex(w), y), SurfacePoint(complex(z), complex(w), -y)


def _rotate(theta: float, a, b):
    c, s = math.cos(theta), math.sin(theta)
    return c * a - s * b, s * a + c * b


def s1_act(theta: float, x):
    """Circle action on a :class:`SurfacePoint` or on hyperplane coefficients."""
    if isinstance(x, SurfacePoint):
        if x.chart != "affine":
            return x
        w, y = _rotate(theta, x.w, x.y)
        return SurfacePoint(x.z, w, y)
    c = np.array(x, dtype=float)
    c[..., -2], c[..., -1] = _rotate(theta, c[..., -2], c[..., -1])
    return c


def pullback(coeffs) -> np.ndarray:
    """Pull back a hyperplane of ``CP_{g+2}`` to ``CP_{g+3}`` (``c_y = 0``)."""
    c = np.asarray(coeffs, dtype=float)
    return np.concatenate([c, np.zeros(c.shape[:-1] + (1,))], axis=-1)


def projective_distance(a, b) -> float:
    """Distance between two hyperplanes up to scale and sign."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


@dataclass(frozen=True)
class MinitwistorLine:
    """Hyperplane section of ``T`` with its real structure decoded.

    Attributes
    ----------
    hyperplane : tuple of float
        Unit coefficient vector.
    kind : {"regular", "irregular", "boundary"}
    nodes : tuple of SurfacePoint
        Real nodes; one per inner sphere, plus the shrunken circle for the
        boundary kind.
    real_circle : ndarray, shape (n, 3)
        Real samples ``(z, w, y)``; a single row for the boundary kind.
    theta : float
        Rotation angle with ``hyperplane = s1_act(theta, (P, c, 0))``.
    arc : tuple
        ``(z_lo, z_hi)`` bounding the real circle over the outer interval.
    components : tuple
        For the irregular kind, the ``2g`` lines and the conic.
    k : int or None
        Seifert index when it was determined.
    axis : str or None
        ``"I"`` or ``"I'"`` for irregular lines.
    """

    hyperplane: tuple
    kind: str
    nodes: tuple
    real_circle: np.ndarray = field(compare=False)
    theta: float = 0.0
    arc: tuple = ()
    components: tuple = ()
    k: int | None = None
    axis: str | None = None
    chart: tuple | None = None


def _node_search(cfg: BranchConfig, N: np.ndarray, i: int) -> float | None:
    # double root of N inside the closure of K_i, certified by value and N'' > 0
    lo, hi = cfg.interval(i)
    ell = hi - lo
    dN = P.polyder(N)
    d2N = P.polyder(dN)
    crit = P.polyroots(dN)
    cand = [c.real for c in crit if abs(c.imag) < 1e-6 * ell and lo - 1e-6 * ell <= c.real <= hi + 1e-6 * ell]
    best = None
    for z in cand:
        for _ in range(5):
            d2 = P.polyval(z, d2N)
            if d2 == 0:
                break
            z = z - P.polyval(z, dN) / d2
        scale = float(np.sum(np.abs(N) * abs(z) ** np.arange(len(N))))
        val = abs(P.polyval(z, N)) / scale
        if val < 1e-8 and P.polyval(z, d2N) > 0 and lo - 1e-6 * ell <= z <= hi + 1e-6 * ell:
            if best is None or val < best[1]:
                best = (float(min(max(z, lo), hi)), val)
    return None if best is None else best[0]


def _real_circle(cfg, Pc, c, nodes_z, z_lo, z_hi, theta, samples):
    lc = P.polyval(0, P.polyder(P.polyadd(P.polymul(Pc, Pc), c * c * cfg.f_poly()), 2 * cfg.genus + 2)) / math.factorial(2 * cfg.genus + 2)
    m, ell = 0.5 * (z_lo + z_hi), 0.5 * (z_hi - z_lo)
    psi = 2 * np.pi * np.arange(samples) / samples
    z = m - ell * np.cos(psi)
    w = -P.polyval(z, Pc) / c
    kappa = math.sqrt(lc) / c
    prod = np.prod(z[:, None] - np.asarray(nodes_z), axis=1) if len(nodes_z) else np.ones_like(z)
    y = kappa * prod * ell * np.sin(psi)
    w, y = _rotate(theta, w, y)
    return np.stack([z, w, y], axis=1)


def _decompose(H, genus):
    H = np.asarray(H, dtype=float)
    H = H / np.linalg.norm(H)
    Pc = H[: genus + 2]
    c = math.hypot(H[-2], H[-1])
    theta = math.atan2(H[-1], H[-2])
    return H, Pc, c, theta


def build_line(cfg: BranchConfig, H, solver=None, samples: int = 128) -> MinitwistorLine:
    """Classify a real hyperplane section of ``T``.

    Parameters
    ----------
    cfg : BranchConfig
    H : array_like, shape (g + 4,)
    solver : SeifertSolver, optional
        When given, the Seifert index ``k`` and chart coordinates of regular
        lines are determined from Abel classes.
    samples : int
        Number of real circle samples.

    Raises
    ------
    NotInFamily
        If the section does not have one certified node per inner sphere and
        either a real circle or a single real point over the outer interval.
    """
    g = cfg.genus
    H, Pc, c, theta = _decompose(H, g)
    if c < 1e-10:
        return _irregular(cfg, H, Pc, samples)
    N = P.polyadd(P.polymul(Pc, Pc), c * c * cfg.f_poly())
    nodes_z = []
    for i in range(g):
        z = _node_search(cfg, N, i)
        if z is None:
            raise NotInFamily(f"no certified node over interval {i}")
        nodes_z.append(z)
    lc = N[-1]
    denom = lc * P.polyfromroots(np.repeat(nodes_z, 2)) if g else np.array([lc])
    quot, rem = P.polydiv(N, denom)
    if np.max(np.abs(rem)) > 1e-8 * np.max(np.abs(N)):
        raise NotInFamily("deflation by the nodes leaves a remainder")
    quot = quot / quot[-1]
    lo, hi = cfg.interval(g)
    ell = hi - lo
    disc = quot[1] ** 2 - 4 * quot[0]
    tol = 1e-6 * ell
    if disc < -(tol**2):
        raise NotInFamily("no real point over the outer interval")
    r = np.sqrt(max(disc, 0.0))
    z1, z2 = 0.5 * (-quot[1] - r), 0.5 * (-quot[1] + r)
    if z1 < lo - tol or z2 > hi + tol:
        raise NotInFamily("real points over the outer interval leave the interval")
    z1, z2 = max(z1, lo), min(z2, hi)
    node_pts = [SurfacePoint(complex(z), complex(-P.polyval(z, Pc) / c), 0j) for z in nodes_z]
    node_pts = [s1_act(theta, p) for p in node_pts]
    if z2 - z1 < tol:
        zb = 0.5 * (z1 + z2)
        pt = s1_act(theta, SurfacePoint(complex(zb), complex(-P.polyval(zb, Pc) / c), 0j))
        circle = np.array([[zb, pt.w.real, pt.y.real]])
        return MinitwistorLine(tuple(H), "boundary", tuple(node_pts) + (pt,), circle, theta, (zb, zb))
    circle = _real_circle(cfg, Pc, c, nodes_z, z1, z2, theta, samples)
    k, chart = (None, None) if solver is None else _regular_chart(cfg, solver, Pc, c, nodes_z, z1, z2, theta)
    return MinitwistorLine(tuple(H), "regular", tuple(node_pts), circle, theta, (z1, z2), (), k, None, chart)


def _regular_chart(cfg, solver, Pc, c, nodes_z, z1, z2, theta):
    # recover (k, u, v, theta) of a regular line from the Abel classes of its
    # tangency points and the two ends of its real arc
    from .seifert import all_boundary_data

    g = cfg.genus
    ra = solver.real_abel
    phis = [float(circle_angle(cfg, i, z, -P.polyval(z, Pc) / c)) for i, z in enumerate(nodes_z)]
    s = float(circle_angle(cfg, g, z1, -P.polyval(z1, Pc) / c))
    t = float(circle_angle(cfg, g, z2, -P.polyval(z2, Pc) / c))
    base = solver.phi_map(np.array(phis))[0] + 0.5 * ra.beta(g, s)
    for n in (0, 1):
        tt = t + 2 * np.pi * n
        x = base + 0.5 * ra.beta(g, tt)
        for kd in all_boundary_data(g):
            if np.max(np.abs(_wrap(x - solver.phi_map(kd.angles)[0]))) < 1e-6:
                return kd.k, ew_coordinates(s, tt, theta)
    raise NotInFamily("Abel class of the tangency data matches no Seifert surface")


def ew_coordinates(s: float, t: float, theta: float = 0.0) -> tuple:
    """Normalized ``(u, v, theta)`` of lifted outer angles, ``u`` in ``[0, 2 pi)`` and ``v`` in ``[0, pi]``."""
    u, v = 0.5 * (s + t), 0.5 * (t - s)
    v = math.remainder(v, 2 * np.pi)
    if v < 0:
        v = -v
    return float(u % (2 * np.pi)), float(v), float(theta)


def _irregular(cfg, H, Pc, samples):
    from .seifert import BoundaryData

    g = cfg.genus
    deg = np.max(np.nonzero(np.abs(Pc) > 1e-12)[0]) if np.any(np.abs(Pc) > 1e-12) else -1
    if deg != g + 1:
        raise NotInFamily("vertical hyperplane of the wrong degree")
    roots = np.sort(P.polyroots(Pc).real) if np.all(np.abs(P.polyroots(Pc).imag) < 1e-8) else None
    if roots is None:
        raise NotInFamily("vertical hyperplane with non-real roots")
    choices = []
    for i in range(g):
        lo, hi = cfg.interval(i)
        dl, dh = np.min(np.abs(roots - lo)), np.min(np.abs(roots - hi))
        if min(dl, dh) > 1e-7 * (1 + abs(lo) + abs(hi)):
            raise NotInFamily(f"vertical hyperplane misses the ramification points over interval {i}")
        choices.append(0 if dl < dh else 1)
    ram = np.array([cfg.interval(i)[ch] for i, ch in enumerate(choices)])
    rest = [r for r in roots if np.min(np.abs(ram - r)) > 1e-7 * (1 + abs(r))]
    if len(rest) != 1 or circle_index(cfg, rest[0]) != g:
        lo, hi = cfg.interval(g)
        near = [r for r in roots if lo - 1e-9 <= r <= hi + 1e-9]
        if len(rest) == 0 and near:
            rest = near[:1]
        else:
            raise NotInFamily("vertical hyperplane without a conic over the outer interval")
    lam = float(min(max(rest[0], cfg.interval(g)[0]), cfg.interval(g)[1]))
    kd = BoundaryData.from_choices(choices)
    axis = "I" if choices[0] == 0 else "I'"
    nodes = tuple(SurfacePoint(complex(x), 0j, 0j) for x in ram)
    comps = tuple(("line", float(x)) for x in ram) + tuple(("conj_line", float(x)) for x in ram) + (("conic", lam),)
    radius = math.sqrt(max(-float(cfg.f(lam)), 0.0))
    psi = 2 * np.pi * np.arange(samples) / samples
    circle = np.stack([np.full(samples, lam), radius * np.cos(psi), radius * np.sin(psi)], axis=1)
    return MinitwistorLine(tuple(H), "irregular", nodes, circle, 0.0, (lam, lam), comps, kd.k, axis)


def line_contains(cfg: BranchConfig, H, p: SurfacePoint, tol: float = 1e-9) -> bool:
    m = p.monomials(cfg.genus)
    H = np.asarray(H, dtype=float)
    return abs(H @ m) <= tol * np.linalg.norm(H) * np.linalg.norm(m)


def intersection_points(cfg: BranchConfig, H1, H2) -> np.ndarray:
    """``z`` coordinates of the points of ``T`` on two hyperplanes.

    Solving the two equations for ``(w, y)`` and substituting into the
    surface equation leaves a polynomial of degree ``2g + 2``.
    """
    g = cfg.genus
    H1, H2 = np.asarray(H1, float), np.asarray(H2, float)
    P1, P2 = H1[: g + 2], H2[: g + 2]
    det = H1[-2] * H2[-1] - H1[-1] * H2[-2]
    w_num = P.polysub(-P1 * H2[-1], -P2 * H1[-1])
    y_num = P.polysub(-H1[-2] * P2, -H2[-2] * P1)
    poly = P.polyadd(P.polyadd(P.polymul(w_num, w_num), P.polymul(y_num, y_num)), det * det * cfg.f_poly())
    return P.polyroots(P.polytrim(poly, 1e-14 * np.max(np.abs(poly))))


def section_rank(cfg: BranchConfig, points) -> int:
    """Numerical rank of the monomial vectors of the given points."""
    M = np.array([p.monomials(cfg.genus) for p in points])
    sv = np.linalg.svd(M / np.linalg.norm(M, axis=1, keepdims=True), compute_uv=False)
    return int(np.sum(sv > 1e-9 * sv[0]))


def line_points(cfg: BranchConfig, H, zs) -> list:
    """Points of a hyperplane section over the given ``z`` values (both lifts)."""
    g = cfg.genus
    H, Pc, c, theta = _decompose(H, g)
    out = []
    for z in np.asarray(zs, dtype=complex):
        w = -P.polyval(z, Pc) / c
        y = np.sqrt(-complex(cfg.f(z)) - w * w)
        for yy in (y, -y):
            out.append(s1_act(theta, SurfacePoint(complex(z), complex(w), complex(yy))))
    return out


# --- quadric covers -----------------------------------------------------------


@dataclass(frozen=True)
class QuadricCover:
    """The degree ``g + 1`` map of ``T`` onto ``CP_1 x CP_1`` for boundary data ``k``.

    With ``B`` the chosen ramification points (``rho_i`` and ``r_{g+1}``, or
    ``r'_{g+1}`` for the hatted cover) and ``B'`` the others, the map is
    ``(v / prod_B', prod_B' / u)``, with the equivalent forms
    ``-prod_B / u`` and ``-v / prod_B`` used where they are better conditioned.
    """

    cfg: BranchConfig
    k: object
    hatted: bool = False

    def _sets(self):
        pick = list(self.k.choices) + [1 if self.hatted else 0]
        B = np.array([self.cfg.interval(i)[c] for i, c in enumerate(pick)])
        Bp = np.array([self.cfg.interval(i)[1 - c] for i, c in enumerate(pick)])
        return B, Bp

    def project(self, x: SurfacePoint) -> tuple:
        """Homogeneous image ``((a0, a1), (b0, b1))`` with unit norm pairs."""
        if x.chart == "p_inf":
            return (0j, 1 + 0j), (0j, 1 + 0j)
        if x.chart == "p_inf_bar":
            return (1 + 0j, 0j), (1 + 0j, 0j)
        B, Bp = self._sets()
        pB = complex(np.prod(x.z - B))
        pBp = complex(np.prod(x.z - Bp))
        u, v = x.u, x.v
        first = (v, pBp) if abs(v) + abs(pBp) >= abs(pB) + abs(u) else (-pB, u)
        second = (pBp, u) if abs(pBp) + abs(u) >= abs(v) + abs(pB) else (-v, pB)
        return _unit(first), _unit(second)

    def project_affine(self, x: SurfacePoint) -> tuple:
        """Affine image with ``inf`` for the point at infinity."""
        a, b = self.project(x)
        return _affine(a), _affine(b)

    def fiber(self, Z: complex, W: complex) -> list:
        """All ``g + 1`` preimages of the affine point ``(Z, W)``."""
        B, Bp = self._sets()
        poly = P.polyadd(Z * P.polyfromroots(Bp), W * P.polyfromroots(B))
        out = []
        for z in P.polyroots(poly):
            pBp = complex(np.prod(z - Bp))
            v = Z * pBp
            u = pBp / W
            out.append(SurfacePoint.from_uv(complex(z), u, v))
        return out

    def real_fiber(self, Z: complex) -> list:
        """Preimage of the real point ``(Z, 1 / conj(Z))``, sorted by ``z``."""
        pts = self.fiber(Z, 1.0 / np.conj(Z))
        pts = [SurfacePoint(complex(p.z.real), complex(p.w.real), complex(p.y.real)) if abs(p.z.imag) < 1e-9 else p for p in pts]
        return sorted(pts, key=lambda p: p.z.real)


def _unit(pair):
    a, b = complex(pair[0]), complex(pair[1])
    n = math.hypot(abs(a), abs(b))
    return a / n, b / n


def _affine(pair):
    a, b = pair
    return complex("inf") if b == 0 else a / b


def boundary_hyperplane(qc: QuadricCover, Z: complex) -> np.ndarray:
    """Hyperplane cutting the pullback of the two rulings through ``(Z, 1/conj Z)``.

    ``Z u + conj(Z) v + prod_B - |Z|**2 prod_B' = 0``.
    """
    B, Bp = qc._sets()
    Z = complex(Z)
    Pc = P.polysub(P.polyfromroots(B), abs(Z) ** 2 * P.polyfromroots(Bp))
    H = np.concatenate([Pc, [2 * Z.real, -2 * Z.imag]])
    return H / np.linalg.norm(H)


def boundary_section(qc: QuadricCover, Z: complex) -> MinitwistorLine:
    """Boundary element of the family for the real target point ``(Z, 1/conj Z)``.

    All ``g + 1`` nodes are real, one per real sphere, and lie at the roots of
    ``prod_B + |Z|**2 prod_B'``.
    """
    cfg = qc.cfg
    H = boundary_hyperplane(qc, Z)
    nodes = qc.real_fiber(Z)
    last = nodes[-1]
    circle = np.array([[last.z.real, last.w.real, last.y.real]])
    theta = math.atan2(H[-1], H[-2])
    return MinitwistorLine(tuple(H), "boundary", tuple(nodes), circle, theta, (last.z.real, last.z.real), (), qc.k.k)
