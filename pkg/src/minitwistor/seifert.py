"""Seifert surfaces of real hyperplanes tangent to the inner real circles.

A Seifert point is a tuple ``(p_1, ..., p_g, xi, eta)`` with ``p_i`` on the
``i``-th inner circle and ``xi, eta`` on the outer circle such that
``2 sum a(p_i) + a(xi) + a(eta) = 0`` in the Jacobian.  For such data a unique
real hyperplane is tangent to the curve at every ``p_i`` and passes through
``xi`` and ``eta``.

Everything here works with lifted angles.  The angle ``phi_i`` of ``p_i`` on
circle ``i`` and the angles ``s, t`` of ``xi, eta`` on the outer circle are real
numbers, and the constraint is solved exactly in the universal cover of the
real torus ``Sigma_1 x ... x Sigma_g``.  The lifted Abel map
``Phi(phi) = sum beta_i(phi_i)`` satisfies ``Phi(phi + 2 pi n) = Phi(phi) + n``,
so it is a diffeomorphism of ``R^g`` and straight line homotopy in the target
always has a unique lift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNullspace, NoConvergence, WrongComponent
from .hyperelliptic_curve import (
    BranchConfig,
    CurvePoint,
    circle_angle,
    circle_dzw,
    circle_point,
    circle_zw,
    monomials,
)
from .jacobian import (
    LAT_TOL,
    JacPoint,
    PeriodLattice,
    RealAbel,
    _canon,
    _wrap,
    half_period_table,
    period_lattice,
)

GAP_MIN = 1e4
NEWTON_TOL = 1e-12


@dataclass(frozen=True)
class BoundaryData:
    """Choice of ramification points ``rho_i`` labelling a Seifert surface.

    ``choices[i] = 0`` picks ``r_i`` and ``1`` picks ``r'_i``; ``choices[0]`` is
    always 0 after normalization.  ``k`` runs over ``1 .. 2**(g-1)``.
    """

    genus: int
    k: int
    choices: tuple

    @classmethod
    def from_k(cls, genus: int, k: int) -> "BoundaryData":
        n = 2 ** (genus - 1)
        if not 1 <= k <= n:
            raise ValueError(f"k must lie in 1..{n}, got {k}")
        bits = tuple([0] + [((k - 1) >> (i - 1)) & 1 for i in range(1, genus)])
        return cls(genus, k, bits)

    @classmethod
    def from_choices(cls, choices) -> "BoundaryData":
        """Boundary data of a choice tuple; a complementary tuple gives the same ``k``."""
        bits = tuple(int(c) for c in choices)
        if bits[0] == 1:
            bits = tuple(1 - c for c in bits)
        k = 1 + sum(c << (i - 1) for i, c in enumerate(bits) if i >= 1)
        return cls(len(bits), k, bits)

    @property
    def angles(self) -> np.ndarray:
        """Angles of ``rho_i`` on the inner circles."""
        return np.pi * np.array(self.choices, dtype=float)

    def rho(self, cfg: BranchConfig) -> list:
        return [circle_point(cfg, i, a) for i, a in enumerate(self.angles)]

    def rho_prime(self, cfg: BranchConfig) -> list:
        return [circle_point(cfg, i, np.pi - a) for i, a in enumerate(self.angles)]


def all_boundary_data(genus: int) -> list:
    return [BoundaryData.from_k(genus, k) for k in range(1, 2 ** (genus - 1) + 1)]


@dataclass(frozen=True)
class RealHyperplane:
    """Coefficients ``(c_0, ..., c_{g+1}, c_w)`` of ``c . m(z, w) = 0``.

    ``residual`` is the smallest singular value of the row normalized fitting
    system and ``gap_ratio`` the ratio of the two smallest ones.
    """

    coeffs: tuple
    residual: float
    gap_ratio: float

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)


@dataclass(frozen=True)
class SeifertPoint:
    """Tangency data on one Seifert surface.

    ``phis`` are lifted angles of ``p_i`` and ``s, t`` lifted angles of
    ``xi, eta``.  ``resolved_branch`` tells the two lifts over the image in
    the Jacobian apart: it is the number of extra turns of ``eta``.
    """

    k: BoundaryData
    tangency: tuple
    circle_pts: tuple
    resolved_branch: int
    phis: tuple
    s: float
    t: float

    @property
    def kind(self) -> str:
        if abs(_wrap((self.s - self.t) / (2 * np.pi))) < 1e-12:
            return "boundary"
        if abs(_wrap((self.s + self.t) / (2 * np.pi))) < 1e-12:
            return "singular"
        return "interior"


def _point_rows(genus: int, z, w, dz, dw):
    val = monomials(genus, z, w)
    j = np.arange(genus + 2)
    zpow = np.where(j > 0, np.power(np.asarray(z)[..., None], np.maximum(j - 1, 0)) * j, 0.0)
    der = np.concatenate([zpow * np.asarray(dz)[..., None], np.asarray(dw)[..., None]], axis=-1)
    return val, der


def hyperplane_system(cfg: BranchConfig, phis, s, t) -> np.ndarray:
    """Fitting systems of shape ``(..., 2g + 2, g + 3)``.

    Rows are the value and angular derivative of ``m`` at each ``p_i`` followed
    by values at ``xi`` and ``eta``.  When ``xi = eta`` the last row is the
    derivative at ``xi`` instead.  The angular derivative stays regular at
    ramification points, unlike the ``z`` derivative.
    """
    g = cfg.genus
    phis = np.atleast_2d(np.asarray(phis, dtype=float))
    s = np.atleast_1d(np.asarray(s, dtype=float))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    rows = []
    for i in range(g):
        z, w = circle_zw(cfg, i, phis[:, i])
        dz, dw = circle_dzw(cfg, i, phis[:, i])
        val, der = _point_rows(g, z, w, dz, dw)
        rows += [val, der]
    zs, ws = circle_zw(cfg, g, s)
    zt, wt = circle_zw(cfg, g, t)
    dz, dw = circle_dzw(cfg, g, s)
    val_s, der_s = _point_rows(g, zs, ws, dz, dw)
    val_t, _ = _point_rows(g, zt, wt, dz, dw)
    same = np.abs(_wrap((s - t) / (2 * np.pi))) < 1e-9
    rows += [val_s, np.where(same[:, None], der_s, val_t)]
    return np.stack(rows, axis=-2)


def fit_hyperplanes(A: np.ndarray) -> tuple:
    """Nullspace of stacked systems.

    Returns
    -------
    coeffs : ndarray, shape (n, g + 3)
        Unit vectors, oriented so that ``c_w >= 0``.
    residual : ndarray, shape (n,)
    gap : ndarray, shape (n,)
    ok : ndarray of bool
        False where the second smallest singular value is below ``1e-3``
        of the largest.
    """
    A = A / np.linalg.norm(A, axis=-1, keepdims=True).clip(1e-300)
    _, sv, vt = np.linalg.svd(A)
    c = vt[..., -1, :]
    cw = c[..., -1]
    lead = c[np.arange(c.shape[0]), np.argmax(np.abs(c), axis=-1)]
    sign = np.where(np.abs(cw) > 1e-12, np.sign(cw), np.sign(lead))
    c = c * sign[:, None]
    resid = sv[..., -1]
    gap = sv[..., -2] / np.maximum(resid, 1e-300)
    ok = sv[..., -2] >= 1e-3 * sv[..., 0]
    return c, resid, gap, ok


class SeifertSolver:
    """Solver for the Abel constraint and the tangent hyperplanes of one curve.

    Parameters
    ----------
    cfg : BranchConfig
    lat : PeriodLattice, optional
        Computed if omitted.
    """

    def __init__(self, cfg: BranchConfig, lat: PeriodLattice | None = None):
        self.cfg = cfg
        self.lat = lat if lat is not None else period_lattice(cfg)
        self.table = half_period_table(cfg, self.lat)
        self.real_abel = RealAbel(cfg, self.lat, self.table)
        g = cfg.genus
        self.base_re = sum(self.table[("r", i)].re_array for i in range(g))
        self.base_im = sum(self.table[("r", i)].im_array for i in range(g))
        self.component_im = _canon(self.base_im)

    @property
    def genus(self) -> int:
        return self.cfg.genus

    # lifted Abel map on the inner torus
    def phi_map(self, phis) -> np.ndarray:
        phis = np.atleast_2d(phis)
        return sum(self.real_abel.beta(i, phis[:, i]) for i in range(self.genus))

    def phi_jac(self, phis) -> np.ndarray:
        phis = np.atleast_2d(phis)
        cols = [self.real_abel.dbeta(i, phis[:, i]) for i in range(self.genus)]
        return np.stack(cols, axis=-1)

    def outer_beta(self, s) -> np.ndarray:
        return self.real_abel.beta(self.genus, s)

    def _newton(self, phis, d, max_iter=50, tol=NEWTON_TOL):
        phis = phis.copy()
        done = np.zeros(len(phis), dtype=bool)
        for _ in range(max_iter):
            r = self.phi_map(phis) - d
            err = np.max(np.abs(r), axis=-1)
            done = err < tol
            if done.all():
                break
            J = self.phi_jac(phis)
            step = np.linalg.solve(J, r[..., None])[..., 0]
            size = np.max(np.abs(step), axis=-1, keepdims=True)
            step = step * np.minimum(1.0, 0.5 / np.maximum(size, 1e-300))
            phis = np.where(done[:, None], phis, phis - step)
        err = np.max(np.abs(self.phi_map(phis) - d), axis=-1)
        return phis, err < tol

    def solve_lift(self, d, phis0, d0=None) -> np.ndarray:
        """Solve ``Phi(phi) = d`` by homotopy from ``phis0``.

        Parameters
        ----------
        d : ndarray, shape (n, g)
            Lifted targets.
        phis0 : ndarray, shape (n, g) or (g,)
            Starting angles, whose image ``d0`` defaults to ``Phi(phis0)``.

        Raises
        ------
        NoConvergence
            If any target fails after five refinements of the homotopy.
        """
        d = np.atleast_2d(np.asarray(d, dtype=float))
        phis0 = np.broadcast_to(np.asarray(phis0, dtype=float), d.shape).copy()
        if d0 is None:
            d0 = self.phi_map(phis0)
        d0 = np.broadcast_to(d0, d.shape)
        out = phis0.copy()
        todo = np.ones(len(d), dtype=bool)
        for n_sub in (1, 4, 16, 64, 256, 1024):
            idx = np.nonzero(todo)[0]
            if not idx.size:
                break
            cur = phis0[idx].copy()
            ok = np.ones(idx.size, dtype=bool)
            for lam in np.linspace(0.0, 1.0, n_sub + 1)[1:]:
                target = d0[idx] + lam * (d[idx] - d0[idx])
                tol = NEWTON_TOL if lam == 1.0 else 1e-6
                cur, conv = self._newton(cur, target, max_iter=50 if lam == 1.0 else 8, tol=tol)
                ok &= conv | (lam < 1.0)
            out[idx] = cur
            todo[idx] = ~ok
        if todo.any():
            raise NoConvergence(f"{int(todo.sum())} torus inversions failed")
        return out

    def invert_real_torus(self, target: JacPoint, guess) -> np.ndarray:
        """Angles of ``p_i`` on the inner circles with ``sum a(p_i) = target``.

        Parameters
        ----------
        target : JacPoint
            Must lie in the real component reached by the inner circles.
        guess : sequence of float or sequence of CurvePoint

        Raises
        ------
        NoConvergence
            If the target is in another component or Newton fails.
        """
        if np.max(np.abs(_wrap(target.im_array - self.component_im))) > LAT_TOL:
            raise NoConvergence("target is not in the component of the inner circles")
        guess = [
            float(circle_angle(self.cfg, i, p.z, p.w)) if isinstance(p, CurvePoint) else float(p)
            for i, p in enumerate(guess)
        ]
        phis0 = np.array(guess)
        start = self.phi_map(phis0)[0]
        d = target.re_array - self.base_re
        d = start + _wrap(d - start)
        return self.solve_lift(d[None], phis0)[0]

    # boundary data and the lifted constraint
    def origin(self, k: BoundaryData) -> JacPoint:
        """The point ``o_k = sum a(rho_i)``."""
        tab = self.table
        re = sum(tab[("r'" if c else "r", i)].re_array for i, c in enumerate(k.choices))
        im = sum(tab[("r'" if c else "r", i)].im_array for i, c in enumerate(k.choices))
        return JacPoint.from_arrays(re, im)

    def origin_prime(self, k: BoundaryData) -> JacPoint:
        """The point ``o'_k = sum a(rho'_i)``."""
        tab = self.table
        re = sum(tab[("r" if c else "r'", i)].re_array for i, c in enumerate(k.choices))
        im = sum(tab[("r" if c else "r'", i)].im_array for i, c in enumerate(k.choices))
        return JacPoint.from_arrays(re, im)

    def lifted_target(self, k: BoundaryData, s, t) -> np.ndarray:
        """``Phi(rho) - (beta(s) + beta(t)) / 2`` for lifted outer angles."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        t = np.atleast_1d(np.asarray(t, dtype=float))
        d_rho = self.phi_map(k.angles)[0]
        return d_rho - 0.5 * (self.outer_beta(s) + self.outer_beta(t))

    def solve(self, k: BoundaryData, s, t, guess=None) -> np.ndarray:
        """Lifted tangency angles for lifted outer angles ``(s, t)``.

        Starts from ``rho`` (the singular configuration) unless a guess with a
        known image is provided.
        """
        d = self.lifted_target(k, s, t)
        if guess is None:
            return self.solve_lift(d, k.angles)
        guess = np.atleast_2d(guess)
        phis, ok = self._newton(np.broadcast_to(guess, d.shape).copy(), d)
        if ok.all():
            return phis
        return self.solve_lift(d, k.angles)

    def hyperplanes(self, k: BoundaryData, s, t, guess=None) -> tuple:
        """Seifert hyperplanes for arrays of lifted ``(s, t)``.

        Returns
        -------
        coeffs, residual, gap, ok, phis
        """
        phis = self.solve(k, s, t, guess)
        A = hyperplane_system(self.cfg, phis, s, t)
        c, resid, gap, ok = fit_hyperplanes(A)
        return c, resid, gap, ok, phis

    def hyperplane(self, k: BoundaryData, s: float, t: float, guess=None) -> tuple:
        """Single Seifert hyperplane as a unit vector, plus the tangency angles."""
        c, resid, gap, ok, phis = self.hyperplanes(k, s, t, guess)
        return c[0], phis[0]


def seifert_point(solver: SeifertSolver, k: BoundaryData, xi: CurvePoint, eta: CurvePoint, branch: int = 0) -> SeifertPoint:
    """Solve the Abel constraint for given outer points.

    ``branch = 0`` is the lift on which ``eta = tau(xi)`` gives ``p_i = rho_i``;
    ``branch = 1`` adds one turn to ``eta`` and lands on ``rho'_i`` instead.

    Raises
    ------
    NoConvergence
    WrongComponent
        If the solution fails the Abel constraint check.
    """
    cfg = solver.cfg
    g = cfg.genus
    s = float(circle_angle(cfg, g, xi.z, xi.w))
    t = float(circle_angle(cfg, g, eta.z, eta.w)) + 2 * np.pi * branch
    if abs(_wrap((s + t) / (2 * np.pi))) < 1e-13 and branch == 0:
        t = -s
    phis = solver.solve(k, s, t)[0]
    ra = solver.real_abel
    total = sum((ra.point(i, phis[i]) for i in range(g)), JacPoint.origin(g)).scale(2)
    total = total + ra.point(g, s) + ra.point(g, t)
    if total.norm() > LAT_TOL:
        raise WrongComponent(f"Abel constraint violated by {total.norm():.3e}")
    tangency = tuple(circle_point(cfg, i, phis[i]) for i in range(g))
    return SeifertPoint(k, tangency, (xi, eta), int(branch), tuple(float(x) for x in phis), s, t)


def hyperplane_from_divisor(solver: SeifertSolver, sp: SeifertPoint, lam: float | None = None) -> RealHyperplane:
    """The real hyperplane of a Seifert point.

    At a singular point the section is a union of lines; passing ``lam``
    selects the line over ``z = lam`` instead of the one through ``xi``.

    Raises
    ------
    DegenerateNullspace
        If the fitting system has more than a one dimensional nullspace.
    """
    cfg = solver.cfg
    g = cfg.genus
    if lam is not None and sp.kind == "singular":
        roots = [float(np.real(p.z)) for p in sp.tangency] + [float(lam)]
        P = np.polynomial.polynomial.polyfromroots(roots)
        c = np.concatenate([P, [0.0]])
        return RealHyperplane(tuple(c / np.linalg.norm(c)), 0.0, np.inf)
    A = hyperplane_system(cfg, np.array(sp.phis), sp.s, sp.t)
    c, resid, gap, ok = fit_hyperplanes(A)
    if not ok[0]:
        raise DegenerateNullspace("second singular value below 1e-3 of the system norm")
    return RealHyperplane(tuple(float(x) for x in c[0]), float(resid[0]), float(gap[0]))


def fit_divisor(cfg: BranchConfig, phis, s, t) -> RealHyperplane:
    """Fit a hyperplane to arbitrary tangency data, without the Abel check."""
    A = hyperplane_system(cfg, np.asarray(phis, dtype=float), s, t)
    c, resid, gap, ok = fit_hyperplanes(A)
    if not ok[0]:
        raise DegenerateNullspace("second singular value below 1e-3 of the system norm")
    return RealHyperplane(tuple(float(x) for x in c[0]), float(resid[0]), float(gap[0]))


# --- boundary circles ---------------------------------------------------------


@dataclass(frozen=True)
class BoundaryCircle:
    """Samples of the boundary circle of a Seifert surface.

    ``re`` holds canonical real fractional coordinates per sample, ``im`` the
    common imaginary coordinates, and ``outer_angles`` the angle of the
    residual point on the outer circle.
    """

    k: BoundaryData
    last: str
    re: np.ndarray
    im: np.ndarray
    outer_angles: np.ndarray


def pencil_divisors(cfg: BranchConfig, k: BoundaryData, last: str, samples: int) -> tuple:
    """Real members of the pencil ``|rho_1 + ... + rho_g + last|``.

    Member ``theta`` consists of the roots of
    ``cos(theta/2)**2 prod_B + sin(theta/2)**2 prod_B'`` (one per interval) with
    ``w = -tan(theta/2) prod_B'(z)``.  ``B`` holds the chosen ramification
    points and ``B'`` the others.

    Returns
    -------
    z, w : ndarray, shape (samples, g + 1)
    """
    g = cfg.genus
    pick = list(k.choices) + [1 if last == "r'" else 0]
    B = np.array([cfg.upper[i] if c else cfg.lower[i] for i, c in enumerate(pick)])
    Bp = np.array([cfg.lower[i] if c else cfg.upper[i] for i, c in enumerate(pick)])
    pB = np.polynomial.polynomial.polyfromroots(B)
    pBp = np.polynomial.polynomial.polyfromroots(Bp)
    theta = 2 * np.pi * np.arange(samples) / samples
    zs = np.empty((samples, g + 1))
    ws = np.empty((samples, g + 1))
    for n, th in enumerate(theta):
        ca, sa = np.cos(th / 2) ** 2, np.sin(th / 2) ** 2
        poly = ca * pB + sa * pBp
        roots = np.sort(np.polynomial.polynomial.polyroots(poly).real)
        dpoly = np.polynomial.polynomial.polyder(poly)
        for _ in range(3):
            roots = roots - np.polynomial.polynomial.polyval(roots, poly) / np.polynomial.polynomial.polyval(roots, dpoly)
        roots = np.clip(roots, cfg.lower, cfg.upper)
        if abs(np.cos(th / 2)) >= abs(np.sin(th / 2)):
            w = -np.tan(th / 2) * np.polynomial.polynomial.polyval(roots, pBp)
        else:
            w = np.polynomial.polynomial.polyval(roots, pB) / np.tan(th / 2)
        zs[n], ws[n] = roots, w
    return zs, ws


def boundary_circle(solver: SeifertSolver, k: BoundaryData, last: str = "r", samples: int = 256) -> BoundaryCircle:
    """Boundary circle through ``o_k`` traced by the real pencil.

    Parameters
    ----------
    last : {"r", "r'"}
        Which ramification point over the outer interval completes ``rho``.
    """
    if last not in ("r", "r'"):
        raise ValueError("last must be 'r' or \"r'\"")
    cfg = solver.cfg
    g = cfg.genus
    zs, ws = pencil_divisors(cfg, k, last, samples)
    re = np.zeros((samples, g))
    for i in range(g):
        ang = circle_angle(cfg, i, zs[:, i], ws[:, i])
        re += solver.table[("r", i)].re_array + solver.real_abel.beta(i, ang)
    outer = circle_angle(cfg, g, zs[:, g], ws[:, g])
    im = solver.component_im
    return BoundaryCircle(k, last, _canon(re), im.copy(), outer)


def boundary_circle_formula(solver: SeifertSolver, k: BoundaryData, last: str, phi) -> np.ndarray:
    """Boundary circle via the Abel map of the residual outer point."""
    o = solver.origin(k).re_array
    b = solver.outer_beta(phi)
    if last == "r":
        return _canon(o - b)
    return _canon(o + solver.outer_beta(np.pi) - b)


def circle_intersections(solver: SeifertSolver, k1: BoundaryData, last1: str, k2: BoundaryData, last2: str, samples: int = 720, tol: float = 1e-9) -> list:
    """Intersection points of two boundary circles.

    Candidates come from the closest sample pairs and are refined by Gauss
    Newton on the two outer angles.  Returns a list of ``(phi1, phi2, dist)``
    for the refined pairs with distance below ``tol``.
    """
    from scipy.optimize import least_squares

    phi = 2 * np.pi * np.arange(samples) / samples
    c1 = boundary_circle_formula(solver, k1, last1, phi)
    c2 = boundary_circle_formula(solver, k2, last2, phi)
    diff = _wrap(c1[:, None, :] - c2[None, :, :])
    dist = np.linalg.norm(diff, axis=-1)
    step = 4 * np.max(np.linalg.norm(_wrap(np.diff(c1, axis=0)), axis=-1))
    cand = np.argwhere(dist < step)
    cand = cand[np.argsort(dist[cand[:, 0], cand[:, 1]])]
    found, tried = [], []
    for a, b in cand:
        start = np.array([phi[a], phi[b]])
        if any(np.max(np.abs(_wrap((start - x) / (2 * np.pi)))) < 0.05 for x in tried):
            continue
        tried.append(start)

        def resid(x):
            r1 = boundary_circle_formula(solver, k1, last1, np.array([x[0]]))[0]
            r2 = boundary_circle_formula(solver, k2, last2, np.array([x[1]]))[0]
            return _wrap(r1 - r2)

        sol = least_squares(resid, [phi[a], phi[b]], xtol=1e-15, ftol=1e-15, gtol=1e-15)
        d = float(np.linalg.norm(resid(sol.x)))
        if d < tol:
            x = np.mod(sol.x, 2 * np.pi)
            if not any(np.linalg.norm(_wrap((x - np.array(f[:2])) / (2 * np.pi))) < 1e-6 for f in found):
                found.append((float(x[0]), float(x[1]), d))
    return found


def min_circle_distance(c1: np.ndarray, c2: np.ndarray) -> float:
    """Smallest wrap-around distance between two sampled circles."""
    diff = _wrap(c1[:, None, :] - c2[None, :, :])
    return float(np.min(np.linalg.norm(diff, axis=-1)))


# --- enumeration --------------------------------------------------------------


@dataclass(frozen=True)
class SeifertSurface:
    """Grid samples of one Seifert surface over both branches.

    Arrays have one row per sample: ``branch``, lifted ``s`` and ``t``, tangency
    angles, hyperplane coefficients, residual and gap ratio, and the success
    mask (converged with gap ratio above ``1e4``).
    """

    k: BoundaryData
    origin: JacPoint
    origin_prime: JacPoint
    branch: np.ndarray
    s: np.ndarray
    t: np.ndarray
    phis: np.ndarray
    coeffs: np.ndarray
    residual: np.ndarray
    gap: np.ndarray
    success: np.ndarray

    @property
    def success_rate(self) -> float:
        return float(np.mean(self.success))


def grid_angles(grid: int) -> np.ndarray:
    """Symmetric grid of ``grid`` angles in ``(-pi, pi)`` containing its negatives."""
    return -np.pi + 2 * np.pi * (np.arange(grid) + 0.5) / grid


def sample_surface(solver: SeifertSolver, k: BoundaryData, grid: int = 64) -> SeifertSurface:
    ang = grid_angles(grid)
    S, T = np.meshgrid(ang, ang, indexing="ij")
    rows = []
    for branch in (0, 1):
        s = S.ravel()
        t = T.ravel() + 2 * np.pi * branch
        try:
            phis = solver.solve(k, s, t)
            conv = np.ones(len(s), dtype=bool)
        except NoConvergence:
            phis = np.full((len(s), solver.genus), np.nan)
            conv = np.zeros(len(s), dtype=bool)
            for n in range(len(s)):
                try:
                    phis[n] = solver.solve(k, s[n : n + 1], t[n : n + 1])[0]
                    conv[n] = True
                except NoConvergence:
                    pass
        A = hyperplane_system(solver.cfg, np.nan_to_num(phis), s, t)
        c, resid, gap, ok = fit_hyperplanes(A)
        rows.append((np.full(len(s), branch), s, t, phis, c, resid, gap, conv & ok & (gap > GAP_MIN)))
    cat = [np.concatenate(x) for x in zip(*rows)]
    return SeifertSurface(k, solver.origin(k), solver.origin_prime(k), *cat)


def enumerate_seifert(solver: SeifertSolver, grid: int = 64) -> list:
    """All ``2**(g-1)`` Seifert surfaces sampled on a ``grid x grid`` angle grid."""
    return [sample_surface(solver, k, grid) for k in all_boundary_data(solver.genus)]
