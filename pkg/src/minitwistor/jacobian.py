"""Period lattice, Abel-Jacobi map and real structure of the Jacobian.

Points of the Jacobian are stored in fractional coordinates.  The real part
of a vector ``v`` is expressed in the basis of the real periods (the circle
cycles) and its imaginary part in the basis of the imaginary periods (the gap
cycles).  Both are reduced into ``[0, 1)``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .hyperelliptic_curve import (
    BranchConfig,
    CurvePoint,
    PolygonPath,
    _sanitize,
    branch_w,
    circle_geometry,
    circle_zw,
    cofactor,
    cycle,
    cycle_error,
    integrate_basis,
)

LAT_TOL = 1e-7
SPLIT_TOL = 1e-9


def _wrap(x):
    """Representative of ``x`` modulo 1 in ``[-1/2, 1/2)``."""
    return x - np.floor(x + 0.5)


def _canon(x):
    x = np.asarray(x, dtype=float)
    y = x - np.floor(x)
    y = np.where(y >= 1.0 - 1e-13, 0.0, y)
    return y + 0.0


@dataclass(frozen=True)
class JacPoint:
    """A point of the Jacobian in fractional torus coordinates."""

    re: tuple
    im: tuple

    @classmethod
    def from_arrays(cls, re, im) -> "JacPoint":
        return cls(tuple(float(x) for x in _canon(re)), tuple(float(x) for x in _canon(im)))

    @classmethod
    def origin(cls, genus: int) -> "JacPoint":
        return cls((0.0,) * genus, (0.0,) * genus)

    @property
    def re_array(self) -> np.ndarray:
        return np.array(self.re)

    @property
    def im_array(self) -> np.ndarray:
        return np.array(self.im)

    def __add__(self, other: "JacPoint") -> "JacPoint":
        return JacPoint.from_arrays(self.re_array + other.re_array, self.im_array + other.im_array)

    def __neg__(self) -> "JacPoint":
        return JacPoint.from_arrays(-self.re_array, -self.im_array)

    def __sub__(self, other: "JacPoint") -> "JacPoint":
        return self + (-other)

    def scale(self, n: int) -> "JacPoint":
        return JacPoint.from_arrays(n * self.re_array, n * self.im_array)

    def distance(self, other: "JacPoint") -> float:
        """Wrap-around Euclidean distance in fractional coordinates."""
        d = np.concatenate([_wrap(self.re_array - other.re_array), _wrap(self.im_array - other.im_array)])
        return float(np.linalg.norm(d))

    def is_close(self, other: "JacPoint", tol: float = LAT_TOL) -> bool:
        return self.distance(other) < tol

    def norm(self) -> float:
        return self.distance(JacPoint.origin(len(self.re)))

    def component_bits(self) -> tuple:
        """Index of the real component containing the point.

        Only meaningful for real points, whose imaginary coordinates are
        half integers.
        """
        return tuple(int(round(2 * x)) % 2 for x in self.im)


@dataclass(frozen=True)
class PeriodLattice:
    """Periods of the holomorphic basis over the real cycles.

    Attributes
    ----------
    columns : ndarray, shape (g, 2g)
        Circle periods followed by gap periods.
    outer_period : ndarray, shape (g,)
        Period over the outermost real circle, an integer combination of the
        circle columns.
    split_residual : tuple of float
        Relative size of the parts removed when enforcing the reality split.
    """

    columns: np.ndarray = field(compare=False)
    outer_period: np.ndarray = field(compare=False)
    split_residual: tuple = ()

    @property
    def genus(self) -> int:
        return self.columns.shape[0]

    @property
    def real_block(self) -> np.ndarray:
        return self.columns[:, : self.genus].real

    @property
    def imag_block(self) -> np.ndarray:
        return self.columns[:, self.genus :].imag

    @cached_property
    def real_inverse(self) -> np.ndarray:
        return np.linalg.inv(self.real_block)

    @cached_property
    def imag_inverse(self) -> np.ndarray:
        return np.linalg.inv(self.imag_block)

    def condition_numbers(self) -> tuple:
        return float(np.linalg.cond(self.real_block)), float(np.linalg.cond(self.imag_block))

    def fractional(self, v) -> tuple:
        """Unreduced fractional coordinates of complex vectors (last axis)."""
        v = np.asarray(v, dtype=complex)
        return v.real @ self.real_inverse.T, v.imag @ self.imag_inverse.T

    def to_complex(self, x: JacPoint) -> np.ndarray:
        return self.real_block @ x.re_array + 1j * (self.imag_block @ x.im_array)

    def to_json(self) -> str:
        return json.dumps(
            {"real_block": self.real_block.tolist(), "imag_block": self.imag_block.tolist()}
        )

    @classmethod
    def from_json(cls, text: str) -> "PeriodLattice":
        data = json.loads(text)
        rb, ib = np.array(data["real_block"]), np.array(data["imag_block"])
        cols = np.concatenate([rb + 0j, 1j * ib], axis=1)
        outer = -cols[:, : rb.shape[0]].sum(axis=1)
        return cls(cols, outer, ())


def period_lattice(cfg: BranchConfig) -> PeriodLattice:
    """Periods over the ``g`` inner circles and the ``g`` gap cycles.

    The circle periods are real and the gap periods imaginary up to
    quadrature error.  The parts that should vanish are measured, recorded in
    ``split_residual`` and then set to zero.
    """
    g = cfg.genus
    cols, resid = [], []
    for i in range(g):
        v = integrate_basis(cfg, cycle(cfg, "circle", i))
        resid.append(float(np.linalg.norm(v.imag) / np.linalg.norm(v)))
        cols.append(v.real + 0j)
    for i in range(g):
        v = integrate_basis(cfg, cycle(cfg, "gap", i))
        resid.append(float(np.linalg.norm(v.real) / np.linalg.norm(v)))
        cols.append(1j * v.imag)
    outer = integrate_basis(cfg, cycle(cfg, "circle", g)).real
    lat = PeriodLattice(np.array(cols).T, outer, tuple(resid))
    cond = max(lat.condition_numbers())
    if cond > 1e8:
        warnings.warn(f"period blocks are ill conditioned (cond = {cond:.2e})", stacklevel=2)
    return lat


def reduce(lat: PeriodLattice, v) -> JacPoint:
    """Canonical fractional representative of a vector of ``C^g``.

    A :class:`JacPoint` is returned unchanged, which makes the map idempotent.
    """
    if isinstance(v, JacPoint):
        return v
    re, im = lat.fractional(v)
    return JacPoint.from_arrays(re, im)


def reduce_many(lat: PeriodLattice, v) -> tuple:
    """Vectorized :func:`reduce` returning ``(re, im)`` arrays."""
    re, im = lat.fractional(v)
    return _canon(re), _canon(im)


def doubling(x: JacPoint) -> JacPoint:
    """The doubling homomorphism ``x -> 2x``."""
    return x.scale(2)


@dataclass(frozen=True)
class TorsionElement:
    """A 2-torsion point encoded by bits.

    ``kind="component"`` is the half period ``(1/2) sum bits_j A_j`` labelling a
    real component; ``kind="real"`` is ``(1/2) sum bits_j Sigma_j`` in the
    identity component.
    """

    bits: tuple
    kind: str = "component"

    def point(self) -> JacPoint:
        half = 0.5 * np.array(self.bits, dtype=float)
        zero = np.zeros_like(half)
        if self.kind == "component":
            return JacPoint.from_arrays(zero, half)
        if self.kind == "real":
            return JacPoint.from_arrays(half, zero)
        raise ValueError(f"unknown torsion kind {self.kind!r}")


def _abel_route(cfg: BranchConfig, z: complex) -> list:
    # from r_1 straight up (or down), along a horizontal line at height
    # min_gap / 4, then straight to z; no cut is crossed on the way
    start = complex(cfg.lower[0])
    side = 1.0 if z.imag >= 0 else -1.0
    height = cfg.min_gap / 4
    if abs(z.imag) >= height and abs(z.real - start.real) < 1e-15:
        return [start, z]
    corner1 = start + 1j * side * height
    corner2 = complex(z.real, side * height)
    return [start, corner1, corner2, z]


def abel_lift(cfg: BranchConfig, p: CurvePoint) -> np.ndarray:
    """Unreduced Abel-Jacobi integral from ``r_1`` along the canonical route."""
    z = complex(_sanitize(p.z))
    verts = _abel_route(cfg, z)
    val = integrate_basis(cfg, PolygonPath(tuple(verts), 1))
    end = complex(branch_w(cfg, z))
    if end == 0:
        return val
    return val if abs(p.w - end) <= abs(p.w + end) else -val


def abel(cfg: BranchConfig, lat: PeriodLattice, p: CurvePoint) -> JacPoint:
    """Abel-Jacobi image with base point ``r_1``."""
    return reduce(lat, abel_lift(cfg, p))


def abel_divisor(cfg: BranchConfig, lat: PeriodLattice, points: Sequence[CurvePoint]) -> JacPoint:
    """Abel-Jacobi image of an effective divisor."""
    points = list(points)
    if not points:
        raise ValueError("divisor must be nonempty")
    total = sum(abel_lift(cfg, p) for p in points)
    return reduce(lat, total)


def half_period_table(cfg: BranchConfig, lat: PeriodLattice) -> dict:
    """Images of all ramification points from the half period formulas.

    Keys are ``("r", i)`` and ``("r'", i)`` with ``0 <= i <= g``.  The value at
    ``r_i`` is half the sum of the first ``i`` circle and gap periods; ``r'_i``
    adds half of the ``i``-th circle period.
    """
    g = cfg.genus
    cols = lat.columns
    table = {}
    acc = np.zeros(g, dtype=complex)
    for i in range(g + 1):
        table[("r", i)] = reduce(lat, acc)
        circ = cols[:, i] if i < g else lat.outer_period + 0j
        table[("r'", i)] = reduce(lat, acc + 0.5 * circ)
        if i < g:
            acc = acc + 0.5 * (cols[:, i] + cols[:, g + i])
    return table


class CircleAbel:
    """Abel-Jacobi map restricted to one real circle, as a Fourier series.

    With the angular parameterization the integrand ``z**j / w dz`` becomes the
    smooth even function ``z**j / sqrt(G(z)) dphi``.  Its cosine series is
    integrated termwise, which gives the running integral from ``r_i`` to the
    point at any lifted angle.

    Parameters
    ----------
    cfg : BranchConfig
    index : int
        Circle index, ``0 <= index <= g``.
    """

    def __init__(self, cfg: BranchConfig, index: int):
        self.cfg = cfg
        self.index = index
        g = cfg.genus
        m, ell = circle_geometry(cfg, index)
        others = np.delete(cfg.points, [2 * index, 2 * index + 1])
        ratio = np.min(np.abs(others - m)) / ell
        width = math.acosh(ratio)
        n = 16
        while n < 40.0 / width + 16 and n < 4096:
            n *= 2
        n *= 2
        phi = 2 * np.pi * np.arange(n) / n
        z, _ = circle_zw(cfg, index, phi)
        vals = z[:, None] ** np.arange(g) / np.sqrt(cofactor(cfg, index, z))[:, None]
        coef = np.fft.rfft(vals, axis=0).real * (2.0 / n)
        keep = n // 2
        self.a0 = coef[0]
        self.harmonics = np.arange(1, keep)
        self.sine_coef = coef[1:keep] / self.harmonics[:, None]
        self.period = np.pi * self.a0

    def integral(self, phi) -> np.ndarray:
        """Running integral from angle 0 to ``phi`` (any real, lifted)."""
        phi = np.asarray(phi, dtype=float)
        s = np.sin(phi[..., None] * self.harmonics)
        return 0.5 * self.a0 * phi[..., None] + s @ self.sine_coef

    def derivative(self, phi) -> np.ndarray:
        """Integrand ``z**j / sqrt(G(z))`` at ``phi``."""
        z, _ = circle_zw(self.cfg, self.index, phi)
        z = np.asarray(z)
        return z[..., None] ** np.arange(self.cfg.genus) / np.sqrt(cofactor(self.cfg, self.index, z))[..., None]


class RealAbel:
    """Fast Abel-Jacobi map on all real circles in fractional coordinates.

    ``beta(i, phi)`` is the real fractional displacement from ``r_i`` to the
    point at lifted angle ``phi`` on circle ``i``; ``beta(i, 2 pi)`` is the
    ``i``-th unit vector for inner circles.
    """

    def __init__(self, cfg: BranchConfig, lat: PeriodLattice, table: dict | None = None):
        self.cfg = cfg
        self.lat = lat
        self.table = table if table is not None else half_period_table(cfg, lat)
        self.circles = [CircleAbel(cfg, i) for i in range(cfg.genus + 1)]
        rinv = lat.real_inverse
        for c in self.circles:
            c.frac_a0 = rinv @ c.a0
            c.frac_sine = c.sine_coef @ rinv.T

    def beta(self, i: int, phi) -> np.ndarray:
        c = self.circles[i]
        phi = np.asarray(phi, dtype=float)
        s = np.sin(phi[..., None] * c.harmonics)
        return 0.5 * c.frac_a0 * phi[..., None] + s @ c.frac_sine

    def dbeta(self, i: int, phi) -> np.ndarray:
        return self.circles[i].derivative(phi) @ self.lat.real_inverse.T

    def point(self, i: int, phi: float) -> JacPoint:
        """Abel-Jacobi image of the circle point at angle ``phi``."""
        base = self.table[("r", i)]
        return JacPoint.from_arrays(base.re_array + self.beta(i, phi), base.im_array)
