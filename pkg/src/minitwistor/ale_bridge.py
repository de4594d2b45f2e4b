"""Identification of the ALE minitwistor surface ``x y = prod (z - a_i)`` with ``T``.

For odd ``l`` the map is ``(u, v, z) = (x, -y, z)``.  For even ``l`` the branch
point ``beta`` in ``(a_1, a_2)`` is sent to infinity by
``psi(z) = 1 / (beta - z)`` and the fibre coordinates are rescaled by
``sqrt(c) i / (beta - z)**l``, which keeps both the equation and the real
structures compatible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NoSolution
from .hyperelliptic_curve import BranchConfig
from .minitwistor_surface import SurfacePoint

P = np.polynomial.polynomial


@dataclass(frozen=True)
class AleConfig:
    """Parameters ``a_1 < ... < a_{2l}`` of the ALE surface."""

    l: int
    a: tuple

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if self.l < 1 or a.shape != (2 * self.l,):
            raise ConfigError(f"expected 2l = {2 * self.l} parameters, got {a.size}")
        if np.any(np.diff(a) <= 0):
            raise ConfigError("ALE parameters must be strictly increasing")

    @property
    def points(self) -> np.ndarray:
        return np.asarray(self.a, dtype=float)

    def poly(self, z):
        return np.prod(np.asarray(z, dtype=complex)[..., None] - self.points, axis=-1)


@dataclass(frozen=True)
class AlePoint:
    x: complex
    y: complex
    z: complex

    def residual(self, cfg: AleConfig) -> float:
        rhs = complex(cfg.poly(self.z))
        return abs(self.x * self.y - rhs) / max(1.0, abs(rhs), abs(self.x * self.y))

    def tau(self, l: int) -> "AlePoint":
        """Real structure ``((-1)**l conj y, (-1)**l conj x, conj z)``."""
        sgn = -1 if l % 2 else 1
        return AlePoint(sgn * self.y.conjugate(), sgn * self.x.conjugate(), self.z.conjugate())


def random_points(cfg: AleConfig, n: int, rng: np.random.Generator, scale: float = 3.0) -> list:
    """Random complex points of the ALE surface."""
    z = rng.normal(scale=scale, size=n) + 1j * rng.normal(scale=scale, size=n)
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    y = cfg.poly(z) / x
    return [AlePoint(complex(a), complex(b), complex(c)) for a, b, c in zip(x, y, z)]


def real_points(cfg: AleConfig, n: int, rng: np.random.Generator, interval: int = 0) -> list:
    """Points fixed by the real structure over one real interval.

    Odd ``l`` uses ``[a_{2i+1}, a_{2i+2}]``; even ``l`` uses ``[a_{2i+2}, a_{2i+3}]``
    and, for the last index, the interval through infinity written as
    ``z > a_{2l}``.
    """
    a = cfg.points
    l = cfg.l
    if l % 2:
        lo, hi = a[2 * interval], a[2 * interval + 1]
        z = rng.uniform(lo, hi, n)
    elif interval < l - 1:
        z = rng.uniform(a[2 * interval + 1], a[2 * interval + 2], n)
    else:
        z = a[-1] + rng.exponential(2.0, n)
    mod2 = np.abs(cfg.poly(z).real)
    r = np.sqrt(mod2)
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    sgn = -1 if l % 2 else 1
    y = r * phase
    x = sgn * np.conj(y)
    return [AlePoint(complex(p), complex(q), complex(s)) for p, q, s in zip(x, y, z)]


def odd_target(cfg: AleConfig) -> BranchConfig:
    """Branch points of ``T`` for odd ``l``: the ``a_i`` themselves."""
    return BranchConfig.from_points(cfg.points)


def map_odd(cfg: AleConfig, p: AlePoint) -> SurfacePoint:
    """``(u, v, z) = (x, -y, z)``, defined for odd ``l``."""
    if cfg.l % 2 == 0:
        raise ConfigError("map_odd needs odd l")
    return SurfacePoint.from_uv(p.z, p.x, -p.y)


@dataclass(frozen=True)
class EvenMap:
    """The identification for even ``l``.

    Attributes
    ----------
    beta : float
        Point of ``(a_1, a_2)`` sent to infinity.
    c : float
        Positive scale with ``c prod (beta - a_i) = -1``.
    target : BranchConfig
        Branch points ``psi(a_i)`` of ``T``, sorted.
    """

    ale: AleConfig
    beta: float
    c: float
    target: BranchConfig

    def psi(self, z):
        return 1.0 / (self.beta - np.asarray(z))

    def psi_inv(self, zp):
        return self.beta - 1.0 / np.asarray(zp)

    def twist(self, z):
        return 1j / (self.beta - np.asarray(z, dtype=complex)) ** self.ale.l

    def __call__(self, p: AlePoint) -> SurfacePoint:
        f = math.sqrt(self.c) * complex(self.twist(p.z))
        return SurfacePoint.from_uv(complex(self.psi(p.z)), f * p.x, -f * p.y)


def map_even(cfg: AleConfig, beta: float) -> EvenMap:
    """Build the even ``l`` identification.

    ``c`` is the ratio of leading coefficients of ``prod (z' - psi(a_i))`` and
    ``prod ((beta - a_i) z' - 1)``; every other coefficient is then checked.

    Raises
    ------
    NoSolution
        If the coefficients disagree or ``c`` is not positive.
    """
    if cfg.l % 2:
        raise ConfigError("map_even needs even l")
    a = cfg.points
    if not a[0] < beta < a[1]:
        raise ConfigError("beta must lie between the two smallest parameters")
    psi_a = 1.0 / (beta - a)
    target_poly = P.polyfromroots(psi_a)
    moved = np.array([1.0])
    for ai in a:
        moved = P.polymul(moved, [-1.0, beta - ai])
    c = -target_poly[-1] / moved[-1]
    mismatch = np.max(np.abs(c * moved + target_poly)) / np.max(np.abs(target_poly))
    if mismatch > 1e-10 or not c > 0:
        raise NoSolution(f"no positive scale matches the transformed equation (mismatch {mismatch:.2e}, c = {c:.3e})")
    return EvenMap(cfg, float(beta), float(c), BranchConfig.from_points(np.sort(psi_a)))


def transport_residual(target: BranchConfig, pts) -> float:
    """Largest relative residual of ``u v = -f(z)`` over images."""
    return max(p.residual(target) for p in pts)


def intertwining_error(ale: AleConfig, mapping, pts) -> float:
    """Largest distance between ``map(tau(p))`` and ``sigma(map(p))``."""
    worst = 0.0
    for p in pts:
        a = mapping(p.tau(ale.l))
        b = mapping(p).sigma()
        scale = max(1.0, abs(a.u), abs(a.v), abs(a.z))
        worst = max(worst, max(abs(a.z - b.z), abs(a.u - b.u), abs(a.v - b.v)) / scale)
    return worst
