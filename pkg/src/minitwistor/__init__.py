"""Real minitwistor lines on double covers of cones over rational normal curves.

The package follows one hyperelliptic curve with real branch points from its
period lattice, through the Seifert surfaces of tangent hyperplanes, to the
Lorentzian Einstein-Weyl spaces formed by the real minitwistor lines.
"""

from .errors import (
    ConfigError,
    DegenerateAnchor,
    DegenerateNullspace,
    DegeneratePoint,
    MinitwistorError,
    NoConvergence,
    NoSolution,
    NotInFamily,
    NumericalError,
    QuadratureFailure,
    RamificationPoint,
    WrongComponent,
)
from .hyperelliptic_curve import G1, G2, G3, BranchConfig, CurvePoint
from .jacobian import JacPoint, PeriodLattice, abel, abel_divisor, half_period_table, period_lattice
from .seifert import BoundaryData, SeifertSolver, enumerate_seifert
from .minitwistor_surface import MinitwistorLine, QuadricCover, SurfacePoint, build_line, s1_act
from .einstein_weyl import EWPoint, conformal_metric, ew_chart, foliation_check, geodesic_spacelike, zoll_suite
from .ale_bridge import AleConfig, AlePoint, map_even, map_odd

__version__ = "0.1.0"

__all__ = [
    "AleConfig",
    "AlePoint",
    "BoundaryData",
    "BranchConfig",
    "ConfigError",
    "CurvePoint",
    "DegenerateAnchor",
    "DegenerateNullspace",
    "DegeneratePoint",
    "EWPoint",
    "G1",
    "G2",
    "G3",
    "JacPoint",
    "MinitwistorError",
    "MinitwistorLine",
    "NoConvergence",
    "NoSolution",
    "NotInFamily",
    "NumericalError",
    "PeriodLattice",
    "QuadricCover",
    "QuadratureFailure",
    "RamificationPoint",
    "SeifertSolver",
    "SurfacePoint",
    "WrongComponent",
    "abel",
    "abel_divisor",
    "build_line",
    "conformal_metric",
    "enumerate_seifert",
    "ew_chart",
    "foliation_check",
    "geodesic_spacelike",
    "half_period_table",
    "map_even",
    "map_odd",
    "period_lattice",
    "s1_act",
    "zoll_suite",
]
