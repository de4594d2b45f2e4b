"""Exception hierarchy shared by all modules."""


class MinitwistorError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(MinitwistorError, ValueError):
    """Invalid user supplied configuration."""


class NumericalError(MinitwistorError):
    """A numerical routine could not deliver a certified answer."""


class RamificationPoint(NumericalError):
    """The holomorphic differentials were evaluated where w = 0."""


class QuadratureFailure(NumericalError):
    """Adaptive quadrature did not reach the requested accuracy."""


class NoConvergence(NumericalError):
    """Newton or continuation failed to converge."""


class WrongComponent(NumericalError):
    """A continuation left the requested Seifert component."""


class DegenerateNullspace(NumericalError):
    """A hyperplane fit does not have a one dimensional nullspace."""


class NotInFamily(NumericalError):
    """A hyperplane is not a minitwistor line of the compact family."""


class DegenerateAnchor(NumericalError):
    """Anchor points do not define a spacelike geodesic."""


class DegeneratePoint(NumericalError):
    """The conformal structure was requested at a degenerate point."""


class NoSolution(NumericalError):
    """A coordinate identification could not be matched."""
