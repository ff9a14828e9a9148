"""Exception hierarchy shared across the package."""


class HyperpotError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(HyperpotError, ValueError):
    """A parameter violates a documented invariant."""


class PoleError(HyperpotError, ValueError):
    """Gamma function evaluated at a non-positive integer."""


class DivergenceError(HyperpotError, ValueError):
    """Series called outside its convergence region."""


class NonConvergenceError(HyperpotError, RuntimeError):
    """An iterative procedure failed to reach its tolerance."""


class PathSingularityError(HyperpotError, ValueError):
    """Analytic continuation path crosses a finite singular point."""


class DegenerateParameterError(HyperpotError, ValueError):
    """Connection formula requested at integer parameter differences
    (logarithmic case); reported rather than computed."""


class ChannelClosedError(HyperpotError, ValueError):
    """Scattering amplitude requested below the channel threshold."""


class BoxTooSmallError(HyperpotError, ValueError):
    """Integration box too small: potential tails exceed tolerance."""
