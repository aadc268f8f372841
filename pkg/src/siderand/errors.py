"""Exception and warning types shared across the package."""


class SideRandError(Exception):
    """Base class for all siderand errors."""


class ClockUnavailable(SideRandError):
    """The platform does not provide the requested clock."""


class CoarseTimer(SideRandError):
    """The requested clock is too coarse to collect usable timing variance."""


class EmptySeries(SideRandError):
    """An operation that needs at least one timing sample got none."""


class DegenerateDistribution(SideRandError):
    """A frequency distribution with no variation (MFV >= 1) cannot be tuned."""


class PriorityDenied(RuntimeWarning):
    """Priority boost was requested but the privilege is not held.

    Non-fatal: collection proceeds, and the resulting series is marked so
    reports can record the protocol deviation.
    """
