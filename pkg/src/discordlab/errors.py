"""Exception hierarchy. Every validation failure names the violated invariant."""


class DiscordLabError(Exception):
    """Base class for all errors raised by this package."""


class NonSquareError(DiscordLabError):
    pass


class NotHermitianError(DiscordLabError):
    pass


class NotPSDError(DiscordLabError):
    pass


class NotUnitTraceError(DiscordLabError):
    pass


class NotUnitaryError(DiscordLabError):
    pass


class NotPureError(DiscordLabError):
    pass


class InvalidSpectrumError(DiscordLabError):
    pass


class InvalidProbabilitiesError(DiscordLabError):
    pass


class DimensionMismatchError(DiscordLabError):
    pass


class UnsupportedDimensionError(DiscordLabError):
    pass


class OutOfRangeError(DiscordLabError):
    pass


class OutOfRegionError(DiscordLabError):
    pass


class ConvergenceFailureError(DiscordLabError):
    pass


class OptimizerFailureError(DiscordLabError):
    pass
