"""Exception types raised across the package.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch the builtin.
"""


class ChirpPaprError(ValueError):
    pass


class NonPowerOfTwoLength(ChirpPaprError):
    pass


class RootNotCoprime(ChirpPaprError):
    pass


class StrideDoesNotDivide(ChirpPaprError):
    pass


class LengthMismatch(ChirpPaprError):
    pass


class OddLength(ChirpPaprError):
    pass


class SubblockMismatch(ChirpPaprError):
    pass


class GroupMismatch(ChirpPaprError):
    pass


class ZeroSignal(ChirpPaprError):
    pass


class OddBitCount(ChirpPaprError):
    pass


class EmptySamples(ChirpPaprError):
    pass


class ConfigError(ChirpPaprError):
    pass


class IncompatibleCombination(ConfigError):
    pass


class MissingCurve(ChirpPaprError):
    pass
