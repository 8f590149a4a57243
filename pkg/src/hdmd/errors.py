"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures onto its
exit-code contract: 1 configuration, 2 data, 3 numerical.
"""


class HdmdError(Exception):
    exit_code = 1


class ConfigError(HdmdError):
    """Invalid configuration or request."""

    exit_code = 1


class DataError(HdmdError):
    """Malformed, insufficient, or out-of-range input data."""

    exit_code = 2


class NumericalError(HdmdError):
    """The computation cannot proceed numerically."""

    exit_code = 3


class DimensionMismatch(DataError):
    pass


class NonFinite(DataError):
    pass


class WindowTooShort(DataError):
    pass


class ConstantChannel(DataError):
    pass


class TooFewCrossings(DataError):
    pass


class ZeroVarianceTruth(DataError):
    pass


class DegenerateSupport(DataError):
    pass


class RecordTooShort(DataError):
    pass


class OriginOutOfRange(DataError):
    pass


class NonPositiveInput(ConfigError):
    pass


class UpsamplingRequested(ConfigError):
    pass


class DegenerateData(NumericalError):
    pass
