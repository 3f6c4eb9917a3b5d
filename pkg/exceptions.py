class HypercrossError(Exception):
    """Base error; `exit_code` follows the CLI contract (2 usage, 3 degenerate input)."""

    exit_code = 2


class DimensionError(HypercrossError):
    pass


class ShapeError(HypercrossError):
    pass


class OrderingError(HypercrossError):
    pass


class SizeError(HypercrossError):
    pass


class ParameterError(HypercrossError):
    pass


class DisjointnessError(HypercrossError):
    pass


class ContractError(HypercrossError):
    pass


class GenerationError(HypercrossError):
    exit_code = 3


class DegeneracyError(HypercrossError):
    exit_code = 3


class FlatConfigurationError(DegeneracyError):
    pass


class DegenerateSupportError(DegeneracyError):
    pass


class GeneralPositionError(DegeneracyError):
    pass


class DegenerateDiagramError(DegeneracyError):
    pass


class DegenerateQueryError(DegeneracyError):
    """Position predicate asked about n <= d points, where it is vacuously true."""
