"""Exception hierarchy shared across the package."""


class BlockGateError(ValueError):
    """Base class for all errors raised by blockgate."""


class DimensionError(BlockGateError):
    """Operands have incompatible or unsupported shapes."""


class SizeGuardError(BlockGateError):
    """A requested operator exceeds the dense size guard."""


class NotUnitaryError(BlockGateError):
    """A matrix that must be unitary is not."""


class PlacementError(BlockGateError):
    """Wire positions are out of range, duplicated or otherwise invalid."""


class UnknownGateError(BlockGateError):
    """Gate name or (name, dimension) pair not in the catalog."""


class ProbabilityError(BlockGateError):
    """A computed probability left [0, 1] by more than the allowed slack."""
