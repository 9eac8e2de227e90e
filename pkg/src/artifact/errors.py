"""Exception hierarchy shared by every module.

The CLI maps :class:`ConfigError` to exit code 2 and :class:`DomainError`
to exit code 3.
"""


class ShapeFunctionError(Exception):
    """Base class for all library errors."""


class ConfigError(ShapeFunctionError, ValueError):
    """Inconsistent or unsupported request (bad shape name, orders, orientations)."""


class CapabilityError(ConfigError):
    """Requested polynomial index beyond the supported cap."""


class IndexRangeError(ConfigError):
    """Ancillary operator called with an index outside its admissible range."""


class DimensionError(ConfigError):
    """Operator needs a different ambient dimension than the one supplied."""


class DomainError(ShapeFunctionError, ValueError):
    """Evaluation point outside the region where the functions are defined."""


class PoleError(DomainError):
    """Pyramid point too close to the apex, where the rational coordinates blow up."""


class GeometryError(ConfigError):
    """Mesh element that cannot be represented by an affine map."""


class ConditioningError(ShapeFunctionError, ArithmeticError):
    """Cholesky met a pivot below the admissible threshold."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
