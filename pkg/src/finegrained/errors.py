"""Exception hierarchy shared by every module."""


class ReductionError(Exception):
    """Base class for library errors."""


class StructuralError(ReductionError, ValueError):
    """An instance violates a shape invariant (dimension, duplicates, length)."""


class ArgumentError(ReductionError, ValueError):
    """A parameter is out of range for the requested operation."""


class CapacityError(ReductionError):
    """The requested enumeration or construction exceeds a size guard."""


class ConfigurationError(ReductionError, ValueError):
    """A reduction chain or preset is malformed."""


class OracleError(ReductionError):
    """An oracle answer is inconsistent with the algebra of the correction."""
