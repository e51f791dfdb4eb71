"""Exception hierarchy shared across the package."""


class FermiLieError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(FermiLieError):
    """Operands have incompatible matrix or vector dimensions."""


class CapacityError(FermiLieError):
    """A requested construction exceeds a configured size cap."""


class NonHermitianError(FermiLieError):
    """An operation requiring a Hermitian operator received a non-Hermitian one."""


class ClosureError(FermiLieError):
    """Lie closure failed: runaway dimension or a basis that is not closed."""


class OperatorSpecError(FermiLieError):
    """The operator mini-language string could not be parsed."""


class SchemaError(FermiLieError):
    """A JSON artifact does not match the expected schema."""
