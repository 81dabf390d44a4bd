"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SasError(Exception):
    """Base class for all errors raised by sasplines."""


class InputError(SasError):
    """Malformed user input (I/O, schema, syntax). Maps to CLI exit code 2."""


class ComputationError(SasError):
    """A well-formed request that cannot be answered. Maps to CLI exit code 1."""


class PolySyntaxError(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class SchemaError(InputError):
    pass


class DanglingReference(InputError):
    pass


class MeshNotValidated(ComputationError):
    pass


class NotInteriorEdge(ComputationError):
    pass


class NotInteriorVertex(ComputationError):
    pass


class NotStabilized(ComputationError):
    pass


class DegreeMismatch(ComputationError):
    pass


class SpanDeficient(ComputationError):
    pass


class HasBasepoints(ComputationError):
    pass


class NotInNet(ComputationError):
    pass


class InsufficientImageData(ComputationError):
    pass


class NotGeneric(ComputationError):
    pass


class SingularBranch(ComputationError):
    pass
