"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for malformed input,
3 for violated invariants, 4 for exhausted resource limits.
"""


class SurgeryKitError(Exception):
    exit_code = 3


class ParseError(SurgeryKitError, ValueError):
    exit_code = 2


class InvariantError(SurgeryKitError, ValueError):
    exit_code = 3


class ResourceLimit(SurgeryKitError, RuntimeError):
    exit_code = 4


# laurent
class VariableMismatch(InvariantError):
    pass


class ZeroPolynomial(InvariantError):
    pass


class NotDivisible(InvariantError):
    pass


# linkdiag
class InvalidDiagram(InvariantError):
    pass


class SameComponent(InvariantError):
    pass


class UnknownComponent(InvariantError):
    pass


class TooFewStrands(InvariantError):
    pass


class IndexOutOfRange(InvariantError):
    pass


# groups
class EnumerationLimitExceeded(ResourceLimit):
    pass


class EmptyPresentation(InvariantError):
    pass


class UnknownGenerator(ParseError):
    pass


# alexander
class DegenerateMatrix(InvariantError):
    pass


# forms
class NotSymmetric(InvariantError):
    pass


class NotUnimodular(InvariantError):
    pass


class Unrecognized(InvariantError):
    pass


class SameIndex(InvariantError):
    pass


class DefiniteNotSupported(InvariantError):
    pass


# surgery
class ArityMismatch(InvariantError):
    pass
