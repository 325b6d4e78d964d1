"""Exceptions raised by the library; each carries the CLI exit code it maps to."""


class PSMError(Exception):
    exit_code = 1


class ParseError(PSMError):
    exit_code = 2


class InvalidSpec(ParseError):
    pass


class ShapeMismatch(PSMError, ValueError):
    exit_code = 2


class NotMinimal(PSMError):
    exit_code = 3


class NotSimple(PSMError):
    exit_code = 4


class PoleOrSingular(PSMError):
    exit_code = 5


class BackendFailure(PSMError):
    exit_code = 6


class NoFiniteEigenvalues(BackendFailure):
    pass


class DegreeZero(BackendFailure):
    pass


class EigenvalueCollision(BackendFailure):
    pass
