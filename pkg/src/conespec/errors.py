"""Exception hierarchy shared by every module of the package."""


class ConespecError(Exception):
    """Base class for all package errors."""


class InputError(ConespecError, ValueError):
    """Malformed or inconsistent user input (maps to CLI exit code 2)."""


class CheckFailure(ConespecError):
    """A verification check failed (maps to CLI exit code 1)."""


# exact kernel

class ZeroVector(InputError):
    pass


class ZeroSequence(InputError):
    pass


class SpectrumNotPositiveReal(InputError):
    pass


class SNotConjugationClosed(InputError):
    pass


class NotAnEigenvalue(InputError):
    pass


# cones

class DimensionMismatch(InputError):
    pass


class InconsistentCone(InputError):
    pass


class BadCone(InputError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InvalidAlpha(InputError):
    pass


class TooManyEigenvalues(InputError):
    pass


class NotInvariant(InputError):
    pass


class SubspaceMissesCone(InputError):
    pass


# degree layer

class InvalidSystem(InputError):
    pass


class LogConcavityViolated(InputError):
    def __init__(self, index, message=None):
        super().__init__(message or f"log-concavity fails at i={index}")
        self.index = index


class EmptyTree(InputError):
    pass


class SpectrumMismatch(CheckFailure):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# exponential polynomials

class ArityMismatch(InputError):
    pass


class NotConjugationClosed(InputError):
    pass


class PositivityViolated(CheckFailure):
    def __init__(self, point, enclosure, message=None):
        super().__init__(message or f"h is not positive at {point}: value in {enclosure}")
        self.point = point
        self.enclosure = enclosure


class EmptyTarget(InputError):
    pass


class ZeroAngleTerm(InputError):
    pass


class IdenticallyZero(InputError):
    pass


class CounterexampleCandidate(CheckFailure):
    pass


# generated cycles

class InvalidModel(InputError):
    pass


class EmptySet(InputError):
    pass


class NotPositive(CheckFailure):
    def __init__(self, point, facet=None, message=None):
        super().__init__(message or f"component at {point!r} violates cone facet {facet}")
        self.point = point
        self.facet = facet


class NotDual(InputError):
    pass


class IncompatiblePairing(InputError):
    pass


class SupportMeetsD(InputError):
    pass


# harness

class BadParams(InputError):
    pass
