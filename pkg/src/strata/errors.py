"""Exception hierarchy shared by every module of the package."""


class StrataError(Exception):
    """Base class; the CLI maps it to exit code 2."""


class InputError(StrataError, ValueError):
    """Malformed document or argument."""


class MemberNotInStructure(StrataError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class EndpointMismatch(StrataError, ValueError):
    pass


class NotAPath(StrataError, ValueError):
    pass


class NotConnected(StrataError, ValueError):
    pass


class UnknownIndex(StrataError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidCenter(StrataError, ValueError):
    def __init__(self, message, step=None):
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)
        self.step = step


class InvalidNodalData(StrataError, ValueError):
    pass


class EquivalenceViolation(StrataError, AssertionError):
    pass


class ParityInconsistent(StrataError, ValueError):
    pass


class UnassignedComponent(StrataError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NonPositive(StrataError, ValueError):
    pass


class DanglingAdjacency(StrataError, ValueError):
    pass


class SeparatrixSpansComponents(StrataError, ValueError):
    pass


class IndexOutOfRange(StrataError, IndexError):
    pass


class UnclassifiedTSequence(StrataError, ValueError):
    pass
