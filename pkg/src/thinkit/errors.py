"""Exception hierarchy shared by the library and the command line."""


class ThinkitError(Exception):
    """Base class for every error raised by thinkit."""


class InputError(ThinkitError, ValueError):
    """Malformed or inconsistent input (bad ids, loops, mismatched sizes)."""


class RepresentationError(InputError):
    """An ordering/partition pair that is not (strongly) consistent."""


class SpecError(InputError):
    """A problem instance that violates the framework's invariants."""


class SizeCapExceeded(ThinkitError):
    """An exhaustive search was asked to run on an instance above its cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"instance too large for exact search: {what} has size {size} > cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class SolverInvariantError(ThinkitError, AssertionError):
    """The dynamic program produced something its independent checker rejects.

    This always indicates a bug in the solver, never a property of the input.
    """
