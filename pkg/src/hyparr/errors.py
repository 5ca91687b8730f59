"""Exception taxonomy shared by all modules.

The three classes map onto the CLI exit-code contract: bad user data is an
InputError (exit 1), a mathematically valid input that a pipeline stage
cannot accept is a PreconditionError (exit 2, the analysis degrades
gracefully), and a violated internal theorem is an
InternalInvariantViolation (exit 3, never a normal outcome).
"""


class InputError(ValueError):
    """Malformed user input: files, normals, graphs, flags."""


class PreconditionError(ValueError):
    """Input fails a documented precondition of the requested computation."""


class InternalInvariantViolation(RuntimeError):
    """A fact that is a theorem for correct code failed to hold.

    Raising this means the implementation is wrong somewhere; it is never
    the caller's fault and is reported fatally.
    """
