"""Exception hierarchy shared by all modules.

Input problems (bad documents, violated hypotheses, unavailable oracles)
are kept apart from internal invariant violations: the former are the
user's to fix, the latter are bugs and carry a distinct CLI exit code.
"""


class InputError(Exception):
    """The input document or a stated hypothesis is not acceptable."""


class SchemaError(InputError):
    """The input document does not conform to the documented schema."""


class HypothesisError(InputError):
    """A hypothesis required by the requested computation fails.

    Raised e.g. when a rotation block is not an integer resonance, so the
    completely solvable replacement of the algebra is not available.
    """


class OracleUnavailable(InputError):
    """The brute-force monodromy iteration is not exact for this spectrum."""


class InternalInvariantViolation(Exception):
    """A structural invariant the engine guarantees was found broken."""
