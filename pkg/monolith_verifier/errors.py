"""
Exception hierarchy for the verifier.

Library code raises these; only the command line turns them into exit codes.
"""
from typing import Any, Dict, Iterable, Optional


class VerifierError(Exception):
    """Root of every error raised by monolith_verifier."""

    def to_dict(self) -> Dict[str, Any]:
        return {"type": type(self).__name__, "error": str(self)}


# --- group construction -------------------------------------------------------

class InvalidGroupTable(VerifierError):
    """A multiplication table violates a group axiom."""


class NotLatinSquare(InvalidGroupTable):
    pass


class NoIdentity(InvalidGroupTable):
    pass


class NotAssociative(InvalidGroupTable):
    def __init__(self, triple):
        a, b, c = triple
        super().__init__(f"(a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")
        self.triple = tuple(triple)


class SizeLimitExceeded(VerifierError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds the configured cap of {limit}")
        self.what = what
        self.limit = limit


class UnknownFamily(VerifierError):
    pass


class BadParameter(VerifierError):
    pass


class UnknownElement(VerifierError):
    pass


class GroupSpecError(VerifierError):
    """A group specification could not be resolved to a group."""


class NotNormal(VerifierError):
    pass


# --- witnesses ----------------------------------------------------------------

class MissingParameter(VerifierError):
    def __init__(self, slot: int):
        super().__init__(f"no parameter supplied for slot u{slot}")
        self.slot = slot


class NotSubdirectlyIrreducible(VerifierError):
    pass


class NotNilpotent(VerifierError):
    pass


class IdentityInput(VerifierError):
    pass


class NotAnAtom(VerifierError):
    pass


class BoundViolation(VerifierError):
    """A theorem bound failed. `record` holds everything needed to reproduce it."""

    def __init__(self, message: str, record: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.record = dict(record or {})

    def to_dict(self) -> Dict[str, Any]:
        payload = super().to_dict()
        payload["record"] = self.record
        return payload


# --- formulas -----------------------------------------------------------------

class FormulaSyntaxError(VerifierError):
    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class UnboundVariable(VerifierError):
    def __init__(self, name: str):
        super().__init__(f"variable {name!r} has no value in the assignment")
        self.name = name


class WrongFreeVariables(VerifierError):
    pass


class FormulaTooLarge(VerifierError):
    pass
