"""Exception hierarchy.

Every error carries a machine-readable ``witness`` and a CLI exit code so
that the command-line front end can serialize failures uniformly.
"""

from __future__ import annotations

from typing import Any


class ModTVError(Exception):
    exit_code = 1

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "witness": _plain(self.witness),
            "exit_code": self.exit_code,
        }


def _plain(obj):
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_plain(v) for v in obj]
    return str(obj)


# -- schema / parse problems (exit 2)
class SchemaError(ModTVError):
    exit_code = 2


# -- violated mathematical invariants (exit 3)
class InvariantViolation(ModTVError):
    exit_code = 3


class NotAGroup(InvariantViolation):
    pass


class DomainMismatch(InvariantViolation):
    pass


class ReversalViolation(InvariantViolation):
    pass


class CocycleViolation(InvariantViolation):
    pass


class EmptyComponent(InvariantViolation):
    pass


class SurfaceMismatch(InvariantViolation):
    pass


class NotAPath(InvariantViolation):
    pass


class SingularGram(InvariantViolation):
    pass


class BadBFunction(InvariantViolation):
    pass


class InadmissibleLabel(InvariantViolation):
    pass


class IndexOutOfRange(InvariantViolation):
    pass


class NotClosed(InvariantViolation):
    pass


class NotOrientable(InvariantViolation):
    pass


class BadLink(InvariantViolation):
    pass


class NotQuasiRegular(InvariantViolation):
    pass


class NotHamiltonian(InvariantViolation):
    pass


class InadmissibleEdge(InvariantViolation):
    pass


class InadmissibleState(InvariantViolation):
    pass


class GuardFailed(ModTVError):
    """A guarded move was refused; the input is left untouched."""

    exit_code = 3


class HamiltonicityLost(GuardFailed):
    pass


class NotFound(ModTVError):
    exit_code = 3


# -- decorations the state sum cannot handle (exit 4)
class UnsupportedDecoration(ModTVError):
    exit_code = 4


class DegreeInBadSet(UnsupportedDecoration):
    pass


class BadDegreeSample(UnsupportedDecoration):
    pass


class NoValidH(UnsupportedDecoration):
    pass


# -- equivalence words (exit 5)
class NotComposable(ModTVError):
    exit_code = 5
