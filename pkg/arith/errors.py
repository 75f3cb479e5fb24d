"""
Exception hierarchy for lamroot.

Every error raised on purpose by the library derives from LamrootError so
callers (the CLI in particular) can tell domain failures from bugs.
"""


class LamrootError(Exception):
    """Base class for all lamroot errors."""


class NotCoprimeError(LamrootError, ValueError):
    """An operation needed a residue coprime to the modulus."""

    def __init__(self, n: int, q: int):
        self.n = n
        self.q = q
        super().__init__(f"{n} is not coprime to {q}")


class NoPrimitiveRootError(LamrootError, ValueError):
    """The modulus does not have the cyclic (or prime) shape the operation needs."""


class DomainError(LamrootError, ValueError):
    """A precondition on the numeric arguments was violated."""


class ConsistencyError(LamrootError, AssertionError):
    """Two independent computations of the same quantity disagree."""
