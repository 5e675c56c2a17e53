"""Exception types shared across the toolkit."""

from __future__ import annotations


class SymbreakError(Exception):
    """Base class for all toolkit errors."""


class GraphFormatError(SymbreakError, ValueError):
    """Malformed interchange data (graph6, JSON schema).

    ``offset`` is the byte position of the first offending byte, when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class InvalidGraphError(SymbreakError, ValueError):
    """Input violates the graph invariants (simple, symmetric, connected)."""


class PreconditionError(SymbreakError, ValueError):
    """An operation was called outside its stated contract."""


class CapExceededError(SymbreakError, RuntimeError):
    """An automorphism enumeration grew past the configured element cap."""

    def __init__(self, cap: int):
        super().__init__(f"automorphism cap of {cap} elements exceeded")
        self.cap = cap


class BudgetExceededError(SymbreakError, RuntimeError):
    """A search exhausted its candidate budget before reaching an answer."""

    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} candidates exhausted")
        self.budget = budget


class TruncationUnsuitableError(SymbreakError, ValueError):
    """The finite truncation cannot support the requested construction,
    e.g. no path to the boundary exists."""


class StructuralViolationError(SymbreakError, RuntimeError):
    """A structural fact the theory rules out was observed.

    These are loud diagnostics, never silently repaired: they mean either an
    implementation bug or an undersized truncation falsifying a hypothesis.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesisViolationError(SymbreakError, RuntimeError):
    """The truncation/motion hypothesis failed at finite scale, e.g. neither
    claim option of the two-colouring step is realisable."""
