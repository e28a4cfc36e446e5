"""Shared exception types."""

from __future__ import annotations


class SortsatError(Exception):
    """Base class for all package errors."""


# --- term kernel ---

class UnknownSymbol(SortsatError):
    pass


class SortMismatch(SortsatError):
    pass


class DuplicateSymbol(SortsatError):
    pass


# --- frontend ---

class InputSyntaxError(SortsatError):
    """Malformed input text; carries a position and what was expected."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


class SortError(SortsatError):
    pass


class NoConjecture(SortsatError):
    pass


class MultipleConjectures(SortsatError):
    pass


class NonConstructorPattern(SortsatError):
    pass


class UnboundVariable(SortsatError):
    pass


# --- ordering ---

class CyclicOverride(SortsatError):
    pass


# --- oracle ---

class FuseExhausted(SortsatError):
    """Call-by-value evaluation exceeded its step fuse."""


class MissingCase(SortsatError):
    """No defining equation matched the evaluated arguments."""


class NotGround(SortsatError):
    pass


class OracleBudget(SortsatError):
    """The interpretation space of a semantic check exceeds its cap."""


# --- induction ---

class SchemaMismatch(SortsatError):
    pass


# --- theory / harness ---

class UnknownProgram(SortsatError):
    pass


class UnknownLemma(SortsatError):
    pass


class MissingBenchmarkFile(SortsatError):
    pass


class ManifestError(SortsatError):
    pass


class ProofFormatError(SortsatError):
    pass
