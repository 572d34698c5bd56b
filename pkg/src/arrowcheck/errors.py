"""Shared exceptions and the default resource cap for exact scans."""

from __future__ import annotations

# Exact checks enumerate at most this many profiles (or constitutions, for
# the enumerator) before refusing; callers can raise or lower it per call.
DEFAULT_CAP = 10_000_000


class CapExceededError(RuntimeError):
    """An exact enumeration would exceed the configured cap."""

    def __init__(self, required: int, cap: int):
        super().__init__(
            f"exact scan needs {required} evaluations, cap is {cap}; "
            "raise the cap or use a sampled mode"
        )
        self.required = required
        self.cap = cap


class NonRealizableTripleError(ValueError):
    """A sign triple equals (+1,+1,+1) or (-1,-1,-1), so no strict ranking produces it."""


class NotIiaError(RuntimeError):
    """A general constitution is not independent of irrelevant alternatives.

    Carries a witness: a pair of alternatives plus two profiles with equal
    pairwise sign vectors for that pair but opposite social directions.
    """

    def __init__(self, pair, profile_a, profile_b):
        a, b = pair
        super().__init__(f"pair {{{a},{b}}} depends on more than the voters' {a}-vs-{b} preferences")
        self.pair = pair
        self.profile_a = profile_a
        self.profile_b = profile_b


class NotTransitiveError(RuntimeError):
    """A constitution required to be transitive is not; carries a cyclic profile."""

    def __init__(self, witness):
        super().__init__("constitution has a non-transitive outcome")
        self.witness = witness


class IndeterminateWitnessError(RuntimeError):
    """A sampled paradox search found nothing but could not prove absence."""

    def __init__(self, samples: int, seed: int | None):
        super().__init__(
            f"no paradox found in {samples} samples (seed {seed}); "
            "result is indeterminate, not a proof of transitivity"
        )
        self.samples = samples
        self.seed = seed


class ConstitutionFormatError(ValueError):
    """A constitution file failed to parse; carries a line (and column) position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        position = ""
        if line is not None:
            position = f"line {line}: " if column is None else f"line {line}, column {column}: "
        super().__init__(position + message)
        self.line = line
        self.column = column
