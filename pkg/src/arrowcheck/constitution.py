"""Constitutions: pairwise truth tables and the explicit general form.

An IIA constitution keeps one boolean choice table per unordered pair of
alternatives, stored in the canonical orientation "low index over high
index"; the other orientation is always derived as ``-f(-x)``.  The
general form is a dense map from every profile to a tournament and exists
to test independence itself at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import CapExceededError, ConstitutionFormatError, NotIiaError
from .rankings import (
    Profile,
    Ranking,
    SignVector,
    Tournament,
    all_pairs,
    all_profiles,
    num_pairs,
    pack_signs,
    pair_index,
    pairwise_vector,
    profile_from_index,
    profile_index,
)

DEFAULT_GENERAL_CAP = 10_000_000


@dataclass(frozen=True)
class PairwiseTable:
    """A boolean function of n voter signs, as a 2^n-entry truth table.

    ``bits`` holds the table as an integer: bit at packed input index p is
    1 when the function maps that input to +1.
    """

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a table needs at least one voter")
        if not 0 <= self.bits < (1 << (1 << self.n)):
            raise ValueError(f"truth table value out of range for n={self.n}")

    @property
    def size(self) -> int:
        return 1 << self.n

    def value_at(self, index: int) -> int:
        if not 0 <= index < self.size:
            raise ValueError(f"packed input {index} out of range for n={self.n}")
        return 1 if (self.bits >> index) & 1 else -1

    def __call__(self, signs: SignVector) -> int:
        return self.value_at(pack_signs(signs))

    @property
    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.size) - 1

    def reflected_negation(self) -> "PairwiseTable":
        """The table g(x) = -f(-x); the other orientation of the same pair."""
        size = self.size
        bits = 0
        for p in range(size):
            if not (self.bits >> (size - 1 - p)) & 1:
                bits |= 1 << p
        return PairwiseTable(self.n, bits)

    def to_bitstring(self) -> str:
        return "".join("1" if (self.bits >> p) & 1 else "0" for p in range(self.size))

    @classmethod
    def from_bitstring(cls, text: str) -> "PairwiseTable":
        size = len(text)
        n = size.bit_length() - 1
        if size != 1 << n or n < 1:
            raise ValueError(f"bitstring length {size} is not a power of two >= 2")
        bits = 0
        for p, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << p
            elif ch != "0":
                raise ValueError(f"bitstring may only contain 0 and 1, got {ch!r}")
        return cls(n, bits)

    @classmethod
    def constant(cls, n: int, sign: int) -> "PairwiseTable":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(n, (1 << (1 << n)) - 1 if sign == 1 else 0)

    @classmethod
    def projection(cls, n: int, voter: int, sign: int = 1) -> "PairwiseTable":
        """The table x -> sign * x_voter."""
        if not 0 <= voter < n:
            raise ValueError(f"voter {voter} out of range for n={n}")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        bits = 0
        for p in range(1 << n):
            if (((p >> voter) & 1) == 1) == (sign == 1):
                bits |= 1 << p
        return cls(n, bits)

    @classmethod
    def majority(cls, n: int) -> "PairwiseTable":
        if n % 2 == 0:
            raise ValueError("majority needs an odd number of voters")
        bits = 0
        for p in range(1 << n):
            if p.bit_count() * 2 > n:
                bits |= 1 << p
        return cls(n, bits)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[SignVector], int]) -> "PairwiseTable":
        from .rankings import unpack_signs

        bits = 0
        for p in range(1 << n):
            value = fn(unpack_signs(p, n))
            if value == 1:
                bits |= 1 << p
            elif value != -1:
                raise ValueError(f"table function must return +1 or -1, got {value!r}")
        return cls(n, bits)


@dataclass(frozen=True)
class IiaConstitution:
    """One canonical pairwise table per unordered pair {a, b}, a < b."""

    n: int
    k: int
    tables: tuple[PairwiseTable, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("need at least one alternative")
        if len(self.tables) != num_pairs(self.k):
            raise ValueError(f"expected {num_pairs(self.k)} tables, got {len(self.tables)}")
        if any(t.n != self.n for t in self.tables):
            raise ValueError("all tables must share the constitution's voter count")

    def table_for(self, a: int, b: int) -> PairwiseTable:
        """The stored table of the canonical pair (a, b) with a < b."""
        return self.tables[pair_index(a, b, self.k)]

    @classmethod
    def dictator(cls, n: int, k: int, voter: int, sign: int = 1) -> "IiaConstitution":
        table = PairwiseTable.projection(n, voter, sign)
        return cls(n, k, tuple(table for _ in range(num_pairs(k))))

    @classmethod
    def constant(cls, n: int, ranking: Ranking) -> "IiaConstitution":
        tables = tuple(
            PairwiseTable.constant(n, 1 if ranking.prefers(a, b) else -1)
            for a, b in all_pairs(ranking.k)
        )
        return cls(n, ranking.k, tables)

    @classmethod
    def majority(cls, n: int, k: int) -> "IiaConstitution":
        table = PairwiseTable.majority(n)
        return cls(n, k, tuple(table for _ in range(num_pairs(k))))


def oriented_table(C: IiaConstitution, a: int, b: int) -> PairwiseTable:
    """The choice table of the ordered pair a-over-b, derived when a > b."""
    if a == b:
        raise ValueError("a pair needs two distinct alternatives")
    if a < b:
        return C.table_for(a, b)
    return C.table_for(b, a).reflected_negation()


def oriented_eval(C: IiaConstitution, a: int, b: int, x: SignVector) -> int:
    """Evaluate the a-over-b choice on a sign vector; +1 means a wins.

    Satisfies oriented_eval(C, b, a, -x) == -oriented_eval(C, a, b, x).
    """
    if a == b:
        raise ValueError("a pair needs two distinct alternatives")
    packed = pack_signs(x)
    if a < b:
        return C.table_for(a, b).value_at(packed)
    table = C.table_for(b, a)
    return -table.value_at(packed ^ (table.size - 1))


def eval_iia(C: IiaConstitution, p: Profile) -> Tournament:
    """The social outcome on one profile, pair by pair."""
    if p.k != C.k or p.n != C.n:
        raise ValueError(
            f"profile dimensions (n={p.n}, k={p.k}) do not match constitution (n={C.n}, k={C.k})"
        )
    signs = tuple(
        C.table_for(a, b).value_at(pack_signs(pairwise_vector(p, a, b))) for a, b in all_pairs(C.k)
    )
    return Tournament(C.k, signs)


def restrict(C: IiaConstitution, alts: Iterable[int]) -> IiaConstitution:
    """The constitution on a subset of alternatives, re-indexed by ascending label."""
    subset = sorted(set(alts))
    if not subset:
        raise ValueError("cannot restrict to an empty alternative set")
    if subset[0] < 0 or subset[-1] >= C.k:
        raise ValueError(f"alternatives {subset} are not a subset of 0..{C.k - 1}")
    tables = tuple(C.table_for(subset[i], subset[j]) for i, j in all_pairs(len(subset)))
    return IiaConstitution(C.n, len(subset), tables)


@dataclass(frozen=True)
class GeneralConstitution:
    """A dense map from every profile to a tournament, indexed by profile index."""

    n: int
    k: int
    outcomes: tuple[Tournament, ...]

    def __post_init__(self) -> None:
        expected = math.factorial(self.k) ** self.n
        if len(self.outcomes) != expected:
            raise ValueError(f"expected {expected} outcomes, got {len(self.outcomes)}")
        if any(t.k != self.k for t in self.outcomes):
            raise ValueError("all outcomes must cover the constitution's alternatives")

    @classmethod
    def from_function(
        cls, n: int, k: int, fn: Callable[[Profile], Tournament], cap: int = DEFAULT_GENERAL_CAP
    ) -> "GeneralConstitution":
        total = math.factorial(k) ** n
        if total > cap:
            raise CapExceededError(total, cap)
        return cls(n, k, tuple(fn(p) for p in all_profiles(n, k)))


def eval_general(G: GeneralConstitution, p: Profile) -> Tournament:
    if p.k != G.k or p.n != G.n:
        raise ValueError(
            f"profile dimensions (n={p.n}, k={p.k}) do not match constitution (n={G.n}, k={G.k})"
        )
    return G.outcomes[profile_index(p)]


def general_from_iia(C: IiaConstitution, cap: int = DEFAULT_GENERAL_CAP) -> GeneralConstitution:
    total = math.factorial(C.k) ** C.n
    if total > cap:
        raise CapExceededError(total, cap)
    return GeneralConstitution(C.n, C.k, tuple(eval_iia(C, p) for p in all_profiles(C.n, C.k)))


def iia_from_general(G: GeneralConstitution) -> IiaConstitution:
    """Recover pairwise tables from a general constitution, or prove it is not IIA.

    Succeeds iff every pair's direction is a function of that pair's sign
    vector alone; otherwise raises :class:`NotIiaError` with two profiles
    that agree on the pair's signs but get opposite directions.
    """
    pairs = list(all_pairs(G.k))
    size = 1 << G.n
    values: list[list[int | None]] = [[None] * size for _ in pairs]
    first_seen: list[list[int]] = [[0] * size for _ in pairs]
    for pidx, p in enumerate(all_profiles(G.n, G.k)):
        outcome = G.outcomes[pidx]
        for pi, (a, b) in enumerate(pairs):
            packed = pack_signs(pairwise_vector(p, a, b))
            direction = 1 if outcome.prefers(a, b) else -1
            known = values[pi][packed]
            if known is None:
                values[pi][packed] = direction
                first_seen[pi][packed] = pidx
            elif known != direction:
                raise NotIiaError(
                    (a, b), profile_from_index(first_seen[pi][packed], G.n, G.k), p
                )
    tables = []
    for pi in range(len(pairs)):
        bits = 0
        for packed in range(size):
            # Every sign vector is realized by some profile, so no entry is None.
            if values[pi][packed] == 1:
                bits |= 1 << packed
        tables.append(PairwiseTable(G.n, bits))
    return IiaConstitution(G.n, G.k, tuple(tables))


def _parse_positive_int(value: str, line: int, what: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise ConstitutionFormatError(f"{what} must be an integer, got {value!r}", line=line) from None
    if number < 1:
        raise ConstitutionFormatError(f"{what} must be at least 1, got {number}", line=line)
    return number


def parse_constitution(text: str) -> IiaConstitution:
    """Parse the constitution file format.

    Lines hold ``key = value`` with keys ``n``, ``k`` and one ``a>b`` entry
    per canonical pair (a < b) mapping to a bitstring of length 2^n whose
    character at position p is '1' when the table maps packed input p to +1.
    Key order does not matter; ``#`` starts a comment.
    """
    n: int | None = None
    k: int | None = None
    pair_lines: dict[tuple[int, int], tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConstitutionFormatError("expected 'key = value'", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "n":
            if n is not None:
                raise ConstitutionFormatError("duplicate key 'n'", line=lineno)
            n = _parse_positive_int(value, lineno, "n")
        elif key == "k":
            if k is not None:
                raise ConstitutionFormatError("duplicate key 'k'", line=lineno)
            k = _parse_positive_int(value, lineno, "k")
        elif ">" in key:
            left, _, right = key.partition(">")
            try:
                a, b = int(left), int(right)
            except ValueError:
                raise ConstitutionFormatError(f"malformed pair label {key!r}", line=lineno) from None
            if a >= b:
                raise ConstitutionFormatError(
                    f"pair label {key!r} must use the canonical orientation a>b with a < b", line=lineno
                )
            if (a, b) in pair_lines:
                raise ConstitutionFormatError(f"duplicate pair {key!r}", line=lineno)
            pair_lines[(a, b)] = (value, lineno, raw.find(value) + 1)
        else:
            raise ConstitutionFormatError(f"unknown key {key!r}", line=lineno)
    if n is None:
        raise ConstitutionFormatError("missing key 'n'")
    if k is None:
        raise ConstitutionFormatError("missing key 'k'")
    expected_pairs = list(all_pairs(k))
    for pair in expected_pairs:
        if pair not in pair_lines:
            raise ConstitutionFormatError(f"missing table for pair {pair[0]}>{pair[1]}")
    for pair in pair_lines:
        if pair[1] >= k:
            value, lineno, _ = pair_lines[pair]
            raise ConstitutionFormatError(
                f"pair {pair[0]}>{pair[1]} out of range for k={k}", line=lineno
            )
    tables = []
    for a, b in expected_pairs:
        bitstring, lineno, col = pair_lines[(a, b)]
        if len(bitstring) != 1 << n:
            raise ConstitutionFormatError(
                f"table for {a}>{b} must have {1 << n} bits, got {len(bitstring)}", line=lineno
            )
        for offset, ch in enumerate(bitstring):
            if ch not in "01":
                raise ConstitutionFormatError(
                    f"invalid bit {ch!r} in table for {a}>{b}", line=lineno, column=col + offset
                )
        tables.append(PairwiseTable.from_bitstring(bitstring))
    return IiaConstitution(n, k, tuple(tables))


def serialize_constitution(C: IiaConstitution) -> str:
    """Canonical textual form; parse_constitution(serialize_constitution(C)) == C."""
    lines = [f"n = {C.n}", f"k = {C.k}"]
    for a, b in all_pairs(C.k):
        lines.append(f"{a}>{b} = {C.table_for(a, b).to_bitstring()}")
    return "\n".join(lines) + "\n"
