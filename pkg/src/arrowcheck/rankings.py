"""Strict rankings, profiles, sign vectors, and tournaments.

Alternatives are the integers ``0..k-1``.  A ranking lists them from most
to least preferred.  Pairwise comparisons are carried as vectors of +1/-1
signs, one entry per voter; a sign vector packs into an integer with voter
0 in the least significant bit and +1 encoded as bit value 1.  Rankings
enumerate in Lehmer-code order (identity first, full reversal last).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import NonRealizableTripleError

SignVector = tuple[int, ...]


@dataclass(frozen=True)
class Ranking:
    """A strict total order; ``order[0]`` is the most preferred alternative."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"not a permutation of 0..{len(self.order) - 1}: {self.order!r}")

    @property
    def k(self) -> int:
        return len(self.order)

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """1-based rank of each alternative (1 = top)."""
        ranks = [0] * len(self.order)
        for position, alt in enumerate(self.order):
            ranks[alt] = position + 1
        return tuple(ranks)

    def prefers(self, a: int, b: int) -> bool:
        return self.rank[a] < self.rank[b]

    def to_text(self) -> str:
        return ">".join(str(alt) for alt in self.order)

    @classmethod
    def from_text(cls, text: str) -> "Ranking":
        try:
            order = tuple(int(part) for part in text.strip().split(">"))
        except ValueError as exc:
            raise ValueError(f"malformed ranking {text.strip()!r}") from exc
        return cls(order)


@dataclass(frozen=True)
class Profile:
    """One ranking per voter, all over the same alternative set."""

    voters: tuple[Ranking, ...]

    def __post_init__(self) -> None:
        if not self.voters:
            raise ValueError("a profile needs at least one voter")
        k = self.voters[0].k
        if any(r.k != k for r in self.voters):
            raise ValueError("all rankings in a profile must cover the same alternatives")

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def k(self) -> int:
        return self.voters[0].k

    def to_text(self) -> str:
        return ",".join(r.to_text() for r in self.voters)

    @classmethod
    def from_text(cls, text: str) -> "Profile":
        return cls(tuple(Ranking.from_text(part) for part in text.split(",")))


def _check_alternative(alt: int, k: int) -> None:
    if not 0 <= alt < k:
        raise ValueError(f"alternative {alt} out of range for k={k}")


def pref_sign(r: Ranking, a: int, b: int) -> int:
    """+1 if ``r`` ranks ``a`` above ``b``, -1 otherwise."""
    if a == b:
        raise ValueError("pref_sign needs two distinct alternatives")
    _check_alternative(a, r.k)
    _check_alternative(b, r.k)
    return 1 if r.rank[a] < r.rank[b] else -1


def pairwise_vector(p: Profile, a: int, b: int) -> SignVector:
    """Per-voter signs of ``a`` versus ``b``."""
    return tuple(pref_sign(r, a, b) for r in p.voters)


def reverse(r: Ranking) -> Ranking:
    """The ranking read bottom-up; negates every pairwise sign."""
    return Ranking(tuple(reversed(r.order)))


def restrict_ranking(r: Ranking, alts: Iterable[int]) -> Ranking:
    """The induced ranking on a subset, re-indexed to 0..|subset|-1 by ascending label."""
    subset = sorted(set(alts))
    if not subset:
        raise ValueError("cannot restrict to an empty alternative set")
    for alt in subset:
        _check_alternative(alt, r.k)
    new_index = {alt: i for i, alt in enumerate(subset)}
    keep = set(subset)
    return Ranking(tuple(new_index[alt] for alt in r.order if alt in keep))


def restrict_profile(p: Profile, alts: Iterable[int]) -> Profile:
    subset = sorted(set(alts))
    return Profile(tuple(restrict_ranking(r, subset) for r in p.voters))


def triple_encode(r: Ranking, a: int, b: int, c: int) -> tuple[int, int, int]:
    """The cyclically oriented sign triple (a-vs-b, b-vs-c, c-vs-a) of one ranking.

    Never equals (+1,+1,+1) or (-1,-1,-1): a strict ranking cannot cycle.
    """
    if len({a, b, c}) != 3:
        raise ValueError("triple_encode needs three distinct alternatives")
    return (pref_sign(r, a, b), pref_sign(r, b, c), pref_sign(r, c, a))


def triple_decode(s_ab: int, s_bc: int, s_ca: int, a: int = 0, b: int = 1, c: int = 2) -> tuple[int, int, int]:
    """Invert :func:`triple_encode`: the unique ordering of (a, b, c) with these signs.

    Returns the three labels from most to least preferred.  Raises
    :class:`NonRealizableTripleError` for the two constant sign triples,
    which correspond to cyclic (non-transitive) outcomes.
    """
    for s in (s_ab, s_bc, s_ca):
        if s not in (1, -1):
            raise ValueError(f"signs must be +1 or -1, got {s!r}")
    if len({a, b, c}) != 3:
        raise ValueError("triple_decode needs three distinct alternatives")
    if s_ab == s_bc == s_ca:
        raise NonRealizableTripleError(
            f"sign triple ({s_ab},{s_bc},{s_ca}) is cyclic and matches no strict ranking"
        )
    wins = {
        a: (s_ab == 1) + (s_ca == -1),
        b: (s_ab == -1) + (s_bc == 1),
        c: (s_bc == -1) + (s_ca == 1),
    }
    top, mid, bottom = sorted((a, b, c), key=lambda alt: -wins[alt])
    return (top, mid, bottom)


def ranking_index(r: Ranking) -> int:
    """Lehmer-code index of a ranking: identity -> 0, full reversal -> k!-1."""
    order = r.order
    k = len(order)
    index = 0
    for i, alt in enumerate(order):
        smaller_later = sum(1 for other in order[i + 1 :] if other < alt)
        index += smaller_later * math.factorial(k - 1 - i)
    return index


def ranking_from_index(index: int, k: int) -> Ranking:
    """Inverse of :func:`ranking_index` for ``0 <= index < k!``."""
    if not 0 <= index < math.factorial(k):
        raise ValueError(f"ranking index {index} out of range for k={k}")
    remaining = list(range(k))
    order = []
    for i in range(k):
        digit, index = divmod(index, math.factorial(k - 1 - i))
        order.append(remaining.pop(digit))
    return Ranking(tuple(order))


def all_rankings(k: int) -> Iterator[Ranking]:
    """All k! rankings in Lehmer-index order."""
    for order in itertools.permutations(range(k)):
        yield Ranking(order)


def pack_signs(signs: Iterable[int]) -> int:
    """Pack a sign vector into an integer index; voter 0 is the least significant bit."""
    index = 0
    for i, s in enumerate(signs):
        if s == 1:
            index |= 1 << i
        elif s != -1:
            raise ValueError(f"signs must be +1 or -1, got {s!r}")
    return index


def unpack_signs(index: int, n: int) -> SignVector:
    if not 0 <= index < (1 << n):
        raise ValueError(f"packed index {index} out of range for n={n}")
    return tuple(1 if (index >> i) & 1 else -1 for i in range(n))


def profile_index(p: Profile) -> int:
    """Mixed-radix index of a profile, voter 0 in the least significant digit."""
    base = math.factorial(p.k)
    index = 0
    for i, r in enumerate(p.voters):
        index += ranking_index(r) * base**i
    return index


def profile_from_index(index: int, n: int, k: int) -> Profile:
    base = math.factorial(k)
    if not 0 <= index < base**n:
        raise ValueError(f"profile index {index} out of range for n={n}, k={k}")
    voters = []
    for _ in range(n):
        index, digit = divmod(index, base)
        voters.append(ranking_from_index(digit, k))
    return Profile(tuple(voters))


def all_profiles(n: int, k: int) -> Iterator[Profile]:
    """All (k!)^n profiles in index order."""
    rankings = list(all_rankings(k))
    # itertools.product cycles its last slot fastest; voter 0 must be fastest.
    for combo in itertools.product(rankings, repeat=n):
        yield Profile(tuple(reversed(combo)))


def pair_index(a: int, b: int, k: int) -> int:
    """Position of the unordered pair (a, b), a < b, in lexicographic pair order."""
    if not 0 <= a < b < k:
        raise ValueError(f"need 0 <= a < b < k, got a={a}, b={b}, k={k}")
    return a * k - a * (a + 1) // 2 + (b - a - 1)


def all_pairs(k: int) -> Iterator[tuple[int, int]]:
    return itertools.combinations(range(k), 2)


def num_pairs(k: int) -> int:
    return k * (k - 1) // 2


@dataclass(frozen=True)
class Tournament:
    """A complete antisymmetric relation: one direction per unordered pair.

    ``signs[pair_index(a, b, k)]`` is +1 when a beats b.  Transitive iff it
    contains no directed 3-cycle, in which case it is a strict ranking.
    """

    k: int
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != num_pairs(self.k):
            raise ValueError(f"expected {num_pairs(self.k)} pair directions, got {len(self.signs)}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("tournament directions must be +1 or -1")

    def prefers(self, a: int, b: int) -> bool:
        if a == b:
            raise ValueError("a tournament compares distinct alternatives")
        if a < b:
            return self.signs[pair_index(a, b, self.k)] == 1
        return self.signs[pair_index(b, a, self.k)] == -1

    def wins(self, a: int) -> int:
        return sum(1 for b in range(self.k) if b != a and self.prefers(a, b))

    def find_three_cycle(self) -> tuple[int, int, int] | None:
        """The lexicographically first directed 3-cycle (x, y, z) with x->y->z->x, if any."""
        for a, b, c in itertools.combinations(range(self.k), 3):
            if self.prefers(a, b) and self.prefers(b, c) and self.prefers(c, a):
                return (a, b, c)
            if self.prefers(a, c) and self.prefers(c, b) and self.prefers(b, a):
                return (a, c, b)
        return None

    @property
    def is_transitive(self) -> bool:
        return self.find_three_cycle() is None

    def to_ranking(self) -> Ranking:
        """The ranking this tournament spells out; fails if it has a cycle."""
        win_counts = [self.wins(a) for a in range(self.k)]
        if sorted(win_counts) != list(range(self.k)):
            raise ValueError("tournament is not transitive, no ranking exists")
        return Ranking(tuple(sorted(range(self.k), key=lambda a: -win_counts[a])))

    @classmethod
    def from_ranking(cls, r: Ranking) -> "Tournament":
        return cls(r.k, tuple(pref_sign(r, a, b) for a, b in all_pairs(r.k)))
