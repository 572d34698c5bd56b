"""Normal-form classification of transitive IIA constitutions.

Every transitive IIA constitution decomposes into an ordered partition of
the alternatives: blocks are totally ordered by constant cross-block
preferences, blocks of three or more alternatives copy (or reverse) a
single voter, and two-alternative blocks carry an arbitrary non-constant
table.  ``classify`` recovers that structure or refutes transitivity with
a concrete cyclic profile; ``generate`` is its inverse.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .constitution import (
    IiaConstitution,
    PairwiseTable,
    eval_iia,
    oriented_table,
)
from .errors import CapExceededError, DEFAULT_CAP, NotTransitiveError
from .pivotal import DEFAULT_SAMPLES, cyclic_triple_witness, projection_form
from .rankings import (
    Profile,
    Ranking,
    all_pairs,
    all_profiles,
    num_pairs,
    reverse,
)


@dataclass(frozen=True)
class BlockDescriptor:
    """One block of the ordered partition and how the constitution acts inside it."""

    alternatives: frozenset[int]
    kind: str
    voter: int | None = None
    sign: int | None = None
    table: PairwiseTable | None = None

    def __post_init__(self) -> None:
        size = len(self.alternatives)
        if self.kind == "singleton":
            if size != 1 or self.voter is not None or self.sign is not None or self.table is not None:
                raise ValueError("a singleton block is one alternative with no parameters")
        elif self.kind == "free-pair":
            if size != 2 or self.table is None or self.voter is not None or self.sign is not None:
                raise ValueError("a free-pair block is two alternatives with a table")
            if self.table.is_constant:
                raise ValueError("a free-pair table must be non-constant")
        elif self.kind == "dictator":
            if size < 3 or self.voter is None or self.sign not in (1, -1) or self.table is not None:
                raise ValueError("a dictator block needs >= 3 alternatives, a voter, and a sign")
            if self.voter < 0:
                raise ValueError("dictator voter must be non-negative")
        else:
            raise ValueError(f"unknown block kind {self.kind!r}")


@dataclass(frozen=True)
class BlockStructure:
    """An ordered partition, top block first, with per-block descriptors."""

    n: int
    blocks: tuple[BlockDescriptor, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one voter")
        if not self.blocks:
            raise ValueError("need at least one block")
        seen: set[int] = set()
        for block in self.blocks:
            if block.alternatives & seen:
                raise ValueError("blocks must be disjoint")
            seen |= block.alternatives
        if seen != set(range(len(seen))):
            raise ValueError(f"blocks must partition 0..k-1, got {sorted(seen)}")
        for block in self.blocks:
            if block.kind == "free-pair" and block.table.n != self.n:
                raise ValueError("free-pair table voter count differs from the structure's")
            if block.kind == "dictator" and block.voter >= self.n:
                raise ValueError(f"dictator voter {block.voter} out of range for n={self.n}")

    @property
    def k(self) -> int:
        return sum(len(block.alternatives) for block in self.blocks)

    def to_text(self) -> str:
        lines = [f"n = {self.n}", f"k = {self.k}"]
        for position, block in enumerate(self.blocks, start=1):
            alts = ",".join(str(a) for a in sorted(block.alternatives))
            line = f"block {position}: alternatives={{{alts}}} kind={block.kind}"
            if block.kind == "dictator":
                line += f" voter={block.voter} sign={'+1' if block.sign == 1 else '-1'}"
            elif block.kind == "free-pair":
                line += f" table={block.table.to_bitstring()}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BlockStructure":
        n: int | None = None
        k: int | None = None
        blocks: list[BlockDescriptor] = []
        block_re = re.compile(r"^block\s+(\d+):\s*(.*)$")
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key = line.partition("=")[0].strip()
            if key == "n":
                n = int(line.partition("=")[2])
                continue
            if key == "k":
                k = int(line.partition("=")[2])
                continue
            match = block_re.match(line)
            if not match:
                raise ValueError(f"malformed block line {line!r}")
            if int(match.group(1)) != len(blocks) + 1:
                raise ValueError("blocks must be numbered consecutively from 1")
            fields = {}
            for token in match.group(2).split():
                field, _, value = token.partition("=")
                fields[field] = value
            alts = frozenset(int(x) for x in fields["alternatives"].strip("{}").split(","))
            kind = fields["kind"]
            if kind == "dictator":
                blocks.append(
                    BlockDescriptor(alts, "dictator", voter=int(fields["voter"]), sign=int(fields["sign"]))
                )
            elif kind == "free-pair":
                blocks.append(
                    BlockDescriptor(alts, "free-pair", table=PairwiseTable.from_bitstring(fields["table"]))
                )
            else:
                blocks.append(BlockDescriptor(alts, kind))
        if n is None:
            raise ValueError("missing 'n = ...' line")
        structure = cls(n, tuple(blocks))
        if k is not None and structure.k != k:
            raise ValueError(f"declared k={k} but blocks cover {structure.k} alternatives")
        return structure


@dataclass(frozen=True)
class FailureCertificate:
    """Constructive refutation of transitivity.

    ``cyclic_profile`` always re-evaluates to an outcome with a 3-cycle.
    When two cross-block pairs disagree about the block order, the
    certificate also names the two conflicting always-won pairs plus two
    profiles on which both directions can be read off.
    """

    reason: str  # "not-transitive" or "inconsistent-cross-block"
    cyclic_profile: Profile
    conflicting_pairs: tuple[tuple[int, int], tuple[int, int]] | None = None
    demo_profiles: tuple[Profile, Profile] | None = None


ClassifyResult = Union[BlockStructure, FailureCertificate]


def _find_cyclic_profile(C: IiaConstitution, cap: int, samples: int, seed: int) -> Profile:
    for a, b, c in itertools.combinations(range(C.k), 3):
        witness = cyclic_triple_witness(C, a, b, c, cap=cap, samples=samples, seed=seed)
        if witness is not None:
            return witness
    raise RuntimeError("structural classification failed yet no triple admits a cycle")


def _identity_profile(C: IiaConstitution) -> Profile:
    return Profile(tuple(Ranking(tuple(range(C.k))) for _ in range(C.n)))


def _components(C: IiaConstitution) -> tuple[list[list[int]], list[int]]:
    """Connected components of the graph joining pairs with non-constant tables."""
    parent = list(range(C.k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in all_pairs(C.k):
        if not C.table_for(a, b).is_constant:
            parent[find(a)] = find(b)
    members: dict[int, list[int]] = {}
    for alt in range(C.k):
        members.setdefault(find(alt), []).append(alt)
    components = sorted(members.values(), key=lambda group: group[0])
    component_of = [0] * C.k
    for index, group in enumerate(components):
        for alt in group:
            component_of[alt] = index
    return components, component_of


def classify(
    C: IiaConstitution,
    cap: int = DEFAULT_CAP,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ClassifyResult:
    """Recover the ordered block structure, or certify non-transitivity.

    Blocks are the connected components of the non-constant-pair graph;
    the cross-block constants must then agree on a total order of blocks,
    and every block of size >= 3 must copy (or reverse) one voter on all
    its internal pairs.  Any failed check comes with a cyclic profile.
    """
    components, component_of = _components(C)

    # Cross-component directions must be consistent pairwise.
    direction: dict[tuple[int, int], int] = {}
    first_pair: dict[tuple[int, int], tuple[int, int]] = {}
    for a, b in all_pairs(C.k):
        ca, cb = component_of[a], component_of[b]
        if ca == cb:
            continue
        sign = C.table_for(a, b).value_at(0)
        key = (min(ca, cb), max(ca, cb))
        lower_over_higher = sign if ca < cb else -sign
        if key not in direction:
            direction[key] = lower_over_higher
            first_pair[key] = (a, b) if sign == 1 else (b, a)
        elif direction[key] != lower_over_higher:
            winner_loser = (a, b) if sign == 1 else (b, a)
            cyclic = _find_cyclic_profile(C, cap, samples, seed)
            identity = _identity_profile(C)
            reversed_profile = Profile(tuple(reverse(r) for r in identity.voters))
            return FailureCertificate(
                reason="inconsistent-cross-block",
                cyclic_profile=cyclic,
                conflicting_pairs=(first_pair[key], winner_loser),
                demo_profiles=(identity, reversed_profile),
            )

    # The component order must be a total order (no cycles among blocks).
    r = len(components)
    wins = [0] * r
    for (lo, hi), lower_over_higher in direction.items():
        if lower_over_higher == 1:
            wins[lo] += 1
        else:
            wins[hi] += 1
    if sorted(wins) != list(range(r)):
        return FailureCertificate(
            reason="not-transitive",
            cyclic_profile=_find_cyclic_profile(C, cap, samples, seed),
        )
    order = sorted(range(r), key=lambda ci: -wins[ci])

    # Per-block descriptors; size >= 3 must be a signed single-voter copy.
    blocks: list[BlockDescriptor] = []
    for ci in order:
        group = components[ci]
        if len(group) == 1:
            blocks.append(BlockDescriptor(frozenset(group), "singleton"))
        elif len(group) == 2:
            blocks.append(
                BlockDescriptor(
                    frozenset(group), "free-pair", table=C.table_for(group[0], group[1])
                )
            )
        else:
            forms = {
                projection_form(C.table_for(a, b))
                for a, b in itertools.combinations(group, 2)
            }
            if len(forms) != 1 or None in forms:
                return FailureCertificate(
                    reason="not-transitive",
                    cyclic_profile=_find_cyclic_profile(C, cap, samples, seed),
                )
            voter, sign = forms.pop()
            blocks.append(BlockDescriptor(frozenset(group), "dictator", voter=voter, sign=sign))
    return BlockStructure(C.n, tuple(blocks))


def generate(blueprint: BlockStructure) -> IiaConstitution:
    """Build the constitution a block structure describes; classify inverts it."""
    block_of: dict[int, int] = {}
    for index, block in enumerate(blueprint.blocks):
        for alt in block.alternatives:
            block_of[alt] = index
    tables = []
    for a, b in all_pairs(blueprint.k):
        ia, ib = block_of[a], block_of[b]
        if ia != ib:
            tables.append(PairwiseTable.constant(blueprint.n, 1 if ia < ib else -1))
        else:
            block = blueprint.blocks[ia]
            if block.kind == "dictator":
                tables.append(PairwiseTable.projection(blueprint.n, block.voter, block.sign))
            else:
                tables.append(block.table)
    return IiaConstitution(blueprint.n, blueprint.k, tuple(tables))


@dataclass(frozen=True)
class SingleVoterForm:
    """Normal form of a transitive single-voter constitution on three alternatives."""

    kind: str  # "constant" | "pinned" | "identity" | "reversal"
    ranking: Ranking | None = None
    alternative: int | None = None
    position: str | None = None  # "top" or "bottom" for the pinned alternative
    sign: int | None = None  # the free pair follows (+1) or opposes (-1) the voter


def single_voter_classify(C: IiaConstitution) -> SingleVoterForm:
    """Sort an n=1, k=3 constitution into exactly one of its four transitive forms.

    Raises :class:`NotTransitiveError` (with a cyclic profile) otherwise.
    """
    if C.n != 1 or C.k != 3:
        raise ValueError("single-voter classification needs n=1 and k=3")
    for p in all_profiles(1, 3):
        if eval_iia(C, p).find_three_cycle() is not None:
            raise NotTransitiveError(p)
    if all(t.is_constant for t in C.tables):
        outcome = eval_iia(C, Profile((Ranking((0, 1, 2)),)))
        return SingleVoterForm("constant", ranking=outcome.to_ranking())
    identity_bits = PairwiseTable.projection(1, 0, 1).bits
    reversal_bits = PairwiseTable.projection(1, 0, -1).bits
    if all(t.bits == identity_bits for t in C.tables):
        return SingleVoterForm("identity")
    if all(t.bits == reversal_bits for t in C.tables):
        return SingleVoterForm("reversal")
    nonconstant = [(a, b) for a, b in all_pairs(3) if not C.table_for(a, b).is_constant]
    if len(nonconstant) != 1:
        raise RuntimeError("transitive single-voter constitution outside the four normal forms")
    a, b = nonconstant[0]
    (c,) = set(range(3)) - {a, b}
    _, sign = projection_form(C.table_for(a, b))
    c_over_a = oriented_table(C, c, a).value_at(0) == 1
    c_over_b = oriented_table(C, c, b).value_at(0) == 1
    if c_over_a != c_over_b:
        raise RuntimeError("pinned alternative is neither always top nor always bottom")
    return SingleVoterForm(
        "pinned", alternative=c, position="top" if c_over_a else "bottom", sign=sign
    )


def enumerate_iia(n: int, k: int, cap: int = DEFAULT_CAP) -> Iterator[IiaConstitution]:
    """Every IIA constitution at (n, k), exactly once, in lexicographic table order.

    The table of the first pair is the most significant digit; within a
    pair, tables run through their truth-table integers ascending.
    """
    pairs = num_pairs(k)
    per_pair = 1 << (1 << n)
    total = per_pair**pairs
    if total > cap:
        raise CapExceededError(total, cap)

    def generator() -> Iterator[IiaConstitution]:
        for combo in itertools.product(range(per_pair), repeat=pairs):
            yield IiaConstitution(n, k, tuple(PairwiseTable(n, bits) for bits in combo))

    return generator()


def count_characterized(n: int, k: int) -> int:
    """How many constitutions at (n, k) have a block-structure normal form.

    Sums over ordered partitions of the alternatives: singleton blocks count
    1, pair blocks count the non-constant tables, larger blocks count the 2n
    signed single-voter copies.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    pair_weight = (1 << (1 << n)) - 2
    big_weight = 2 * n

    @lru_cache(maxsize=None)
    def count(remaining: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for size in range(1, remaining + 1):
            if size == 1:
                weight = 1
            elif size == 2:
                weight = pair_weight
            else:
                weight = big_weight
            total += math.comb(remaining, size) * weight * count(remaining - size)
        return total

    return count(k)
