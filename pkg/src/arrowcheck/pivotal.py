"""Pivotal-voter analysis and constructive paradox witnesses.

A voter is pivotal for a pairwise table when flipping their sign changes
the outcome at some input.  Two distinct pivots on two overlapping pair
functions always yield a non-transitive profile via the Barbera
construction; when a triple has no such pivot pair, every non-constant
table in it follows a single voter, and a cyclic profile (when one exists)
is found by scanning the triple's restricted profiles.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from .constitution import IiaConstitution, PairwiseTable, oriented_table
from .errors import DEFAULT_CAP, IndeterminateWitnessError
from .rankings import (
    Profile,
    Ranking,
    all_rankings,
    pack_signs,
    profile_from_index,
    ranking_from_index,
    triple_decode,
    unpack_signs,
)
from . import scan

DEFAULT_SAMPLES = 200_000


@lru_cache(maxsize=None)
def _low_side_mask(n: int, voter: int) -> int:
    """Bitmask over packed inputs whose bit `voter` is clear."""
    stride = 1 << voter
    block = (1 << stride) - 1
    mask = 0
    shift = 0
    size = 1 << n
    while shift < size:
        mask |= block << shift
        shift += 2 * stride
    return mask


def pivotal_set(f: PairwiseTable) -> frozenset[int]:
    """Voters whose single-sign flip changes f somewhere; empty iff f is constant."""
    pivots = set()
    for voter in range(f.n):
        stride = 1 << voter
        if (f.bits ^ (f.bits >> stride)) & _low_side_mask(f.n, voter):
            pivots.add(voter)
    return frozenset(pivots)


def first_flip_base(f: PairwiseTable, voter: int) -> int:
    """Lowest packed input with bit `voter` clear where flipping that voter changes f."""
    stride = 1 << voter
    diff = (f.bits ^ (f.bits >> stride)) & _low_side_mask(f.n, voter)
    if diff == 0:
        raise ValueError(f"voter {voter} is not pivotal")
    return (diff & -diff).bit_length() - 1


def projection_form(f: PairwiseTable) -> tuple[int, int] | None:
    """(voter, sign) when f equals x -> sign * x_voter, else None."""
    pivots = pivotal_set(f)
    if len(pivots) != 1:
        return None
    (voter,) = pivots
    sign = f.value_at(1 << voter)
    if f.bits != PairwiseTable.projection(f.n, voter, sign).bits:
        return None
    return (voter, sign)


def barbera_witness(
    f_ab: PairwiseTable, f_bc: PairwiseTable, f_ca: PairwiseTable, i: int, j: int
) -> Profile:
    """A three-alternative profile on which the oriented outcome triple is constant.

    The tables are the cyclically oriented choice functions of a triple
    (a, b, c); voter ``i`` must be pivotal for ``f_ab`` and a different
    voter ``j`` for ``f_bc``.  Starting from a flip point of each:

    * fix x off coordinate i and y off coordinate j,
    * let z_i = -y_i and z_m = -x_m for every other voter m,
    * aim both free coordinates at the target t = f_ca(z).

    Per voter, (x_m, y_m, z_m) then never forms a constant triple, so each
    decodes to a strict ranking, and the outcome is (t, t, t): a 3-cycle.
    """
    n = f_ab.n
    if f_bc.n != n or f_ca.n != n:
        raise ValueError("the three tables must share one voter count")
    if i == j:
        raise ValueError("the two pivotal voters must differ")
    if i not in pivotal_set(f_ab):
        raise ValueError(f"voter {i} is not pivotal for the a-over-b table")
    if j not in pivotal_set(f_bc):
        raise ValueError(f"voter {j} is not pivotal for the b-over-c table")

    base_x = first_flip_base(f_ab, i)
    base_y = first_flip_base(f_bc, j)
    x = list(unpack_signs(base_x, n))
    y = list(unpack_signs(base_y, n))
    z = [-y[m] if m == i else -x[m] for m in range(n)]

    t = f_ca(tuple(z))
    x[i] = -1 if f_ab.value_at(base_x) == t else 1
    y[j] = -1 if f_bc.value_at(base_y) == t else 1

    voters = tuple(Ranking(triple_decode(x[m], y[m], z[m])) for m in range(n))
    return Profile(voters)


def embed_triple_profile(p: Profile, triple: tuple[int, int, int], k: int) -> Profile:
    """Lift a 3-alternative profile to k alternatives.

    Labels (0, 1, 2) map onto ``triple``; every other alternative is placed
    below them in ascending index order, which cannot affect the triple's
    outcome under IIA.
    """
    rest = sorted(set(range(k)) - set(triple))
    voters = tuple(
        Ranking(tuple(triple[slot] for slot in r.order) + tuple(rest)) for r in p.voters
    )
    return Profile(voters)


def _distinct_pivot_rotation(
    tables: tuple[PairwiseTable, PairwiseTable, PairwiseTable],
) -> tuple[int, int, int] | None:
    """A rotation offset and pivot pair (r, i, j) with i pivotal for tables[r],
    j pivotal for tables[r+1], i != j; None when no such pair exists."""
    pivots = [sorted(pivotal_set(t)) for t in tables]
    for r in range(3):
        for i in pivots[r]:
            for j in pivots[(r + 1) % 3]:
                if i != j:
                    return (r, i, j)
    return None


def _triple_cycle_possible(
    tables: tuple[PairwiseTable, PairwiseTable, PairwiseTable],
) -> bool:
    """Exact verdict: can the cyclically oriented triple produce a constant outcome?

    With no distinct pivot pair every non-constant table follows one common
    voter, and the case split below is exhaustive.
    """
    if _distinct_pivot_rotation(tables) is not None:
        return True
    nonconstant = [t for t in tables if not t.is_constant]
    constants = [t.value_at(0) for t in tables if t.is_constant]
    if len(nonconstant) == 0:
        return constants[0] == constants[1] == constants[2]
    if len(nonconstant) == 1:
        # Aim the free table at t = shared constant; one exists iff they agree.
        return constants[0] == constants[1]
    if len(nonconstant) == 2:
        # Both follow the same voter on independent inputs; always alignable.
        return True
    forms = [projection_form(t) for t in tables]
    signs = {form[1] for form in forms}
    return len(signs) > 1


def triple_can_cycle(C: IiaConstitution, a: int, b: int, c: int) -> bool:
    """Whether some profile makes the (a, b, c) outcome a 3-cycle."""
    tables = (oriented_table(C, a, b), oriented_table(C, b, c), oriented_table(C, c, a))
    return _triple_cycle_possible(tables)


def _scan_triple_profiles(
    C: IiaConstitution,
    triple: tuple[int, int, int],
    cap: int,
    samples: int,
    seed: int,
) -> Profile | None:
    """Find a profile whose outcome cycles on ``triple`` by scanning its 6^n
    restricted assignments (others pinned below); sampled beyond the cap."""
    a, b, c = triple
    tables = (oriented_table(C, a, b), oriented_table(C, b, c), oriented_table(C, c, a))
    orders = list(all_rankings(3))
    n = C.n
    total = 6**n

    def outcome_is_cyclic(assignment: tuple[int, ...]) -> Profile | None:
        per_voter = [orders[digit] for digit in assignment]
        x = pack_signs(tuple(1 if r.prefers(0, 1) else -1 for r in per_voter))
        y = pack_signs(tuple(1 if r.prefers(1, 2) else -1 for r in per_voter))
        z = pack_signs(tuple(1 if r.prefers(2, 0) else -1 for r in per_voter))
        values = (tables[0].value_at(x), tables[1].value_at(y), tables[2].value_at(z))
        if values[0] == values[1] == values[2]:
            return embed_triple_profile(Profile(tuple(per_voter)), triple, C.k)
        return None

    if total <= cap:
        for index in range(total):
            assignment = []
            rem = index
            for _ in range(n):
                rem, digit = divmod(rem, 6)
                assignment.append(digit)
            found = outcome_is_cyclic(tuple(assignment))
            if found is not None:
                return found
        return None

    rng = random.Random(seed)
    for _ in range(samples):
        assignment = tuple(rng.randrange(6) for _ in range(n))
        found = outcome_is_cyclic(assignment)
        if found is not None:
            return found
    raise IndeterminateWitnessError(samples, seed)


def cyclic_triple_witness(
    C: IiaConstitution,
    a: int,
    b: int,
    c: int,
    cap: int = DEFAULT_CAP,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> Profile | None:
    """A profile (over all k alternatives) whose outcome cycles on (a, b, c).

    Returns None when the triple's tables admit no cyclic outcome.  Prefers
    the Barbera construction; otherwise scans the triple's restricted
    profiles.
    """
    triple = (a, b, c)
    tables = (oriented_table(C, a, b), oriented_table(C, b, c), oriented_table(C, c, a))
    rotation = _distinct_pivot_rotation(tables)
    if rotation is not None:
        r, i, j = rotation
        rotated_tables = (tables[r], tables[(r + 1) % 3], tables[(r + 2) % 3])
        rotated_labels = (triple[r], triple[(r + 1) % 3], triple[(r + 2) % 3])
        witness3 = barbera_witness(*rotated_tables, i, j)
        return embed_triple_profile(witness3, rotated_labels, C.k)
    if not _triple_cycle_possible(tables):
        return None
    return _scan_triple_profiles(C, triple, cap, samples, seed)


def _barbera_search(C: IiaConstitution) -> Profile | None:
    """First triple (lexicographic) with two distinct pivots, turned into a witness."""
    for a, b, c in itertools.combinations(range(C.k), 3):
        triple = (a, b, c)
        tables = (oriented_table(C, a, b), oriented_table(C, b, c), oriented_table(C, c, a))
        rotation = _distinct_pivot_rotation(tables)
        if rotation is None:
            continue
        r, i, j = rotation
        rotated_tables = (tables[r], tables[(r + 1) % 3], tables[(r + 2) % 3])
        rotated_labels = (triple[r], triple[(r + 1) % 3], triple[(r + 2) % 3])
        witness3 = barbera_witness(*rotated_tables, i, j)
        return embed_triple_profile(witness3, rotated_labels, C.k)
    return None


def paradox_witness(
    C: IiaConstitution,
    cap: int = DEFAULT_CAP,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> Profile | None:
    """A profile with a cyclic outcome, or None when the constitution is transitive.

    Search order: the Barbera construction over all triples, then an
    exhaustive profile scan when the space fits the cap (making the None
    answer exact), then seeded uniform sampling, which raises
    :class:`IndeterminateWitnessError` if it finds nothing.
    """
    if C.k >= 3:
        witness = _barbera_search(C)
        if witness is not None:
            return witness
    if scan.profile_space_size(C.n, C.k) <= cap:
        first = scan.first_cyclic_profile_index(C, cap)
        if first is None:
            return None
        return profile_from_index(first, C.n, C.k)
    tables01 = scan.table_matrix(C)
    drawn = 0
    for rows in scan.sample_ranking_indices(C.n, C.k, samples, seed):
        packed = scan.packed_for_ranking_indices(rows, C.k)
        mask = scan.cycle_mask(scan.pair_values(tables01, packed), C.k)
        hits = np.flatnonzero(mask)
        if hits.size:
            row = rows[int(hits[0])]
            return Profile(tuple(ranking_from_index(int(ri), C.k) for ri in row))
        drawn += rows.shape[0]
    raise IndeterminateWitnessError(drawn, seed)
