"""Pure-Python reference implementations used as independent oracles.

Everything here goes through eval_iia / Tournament only: no vectorized
scans, no structural classification, so the fast paths can be checked
against these on small cases.
"""

from __future__ import annotations

import itertools

from arrowcheck import IiaConstitution, all_pairs, all_profiles, all_rankings, eval_iia
from arrowcheck.characterization import BlockDescriptor, BlockStructure
from arrowcheck.constitution import PairwiseTable


def brute_cyclic_profiles(C: IiaConstitution) -> tuple[int, int | None]:
    """(number of profiles with a cyclic outcome, first such profile index)."""
    count = 0
    first = None
    for index, p in enumerate(all_profiles(C.n, C.k)):
        if eval_iia(C, p).find_three_cycle() is not None:
            count += 1
            if first is None:
                first = index
    return count, first


def brute_transitive(C: IiaConstitution) -> bool:
    return all(
        eval_iia(C, p).find_three_cycle() is None for p in all_profiles(C.n, C.k)
    )


def brute_ni(C: IiaConstitution) -> bool:
    achieved = set()
    for p in all_profiles(C.n, C.k):
        outcome = eval_iia(C, p)
        if outcome.find_three_cycle() is None:
            achieved.add(outcome.to_ranking())
    return len(achieved) == len(list(all_rankings(C.k)))


def brute_wni(C: IiaConstitution) -> bool:
    needed = {(a, b) for a in range(C.k) for b in range(C.k) if a != b}
    for p in all_profiles(C.n, C.k):
        outcome = eval_iia(C, p)
        needed -= {(a, b) for (a, b) in list(needed) if outcome.prefers(a, b)}
        if not needed:
            return True
    return False


def brute_nd(C: IiaConstitution) -> bool:
    always_top = set(range(C.k))
    always_bottom = set(range(C.k))
    for p in all_profiles(C.n, C.k):
        outcome = eval_iia(C, p)
        always_top = {a for a in always_top if all(outcome.prefers(a, b) for b in range(C.k) if b != a)}
        always_bottom = {a for a in always_bottom if all(outcome.prefers(b, a) for b in range(C.k) if b != a)}
        if not always_top and not always_bottom:
            return True
    return not always_top and not always_bottom


def _ordered_partitions(alternatives: tuple[int, ...]):
    """Every ordered partition of a label set into nonempty blocks, each exactly once."""
    if not alternatives:
        yield ()
        return
    for size in range(1, len(alternatives) + 1):
        for first in itertools.combinations(alternatives, size):
            rest = tuple(x for x in alternatives if x not in first)
            for tail in _ordered_partitions(rest):
                yield (first,) + tail


def enumerate_block_structures(n: int, k: int):
    """Every valid block structure at (n, k), by direct construction."""
    table_count = 1 << (1 << n)
    for partition in _ordered_partitions(tuple(range(k))):
        options = []
        for block in partition:
            if len(block) == 1:
                options.append([BlockDescriptor(frozenset(block), "singleton")])
            elif len(block) == 2:
                options.append(
                    [
                        BlockDescriptor(frozenset(block), "free-pair", table=PairwiseTable(n, bits))
                        for bits in range(1, table_count - 1)
                    ]
                )
            else:
                options.append(
                    [
                        BlockDescriptor(frozenset(block), "dictator", voter=voter, sign=sign)
                        for voter in range(n)
                        for sign in (1, -1)
                    ]
                )
        for blocks in itertools.product(*options):
            yield BlockStructure(n, tuple(blocks))
