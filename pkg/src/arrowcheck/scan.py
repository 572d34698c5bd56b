"""Vectorized scans over the full profile space of a constitution.

For a fixed (n, k) every profile's packed pairwise sign vectors are
produced chunk by chunk as numpy arrays, so checking a constitution
against all (k!)^n profiles reduces to truth-table lookups.  Chunk
aggregation is associative throughout: results never depend on the chunk
size, and index ranges can be partitioned across workers deterministically.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import CapExceededError, DEFAULT_CAP
from .rankings import Tournament, all_pairs, all_rankings, num_pairs, pair_index
from .constitution import IiaConstitution

CHUNK = 1 << 16
SAMPLE_CHUNK = 1 << 18


@lru_cache(maxsize=None)
def pair_bit_matrix(k: int) -> np.ndarray:
    """uint8 matrix: entry [ranking index, pair index] is 1 iff a is preferred to b."""
    rankings = list(all_rankings(k))
    pairs = list(all_pairs(k))
    matrix = np.zeros((len(rankings), len(pairs)), dtype=np.uint8)
    for ri, r in enumerate(rankings):
        for pi, (a, b) in enumerate(pairs):
            matrix[ri, pi] = 1 if r.prefers(a, b) else 0
    return matrix


def profile_space_size(n: int, k: int) -> int:
    return math.factorial(k) ** n


def ensure_within_cap(n: int, k: int, cap: int = DEFAULT_CAP) -> int:
    total = profile_space_size(n, k)
    if total > cap:
        raise CapExceededError(total, cap)
    return total


def packed_for_ranking_indices(ranking_indices: np.ndarray, k: int) -> np.ndarray:
    """Packed pair sign indices for rows of ranking indices.

    ``ranking_indices`` has shape (m, n); the result has shape (num_pairs, m).
    """
    bits = pair_bit_matrix(k)
    m, n = ranking_indices.shape
    packed = np.zeros((num_pairs(k), m), dtype=np.int64)
    for voter in range(n):
        packed += bits[ranking_indices[:, voter]].T.astype(np.int64) << voter
    return packed


def iter_packed(n: int, k: int, chunk: int = CHUNK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (offset, packed) chunks covering every profile index in order."""
    total = profile_space_size(n, k)
    base = math.factorial(k)
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        indices = np.arange(lo, hi, dtype=np.int64)
        digits = np.empty((hi - lo, n), dtype=np.int64)
        rem = indices
        for voter in range(n):
            digits[:, voter] = rem % base
            rem = rem // base
        yield lo, packed_for_ranking_indices(digits, k)


def table_matrix(C: IiaConstitution) -> np.ndarray:
    """Truth tables as a (num_pairs, 2^n) uint8 matrix of 0/1 values."""
    size = 1 << C.n
    if not C.tables:  # k = 1 has no pairs
        return np.zeros((0, size), dtype=np.uint8)
    nbytes = max(1, size // 8)
    rows = []
    for table in C.tables:
        raw = np.frombuffer(table.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        rows.append(np.unpackbits(raw, bitorder="little")[:size])
    return np.stack(rows)


def pair_values(tables01: np.ndarray, packed: np.ndarray) -> np.ndarray:
    """Per-pair 0/1 outcome values for a chunk of packed inputs."""
    return tables01[np.arange(tables01.shape[0])[:, None], packed]


@lru_cache(maxsize=None)
def _triple_pair_indices(k: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (pair_index(a, b, k), pair_index(b, c, k), pair_index(a, c, k))
        for a, b, c in itertools.combinations(range(k), 3)
    )


def cycle_mask(values: np.ndarray, k: int) -> np.ndarray:
    """Boolean mask of profiles whose outcome contains a directed 3-cycle.

    A triple (a, b, c) cycles iff v_ab == v_bc and v_ab != v_ac.
    """
    mask = np.zeros(values.shape[1], dtype=bool)
    for i_ab, i_bc, i_ac in _triple_pair_indices(k):
        mask |= (values[i_ab] == values[i_bc]) & (values[i_ab] != values[i_ac])
    return mask


def count_cyclic_profiles(C: IiaConstitution, cap: int = DEFAULT_CAP) -> int:
    ensure_within_cap(C.n, C.k, cap)
    tables01 = table_matrix(C)
    count = 0
    for _, packed in iter_packed(C.n, C.k):
        count += int(np.count_nonzero(cycle_mask(pair_values(tables01, packed), C.k)))
    return count


def first_cyclic_profile_index(C: IiaConstitution, cap: int = DEFAULT_CAP) -> int | None:
    ensure_within_cap(C.n, C.k, cap)
    tables01 = table_matrix(C)
    for lo, packed in iter_packed(C.n, C.k):
        mask = cycle_mask(pair_values(tables01, packed), C.k)
        hits = np.flatnonzero(mask)
        if hits.size:
            return lo + int(hits[0])
    return None


def outcome_signatures(values: np.ndarray) -> np.ndarray:
    """Per-profile tournament signature: pair value bits packed by pair index."""
    signatures = np.zeros(values.shape[1], dtype=np.int64)
    for pi in range(values.shape[0]):
        signatures |= values[pi].astype(np.int64) << pi
    return signatures


@lru_cache(maxsize=None)
def ranking_signatures(k: int) -> dict[int, int]:
    """Signature of each transitive tournament, mapped to its ranking index."""
    result = {}
    for ri, r in enumerate(all_rankings(k)):
        signature = 0
        for pi, (a, b) in enumerate(all_pairs(k)):
            if r.prefers(a, b):
                signature |= 1 << pi
        result[signature] = ri
    return result


def achieved_outcomes(C: IiaConstitution, cap: int = DEFAULT_CAP) -> dict[int, int]:
    """Map from outcome signature to the first profile index producing it."""
    ensure_within_cap(C.n, C.k, cap)
    tables01 = table_matrix(C)
    achieved: dict[int, int] = {}
    for lo, packed in iter_packed(C.n, C.k):
        signatures = outcome_signatures(pair_values(tables01, packed))
        unique, first = np.unique(signatures, return_index=True)
        for sig, idx in zip(unique.tolist(), first.tolist()):
            if sig not in achieved:
                achieved[sig] = lo + idx
    return achieved


def pair_attainment(C: IiaConstitution, cap: int = DEFAULT_CAP) -> tuple[list[int | None], list[int | None]]:
    """First profile index where each canonical pair goes +1, and where it goes -1."""
    ensure_within_cap(C.n, C.k, cap)
    tables01 = table_matrix(C)
    pairs = num_pairs(C.k)
    first_pos: list[int | None] = [None] * pairs
    first_neg: list[int | None] = [None] * pairs
    for lo, packed in iter_packed(C.n, C.k):
        values = pair_values(tables01, packed)
        for pi in range(pairs):
            if first_pos[pi] is None:
                hits = np.flatnonzero(values[pi] == 1)
                if hits.size:
                    first_pos[pi] = lo + int(hits[0])
            if first_neg[pi] is None:
                hits = np.flatnonzero(values[pi] == 0)
                if hits.size:
                    first_neg[pi] = lo + int(hits[0])
        if all(i is not None for i in first_pos) and all(i is not None for i in first_neg):
            break
    return first_pos, first_neg


def win_counts(values: np.ndarray, k: int) -> np.ndarray:
    """Per-alternative win counts for each profile in the chunk, shape (k, m)."""
    wins = np.zeros((k, values.shape[1]), dtype=np.int16)
    for pi, (a, b) in enumerate(all_pairs(k)):
        wins[a] += values[pi]
        wins[b] += 1 - values[pi]
    return wins


def extremity_attainment(C: IiaConstitution, cap: int = DEFAULT_CAP) -> tuple[list[int | None], list[int | None]]:
    """First profile index where each alternative is not top, and not bottom.

    "Top" means beating all others in the outcome tournament.
    """
    ensure_within_cap(C.n, C.k, cap)
    tables01 = table_matrix(C)
    k = C.k
    first_not_top: list[int | None] = [None] * k
    first_not_bottom: list[int | None] = [None] * k
    for lo, packed in iter_packed(C.n, C.k):
        wins = win_counts(pair_values(tables01, packed), k)
        for a in range(k):
            if first_not_top[a] is None:
                hits = np.flatnonzero(wins[a] < k - 1)
                if hits.size:
                    first_not_top[a] = lo + int(hits[0])
            if first_not_bottom[a] is None:
                hits = np.flatnonzero(wins[a] > 0)
                if hits.size:
                    first_not_bottom[a] = lo + int(hits[0])
    return first_not_top, first_not_bottom


def tournament_from_signature(signature: int, k: int) -> Tournament:
    signs = tuple(1 if (signature >> pi) & 1 else -1 for pi in range(num_pairs(k)))
    return Tournament(k, signs)


def sample_ranking_indices(
    n: int, k: int, samples: int, seed: int, chunk: int = SAMPLE_CHUNK
) -> Iterator[np.ndarray]:
    """Seeded uniform ranking-index rows, shape (m, n) per chunk.

    The chunk size is a fixed internal constant so a seed always yields the
    same stream.
    """
    rng = np.random.default_rng(seed)
    base = math.factorial(k)
    remaining = samples
    while remaining > 0:
        m = min(chunk, remaining)
        yield rng.integers(0, base, size=(m, n), dtype=np.int64)
        remaining -= m


def count_cyclic_samples(C: IiaConstitution, samples: int, seed: int) -> int:
    tables01 = table_matrix(C)
    hits = 0
    for rows in sample_ranking_indices(C.n, C.k, samples, seed):
        packed = packed_for_ranking_indices(rows, C.k)
        hits += int(np.count_nonzero(cycle_mask(pair_values(tables01, packed), C.k)))
    return hits
