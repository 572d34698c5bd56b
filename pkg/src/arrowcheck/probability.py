"""Paradox probability under impartial culture, and distance to the paradox-free family.

Impartial culture draws every voter's ranking independently and uniformly.
The exact mode enumerates the whole profile space and reports a fraction
over (k!)^n; the sampled mode draws from numpy's default PCG64 generator,
so a (seed, sample count) pair always reproduces the same estimate, and
every sampled result records its seed.  Distances are measured against the
finite paradox-free family of constant constitutions and the 2n signed
dictators, as the normalized fraction of differing (profile, pair) outcome
cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constitution import IiaConstitution
from .errors import DEFAULT_CAP
from .rankings import Ranking, all_rankings, num_pairs
from . import scan

SIMPLE_FAMILY = "constants-and-dictators"


@dataclass(frozen=True)
class ParadoxEstimate:
    """Probability that the outcome contains a 3-cycle.

    Exact mode keeps the raw count over the (k!)^n profiles so the fraction
    serializes with that denominator; sampled mode records its seed.
    """

    mode: str  # "exact" | "sampled"
    hits: int
    trials: int
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "sampled"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 <= self.hits <= self.trials:
            raise ValueError("hit count must lie in 0..trials")
        if (self.seed is None) != (self.mode == "exact"):
            raise ValueError("sampled estimates carry a seed, exact ones do not")

    @property
    def probability(self) -> Fraction | float:
        if self.mode == "exact":
            return Fraction(self.hits, self.trials)
        return self.hits / self.trials

    @property
    def standard_error(self) -> float | None:
        if self.mode == "exact":
            return None
        p = self.hits / self.trials
        return math.sqrt(p * (1.0 - p) / self.trials)

    def to_text(self) -> str:
        if self.mode == "exact":
            return f"{self.hits}/{self.trials}"
        return format(self.hits / self.trials, "g")


def exact_paradox_probability(C: IiaConstitution, cap: int = DEFAULT_CAP) -> ParadoxEstimate:
    """Exact fraction of profiles with a cyclic outcome."""
    total = scan.ensure_within_cap(C.n, C.k, cap)
    hits = scan.count_cyclic_profiles(C, cap)
    return ParadoxEstimate("exact", hits, total)


def mc_paradox_probability(C: IiaConstitution, samples: int, seed: int) -> ParadoxEstimate:
    """Monte Carlo estimate over seeded impartial-culture draws."""
    if samples < 1:
        raise ValueError("need at least one sample")
    hits = scan.count_cyclic_samples(C, samples, seed)
    return ParadoxEstimate("sampled", hits, samples, seed=seed)


@dataclass(frozen=True)
class SimpleFamilyDistance:
    """Distance from a constitution to its nearest paradox-free family member.

    The family is the k! constant constitutions plus the 2n signed
    dictators; the distance is the fraction of (profile, pair) cells on
    which the outcomes differ.
    """

    mode: str  # "exact" | "sampled"
    differing: int
    cells: int
    nearest_kind: str  # "constant" | "dictator"
    nearest_ranking: Ranking | None = None
    nearest_voter: int | None = None
    nearest_sign: int | None = None
    seed: int | None = None
    family: str = SIMPLE_FAMILY

    @property
    def value(self) -> Fraction | float:
        if self.mode == "exact":
            return Fraction(self.differing, self.cells)
        return self.differing / self.cells

    def nearest_text(self) -> str:
        if self.nearest_kind == "constant":
            return f"constant {self.nearest_ranking.to_text()}"
        return f"dictator voter={self.nearest_voter} sign={'+1' if self.nearest_sign == 1 else '-1'}"

    def to_text(self) -> str:
        if self.mode == "exact":
            return f"{self.differing}/{self.cells}"
        return format(self.differing / self.cells, "g")


def _family_members(n: int, k: int) -> list[tuple]:
    members: list[tuple] = [("constant", ri) for ri in range(math.factorial(k))]
    for voter in range(n):
        for sign in (1, -1):
            members.append(("dictator", voter, sign))
    return members


def _member_values(member: tuple, packed: np.ndarray, bits: np.ndarray) -> np.ndarray:
    if member[0] == "constant":
        return bits[member[1]][:, None]
    _, voter, sign = member
    values = ((packed >> voter) & 1).astype(np.uint8)
    return values if sign == 1 else 1 - values


def distance_to_simple_family(
    C: IiaConstitution,
    cap: int = DEFAULT_CAP,
    samples: int | None = None,
    seed: int | None = None,
) -> SimpleFamilyDistance:
    """Minimum outcome disagreement with any constant constitution or dictator.

    Exact over the whole profile space within the cap; pass ``samples`` and
    ``seed`` for the seeded sampled mode instead.
    """
    members = _family_members(C.n, C.k)
    tables01 = scan.table_matrix(C)
    bits = scan.pair_bit_matrix(C.k)
    diffs = np.zeros(len(members), dtype=np.int64)

    if samples is None:
        total = scan.ensure_within_cap(C.n, C.k, cap)
        chunks = scan.iter_packed(C.n, C.k)
        cells = total * num_pairs(C.k)
        mode = "exact"
    else:
        if seed is None:
            raise ValueError("sampled distance needs a seed")
        if samples < 1:
            raise ValueError("need at least one sample")
        chunks = (
            (0, scan.packed_for_ranking_indices(rows, C.k))
            for rows in scan.sample_ranking_indices(C.n, C.k, samples, seed)
        )
        cells = samples * num_pairs(C.k)
        mode = "sampled"

    for _, packed in chunks:
        values = scan.pair_values(tables01, packed)
        for mi, member in enumerate(members):
            diffs[mi] += int(np.count_nonzero(values != _member_values(member, packed, bits)))

    best = int(np.argmin(diffs))
    member = members[best]
    if member[0] == "constant":
        ranking = list(all_rankings(C.k))[member[1]]
        return SimpleFamilyDistance(
            mode, int(diffs[best]), cells, "constant", nearest_ranking=ranking, seed=seed
        )
    return SimpleFamilyDistance(
        mode,
        int(diffs[best]),
        cells,
        "dictator",
        nearest_voter=member[1],
        nearest_sign=member[2],
        seed=seed,
    )
