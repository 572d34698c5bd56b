"""Decidable property checkers for IIA constitutions.

Each checker returns a :class:`PropertyReport` carrying a witness where one
is meaningful: a cyclic profile for transitivity failures, a unanimous
profile for unanimity failures, achieving profiles for the existential
properties, the offending pair or alternative otherwise.  The universally
quantified checks enumerate the full profile space and refuse (with
:class:`CapExceededError`) beyond the cap rather than silently sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .constitution import IiaConstitution, PairwiseTable
from .errors import DEFAULT_CAP
from .rankings import (
    Profile,
    Ranking,
    all_pairs,
    all_rankings,
    pair_index,
    profile_from_index,
    ranking_from_index,
)
from . import scan


def _witness_text(witness: Any) -> str:
    if isinstance(witness, (Profile, Ranking)):
        return witness.to_text()
    if isinstance(witness, tuple):
        return " ".join(_witness_text(part) for part in witness)
    if isinstance(witness, dict):
        return "; ".join(
            f"{_witness_text(key)} <- {_witness_text(value)}" for key, value in witness.items()
        )
    return str(witness)


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one property check."""

    name: str
    holds: bool
    witness: Any = None

    def to_text(self) -> str:
        lines = [f"property = {self.name}", f"holds = {str(self.holds).lower()}"]
        if self.witness is not None:
            lines.append(f"witness = {_witness_text(self.witness)}")
        return "\n".join(lines) + "\n"


def check_transitivity(C: IiaConstitution, cap: int = DEFAULT_CAP) -> PropertyReport:
    """Does every profile's outcome avoid directed 3-cycles?

    The failure witness is the first cyclic profile in index order.
    """
    first = scan.first_cyclic_profile_index(C, cap)
    if first is None:
        return PropertyReport("transitivity", True)
    return PropertyReport("transitivity", False, profile_from_index(first, C.n, C.k))


def check_iia(C: IiaConstitution) -> PropertyReport:
    """Independence of irrelevant alternatives.

    The pairwise-table representation guarantees it: each pair's direction is
    a function of that pair's signs alone.  Checking an explicit profile map
    instead is :func:`arrowcheck.constitution.iia_from_general`'s job.
    """
    return PropertyReport("iia", True)


def _unanimous_profile(C: IiaConstitution, a: int, b: int) -> Profile:
    rest = [alt for alt in range(C.k) if alt not in (a, b)]
    ranking = Ranking(tuple([a, b] + rest))
    return Profile(tuple(ranking for _ in range(C.n)))


def check_unanimity(C: IiaConstitution) -> PropertyReport:
    """If every voter ranks a over b, does society?

    Equivalent to each canonical table mapping the all-ones input to +1 and
    the all-minus-ones input to -1, so no profile enumeration is needed.
    The failure witness is (pair, unanimous profile).
    """
    for a, b in all_pairs(C.k):
        table = C.table_for(a, b)
        if table.value_at(table.size - 1) != 1:
            return PropertyReport("unanimity", False, ((a, b), _unanimous_profile(C, a, b)))
        if table.value_at(0) != -1:
            return PropertyReport("unanimity", False, ((b, a), _unanimous_profile(C, b, a)))
    return PropertyReport("unanimity", True)


def check_ni(C: IiaConstitution, cap: int = DEFAULT_CAP) -> PropertyReport:
    """Non-imposition: is every strict order achieved by some profile?

    On success the witness maps each order to one achieving profile; on
    failure it is the first missing order.
    """
    achieved = scan.achieved_outcomes(C, cap)
    signatures = scan.ranking_signatures(C.k)
    witness: dict[Ranking, Profile] = {}
    for signature, ranking_idx in sorted(signatures.items(), key=lambda item: item[1]):
        if signature not in achieved:
            return PropertyReport("ni", False, ranking_from_index(ranking_idx, C.k))
        witness[ranking_from_index(ranking_idx, C.k)] = profile_from_index(
            achieved[signature], C.n, C.k
        )
    return PropertyReport("ni", True, witness)


def check_wni(C: IiaConstitution, cap: int = DEFAULT_CAP) -> PropertyReport:
    """Weak non-imposition: for every ordered pair (a, b), some profile ranks a over b.

    On success the witness maps each ordered pair to an achieving profile;
    on failure it is the first unattainable ordered pair.
    """
    first_pos, first_neg = scan.pair_attainment(C, cap)
    witness: dict[tuple[int, int], Profile] = {}
    for a, b in all_pairs(C.k):
        pi = pair_index(a, b, C.k)
        if first_pos[pi] is None:
            return PropertyReport("wni", False, (a, b))
        if first_neg[pi] is None:
            return PropertyReport("wni", False, (b, a))
        witness[(a, b)] = profile_from_index(first_pos[pi], C.n, C.k)
        witness[(b, a)] = profile_from_index(first_neg[pi], C.n, C.k)
    return PropertyReport("wni", True, witness)


def check_nd(C: IiaConstitution, cap: int = DEFAULT_CAP) -> PropertyReport:
    """Non-degeneracy: no alternative sits at the top of every outcome, none at the bottom.

    The failure witness is (alternative, "top"|"bottom").
    """
    not_top, not_bottom = scan.extremity_attainment(C, cap)
    for a in range(C.k):
        if not_top[a] is None:
            return PropertyReport("nd", False, (a, "top"))
        if not_bottom[a] is None:
            return PropertyReport("nd", False, (a, "bottom"))
    return PropertyReport("nd", True)


def dictator_of(C: IiaConstitution) -> tuple[int, int] | None:
    """The (voter, sign) whose ranking (or its reversal) the constitution copies, if any."""
    for voter in range(C.n):
        for sign in (1, -1):
            projection = PairwiseTable.projection(C.n, voter, sign)
            if all(table.bits == projection.bits for table in C.tables):
                return (voter, sign)
    return None


def check_dictator(C: IiaConstitution) -> PropertyReport:
    found = dictator_of(C)
    return PropertyReport("dictator", found is not None, found)


CHECKERS = {
    "transitivity": check_transitivity,
    "iia": lambda C, cap=DEFAULT_CAP: check_iia(C),
    "unanimity": lambda C, cap=DEFAULT_CAP: check_unanimity(C),
    "ni": check_ni,
    "wni": check_wni,
    "nd": check_nd,
    "dictator": lambda C, cap=DEFAULT_CAP: check_dictator(C),
}
