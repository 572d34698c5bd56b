"""Complete characterization toolkit for transitive IIA constitutions over strict preferences."""

from .errors import (
    CapExceededError,
    ConstitutionFormatError,
    DEFAULT_CAP,
    IndeterminateWitnessError,
    NonRealizableTripleError,
    NotIiaError,
    NotTransitiveError,
)
from .rankings import (
    Profile,
    Ranking,
    SignVector,
    Tournament,
    all_pairs,
    all_profiles,
    all_rankings,
    pack_signs,
    pair_index,
    pairwise_vector,
    pref_sign,
    profile_from_index,
    profile_index,
    ranking_from_index,
    ranking_index,
    restrict_profile,
    restrict_ranking,
    reverse,
    triple_decode,
    triple_encode,
    unpack_signs,
)
from .constitution import (
    GeneralConstitution,
    IiaConstitution,
    PairwiseTable,
    eval_general,
    eval_iia,
    general_from_iia,
    iia_from_general,
    oriented_eval,
    oriented_table,
    parse_constitution,
    restrict,
    serialize_constitution,
)
from .properties import (
    PropertyReport,
    check_dictator,
    check_iia,
    check_nd,
    check_ni,
    check_transitivity,
    check_unanimity,
    check_wni,
    dictator_of,
)
from .pivotal import (
    barbera_witness,
    cyclic_triple_witness,
    paradox_witness,
    pivotal_set,
    projection_form,
    triple_can_cycle,
)
from .characterization import (
    BlockDescriptor,
    BlockStructure,
    FailureCertificate,
    SingleVoterForm,
    classify,
    count_characterized,
    enumerate_iia,
    generate,
    single_voter_classify,
)
from .probability import (
    ParadoxEstimate,
    SimpleFamilyDistance,
    distance_to_simple_family,
    exact_paradox_probability,
    mc_paradox_probability,
)

__version__ = "0.1.0"
