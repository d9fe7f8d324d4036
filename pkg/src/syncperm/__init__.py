"""Synchronization, complete reachability and primitive permutation groups."""

from .core import (
    SemiAutomaton,
    StateSet,
    Transformation,
    Word,
    apply_word,
    compose,
    image,
    preimage,
    rank,
    word_transformation,
)
from .gamma1 import (
    Certificate,
    Gamma1Graph,
    completely_reachable_certificate,
    gamma1,
    gamma1_oracle,
    is_strongly_connected,
)
from .groups import (
    KSetOrbits,
    PermGroup,
    enumerate_rank_maps,
    group_automaton,
    idempotent_rank_n_minus_1_maps,
    imprimitivity_witness,
    inclusion_exclusion_condition,
    is_k_homogeneous,
    is_k_reachable,
    is_k_transitive,
    is_primitive_blocks,
    is_primitive_via_reachability,
    is_sync_maximal,
    is_transitive,
    khom_char_check,
    orbits_on_k_sets,
)
from .pairs import (
    PairAutomaton,
    all_two_sets_distinguishable,
    build_pair_automaton,
    has_max_syn_sc,
    mark_distinguishable,
)
from .power import (
    SynReport,
    analyze,
    is_completely_reachable_exact,
    is_synchronizing,
    reachable_subsets,
    shortest_sync_word,
    syn_state_complexity,
)

__version__ = "0.1.0"
