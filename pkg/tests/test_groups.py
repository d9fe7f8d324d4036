from itertools import product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_conjugacy_classes, brute_invariant_partitions, brute_reachable, group_elements
from syncperm.core import DegreeMismatch, Transformation
from syncperm.families import (
    agl15,
    alternating,
    cyclic,
    dihedral,
    group_corpus,
    klein4,
    symmetric,
    trivial,
)
from syncperm.groups import (
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
    is_synchronizing_for_all_rank_maps,
    is_transitive,
    k_reachability_failure,
    k_reachable_sizes,
    khom_char_check,
    minimal_block_system,
    orbits_on_k_sets,
    point_orbits,
    sync_maximal_failure,
)
from syncperm.power import StateSpaceTooLarge, syn_state_complexity

ORBIT_A = {frozenset(s) for s in ({1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 1})}
ORBIT_B = {frozenset(s) for s in ({0, 2}, {1, 3}, {2, 4}, {3, 0}, {4, 1})}
SMALL = group_corpus(5)


def test_cyclic5_two_set_orbits():
    orbits = orbits_on_k_sets(cyclic(5), 2)
    assert set(orbits.blocks) == {frozenset(ORBIT_A), frozenset(ORBIT_B)}
    assert orbits.block_of({4, 0}) == ORBIT_A
    assert not is_k_homogeneous(cyclic(5), 2)
    assert is_primitive_blocks(cyclic(5)) and is_primitive_via_reachability(cyclic(5))
    assert is_sync_maximal(cyclic(5))


def test_homogeneity_examples():
    assert is_k_homogeneous(agl15(), 2)
    assert len(orbits_on_k_sets(symmetric(5), 3)) == 1
    assert len(orbits_on_k_sets(cyclic(6), 3)) == 4
    assert is_k_homogeneous(cyclic(6), 1)
    with pytest.raises(ValueError):
        orbits_on_k_sets(cyclic(4), 5)


def test_transitivity_examples():
    assert is_transitive(cyclic(7)) and not is_transitive(PermGroup(4, [[1, 0, 2, 3]]))
    assert point_orbits(trivial(3)) == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert is_k_transitive(symmetric(4), 4)
    assert is_k_transitive(alternating(4), 2) and not is_k_transitive(alternating(4), 3)
    assert is_k_transitive(agl15(), 2) and not is_k_transitive(agl15(), 3)
    assert not is_k_transitive(cyclic(5), 2)


def test_group_validation():
    with pytest.raises(ValueError):
        PermGroup(3, [[0, 0, 1]])
    with pytest.raises(DegreeMismatch):
        PermGroup(3, [[1, 0]])
    with pytest.raises(ValueError):
        PermGroup(3, [])
    assert cyclic(4) == PermGroup(4, [[1, 2, 3, 0]])


def test_primitivity_examples():
    assert not is_primitive_blocks(cyclic(4))
    assert minimal_block_system(cyclic(4), 0, 2) == [frozenset({0, 2}), frozenset({1, 3})]
    assert not is_primitive_blocks(PermGroup(3, [[0, 2, 1]]))
    assert is_primitive_blocks(trivial(2)) and not is_primitive_blocks(trivial(3))
    assert not is_primitive_blocks(dihedral(6)) and is_primitive_blocks(dihedral(5))


@pytest.mark.parametrize("g", group_corpus(6), ids=lambda g: g.name)
def test_primitivity_against_partitions(g):
    expected = g.degree <= 2 or not brute_invariant_partitions(g)
    assert is_primitive_blocks(g) == expected
    assert is_primitive_via_reachability(g) == expected


def test_cyclic4_witness_replays():
    f, missing = imprimitivity_witness(cyclic(4))
    assert f.rank() == 3 and f.is_idempotent()
    assert set(f.images) != set(range(4))
    reached = brute_reachable(group_automaton(cyclic(4), f))
    assert missing not in reached
    assert imprimitivity_witness(cyclic(5)) is None


def _brute_rank_maps(n, r):
    return [f for f in product(range(n), repeat=n) if len(set(f)) == r]


@pytest.mark.parametrize("n,r", [(3, 2), (4, 3), (4, 2), (5, 4), (5, 2), (4, 1)])
def test_rank_map_enumeration(n, r):
    got = [f.images for f in enumerate_rank_maps(n, r)]
    assert len(got) == len(set(got))
    assert set(got) == set(_brute_rank_maps(n, r))


def test_rank_map_counts():
    # Stirling number times falling factorial
    assert len(list(enumerate_rank_maps(4, 3))) == 6 * 24 == 144
    assert len(list(enumerate_rank_maps(3, 2))) == 3 * 6 == 18
    assert len(list(enumerate_rank_maps(5, 4))) == 10 * 120 == 1200
    # a rotation never commutes with a non-bijective map, so C5 acts freely
    assert len(list(enumerate_rank_maps(5, 4, dedup=cyclic(5)))) == 1200 // 5


@pytest.mark.parametrize("g", [cyclic(4), symmetric(4), klein4(), dihedral(4), cyclic(5), agl15()],
                         ids=lambda g: g.name)
def test_dedup_one_per_class(g):
    n = g.degree
    reps = {f.images for f in enumerate_rank_maps(n, n - 1, dedup=g)}
    classes = brute_conjugacy_classes(_brute_rank_maps(n, n - 1), group_elements(g))
    assert len(reps) == len(classes)
    assert all(len(cls & reps) == 1 for cls in classes)


def test_dedup_class_count_cyclic4():
    assert len(list(enumerate_rank_maps(4, 3, dedup=cyclic(4)))) == 36


def test_idempotents():
    maps = list(idempotent_rank_n_minus_1_maps(5))
    assert len(maps) == 20 == len({f.images for f in maps})
    assert all(f.is_idempotent() and f.rank() == 4 for f in maps)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([cyclic(4), dihedral(4), symmetric(4), cyclic(5), klein4()]), st.data())
def test_conjugation_preserves_sc(g, data):
    n = g.degree
    f = data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    h = data.draw(st.sampled_from(sorted(group_elements(g))))
    conj = [0] * n
    for i in range(n):
        conj[h[i]] = h[f[i]]
    a = group_automaton(g, Transformation(f))
    b = group_automaton(g, Transformation(conj))
    assert syn_state_complexity(a) == syn_state_complexity(b)


def test_sync_maximal_examples():
    assert not is_sync_maximal(cyclic(4))
    assert sync_maximal_failure(cyclic(4)) is not None
    assert is_sync_maximal(symmetric(4)) and is_sync_maximal(agl15())
    assert is_sync_maximal(trivial(2))
    with pytest.raises(StateSpaceTooLarge):
        is_sync_maximal(cyclic(8))


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_sync_maximal_fast_path_matches_exact(g):
    assert is_sync_maximal(g) == is_sync_maximal(g, exact=True) == is_sync_maximal(g, dedup=False)


def test_k_reachable_sizes():
    assert k_reachable_sizes(7, 2) == [5, 3, 1]
    assert k_reachable_sizes(6, 2) == [4, 2]
    assert k_reachable_sizes(5, 1) == [4, 3, 2, 1]
    assert k_reachable_sizes(4, 3) == [1]


def test_k_reachability_examples():
    assert is_k_reachable(symmetric(5), 2)
    assert not is_k_reachable(cyclic(4), 1)
    f, missing = k_reachability_failure(cyclic(4), 1)
    assert missing not in brute_reachable(group_automaton(cyclic(4), f))
    assert is_k_reachable(cyclic(5), 4)
    assert not is_k_reachable(trivial(4), 3)
    with pytest.raises(ValueError):
        is_k_reachable(cyclic(4), 4)


@pytest.mark.parametrize("g", group_corpus(5), ids=lambda g: g.name)
def test_khom_characterisation(g):
    for k in range(1, g.degree):
        expected = is_k_homogeneous(g, k)
        assert khom_char_check(g, k, "any_f") == expected
        assert khom_char_check(g, k, "some_f") == expected


def test_inclusion_exclusion_examples():
    assert inclusion_exclusion_condition(agl15())
    assert inclusion_exclusion_condition(symmetric(5))
    assert not inclusion_exclusion_condition(cyclic(5))
    assert not inclusion_exclusion_condition(cyclic(4))
    with pytest.raises(ValueError):
        inclusion_exclusion_condition(cyclic(2))


@pytest.mark.parametrize("g", group_corpus(6), ids=lambda g: g.name)
def test_primitive_iff_always_synchronizing(g):
    if g.degree < 3:
        return
    assert is_synchronizing_for_all_rank_maps(g) == is_primitive_blocks(g)


def test_group_automaton_letters():
    a = group_automaton(dihedral(4), Transformation([0, 0, 2, 3]))
    assert a.names == ("g1", "g2", "f")
    assert a.n == 4 and a.alphabet_size == 3


def test_orbit_sizes_divide_group_order():
    for g in group_corpus(5):
        order = len(group_elements(g))
        for k in range(1, g.degree + 1):
            for block in orbits_on_k_sets(g, k).blocks:
                assert order % len(block) == 0
    assert len(group_elements(symmetric(5))) == factorial(5)
    assert len(group_elements(alternating(6))) == factorial(6) // 2
