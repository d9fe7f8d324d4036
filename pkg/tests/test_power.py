import random

import pytest
from hypothesis import given, settings

from oracles import brute_reachable, brute_sc, brute_shortest_word, image_set
from syncperm.core import SemiAutomaton, StateSet, Transformation
from syncperm.families import cerny, cyclic, random_automaton
from syncperm.groups import group_automaton
from syncperm.power import (
    StateSpaceTooLarge,
    analyze,
    is_completely_reachable_exact,
    is_strongly_connected_automaton,
    is_synchronizing,
    max_syn_sc,
    minimal_syn_dfa,
    reachable_subsets,
    shortest_sync_word,
    syn_state_complexity,
)
from test_core import automata

PERMS4 = SemiAutomaton(4, [("a", Transformation([1, 2, 3, 0])), ("b", Transformation([1, 0, 2, 3]))])
CONST3 = SemiAutomaton(3, [("c", Transformation([2, 2, 2]))])

# Reset words found by enumerating all words in (length, lexicographic) order.
CERNY3_WORD = "b a a b"
CERNY4_WORD = "b a a a b a a a b"


def test_is_synchronizing_examples():
    assert is_synchronizing(cerny(4))
    assert not is_synchronizing(PERMS4)
    one = SemiAutomaton(1, [("a", Transformation([0]))])
    assert is_synchronizing(one)
    assert shortest_sync_word(one) == ()


def test_shortest_sync_word_examples():
    c3, c4 = cerny(3), cerny(4)
    assert c3.spell(shortest_sync_word(c3)) == CERNY3_WORD
    assert c4.spell(shortest_sync_word(c4)) == CERNY4_WORD
    assert shortest_sync_word(PERMS4) is None


def test_frozen_words_match_brute_force():
    for n, word in ((3, CERNY3_WORD), (4, CERNY4_WORD)):
        a = cerny(n)
        assert a.spell(brute_shortest_word(a, (n - 1) ** 2)) == word


@settings(max_examples=150, deadline=None)
@given(automata(max_n=4, max_letters=2))
def test_shortest_word_against_enumeration(a):
    expected = brute_shortest_word(a, (a.n - 1) ** 2 + 1)
    # (n-1)^2 bounds the length for n <= 4 where the conjecture is verified
    assert shortest_sync_word(a) == expected
    assert is_synchronizing(a) == (expected is not None)


def test_shortest_word_limit():
    with pytest.raises(StateSpaceTooLarge, match="state space too large"):
        shortest_sync_word(cerny(6), limit=5)
    with pytest.raises(StateSpaceTooLarge):
        reachable_subsets(cerny(6), limit=5)


def test_reachable_subsets_examples():
    assert reachable_subsets(PERMS4) == {StateSet.full(4)}
    subsets = reachable_subsets(cerny(4))
    assert len(subsets) == 15 and StateSet.empty(4) not in subsets
    assert {s.to_frozenset() for s in reachable_subsets(CONST3)} == {frozenset({0, 1, 2}), frozenset({2})}


def test_completely_reachable_examples():
    for n in range(3, 9):
        assert is_completely_reachable_exact(cerny(n))
    assert not is_completely_reachable_exact(PERMS4)
    # merging 1 into 0 joins two blocks of {0,2},{1,3}: still completely reachable
    assert is_completely_reachable_exact(group_automaton(cyclic(4), Transformation([0, 0, 2, 3])))
    # merging 2 into 0 stays inside a block: singletons are never reached
    a = group_automaton(cyclic(4), Transformation([0, 1, 0, 3]))
    assert not is_completely_reachable_exact(a)
    assert all(len(s) >= 2 for s in reachable_subsets(a))


def test_syn_state_complexity_examples():
    assert syn_state_complexity(cerny(4)) == 12
    assert syn_state_complexity(cerny(5)) == 27
    assert syn_state_complexity(PERMS4) == 1


def test_analyze_report():
    r = analyze(cerny(4))
    assert r.synchronizing and len(r.shortest_word) == 9
    assert r.completely_reachable and r.reachable_subset_count == 15 and r.sc_syn == 12
    r = analyze(PERMS4)
    assert not r.synchronizing and r.shortest_word is None and r.sc_syn == 1


@settings(max_examples=200, deadline=None)
@given(automata(max_n=5))
def test_against_brute_force(a):
    assert {s.to_frozenset() for s in reachable_subsets(a)} == brute_reachable(a)
    sc = syn_state_complexity(a)
    assert sc == brute_sc(a)
    if a.n >= 2:
        assert sc <= max_syn_sc(a.n)


@settings(max_examples=100, deadline=None)
@given(automata(max_n=6))
def test_reachable_closed_under_letters(a):
    subsets = {s.to_frozenset() for s in reachable_subsets(a)}
    for s in subsets:
        for x in range(a.alphabet_size):
            assert image_set(a, s, (x,)) in subsets


def test_membership_oracle_consistency():
    rng = random.Random(7)
    for _ in range(60):
        a = random_automaton(rng, rng.randint(2, 6), rng.randint(1, 3))
        dfa = minimal_syn_dfa(a)
        for _ in range(30):
            w = tuple(rng.randrange(a.alphabet_size) for _ in range(rng.randrange(20)))
            assert dfa.accepts(w) == (len(image_set(a, range(a.n), w)) == 1)


def test_strongly_connected_max_sc_implies_completely_reachable():
    rng = random.Random(11)
    hits = 0
    for _ in range(1500):
        a = random_automaton(rng, rng.randint(2, 5), rng.randint(1, 3))
        if is_strongly_connected_automaton(a) and syn_state_complexity(a) == max_syn_sc(a.n):
            hits += 1
            assert is_completely_reachable_exact(a)
    assert hits > 20


def test_strong_connectivity_of_automata():
    assert is_strongly_connected_automaton(cerny(5))
    assert not is_strongly_connected_automaton(CONST3)
