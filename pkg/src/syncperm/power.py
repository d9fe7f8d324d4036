"""Exact analyses on the power automaton of a semi-automaton.

The power automaton has the subsets of ``[n]`` as states, starts in the full
set and accepts the singletons; it recognizes the synchronizing words.
Everything here is exponential in ``n`` and guarded by ``limit``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ImageTable, SemiAutomaton, StateSet, Word

DEFAULT_LIMIT = 20


class StateSpaceTooLarge(ValueError):
    pass


def _check_limit(a: SemiAutomaton, limit: int):
    if a.n > limit:
        raise StateSpaceTooLarge(f"state space too large: n = {a.n} exceeds limit {limit}")


def is_singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def is_synchronizing(a: SemiAutomaton) -> bool:
    """Pairwise criterion: every pair of states can be merged by some word.

    Runs a backward search on the pair graph starting from the diagonal, so
    it is polynomial in ``n``.
    """
    n = a.n
    if n == 1:
        return True
    # preimages[x][q] lists the states mapped to q by letter x
    preimages = []
    for t in a.actions:
        pre = [[] for _ in range(n)]
        for p, q in enumerate(t.images):
            pre[q].append(p)
        preimages.append(pre)
    merged = [[p == q for q in range(n)] for p in range(n)]
    queue = deque((p, p) for p in range(n))
    while queue:
        p, q = queue.popleft()
        for pre in preimages:
            for p2 in pre[p]:
                for q2 in pre[q]:
                    if not merged[p2][q2]:
                        merged[p2][q2] = merged[q2][p2] = True
                        queue.append((p2, q2))
    return all(all(row) for row in merged)


def shortest_sync_word(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> Optional[Word]:
    """Shortest reset word, lexicographically least among the shortest.

    Breadth-first search from the full set; successors are generated in
    letter order, so the first singleton discovered carries the least word.
    """
    _check_limit(a, limit)
    full = (1 << a.n) - 1
    if is_singleton(full):
        return ()
    table = ImageTable(a)
    k = a.alphabet_size
    parent: dict[int, tuple[int, int]] = {full: (-1, -1)}
    queue = deque([full])
    while queue:
        mask = queue.popleft()
        for x in range(k):
            nxt = table.step(mask, x)
            if nxt in parent:
                continue
            parent[nxt] = (mask, x)
            if is_singleton(nxt):
                word = []
                cur = nxt
                while cur != full:
                    cur, letter = parent[cur]
                    word.append(letter)
                return tuple(reversed(word))
            queue.append(nxt)
    return None


def _reachable_masks(a: SemiAutomaton, table: ImageTable) -> list[int]:
    full = (1 << a.n) - 1
    seen = {full}
    order = [full]
    i = 0
    while i < len(order):
        mask = order[i]
        i += 1
        for nxt in table.successors(mask):
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    return order


def reachable_masks(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> list[int]:
    """Bitmasks of all subsets reachable from the full set, in BFS order."""
    _check_limit(a, limit)
    return _reachable_masks(a, ImageTable(a))


def reachable_subsets(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> frozenset[StateSet]:
    return frozenset(StateSet(a.n, m) for m in reachable_masks(a, limit))


def is_completely_reachable_exact(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> bool:
    return len(reachable_masks(a, limit)) == (1 << a.n) - 1


def unreachable_masks(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> list[int]:
    seen = set(reachable_masks(a, limit))
    return [m for m in range(1, 1 << a.n) if m not in seen]


def refine_partition(transitions: np.ndarray, initial: np.ndarray) -> np.ndarray:
    """Moore-style partition refinement.

    ``transitions[i, x]`` is the successor of state ``i`` under letter ``x`` and
    ``initial`` the starting class labels.  Returns the coarsest stable
    refinement, labelled ``0 .. classes-1``.
    """
    _, labels = np.unique(initial, return_inverse=True)
    labels = labels.reshape(-1)
    count = int(labels.max()) + 1 if labels.size else 0
    while True:
        signature = np.column_stack([labels, labels[transitions]]) if transitions.size else labels[:, None]
        _, new = np.unique(signature, axis=0, return_inverse=True)
        new = new.reshape(-1)
        new_count = int(new.max()) + 1 if new.size else 0
        if new_count == count:
            return new
        labels, count = new, new_count


@dataclass(frozen=True)
class MinimalSynDFA:
    """Minimal DFA of the synchronizing words, built from the power automaton."""

    start: int
    accepting: frozenset[int]
    delta: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.delta)

    def accepts(self, word: Word) -> bool:
        state = self.start
        for x in word:
            state = self.delta[state][x]
        return state in self.accepting


def minimal_syn_dfa(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> MinimalSynDFA:
    _check_limit(a, limit)
    table = ImageTable(a)
    masks = _reachable_masks(a, table)
    index = {m: i for i, m in enumerate(masks)}
    k = a.alphabet_size
    trans = np.empty((len(masks), k), dtype=np.int64)
    for i, m in enumerate(masks):
        for x in range(k):
            trans[i, x] = index[table.step(m, x)]
    accepting = np.fromiter((is_singleton(m) for m in masks), dtype=np.int64, count=len(masks))
    labels = refine_partition(trans, accepting)
    classes = int(labels.max()) + 1
    delta = [None] * classes
    for i in range(len(masks)):
        c = int(labels[i])
        if delta[c] is None:
            delta[c] = tuple(int(labels[j]) for j in trans[i])
    acc = frozenset(int(labels[i]) for i in range(len(masks)) if accepting[i])
    return MinimalSynDFA(start=int(labels[0]), accepting=acc, delta=tuple(delta))


def syn_state_complexity(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> int:
    """Number of Nerode classes of the set of synchronizing words.

    A non-synchronizing automaton has an empty set of synchronizing words,
    whose minimal automaton has a single state.
    """
    return minimal_syn_dfa(a, limit).size


def max_syn_sc(n: int) -> int:
    return (1 << n) - n


@dataclass(frozen=True)
class SynReport:
    synchronizing: bool
    shortest_word: Optional[Word]
    sc_syn: Optional[int]
    completely_reachable: bool
    reachable_subset_count: int


def analyze(a: SemiAutomaton, limit: int = DEFAULT_LIMIT) -> SynReport:
    masks = reachable_masks(a, limit)
    word = shortest_sync_word(a, limit)
    return SynReport(
        synchronizing=word is not None,
        shortest_word=word,
        sc_syn=syn_state_complexity(a, limit),
        completely_reachable=len(masks) == (1 << a.n) - 1,
        reachable_subset_count=len(masks),
    )


def is_strongly_connected_automaton(a: SemiAutomaton) -> bool:
    """Every state reachable from every other under the letters."""
    n = a.n
    forward = [set(t.images[q] for t in a.actions) for q in range(n)]
    backward = [set() for _ in range(n)]
    for q, succ in enumerate(forward):
        for r in succ:
            backward[r].add(q)
    for adj in (forward, backward):
        seen = {0}
        stack = [0]
        while stack:
            q = stack.pop()
            for r in adj[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        if len(seen) != n:
            return False
    return True
