"""Distinguishability of 2-sets in the power automaton.

For a completely reachable automaton the set of synchronizing words has the
maximal state complexity ``2**n - n`` exactly when all 2-sets of states are
pairwise distinguishable.  Only the 2-sets and one merged singleton state are
needed, which keeps the check polynomial.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import SemiAutomaton, Word


class DegenerateAutomaton(ValueError):
    pass


@dataclass(frozen=True)
class PairAutomaton:
    """The 2-set automaton.

    States ``0 .. len(pairs)-1`` are the 2-sets in ``pairs``; state
    ``sink = len(pairs)`` is the merged class of all singletons, which is
    absorbing and the only accepting state.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]
    delta: tuple[tuple[int, ...], ...]

    @property
    def sink(self) -> int:
        return len(self.pairs)

    @property
    def state_count(self) -> int:
        return len(self.pairs) + 1

    def index(self, p: int, q: int) -> int:
        if p == q:
            return self.sink
        if p > q:
            p, q = q, p
        # row-major position of (p, q) among the pairs of [n]
        return p * (2 * self.n - p - 1) // 2 + (q - p - 1)

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]


def build_pair_automaton(a: SemiAutomaton) -> PairAutomaton:
    n = a.n
    if n < 2:
        raise DegenerateAutomaton("degenerate: the pair automaton needs n >= 2")
    pairs = tuple(combinations(range(n), 2))
    proto = PairAutomaton(n, pairs, ())
    rows = []
    for p, q in pairs:
        rows.append(tuple(proto.index(t.images[p], t.images[q]) for t in a.actions))
    sink = len(pairs)
    rows.append(tuple(sink for _ in a.actions))
    return PairAutomaton(n, pairs, tuple(rows))


@dataclass
class Marking:
    """Result of the table-filling fixpoint on the pair automaton."""

    automaton: PairAutomaton
    marked: set[tuple[int, int]]
    witnesses: Optional[dict[tuple[int, int], Word]] = None

    def is_marked(self, s: int, t: int) -> bool:
        if s > t:
            s, t = t, s
        return (s, t) in self.marked

    def unmarked_pairs(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        pa = self.automaton
        out = []
        for s, t in combinations(range(len(pa.pairs)), 2):
            if (s, t) not in self.marked:
                out.append((pa.pairs[s], pa.pairs[t]))
        return out

    def witness(self, first: tuple[int, int], second: tuple[int, int]) -> Word:
        """A word sending exactly one of two 2-sets to a singleton."""
        if self.witnesses is None:
            raise ValueError("marking was computed without witnesses")
        pa = self.automaton
        s, t = sorted((pa.index(*first), pa.index(*second)))
        return self.witnesses[(s, t)]


def mark_distinguishable(a: SemiAutomaton, witnesses: bool = False) -> Marking:
    """Worklist version of table filling.

    Marks start at every (2-set, singleton class) entry and are propagated
    backwards along the letters; marks are never removed.
    """
    pa = build_pair_automaton(a)
    k = a.alphabet_size
    size = pa.state_count
    sink = pa.sink
    # pre[x][s]: states sent to s by letter x
    pre = [[[] for _ in range(size)] for _ in range(k)]
    for s in range(size):
        for x in range(k):
            pre[x][pa.delta[s][x]].append(s)
    marked: set[tuple[int, int]] = set()
    words: Optional[dict[tuple[int, int], Word]] = {} if witnesses else None
    queue: deque[tuple[int, int]] = deque()
    for s in range(sink):
        marked.add((s, sink))
        if words is not None:
            words[(s, sink)] = ()
        queue.append((s, sink))
    while queue:
        s, t = queue.popleft()
        for x in range(k):
            for s2 in pre[x][s]:
                for t2 in pre[x][t]:
                    if s2 == t2:
                        continue
                    key = (s2, t2) if s2 < t2 else (t2, s2)
                    if key in marked:
                        continue
                    marked.add(key)
                    if words is not None:
                        words[key] = (x,) + words[(s, t) if s < t else (t, s)]
                    queue.append(key)
    return Marking(pa, marked, words)


def all_two_sets_distinguishable(a: SemiAutomaton) -> bool:
    marking = mark_distinguishable(a)
    m = len(marking.automaton.pairs)
    # all (2-set, singleton) entries are marked initially
    return len(marking.marked) == m * (m - 1) // 2 + m


def has_max_syn_sc(a: SemiAutomaton) -> bool:
    """Decide ``sc(Syn(a)) == 2**n - n`` for a completely reachable ``a``.

    Complete reachability is not checked.  Without it the answer only says
    whether all 2-sets are distinguishable.

    Even with it, the answer is only necessary, not sufficient: a larger set
    can be equivalent to a 2-set while all 2-sets are pairwise
    distinguishable.  The states 0, 1, 2 with letters a = [0, 2, 0],
    b = [1, 1, 2], c = [0, 0, 1] are completely reachable, all 2-sets are
    distinguishable, yet {1, 2} and Q act alike and sc(Syn) = 4 < 5.
    """
    return all_two_sets_distinguishable(a)
