"""The rank-(n-1) graph and its strong-connectivity criterion.

There is an edge ``(p, q)`` whenever some word of rank ``n - 1`` leaves ``p``
out of its image and has a 2-element preimage over ``q``.  If the graph is
strongly connected the automaton is completely reachable; the converse fails
in general, so the certificate is one-sided.

A word of rank ``n - 1`` factors as (permutation prefix) (first letter that
drops the rank) (suffix injective on the current image).  The prefix changes
neither the excluded point nor the doubled target, and every injective
extension moves the pair ``(p, q)`` to ``(excluded point of y(Q - p), y(q))``.
So the edge set is the closure of the per-letter seeds under these moves.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .core import SemiAutomaton, Transformation


class MonoidTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Gamma1Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for p, q in self.sorted_edges():
            adj[p].append(q)
        return adj

    def to_dot(self) -> str:
        lines = ["digraph gamma1 {"]
        lines += [f"  {v};" for v in range(self.n)]
        lines += [f"  {p} -> {q};" for p, q in self.sorted_edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _deficiency(t: Transformation) -> tuple[int, int] | None:
    """``(excluded point, doubled target)`` of a rank ``n - 1`` map, else None."""
    n = t.n
    counts = [0] * n
    for img in t.images:
        counts[img] += 1
    missing = [q for q in range(n) if counts[q] == 0]
    if len(missing) != 1:
        return None
    doubled = next(q for q in range(n) if counts[q] == 2)
    return missing[0], doubled


def gamma1(a: SemiAutomaton) -> Gamma1Graph:
    n = a.n
    if n < 2:
        return Gamma1Graph(n, frozenset())
    actions = [t.images for t in a.actions]
    seen: set[tuple[int, int]] = set()
    queue: deque[tuple[int, int]] = deque()
    for t in a.actions:
        d = _deficiency(t)
        if d is not None and d not in seen:
            seen.add(d)
            queue.append(d)
    full = (1 << n) - 1
    # step[p][x] = excluded point of y(Q - p), or -1 if y is not injective there
    step = [[-1] * len(actions) for _ in range(n)]
    for p in range(n):
        for x, img in enumerate(actions):
            m = 0
            for i in range(n):
                if i != p:
                    m |= 1 << img[i]
            rest = full & ~m
            if rest and rest & (rest - 1) == 0:
                step[p][x] = rest.bit_length() - 1
    while queue:
        p, q = queue.popleft()
        for x, img in enumerate(actions):
            p2 = step[p][x]
            if p2 < 0:
                continue
            nxt = (p2, img[q])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return Gamma1Graph(n, frozenset(seen))


def transformation_monoid(a: SemiAutomaton, cap: int = 200_000) -> set[tuple[int, ...]]:
    """All ``delta_w`` for words ``w``, as image tuples (identity included)."""
    ident = tuple(range(a.n))
    gens = [t.images for t in a.actions]
    seen = {ident}
    queue = deque([ident])
    while queue:
        f = queue.popleft()
        for g in gens:
            h = tuple(g[i] for i in f)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise MonoidTooLarge(f"transformation monoid exceeds {cap} elements")
                queue.append(h)
    return seen


def gamma1_oracle(a: SemiAutomaton, cap: int = 200_000) -> Gamma1Graph:
    """Edge set read off the full transformation monoid."""
    edges = set()
    for f in transformation_monoid(a, cap):
        d = _deficiency(Transformation(f))
        if d is not None:
            edges.add(d)
    return Gamma1Graph(a.n, frozenset(edges))


def strongly_connected_components(n: int, adj: list[list[int]]) -> list[int]:
    """Iterative Tarjan; component ids are ordered by smallest member."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    counter = 0
    raw = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = raw
                    if w == v:
                        break
                raw += 1
    relabel: dict[int, int] = {}
    for v in range(n):
        relabel.setdefault(comp[v], len(relabel))
    return [relabel[c] for c in comp]


def is_strongly_connected(g: Gamma1Graph) -> bool:
    if g.n <= 1:
        return True
    comp = strongly_connected_components(g.n, g.adjacency())
    return max(comp) == 0


class Certificate(enum.Enum):
    PROVEN = "proven"
    UNKNOWN = "unknown"


def completely_reachable_certificate(a: SemiAutomaton) -> Certificate:
    if a.n == 1 or is_strongly_connected(gamma1(a)):
        return Certificate.PROVEN
    return Certificate.UNKNOWN
