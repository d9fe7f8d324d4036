"""Permutation groups given by generators, and their interplay with
non-permutations.

Group elements are never listed.  Orbits on points, k-sets and tuples are
computed by breadth-first search over the generators, and conjugacy classes
of maps are swept out the same way.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional

from .core import DegreeMismatch, SemiAutomaton, Transformation, mask_members
from .gamma1 import Certificate, completely_reachable_certificate
from .pairs import all_two_sets_distinguishable
from .power import (
    StateSpaceTooLarge,
    is_completely_reachable_exact,
    is_synchronizing,
    max_syn_sc,
    reachable_masks,
    syn_state_complexity,
)

SYNC_MAX_LIMIT = 7
K_REACH_LIMIT = 6
K1_REACH_LIMIT = 7
INCLUSION_EXCLUSION_LIMIT = 8


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Transformation, ...]
    name: Optional[str] = field(default=None, compare=False)
    generator_names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __init__(self, degree: int, generators: Iterable, name: Optional[str] = None,
                 generator_names: Optional[Iterable[str]] = None):
        gens = tuple(g if isinstance(g, Transformation) else Transformation(g) for g in generators)
        if not gens:
            raise ValueError("a permutation group needs at least one generator")
        for g in gens:
            if g.n != degree:
                raise DegreeMismatch(f"generator of degree {g.n} in a group of degree {degree}")
            if not g.is_permutation():
                raise ValueError(f"generator {list(g.images)} is not bijective")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "name", name)
        if generator_names is not None:
            generator_names = tuple(generator_names)
            if len(generator_names) != len(gens):
                raise ValueError("one name per generator expected")
        object.__setattr__(self, "generator_names", generator_names)

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={[list(g.images) for g in self.generators]}>"


def _check_k(g: PermGroup, k: int, low: int = 1, high: Optional[int] = None):
    high = g.degree if high is None else high
    if not low <= k <= high:
        raise ValueError(f"k = {k} out of range [{low}, {high}]")


def _image_mask(images: tuple[int, ...], mask: int) -> int:
    out = 0
    for i in mask_members(mask):
        out |= 1 << images[i]
    return out


def _mask_orbit(gens: list[tuple[int, ...]], start: int) -> list[int]:
    seen = {start}
    order = [start]
    i = 0
    while i < len(order):
        m = order[i]
        i += 1
        for g in gens:
            m2 = _image_mask(g, m)
            if m2 not in seen:
                seen.add(m2)
                order.append(m2)
    return order


@dataclass(frozen=True)
class KSetOrbits:
    k: int
    blocks: tuple[frozenset[frozenset[int]], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, subset: Iterable[int]) -> frozenset[frozenset[int]]:
        s = frozenset(subset)
        for block in self.blocks:
            if s in block:
                return block
        raise KeyError(s)


def orbits_on_k_sets(g: PermGroup, k: int) -> KSetOrbits:
    _check_k(g, k)
    n = g.degree
    gens = [t.images for t in g.generators]
    done: set[int] = set()
    blocks = []
    for combo in combinations(range(n), k):
        m = sum(1 << i for i in combo)
        if m in done:
            continue
        orbit = _mask_orbit(gens, m)
        done.update(orbit)
        blocks.append(frozenset(frozenset(mask_members(x)) for x in orbit))
    return KSetOrbits(k, tuple(blocks))


def is_k_homogeneous(g: PermGroup, k: int) -> bool:
    return len(orbits_on_k_sets(g, k)) == 1


def is_transitive(g: PermGroup) -> bool:
    return is_k_homogeneous(g, 1)


def point_orbits(g: PermGroup) -> list[frozenset[int]]:
    return [frozenset(min(s) for s in block) for block in orbits_on_k_sets(g, 1).blocks]


def is_k_transitive(g: PermGroup, k: int) -> bool:
    _check_k(g, k)
    n = g.degree
    gens = [t.images for t in g.generators]
    start = tuple(range(k))
    seen = {start}
    queue = deque([start])
    while queue:
        tup = queue.popleft()
        for img in gens:
            t2 = tuple(img[i] for i in tup)
            if t2 not in seen:
                seen.add(t2)
                queue.append(t2)
    return len(seen) == math.perm(n, k)


def minimal_block_system(g: PermGroup, a: int, b: int) -> list[frozenset[int]]:
    """Classes of the finest G-invariant equivalence relation with ``a ~ b``."""
    n = g.degree
    gens = [t.images for t in g.generators]
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    pairs = deque([(a, b)])
    parent[find(a)] = find(b)
    while pairs:
        x, y = pairs.popleft()
        for img in gens:
            rx, ry = find(img[x]), find(img[y])
            if rx != ry:
                parent[rx] = ry
                pairs.append((img[x], img[y]))
    classes: dict[int, set[int]] = {}
    for v in range(n):
        classes.setdefault(find(v), set()).add(v)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def is_primitive_blocks(g: PermGroup) -> bool:
    """No nontrivial proper invariant equivalence relation.

    Groups of degree at most 2 count as primitive.  Intransitive groups of
    larger degree are imprimitive (their orbit partition is invariant);
    for transitive groups it suffices to close each pair ``{0, a}``.
    """
    n = g.degree
    if n <= 2:
        return True
    if not is_transitive(g):
        return False
    return all(len(minimal_block_system(g, 0, a)) == 1 for a in range(1, n))


def _set_partitions(n: int, r: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n with exactly r blocks."""
    labels = [0] * n

    def rec(i: int, used: int):
        if n - i < r - used:
            return
        if i == n:
            if used == r:
                yield list(labels)
            return
        for c in range(min(used + 1, r)):
            labels[i] = c
            yield from rec(i + 1, max(used, c + 1))

    if n == 0:
        return
    labels[0] = 0
    yield from rec(1, 1)


def _all_rank_maps(n: int, r: int) -> Iterator[tuple[int, ...]]:
    for labels in _set_partitions(n, r):
        for values in permutations(range(n), r):
            yield tuple(values[c] for c in labels)


def _conjugate(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    # the map g(i) -> g(f(i)), i.e. relabel the states by g
    out = [0] * len(f)
    for i, fi in enumerate(f):
        out[g[i]] = g[fi]
    return tuple(out)


def enumerate_rank_maps(n: int, r: int, dedup: Optional[PermGroup] = None) -> Iterator[Transformation]:
    """Every map of ``[n]`` with rank exactly ``r``, each once.

    With ``dedup`` one representative of each class under conjugation by
    the group is produced.  Conjugating the added map relabels the states of
    the associated automaton, which preserves every property checked here.
    """
    if not 1 <= r <= n:
        raise ValueError(f"rank {r} out of range [1, {n}]")
    if dedup is None:
        for f in _all_rank_maps(n, r):
            yield Transformation(f)
        return
    if dedup.degree != n:
        raise DegreeMismatch("degree mismatch")
    gens = [t.images for t in dedup.generators]
    seen: set[tuple[int, ...]] = set()
    for f in _all_rank_maps(n, r):
        if f in seen:
            continue
        seen.add(f)
        queue = deque([f])
        while queue:
            h = queue.popleft()
            for g in gens:
                h2 = _conjugate(h, g)
                if h2 not in seen:
                    seen.add(h2)
                    queue.append(h2)
        yield Transformation(f)


def idempotent_rank_n_minus_1_maps(n: int) -> Iterator[Transformation]:
    """The ``n (n - 1)`` idempotents of rank ``n - 1``: one point moved onto another."""
    if n < 2:
        raise ValueError("need n >= 2")
    for moved in range(n):
        for target in range(n):
            if target != moved:
                images = list(range(n))
                images[moved] = target
                yield Transformation(images)


def group_automaton(g: PermGroup, f: Transformation) -> SemiAutomaton:
    if f.n != g.degree:
        raise DegreeMismatch("degree mismatch")
    letters = [(f"g{i + 1}", t) for i, t in enumerate(g.generators)]
    letters.append(("f", f))
    return SemiAutomaton(g.degree, letters)


def _require(n: int, limit: int):
    if n > limit:
        raise StateSpaceTooLarge(f"state space too large: n = {n} exceeds limit {limit}")


def imprimitivity_witness(g: PermGroup, limit: int = 20) -> Optional[tuple[Transformation, frozenset[int]]]:
    """An idempotent rank ``n - 1`` map and a subset the extended monoid misses.

    Returns None when every such map makes the automaton completely reachable.
    """
    n = g.degree
    if n <= 2:
        return None
    _require(n, limit)
    for f in idempotent_rank_n_minus_1_maps(n):
        a = group_automaton(g, f)
        masks = set(reachable_masks(a, limit))
        if len(masks) != (1 << n) - 1:
            missing = next(m for m in range(1, 1 << n) if m not in masks)
            return f, frozenset(mask_members(missing))
    return None


def is_primitive_via_reachability(g: PermGroup, limit: int = 20) -> bool:
    if g.degree <= 2:
        return True
    return imprimitivity_witness(g, limit) is None


def sync_maximal_failure(g: PermGroup, dedup: bool = True, exact: bool = False,
                         limit: int = SYNC_MAX_LIMIT) -> Optional[Transformation]:
    """First rank ``n - 1`` map whose automaton misses the maximal state complexity."""
    n = g.degree
    if n <= 2:
        return None
    _require(n, limit)
    target = max_syn_sc(n)
    for f in enumerate_rank_maps(n, n - 1, g if dedup else None):
        a = group_automaton(g, f)
        if exact:
            ok = syn_state_complexity(a, limit) == target
        else:
            reach = (completely_reachable_certificate(a) is Certificate.PROVEN
                     or is_completely_reachable_exact(a, limit))
            ok = reach and all_two_sets_distinguishable(a)
        if not ok:
            return f
    return None


def is_sync_maximal(g: PermGroup, dedup: bool = True, exact: bool = False,
                    limit: int = SYNC_MAX_LIMIT) -> bool:
    """Every added rank ``n - 1`` map yields maximal ``sc(Syn)``.

    The default route checks complete reachability and then pairwise
    distinguishability of 2-sets; ``exact=True`` minimizes the power
    automaton instead.  Degree at most 2 is sync-maximal by convention.
    """
    return sync_maximal_failure(g, dedup, exact, limit) is None


def k_reachable_sizes(n: int, k: int) -> list[int]:
    return [n - j * k for j in range(1, math.ceil(n / k))]


def _k_reach_limit(k: int) -> int:
    return K1_REACH_LIMIT if k == 1 else K_REACH_LIMIT


def k_reachability_failure(g: PermGroup, k: int, dedup: bool = True,
                           limit: Optional[int] = None) -> Optional[tuple[Transformation, frozenset[int]]]:
    n = g.degree
    if n < 2:
        raise ValueError("k-reachability needs degree >= 2")
    _check_k(g, k, 1, n - 1)
    _require(n, _k_reach_limit(k) if limit is None else limit)
    sizes = set(k_reachable_sizes(n, k))
    needed = [m for m in range(1, 1 << n) if bin(m).count("1") in sizes]
    for f in enumerate_rank_maps(n, n - k, g if dedup else None):
        masks = set(reachable_masks(group_automaton(g, f), n))
        for m in needed:
            if m not in masks:
                return f, frozenset(mask_members(m))
    return None


def is_k_reachable(g: PermGroup, k: int, dedup: bool = True, limit: Optional[int] = None) -> bool:
    return k_reachability_failure(g, k, dedup, limit) is None


def khom_char_check(g: PermGroup, k: int, mode: str = "any_f", dedup: bool = True,
                    limit: Optional[int] = None) -> bool:
    """Reachability of all ``(n - k)``-sets after adding a rank ``n - k`` map.

    ``mode="any_f"`` demands it for every such map, ``mode="some_f"`` for at
    least one.  Either answer coincides with k-homogeneity.
    """
    if mode not in ("any_f", "some_f"):
        raise ValueError(f"unknown mode {mode!r}")
    n = g.degree
    _check_k(g, k, 1, n - 1)
    _require(n, _k_reach_limit(k) if limit is None else limit)
    needed = [m for m in range(1, 1 << n) if bin(m).count("1") == n - k]
    for f in enumerate_rank_maps(n, n - k, g if dedup else None):
        masks = set(reachable_masks(group_automaton(g, f), n))
        ok = all(m in masks for m in needed)
        if mode == "some_f" and ok:
            return True
        if mode == "any_f" and not ok:
            return False
    return mode == "any_f"


def inclusion_exclusion_condition(g: PermGroup, limit: int = INCLUSION_EXCLUSION_LIMIT) -> bool:
    """For all 2-sets {a, b}, sets A with 1 <= |A| <= n - 2 and c outside {a, b}
    some group element maps A inside the complement of {a, b} and onto c."""
    n = g.degree
    if n < 3:
        raise ValueError("the condition needs n >= 3")
    _require(n, limit)
    gens = [t.images for t in g.generators]
    done: set[int] = set()
    for size in range(1, n - 1):
        for combo in combinations(range(n), size):
            start = sum(1 << i for i in combo)
            if start in done:
                continue
            orbit = _mask_orbit(gens, start)
            done.update(orbit)
            # every member of one orbit has the same answer
            for a, b in combinations(range(n), 2):
                avoid = (1 << a) | (1 << b)
                inside = [m for m in orbit if m & avoid == 0]
                covered = 0
                for m in inside:
                    covered |= m
                if covered | avoid != (1 << n) - 1:
                    return False
    return True


def is_synchronizing_for_all_rank_maps(g: PermGroup, limit: int = 6) -> bool:
    """Every added rank ``n - 1`` map gives a synchronizing automaton."""
    n = g.degree
    if n <= 1:
        return True
    _require(n, limit)
    return all(is_synchronizing(group_automaton(g, f)) for f in enumerate_rank_maps(n, n - 1, g))
