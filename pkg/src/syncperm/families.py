"""Curated automata and permutation groups."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .core import SemiAutomaton, Transformation
from .groups import PermGroup, group_automaton

GROUP_FAMILIES = ("cyclic", "symmetric", "alternating", "dihedral", "klein4", "agl15", "trivial")
FAMILIES = ("cerny",) + GROUP_FAMILIES


def cerny(n: int) -> SemiAutomaton:
    """``a`` is the cycle ``i -> i + 1``; ``b`` merges ``n - 1`` into ``0``."""
    if n < 2:
        raise ValueError("the Cerny automaton needs n >= 2")
    a = Transformation((i + 1) % n for i in range(n))
    b = Transformation(list(range(n - 1)) + [0])
    return SemiAutomaton(n, [("a", a), ("b", b)])


def _cycle(n: int, points) -> Transformation:
    return Transformation.from_cycles(n, [tuple(points)])


def cyclic(n: int) -> PermGroup:
    return PermGroup(n, [_cycle(n, range(n))], name=f"cyclic({n})")


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [Transformation.identity(1)], name="symmetric(1)")
    gens = [_cycle(n, (0, 1)), _cycle(n, range(n))]
    return PermGroup(n, gens, name=f"symmetric({n})")


def alternating(n: int) -> PermGroup:
    """``(0 1 2)`` with the n-cycle for odd n, with ``(1 2 ... n-1)`` for even n.

    Both extra generators are even permutations, and these pairs generate
    the alternating group.
    """
    if n < 3:
        raise ValueError("alternating groups are supported for n >= 3")
    rest = range(n) if n % 2 else range(1, n)
    gens = [_cycle(n, (0, 1, 2)), _cycle(n, rest)]
    return PermGroup(n, gens, name=f"alternating({n})")


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon: rotation and the reflection ``i -> -i``."""
    if n < 3:
        raise ValueError("dihedral groups are supported for n >= 3")
    rot = _cycle(n, range(n))
    ref = Transformation((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref], name=f"dihedral({n})")


def klein4() -> PermGroup:
    gens = [Transformation.from_cycles(4, [(0, 1), (2, 3)]), Transformation.from_cycles(4, [(0, 2), (1, 3)])]
    return PermGroup(4, gens, name="klein4")


def agl15() -> PermGroup:
    """Affine maps of Z/5: ``x -> x + 1`` and ``x -> 2x``."""
    shift = Transformation((x + 1) % 5 for x in range(5))
    scale = Transformation((2 * x) % 5 for x in range(5))
    return PermGroup(5, [shift, scale], name="agl15")


def trivial(n: int) -> PermGroup:
    return PermGroup(n, [Transformation.identity(n)], name=f"trivial({n})")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: Optional[int] = None

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}")
        fixed = {"agl15": 5, "klein4": 4}
        if self.name in fixed:
            if self.n not in (None, fixed[self.name]):
                raise ValueError(f"{self.name} has fixed degree {fixed[self.name]}")
            object.__setattr__(self, "n", fixed[self.name])
            return
        if self.n is None:
            raise ValueError(f"family {self.name} needs a parameter n")
        low = {"cerny": 2, "alternating": 3, "dihedral": 3}.get(self.name, 1)
        if self.n < low:
            raise ValueError(f"family {self.name} needs n >= {low}")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """``"cyclic:5"``, ``"cyclic5"`` or ``"agl15"``."""
        text = text.strip()
        if ":" in text:
            name, _, arg = text.partition(":")
            return cls(name, int(arg))
        if text in ("agl15", "klein4"):
            return cls(text)
        name = text.rstrip("0123456789")
        arg = text[len(name):]
        return cls(name, int(arg) if arg else None)

    @property
    def label(self) -> str:
        return self.name if self.name in ("agl15", "klein4") else f"{self.name}-{self.n}"


def curated_group(spec: FamilySpec) -> PermGroup:
    if spec.name == "cerny":
        raise ValueError("cerny is an automaton family, not a group")
    if spec.name == "agl15":
        return agl15()
    if spec.name == "klein4":
        return klein4()
    return {"cyclic": cyclic, "symmetric": symmetric, "alternating": alternating,
            "dihedral": dihedral, "trivial": trivial}[spec.name](spec.n)


def group_corpus(max_degree: int = 7) -> list[PermGroup]:
    """Cyclic 2..7, symmetric, alternating and dihedral 3..6, trivial 2..4,
    the Klein four group and AGL(1,5), cut at ``max_degree``."""
    groups = [cyclic(n) for n in range(2, 8)]
    groups += [symmetric(n) for n in range(3, 7)]
    groups += [alternating(n) for n in range(3, 7)]
    groups += [dihedral(n) for n in range(3, 7)]
    groups += [trivial(n) for n in range(2, 5)]
    groups += [klein4(), agl15()]
    return [g for g in groups if g.degree <= max_degree]


def automaton_corpus() -> list[tuple[str, SemiAutomaton]]:
    out = [(f"cerny-{n}", cerny(n)) for n in range(2, 9)]
    # 1 onto 0 crosses the blocks {0,2},{1,3}; 2 onto 0 stays inside one
    out.append(("cyclic4-cross-merge", group_automaton(cyclic(4), Transformation([0, 0, 2, 3]))))
    out.append(("cyclic4-block-merge", group_automaton(cyclic(4), Transformation([0, 1, 0, 3]))))
    out.append(("cyclic5-rank4", group_automaton(cyclic(5), Transformation([1, 1, 2, 3, 4]))))
    out.append(("swap-2", SemiAutomaton(2, [("s", Transformation([1, 0]))])))
    out.append(("permutations-4", SemiAutomaton(4, [("a", Transformation([1, 2, 3, 0])),
                                                    ("b", Transformation([1, 0, 2, 3]))])))
    # completely reachable with all 2-sets distinguishable, but {1,2} ~ Q
    out.append(("two-sets-gap", SemiAutomaton(3, [("a", Transformation([0, 2, 0])),
                                                  ("b", Transformation([1, 1, 2])),
                                                  ("c", Transformation([0, 0, 1]))])))
    out.append(("constant-3", SemiAutomaton(3, [("c", Transformation([0, 0, 0]))])))
    return out


def random_automaton(rng: random.Random, n: int, letters: int) -> SemiAutomaton:
    """Uniformly random letters named ``a``, ``b``, ..."""
    return SemiAutomaton(n, [(chr(ord("a") + i), Transformation(rng.randrange(n) for _ in range(n)))
                             for i in range(letters)])
