"""Text formats for automata (``.aut``) and permutation groups (``.grp``).

Automaton::

    states 4
    letter a 1 2 3 0
    letter b 0 1 2 0

Group (image notation, or cycle notation with fixed points omitted)::

    degree 5
    gen g 1 2 3 4 0
    cyc h (1 2 4 3)

``#`` starts a comment line; blank lines are ignored.
"""

from __future__ import annotations

import re

from .core import SemiAutomaton, Transformation
from .groups import PermGroup


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(number, f"not an integer: {token!r}") from None


def _header(lines, keyword: str) -> int:
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError(0, f"missing '{keyword} N' line") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise ParseError(number, f"expected '{keyword} N'")
    size = _int(parts[1], number)
    if size < 1:
        raise ParseError(number, f"{keyword} must be at least 1")
    return size


def _images(tokens: list[str], n: int, number: int) -> list[int]:
    if len(tokens) != n:
        raise ParseError(number, f"bad arity: expected {n} images, got {len(tokens)}")
    images = [_int(t, number) for t in tokens]
    for i in images:
        if not 0 <= i < n:
            raise ParseError(number, f"out-of-range image {i} (states are 0..{n - 1})")
    return images


def parse_automaton(text: str) -> SemiAutomaton:
    lines = _lines(text)
    n = _header(lines, "states")
    letters = []
    names = set()
    for number, line in lines:
        parts = line.split()
        if parts[0] != "letter" or len(parts) < 2:
            raise ParseError(number, "expected 'letter NAME i0 ... i(N-1)'")
        name = parts[1]
        if name in names:
            raise ParseError(number, f"duplicate letter name {name!r}")
        names.add(name)
        letters.append((name, Transformation(_images(parts[2:], n, number))))
    if not letters:
        raise ParseError(0, "no letters")
    return SemiAutomaton(n, letters)


def serialize_automaton(a: SemiAutomaton) -> str:
    out = [f"states {a.n}"]
    for name, t in a.letters:
        out.append(" ".join(["letter", name, *map(str, t.images)]))
    return "\n".join(out) + "\n"


_CYCLE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(body: str, n: int, number: int) -> Transformation:
    stripped = _CYCLE.sub("", body).strip()
    if stripped:
        raise ParseError(number, f"malformed cycle notation near {stripped!r}")
    cycles = []
    for group in _CYCLE.findall(body):
        points = [_int(t, number) for t in group.replace(",", " ").split()]
        cycles.append(points)
    try:
        return Transformation.from_cycles(n, cycles)
    except ValueError as exc:
        raise ParseError(number, str(exc)) from None


def parse_group(text: str) -> PermGroup:
    lines = _lines(text)
    n = _header(lines, "degree")
    gens = []
    names = set()
    for number, line in lines:
        parts = line.split(maxsplit=2)
        if len(parts) < 2 or parts[0] not in ("gen", "cyc"):
            raise ParseError(number, "expected 'gen NAME images' or 'cyc NAME cycles'")
        name = parts[1]
        if name in names:
            raise ParseError(number, f"duplicate generator name {name!r}")
        names.add(name)
        rest = parts[2] if len(parts) > 2 else ""
        if parts[0] == "gen":
            t = Transformation(_images(rest.split(), n, number))
            if not t.is_permutation():
                raise ParseError(number, f"non-bijective generator {name!r}")
        else:
            t = _parse_cycles(rest, n, number)
        gens.append((name, t))
    if not gens:
        raise ParseError(0, "no generators")
    return PermGroup(n, [t for _, t in gens], generator_names=[k for k, _ in gens])


def serialize_group(g: PermGroup) -> str:
    names = g.generator_names or [f"g{i + 1}" for i in range(len(g.generators))]
    out = [f"degree {g.degree}"]
    for name, t in zip(names, g.generators):
        out.append(" ".join(["gen", name, *map(str, t.images)]))
    return "\n".join(out) + "\n"
