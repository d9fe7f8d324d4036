"""Cross-checks of the structural theorems over a corpus of ``.aut``/``.grp`` files.

Each (check, instance) pair yields one line.  Lines are sorted, so the report
does not depend on how work was scheduled.
"""

from __future__ import annotations

import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from .core import ImageTable, SemiAutomaton, StateSet, Transformation, apply_word
from .families import cerny
from .gamma1 import Certificate, completely_reachable_certificate, gamma1, gamma1_oracle
from .groups import (
    PermGroup,
    enumerate_rank_maps,
    group_automaton,
    inclusion_exclusion_condition,
    is_k_homogeneous,
    is_k_reachable,
    is_primitive_blocks,
    is_primitive_via_reachability,
    is_sync_maximal,
    is_synchronizing_for_all_rank_maps,
    is_transitive,
    khom_char_check,
)
from .io import parse_automaton, parse_group
from .pairs import has_max_syn_sc, mark_distinguishable
from .power import (
    is_strongly_connected_automaton,
    is_synchronizing,
    max_syn_sc,
    minimal_syn_dfa,
    reachable_masks,
    shortest_sync_word,
    syn_state_complexity,
)


@dataclass(frozen=True)
class Limits:
    exhaustive_n: int = 20
    gamma1_oracle_n: int = 5
    cross_check_n: int = 7
    sync_max_n: int = 7
    k_reach_n: int = 6
    k1_reach_n: int = 7
    rystsov_n: int = 6
    dedup_check_n: int = 5
    samples: int = 20


@dataclass(frozen=True)
class CheckResult:
    instance: str
    check: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.check} {self.instance}{tail}"


@dataclass
class Report:
    results: list[CheckResult]

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [r.line() for r in self.results]
        lines.append(f"{len(self.results)} checks, {len(self.results) - len(self.failures)} passed, "
                     f"{len(self.failures)} failed")
        return "\n".join(lines) + "\n"


# A check returns a bool, a string describing the failure, or None when it
# does not apply to the instance.
AUTOMATON_CHECKS: dict[str, Callable] = {}
GROUP_CHECKS: dict[str, Callable] = {}


def _automaton_check(name):
    def register(fn):
        AUTOMATON_CHECKS[name] = fn
        return fn
    return register


def _group_check(name):
    def register(fn):
        GROUP_CHECKS[name] = fn
        return fn
    return register


def _random_word(rng: random.Random, a: SemiAutomaton, max_len: int) -> tuple[int, ...]:
    return tuple(rng.randrange(a.alphabet_size) for _ in range(rng.randrange(max_len + 1)))


@_automaton_check("sync-criteria-agree")
def _sync_agree(a, rng, limits, name):
    if a.n > limits.exhaustive_n:
        return None
    return is_synchronizing(a) == (shortest_sync_word(a, limits.exhaustive_n) is not None)


@_automaton_check("sc-bound")
def _sc_bound(a, rng, limits, name):
    if a.n < 2 or a.n > limits.exhaustive_n:
        return None
    return syn_state_complexity(a, limits.exhaustive_n) <= max_syn_sc(a.n)


@_automaton_check("membership-oracle")
def _membership(a, rng, limits, name):
    if a.n > limits.exhaustive_n:
        return None
    dfa = minimal_syn_dfa(a, limits.exhaustive_n)
    full = StateSet.full(a.n)
    for _ in range(limits.samples):
        w = _random_word(rng, a, 3 * a.n * a.n)
        if dfa.accepts(w) != (len(apply_word(a, full, w)) == 1):
            return False
    return True


@_automaton_check("reachable-closed")
def _closed(a, rng, limits, name):
    if a.n > limits.exhaustive_n:
        return None
    masks = set(reachable_masks(a, limits.exhaustive_n))
    table = ImageTable(a)
    return (1 << a.n) - 1 in masks and 0 not in masks and all(
        s in masks for m in masks for s in table.successors(m))


@_automaton_check("strongly-connected-max-sc-implies-cr")
def _scc_lemma(a, rng, limits, name):
    if a.n > limits.exhaustive_n or not is_strongly_connected_automaton(a):
        return None
    if syn_state_complexity(a, limits.exhaustive_n) != max_syn_sc(a.n):
        return None
    return len(reachable_masks(a, limits.exhaustive_n)) == (1 << a.n) - 1


@_automaton_check("two-sets-lemma")
def _two_sets(a, rng, limits, name):
    if a.n < 2 or a.n > limits.cross_check_n:
        return None
    if len(reachable_masks(a, limits.cross_check_n)) != (1 << a.n) - 1:
        return None
    return has_max_syn_sc(a) == (syn_state_complexity(a) == max_syn_sc(a.n))


@_automaton_check("pair-witness-replay")
def _witness(a, rng, limits, name):
    if a.n < 2:
        return None
    marking = mark_distinguishable(a, witnesses=True)
    pa = marking.automaton
    for (s, t), w in marking.witnesses.items():
        if t == pa.sink:
            continue
        sizes = [len(apply_word(a, StateSet.of(a.n, pa.pairs[i]), w)) for i in (s, t)]
        if (sizes[0] == 1) == (sizes[1] == 1):
            return False
    return True


@_automaton_check("gamma1-oracle")
def _gamma1_oracle(a, rng, limits, name):
    if a.n > limits.gamma1_oracle_n:
        return None
    return gamma1(a) == gamma1_oracle(a)


@_automaton_check("gamma1-soundness")
def _gamma1_sound(a, rng, limits, name):
    if a.n > limits.cross_check_n:
        return None
    if completely_reachable_certificate(a) is not Certificate.PROVEN:
        return None
    return len(reachable_masks(a, limits.cross_check_n)) == (1 << a.n) - 1


_CERNY_NAME = re.compile(r"^cerny-(\d+)$")


@_automaton_check("cerny-family")
def _cerny_family(a, rng, limits, name):
    match = _CERNY_NAME.match(name)
    if not match or a.n > limits.exhaustive_n:
        return None
    n = int(match.group(1))
    if a.n != n:
        return f"expected {n} states, found {a.n}"
    word = shortest_sync_word(a, limits.exhaustive_n)
    if word is None or len(word) != (n - 1) ** 2:
        return f"shortest reset word length {None if word is None else len(word)} != {(n - 1) ** 2}"
    if n >= 3 and len(reachable_masks(a, limits.exhaustive_n)) != (1 << n) - 1:
        return "not completely reachable"
    if n >= 3 and syn_state_complexity(a, limits.exhaustive_n) != max_syn_sc(n):
        return "sc(Syn) not maximal"
    return a == cerny(n) or "transitions differ from cerny(n)"


def _rank_maps_sample(rng, g: PermGroup, r: int, count: int) -> list[Transformation]:
    maps = list(enumerate_rank_maps(g.degree, r, g))
    if len(maps) <= count:
        return maps
    return rng.sample(maps, count)


@_group_check("primitive-blocks-vs-reach")
def _prim(g, rng, limits, name):
    if g.degree > limits.cross_check_n:
        return None
    return is_primitive_blocks(g) == is_primitive_via_reachability(g, limits.cross_check_n)


@_group_check("rystsov")
def _rystsov(g, rng, limits, name):
    if g.degree > limits.rystsov_n:
        return None
    return is_primitive_blocks(g) == is_synchronizing_for_all_rank_maps(g, limits.rystsov_n)


@_group_check("sync-max-implies-primitive")
def _sm_prim(g, rng, limits, name):
    if g.degree > limits.sync_max_n:
        return None
    return not is_sync_maximal(g, limit=limits.sync_max_n) or is_primitive_blocks(g)


@_group_check("2-hom-implies-sync-max")
def _hom_sm(g, rng, limits, name):
    if g.degree < 2 or g.degree > limits.sync_max_n or not is_k_homogeneous(g, 2):
        return None
    return is_sync_maximal(g, limit=limits.sync_max_n)


@_group_check("2-hom-implies-transitive")
def _hom_trans(g, rng, limits, name):
    if g.degree <= 2 or not is_k_homogeneous(g, 2):
        return None
    return is_transitive(g)


@_group_check("k-reach-implies-k-hom")
def _kreach(g, rng, limits, name):
    n = g.degree
    if n < 2 or n > limits.k_reach_n:
        return None
    for k in range(1, min(3, n - 1) + 1):
        if is_k_reachable(g, k, limit=limits.k1_reach_n) and not is_k_homogeneous(g, k):
            return f"k = {k}"
    return True


@_group_check("1-reach-iff-primitive")
def _one_reach(g, rng, limits, name):
    if g.degree < 3 or g.degree > limits.k1_reach_n:
        return None
    return is_k_reachable(g, 1, limit=limits.k1_reach_n) == is_primitive_blocks(g)


@_group_check("n-1-reach-iff-transitive")
def _n1_reach(g, rng, limits, name):
    n = g.degree
    if n < 2 or n > limits.k_reach_n:
        return None
    return is_k_reachable(g, n - 1, limit=limits.k1_reach_n) == is_transitive(g)


@_group_check("khom-char-agreement")
def _khom(g, rng, limits, name):
    n = g.degree
    if n < 2 or n > limits.k_reach_n:
        return None
    for k in range(1, n):
        expected = is_k_homogeneous(g, k)
        some = khom_char_check(g, k, "some_f", limit=limits.k1_reach_n)
        every = khom_char_check(g, k, "any_f", limit=limits.k1_reach_n)
        if not expected == some == every:
            return f"k = {k}: orbit={expected} some_f={some} any_f={every}"
    return True


@_group_check("dedup-soundness")
def _dedup(g, rng, limits, name):
    if g.degree > limits.dedup_check_n:
        return None
    return is_sync_maximal(g, dedup=True) == is_sync_maximal(g, dedup=False)


@_group_check("sync-max-fast-vs-exact")
def _sm_exact(g, rng, limits, name):
    # the 2-set shortcut is not sound for arbitrary automata, so compare it
    # against minimization wherever that is affordable
    if g.degree <= 2 or g.degree > limits.k_reach_n:
        return None
    return is_sync_maximal(g) == is_sync_maximal(g, exact=True)


@_group_check("max-sc-implies-transitive-and-cr")
def _max_sc(g, rng, limits, name):
    n = g.degree
    if n <= 2 or n > limits.k_reach_n:
        return None
    transitive = is_transitive(g)
    for f in enumerate_rank_maps(n, n - 1, g):
        a = group_automaton(g, f)
        if syn_state_complexity(a) == max_syn_sc(n):
            if not transitive or len(reachable_masks(a)) != (1 << n) - 1:
                return f"f = {list(f.images)}"
    return True


@_group_check("lower-rank-not-max")
def _lower_rank(g, rng, limits, name):
    n = g.degree
    if n <= 2 or n > limits.k_reach_n:
        return None
    for r in range(1, n - 1):
        for f in _rank_maps_sample(rng, g, r, limits.samples):
            if syn_state_complexity(group_automaton(g, f)) == max_syn_sc(n):
                return f"f = {list(f.images)}"
    return True


@_group_check("inclusion-exclusion-implications")
def _incl_excl(g, rng, limits, name):
    n = g.degree
    if n < 3 or n > min(8, limits.k_reach_n) or not inclusion_exclusion_condition(g):
        return None
    if not is_k_homogeneous(g, 2):
        return "condition holds but the group is not 2-homogeneous"
    for f in _rank_maps_sample(rng, g, n - 2, limits.samples):
        masks = set(reachable_masks(group_automaton(g, f)))
        if any(m not in masks for m in range(1, 1 << n) if bin(m).count("1") <= n - 2):
            return f"f = {list(f.images)}"
    return True


@_group_check("gamma1-group-equivariance")
def _equivariance(g, rng, limits, name):
    n = g.degree
    if n < 2 or n > limits.cross_check_n:
        return None
    for f in _rank_maps_sample(rng, g, n - 1, limits.samples):
        edges = gamma1(group_automaton(g, f)).edges
        for h in g.generators:
            if any((h(p), h(q)) not in edges for p, q in edges):
                return f"f = {list(f.images)}"
    return True


def _evaluate(kind: str, name: str, obj, limits: Limits, seed: int) -> list[CheckResult]:
    checks = AUTOMATON_CHECKS if kind == "aut" else GROUP_CHECKS
    out = []
    for check, fn in checks.items():
        rng = random.Random(f"{seed}:{check}:{name}")
        try:
            verdict = fn(obj, rng, limits, name)
        except Exception as exc:  # a crashing check is a failed check
            out.append(CheckResult(name, check, False, f"{type(exc).__name__}: {exc}"))
            continue
        if verdict is None:
            continue
        if isinstance(verdict, str):
            out.append(CheckResult(name, check, False, verdict))
        else:
            out.append(CheckResult(name, check, bool(verdict)))
    return out


def _evaluate_file(path: str, limits: Limits, seed: int) -> list[CheckResult]:
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    if p.suffix == ".aut":
        return _evaluate("aut", p.stem, parse_automaton(text), limits, seed)
    return _evaluate("grp", p.stem, parse_group(text), limits, seed)


def corpus_files(corpus_dir) -> list[Path]:
    root = Path(corpus_dir)
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {root}")
    return sorted(p for p in root.iterdir() if p.suffix in (".aut", ".grp"))


def verify_instances(instances: Iterable[tuple[str, object]], limits: Limits = Limits(),
                     seed: int = 0) -> Report:
    results = []
    for name, obj in instances:
        kind = "aut" if isinstance(obj, SemiAutomaton) else "grp"
        results += _evaluate(kind, name, obj, limits, seed)
    return Report(sorted(results, key=lambda r: (r.instance, r.check)))


def verify_theorems(corpus_dir, limits: Limits = Limits(), seed: int = 0, jobs: int = 1) -> Report:
    """Run every applicable check on every corpus file.

    Parse errors propagate (with the offending path) before any check runs.
    """
    files = corpus_files(corpus_dir)
    for p in files:
        text = p.read_text(encoding="utf-8")
        try:
            parse_automaton(text) if p.suffix == ".aut" else parse_group(text)
        except ValueError as exc:
            raise ValueError(f"{p}: {exc}") from None
    results: list[CheckResult] = []
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_evaluate_file, map(str, files), [limits] * len(files), [seed] * len(files)):
                results += part
    else:
        for p in files:
            results += _evaluate_file(str(p), limits, seed)
    return Report(sorted(results, key=lambda r: (r.instance, r.check)))
