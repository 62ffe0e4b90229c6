"""Free hulls and theta-invariant free hulls of finite sets of words."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import automata as fa
from .errors import BudgetExhausted, ConstructionError, InputError
from .properties import infer_alphabet, is_code
from .words import Alphabet, LiteralMap, Word, factorizations, is_invariant, orbit_lang

DEFAULT_BUDGET = 10_000


@dataclass
class HullResult:
    generators: frozenset
    source: frozenset
    iterations: int = 0
    source_is_code: bool = True
    defect_holds: bool | None = None
    initial_factor_map: dict = field(default_factory=dict)
    terminal_factor_map: dict = field(default_factory=dict)

    def sorted_generators(self) -> list[Word]:
        return sorted(self.generators, key=lambda w: (len(w), w))


def _check_input(X) -> frozenset:
    X = frozenset(X)
    if not X:
        raise InputError("cannot take the hull of an empty set")
    if "" in X:
        raise InputError("the empty word cannot belong to a code")
    return X


def minimal_generators(G: Iterable[Word]) -> frozenset:
    """Minimal generating set of G*: drop members that factor into >= 2 members."""
    G = frozenset(G)
    return frozenset(g for g in G
                     if not any(len(f) > 1 for f in factorizations(g, G, limit=None)))


def _stable_candidates(G: frozenset, alphabet: Alphabet) -> fa.RegularLang:
    # (G*)^-1 G* & G* (G*)^-1, minus G*: words forced into any free monoid containing G
    S = fa.star(fa.from_words(alphabet, G))
    Q = fa.intersect(fa.left_quotient(S, S), fa.right_quotient(S, S))
    return fa.difference(Q, S)


def free_hull(X: Iterable[Word], budget: int = DEFAULT_BUDGET) -> HullResult:
    """Minimal generating set of the smallest free submonoid containing X.

    Starting from G = X, repeatedly add a word w outside G* with
    w in (G*)^-1 G* & G* (G*)^-1.  Every free submonoid containing G is
    stable and so contains w; once G is a code, G* is free and therefore the
    hull.  Candidates are proper prefixes and suffixes of words of X, shortest
    first; should none apply while G is still not a code, the suffix left over
    by a double factorization of G is added instead.
    """
    X = _check_input(X)
    alphabet = infer_alphabet(X)
    pool = sorted({w[:k] for w in X for k in range(1, len(w))}
                  | {w[k:] for w in X for k in range(1, len(w))},
                  key=alphabet.shortlex_key)
    G = minimal_generators(X)
    steps = 0
    while True:
        verdict = is_code(G)
        if verdict:
            break
        if steps >= budget:
            raise BudgetExhausted(f"free hull not reached after {budget} steps")
        Q = _stable_candidates(G, alphabet)
        w = next((p for p in pool if p in Q), None)
        if w is None:
            top, bot = verdict.witness["factorizations"]
            short, long = sorted((top[0], bot[0]), key=len)
            w = long[len(short):]
        G = minimal_generators(G | {w})
        steps += 1
    result = HullResult(generators=G, source=X, iterations=steps,
                        source_is_code=bool(is_code(X)))
    if not result.source_is_code:
        result.defect_holds = len(G) <= len(X) - 1
    _fill_factor_maps(result)
    return result


def invariant_free_hull(theta: LiteralMap, X: Iterable[Word], budget: int = DEFAULT_BUDGET,
                        hull_first: bool = False) -> HullResult:
    """Minimal generating set of the least theta-invariant free submonoid containing X.

    X is closed under theta first.  The result alternates theta-closure of the
    generators and the free hull until neither changes anything.
    ``hull_first`` swaps the order inside each round.
    """
    X = _check_input(X)
    for w in X:
        theta.alphabet.check(w)
    closed = orbit_lang(theta, X)
    G = closed
    steps = 0
    while True:
        if hull_first:
            H = orbit_lang(theta, free_hull(G, budget).generators)
        else:
            H = free_hull(orbit_lang(theta, G), budget).generators
        steps += 1
        if H == G:
            break
        if steps >= budget:
            raise BudgetExhausted(f"invariant hull not reached after {budget} rounds")
        G = H
    result = HullResult(generators=G, source=closed, iterations=steps,
                        source_is_code=bool(is_code(closed)))
    if not result.source_is_code:
        result.defect_holds = len(G) <= len(closed) - 1
    if not is_invariant(theta, G):
        raise ConstructionError("hull generators are not theta-invariant")
    _fill_factor_maps(result)
    return result


def _fill_factor_maps(result: HullResult) -> None:
    Y = result.generators
    initial: dict = {}
    terminal: dict = {}
    for x in sorted(result.source, key=lambda w: (len(w), w)):
        parses = factorizations(x, Y, limit=2)
        if len(parses) != 1:
            raise ConstructionError(f"{x!r} has {len(parses)} factorizations over the hull")
        initial.setdefault(parses[0][0], x)
        terminal.setdefault(parses[0][-1], x)
    result.initial_factor_map = initial
    result.terminal_factor_map = terminal


def defect_report(theta: LiteralMap, X: Iterable[Word], budget: int = DEFAULT_BUDGET) -> HullResult:
    """Invariant hull plus a check that every generator starts and ends some input word."""
    result = invariant_free_hull(theta, X, budget)
    for side, table in (("initial", result.initial_factor_map),
                        ("terminal", result.terminal_factor_map)):
        missing = result.generators - table.keys()
        if missing:
            raise ConstructionError(f"generators {sorted(missing)} are never the {side} factor")
    if result.defect_holds is False:
        raise ConstructionError("defect bound violated")
    return result
