"""Regular languages as canonical minimal deterministic automata.

Every :class:`RegularLang` holds the minimal *complete* DFA of its language,
with states renumbered breadth-first from the start state (letters taken in
alphabet order).  Two values are therefore equal exactly when their
languages are equal, which is what every decision procedure in this
package reduces to.

Nondeterministic constructions (concatenation, star, reversal, quotients,
closures) go through a subset construction and are minimized right away.
"""

from __future__ import annotations

from collections import deque
from itertools import chain
from typing import Callable, Hashable, Iterable, Iterator

from .errors import BudgetExhausted, InputError
from .words import Alphabet, Word

DEFAULT_STATE_BUDGET = 200_000


class RegularLang:
    __slots__ = ("alphabet", "delta", "accepting", "_hash")

    def __init__(self, alphabet: Alphabet, delta, accepting):
        # Trusted constructor: callers go through _build(), which minimizes.
        self.alphabet = alphabet
        self.delta = tuple(tuple(row) for row in delta)
        self.accepting = frozenset(accepting)
        self._hash = None

    # -- graph views -------------------------------------------------

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> range:
        return range(len(self.delta))

    @property
    def initial(self) -> frozenset:
        return frozenset({0})

    @property
    def transitions(self) -> dict:
        letters = self.alphabet.letters
        return {(p, letters[i]): frozenset({q})
                for p, row in enumerate(self.delta) for i, q in enumerate(row)}

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RegularLang):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.delta == other.delta
                and self.accepting == other.accepting)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, self.delta, self.accepting))
        return self._hash

    def __repr__(self):
        return f"<RegularLang over {self.alphabet} with {self.num_states} states>"

    # -- constructors ----------------------------------------------------------

    @classmethod
    def empty(cls, alphabet: Alphabet) -> RegularLang:
        return cls(alphabet, [[0] * len(alphabet)], ())

    @classmethod
    def universe(cls, alphabet: Alphabet) -> RegularLang:
        """A*."""
        return cls(alphabet, [[0] * len(alphabet)], (0,))

    @classmethod
    def epsilon(cls, alphabet: Alphabet) -> RegularLang:
        return from_words(alphabet, [""])

    @classmethod
    def letters(cls, alphabet: Alphabet) -> RegularLang:
        """A, the one-letter words."""
        return from_words(alphabet, alphabet.letters)

    # -- basic queries ----------------------------------------------------------

    def step(self, state: int, w: Word) -> int:
        idx = self._letter_index
        for c in w:
            state = self.delta[state][idx(c)]
        return state

    def _letter_index(self, c):
        try:
            return self.alphabet.letters.index(c)
        except ValueError:
            raise InputError(f"letter {c!r} is not in alphabet {self.alphabet}") from None

    def __contains__(self, w: Word) -> bool:
        return self.step(0, w) in self.accepting

    def member(self, w: Word) -> bool:
        return w in self

    def live_states(self) -> frozenset:
        """States from which some accepting state is reachable."""
        preds = [set() for _ in self.delta]
        for p, row in enumerate(self.delta):
            for q in row:
                preds[q].add(p)
        seen = set(self.accepting)
        todo = list(seen)
        while todo:
            q = todo.pop()
            for p in preds[q]:
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    def is_empty(self) -> bool:
        return not self.accepting

    def is_universal(self) -> bool:
        return len(self.accepting) == self.num_states

    def is_finite(self) -> bool:
        """No cycle through a live state (all states are reachable by construction)."""
        live = self.live_states()
        color = {}
        for root in live:
            if root in color:
                continue
            color[root] = 1
            stack = [(root, iter(self.delta[root]))]
            while stack:
                p, it = stack[-1]
                for q in it:
                    if q not in live:
                        continue
                    if color.get(q) == 1:
                        return False
                    if q not in color:
                        color[q] = 1
                        stack.append((q, iter(self.delta[q])))
                        break
                else:
                    color[p] = 2
                    stack.pop()
        return True

    def words(self, max_len: int) -> list[Word]:
        """All members of length <= max_len, in shortlex order."""
        letters = self.alphabet.letters
        live = self.live_states()
        out = []
        layer = [("", 0)] if 0 in live else []
        for _ in range(max_len + 1):
            nxt = []
            for w, p in layer:
                if p in self.accepting:
                    out.append(w)
                for i, c in enumerate(letters):
                    q = self.delta[p][i]
                    if q in live:
                        nxt.append((w + c, q))
            layer = nxt
        return out

    def to_finite(self, max_len: int | None = None) -> frozenset:
        """The language as a finite set; raises if it is infinite."""
        if not self.is_finite():
            raise InputError("language is infinite")
        bound = self.num_states if max_len is None else max_len
        return frozenset(self.words(bound))

    def shortest_member(self) -> Word | None:
        """Shortlex-least member, or None when the language is empty."""
        return _bfs_first(self, lambda p: p in self.accepting)

    def shortest_outside(self) -> Word | None:
        """Shortlex-least word of the complement, or None when this is A*."""
        return _bfs_first(self, lambda p: p not in self.accepting)

    # -- algebra (methods delegate to module functions) ----------------------

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)

    def __matmul__(self, other):
        return concat(self, other)

    def complement(self):
        return complement(self)

    def star(self):
        return star(self)

    def plus(self):
        return plus(self)

    def reverse(self):
        return reverse(self)

    def relabel(self, mapping):
        return relabel(self, mapping)

    def issubset(self, other) -> bool:
        return is_subset(self, other)

    # -- textual format -------------------------------------------------------

    def to_text(self) -> str:
        letters = self.alphabet.letters
        lines = [f"states {self.num_states}", "initial 0",
                 "accepting " + " ".join(str(q) for q in sorted(self.accepting))]
        for p, row in enumerate(self.delta):
            for i, q in enumerate(row):
                lines.append(f"{p} {letters[i]} {q}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, alphabet: Alphabet, text: str) -> RegularLang:
        """Parse the textual format; nondeterministic or partial input is accepted."""
        n = None
        initial: set[int] = set()
        accepting: set[int] = set()
        edges: dict[tuple[int, str], set[int]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "states":
                    n = int(parts[1])
                elif parts[0] == "initial":
                    initial.update(int(x) for x in parts[1:])
                elif parts[0] == "accepting":
                    accepting.update(int(x) for x in parts[1:])
                else:
                    src, c, dst = parts
                    alphabet.check(c)
                    edges.setdefault((int(src), c), set()).add(int(dst))
            except (ValueError, IndexError):
                raise InputError(f"line {lineno}: cannot parse {raw!r}") from None
        if n is None:
            raise InputError("missing 'states' header")
        for p in chain(initial, accepting, *edges.values(), (k[0] for k in edges)):
            if not 0 <= p < n:
                raise InputError(f"state {p} out of range 0..{n - 1}")
        return _determinize(alphabet, frozenset(initial),
                            lambda p, c: edges.get((p, c), ()),
                            lambda p: p in accepting)


# ---------------------------------------------------------------------------
# Construction helpers


def _build(alphabet: Alphabet, start: Hashable, step: Callable, accept: Callable,
           budget: int = DEFAULT_STATE_BUDGET) -> RegularLang:
    """Explore a deterministic automaton given by callbacks, then minimize it."""
    letters = alphabet.letters
    index = {start: 0}
    order = [start]
    table = []
    for s in order:
        row = []
        for c in letters:
            t = step(s, c)
            j = index.get(t)
            if j is None:
                j = index[t] = len(order)
                order.append(t)
                if len(order) > budget:
                    raise BudgetExhausted(f"automaton exceeded {budget} states")
            row.append(j)
        table.append(row)
    accepting = [i for i, s in enumerate(order) if accept(s)]
    return _minimize(alphabet, table, accepting)


def _determinize(alphabet: Alphabet, initial: frozenset, step: Callable,
                 accept: Callable) -> RegularLang:
    """Subset construction for an NFA given by ``step(state, letter) -> states``."""
    return _build(
        alphabet,
        frozenset(initial),
        lambda S, c: frozenset(chain.from_iterable(step(p, c) for p in S)),
        lambda S: any(accept(p) for p in S),
    )


def _minimize(alphabet: Alphabet, table, accepting) -> RegularLang:
    """Moore partition refinement followed by canonical BFS renumbering."""
    n = len(table)
    acc = set(accepting)
    block = [1 if p in acc else 0 for p in range(n)]
    count = len(set(block))
    while True:
        ids: dict = {}
        new = [ids.setdefault((block[p], *(block[q] for q in table[p])), len(ids))
               for p in range(n)]
        if len(ids) == count:
            break
        block, count = new, len(ids)
    # quotient automaton, then renumber breadth-first from the start block
    qtable = {}
    for p in range(n):
        qtable.setdefault(block[p], [block[q] for q in table[p]])
    qacc = {block[p] for p in acc}
    rename = {block[0]: 0}
    order = [block[0]]
    for b in order:
        for t in qtable[b]:
            if t not in rename:
                rename[t] = len(order)
                order.append(t)
    delta = [[rename[t] for t in qtable[b]] for b in order]
    return RegularLang(alphabet, delta, [rename[b] for b in order if b in qacc])


def _same_alphabet(*langs: RegularLang) -> Alphabet:
    alphabet = langs[0].alphabet
    for L in langs[1:]:
        if L.alphabet != alphabet:
            raise InputError(f"alphabet mismatch: {alphabet} vs {L.alphabet}")
    return alphabet


def _bfs_first(L: RegularLang, goal: Callable[[int], bool]) -> Word | None:
    # Breadth-first with letters in alphabet order visits states in shortlex
    # order of their least access word.
    letters = L.alphabet.letters
    seen = {0: ""}
    todo = deque([0])
    while todo:
        p = todo.popleft()
        if goal(p):
            return seen[p]
        for i, q in enumerate(L.delta[p]):
            if q not in seen:
                seen[q] = seen[p] + letters[i]
                todo.append(q)
    return None


def _product(op: Callable[[bool, bool], bool], L: RegularLang, K: RegularLang) -> RegularLang:
    alphabet = _same_alphabet(L, K)
    idx = {c: i for i, c in enumerate(alphabet.letters)}
    return _build(
        alphabet,
        (0, 0),
        lambda s, c: (L.delta[s[0]][idx[c]], K.delta[s[1]][idx[c]]),
        lambda s: op(s[0] in L.accepting, s[1] in K.accepting),
    )


# ---------------------------------------------------------------------------
# Public operations


def from_words(alphabet: Alphabet, words: Iterable[Word]) -> RegularLang:
    """Trie automaton accepting exactly ``words``."""
    words = alphabet.check_all(words)
    prefixes = {w[:k] for w in words for k in range(len(w) + 1)}
    return _build(
        alphabet,
        "",
        lambda s, c: s + c if s is not None and s + c in prefixes else None,
        lambda s: s in words,
    )


def union(*langs: RegularLang) -> RegularLang:
    out = langs[0]
    for K in langs[1:]:
        out = _product(lambda a, b: a or b, out, K)
    return out


def intersect(*langs: RegularLang) -> RegularLang:
    out = langs[0]
    for K in langs[1:]:
        out = _product(lambda a, b: a and b, out, K)
    return out


def difference(L: RegularLang, K: RegularLang) -> RegularLang:
    return _product(lambda a, b: a and not b, L, K)


def complement(L: RegularLang) -> RegularLang:
    """A* minus L."""
    return _minimize(L.alphabet, L.delta, set(L.states) - L.accepting)


def concat(*langs: RegularLang) -> RegularLang:
    out = langs[0]
    for K in langs[1:]:
        out = _concat2(out, K)
    return out


def _concat2(L: RegularLang, K: RegularLang) -> RegularLang:
    alphabet = _same_alphabet(L, K)
    idx = {c: i for i, c in enumerate(alphabet.letters)}

    def enter(p):
        return frozenset({0}) if p in L.accepting else frozenset()

    return _build(
        alphabet,
        (0, enter(0)),
        lambda s, c: (L.delta[s[0]][idx[c]],
                      frozenset(K.delta[q][idx[c]] for q in s[1]) | enter(L.delta[s[0]][idx[c]])),
        lambda s: any(q in K.accepting for q in s[1]),
    )


HUB = -1


def star(L: RegularLang) -> RegularLang:
    """L*: a hub state (start, accepting) re-entered whenever a member of L ends."""
    idx = {c: i for i, c in enumerate(L.alphabet.letters)}

    def step(p, c):
        q = L.delta[0 if p == HUB else p][idx[c]]
        return (q, HUB) if q in L.accepting else (q,)

    return _determinize(L.alphabet, frozenset({HUB}), step, lambda p: p == HUB)


def plus(L: RegularLang) -> RegularLang:
    return concat(L, star(L))


def power(L: RegularLang, n: int) -> RegularLang:
    """L^n, with L^0 = {empty word}."""
    out = RegularLang.epsilon(L.alphabet)
    for _ in range(n):
        out = concat(out, L)
    return out


def reverse(L: RegularLang) -> RegularLang:
    letters = L.alphabet.letters
    preds: dict[tuple[int, str], list[int]] = {}
    for p, row in enumerate(L.delta):
        for i, q in enumerate(row):
            preds.setdefault((q, letters[i]), []).append(p)
    return _determinize(L.alphabet, L.accepting,
                        lambda q, c: preds.get((q, c), ()), lambda p: p == 0)


def relabel(L: RegularLang, mapping) -> RegularLang:
    """Image of L under the letter bijection ``mapping``."""
    letters = L.alphabet.letters
    inv = {dst: src for src, dst in dict(mapping).items()}
    if sorted(inv) != sorted(letters):
        raise InputError("relabelling must be a bijection of the alphabet")
    cols = [letters.index(inv[c]) for c in letters]
    delta = [[row[j] for j in cols] for row in L.delta]
    return _minimize(L.alphabet, delta, L.accepting)


def _reachable_pairs(K: RegularLang, L: RegularLang, start) -> set:
    seen = {start}
    todo = [start]
    while todo:
        p, q = todo.pop()
        for a, b in zip(K.delta[p], L.delta[q]):
            if (a, b) not in seen:
                seen.add((a, b))
                todo.append((a, b))
    return seen


def left_quotient(L: RegularLang, K: RegularLang) -> RegularLang:
    """K^{-1} L = {w : uw in L for some u in K}."""
    alphabet = _same_alphabet(L, K)
    entry = {q for p, q in _reachable_pairs(K, L, (0, 0)) if p in K.accepting}
    idx = {c: i for i, c in enumerate(alphabet.letters)}
    return _determinize(alphabet, frozenset(entry),
                        lambda p, c: (L.delta[p][idx[c]],), lambda p: p in L.accepting)


def right_quotient(L: RegularLang, K: RegularLang) -> RegularLang:
    """L K^{-1} = {w : wv in L for some v in K}."""
    alphabet = _same_alphabet(L, K)
    good = set()
    for p in L.states:
        if any(a in K.accepting and b in L.accepting
               for a, b in _reachable_pairs(K, L, (0, p))):
            good.add(p)
    return _minimize(alphabet, L.delta, good)


def quotient(side: str, L: RegularLang, K: RegularLang) -> RegularLang:
    if side == "left":
        return left_quotient(L, K)
    if side == "right":
        return right_quotient(L, K)
    raise InputError(f"quotient side must be 'left' or 'right', not {side!r}")


def prefix_closure(L: RegularLang) -> RegularLang:
    return _minimize(L.alphabet, L.delta, L.live_states())


def suffix_closure(L: RegularLang) -> RegularLang:
    idx = {c: i for i, c in enumerate(L.alphabet.letters)}
    return _determinize(L.alphabet, frozenset(L.states),
                        lambda p, c: (L.delta[p][idx[c]],), lambda p: p in L.accepting)


def factor_closure(L: RegularLang) -> RegularLang:
    live = L.live_states()
    idx = {c: i for i, c in enumerate(L.alphabet.letters)}
    return _determinize(L.alphabet, frozenset(live),
                        lambda p, c: (L.delta[p][idx[c]],), lambda p: p in live)


def equivalent(L: RegularLang, K: RegularLang) -> bool:
    _same_alphabet(L, K)
    return L == K


def is_empty(L: RegularLang) -> bool:
    return L.is_empty()


def member(L: RegularLang, w: Word) -> bool:
    return w in L


def is_subset(L: RegularLang, K: RegularLang) -> bool:
    return difference(L, K).is_empty()


def shortest_outside(L: RegularLang) -> Word | None:
    return L.shortest_outside()


def min_gen_set(M: RegularLang) -> RegularLang:
    """(M - {e}) - (M - {e})^2 for a submonoid M; raises if M is not one."""
    if "" not in M:
        raise InputError("not a submonoid: the empty word is missing")
    bad = difference(concat(M, M), M)
    if not bad.is_empty():
        raise InputError(f"not a submonoid: {bad.shortest_member()!r} in M.M but not in M")
    P = difference(M, RegularLang.epsilon(M.alphabet))
    return difference(P, concat(P, P))


_OPS = {
    "union": union,
    "intersect": intersect,
    "complement": complement,
    "concat": concat,
    "star": star,
    "reverse": reverse,
    "difference": difference,
}


def algebra(op: str, *args: RegularLang) -> RegularLang:
    """Dispatch a named language operation."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise InputError(f"unknown operation {op!r}") from None
    return fn(*args)


def words_of_length(alphabet: Alphabet, n: int) -> Iterator[Word]:
    """All words of length n in lexicographic (alphabet) order."""
    if n == 0:
        yield ""
        return
    for w in words_of_length(alphabet, n - 1):
        for c in alphabet.letters:
            yield w + c


def all_words(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    for n in range(max_len + 1):
        yield from words_of_length(alphabet, n)
