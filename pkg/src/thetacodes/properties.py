"""Deciders for code families, completeness, thinness and maximality.

Functions accept either a finite set of words (any iterable of ``str``) or a
:class:`~thetacodes.automata.RegularLang`.  Finite inputs that need automata
take an ``alphabet`` argument; when it is omitted the letters occurring in
the words are used, which is only safe for properties that do not depend on
unused letters (code, prefix, delays, synchronization, circularity).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable

from . import automata as fa
from .automata import RegularLang
from .errors import InputError, PreconditionError
from .words import Alphabet, LiteralMap, Word, factorizations, is_invariant

DEFAULT_CAP = 8
_SEP = "\x00"


@dataclass(frozen=True)
class Check:
    """Verdict of a decider; ``witness`` explains a negative answer."""

    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


# ---------------------------------------------------------------------------
# input normalization


def infer_alphabet(X: Iterable[Word]) -> Alphabet:
    letters = sorted({c for w in X for c in w})
    if not letters:
        raise InputError("cannot infer an alphabet from an empty set of words")
    return Alphabet.of(letters)


def as_lang(X, alphabet: Alphabet | None = None) -> RegularLang:
    if isinstance(X, RegularLang):
        if alphabet is not None and alphabet != X.alphabet:
            raise InputError("alphabet mismatch")
        return X
    X = frozenset(X)
    return fa.from_words(alphabet or infer_alphabet(X), X)


def _require_alphabet(X, alphabet):
    if isinstance(X, RegularLang):
        return X.alphabet
    if alphabet is None:
        raise InputError("an alphabet is required for this property of a finite set")
    return alphabet


def _no_empty_word(X):
    if ("" in X) if not isinstance(X, RegularLang) else X.member(""):
        raise InputError("the empty word cannot belong to a code")


# ---------------------------------------------------------------------------
# unique decipherability


def sardinas_patterson(X: Iterable[Word]) -> Check:
    """Residual iteration on dangling suffixes, tracking both factorizations.

    A queued suffix ``s`` comes with sequences ``top`` and ``bot`` such that
    ``concat(top) == concat(bot) + s`` and ``top[0] != bot[0]``.
    """
    X = sorted(set(X), key=lambda w: (len(w), w))
    if "" in X:
        raise InputError("the empty word cannot belong to a code")
    seen = {}
    todo = deque()
    for x in X:
        for y in X:
            if x != y and y.startswith(x):
                s = y[len(x):]
                if s not in seen:
                    seen[s] = ([y], [x])
                    todo.append(s)
    while todo:
        s = todo.popleft()
        top, bot = seen[s]
        for x in X:
            if x == s:
                word = "".join(top)
                return Check(False, {"word": word, "factorizations": [top, bot + [x]]})
            if x.startswith(s):
                nxt, state = x[len(s):], (bot + [x], top)
            elif s.startswith(x):
                nxt, state = s[len(x):], (top, bot + [x])
            else:
                continue
            if nxt not in seen:
                seen[nxt] = state
                todo.append(nxt)
    return Check(True)


def star_ambiguity(X: RegularLang) -> Check:
    """Decide whether X is a code by looking for two accepting runs on one word.

    The runs live in the automaton for X*: the live DFA states of X plus a hub
    (start and only final state).  Each letter either continues inside the DFA
    or, when the DFA reaches an accepting state, cuts back to the hub.  Runs
    are in bijection with X-factorizations, so X is a code iff the square of
    this automaton has no useful state off the diagonal.
    """
    _no_empty_word(X)
    live = X.live_states()
    hub = -1
    letters = X.alphabet.letters

    def succ(p, i):
        q = X.delta[0 if p == hub else p][i]
        out = []
        if q in live:
            out.append(q)
        if q in X.accepting:
            out.append(hub)
        return out

    start = (hub, hub)
    parent = {start: None}
    todo = deque([start])
    while todo:
        pq = todo.popleft()
        for i in range(len(letters)):
            for p2 in succ(pq[0], i):
                for q2 in succ(pq[1], i):
                    nxt = (p2, q2)
                    if nxt not in parent:
                        parent[nxt] = (pq, letters[i])
                        todo.append(nxt)
    # co-reachability towards (hub, hub) inside the reachable part
    preds: dict = {pq: [] for pq in parent}
    for pq in parent:
        for i in range(len(letters)):
            for p2 in succ(pq[0], i):
                for q2 in succ(pq[1], i):
                    preds[(p2, q2)].append((pq, letters[i]))
    tail = {start: ""}
    todo = deque([start])
    while todo:
        pq = todo.popleft()
        for src, c in preds[pq]:
            if src not in tail:
                tail[src] = c + tail[pq]
                todo.append(src)
    off = [pq for pq in tail if pq[0] != pq[1]]
    if not off:
        return Check(True)
    pq = min(off, key=lambda s: len(_path_to(parent, s)) + len(tail[s]))
    word = _path_to(parent, pq) + tail[pq]
    return Check(False, {"word": word,
                         "factorizations": factorizations(word, X.member, limit=2)})


def _path_to(parent, node) -> str:
    out = []
    while parent[node] is not None:
        node, c = parent[node]
        out.append(c)
    return "".join(reversed(out))


def is_code(X) -> Check:
    """Sardinas-Patterson for finite sets, run ambiguity for regular ones."""
    _no_empty_word(X)
    if isinstance(X, RegularLang):
        return star_ambiguity(X)
    return sardinas_patterson(X)


def _require_code(X):
    verdict = is_code(X)
    if not verdict:
        raise PreconditionError("input is not a code", prop="code", witness=verdict.witness)


# ---------------------------------------------------------------------------
# prefix / suffix / bifix


def is_prefix(X) -> Check:
    """X is prefix iff no member is a proper prefix of another."""
    _no_empty_word(X)
    if isinstance(X, RegularLang):
        A_plus = fa.plus(RegularLang.letters(X.alphabet))
        w = fa.intersect(X, fa.concat(X, A_plus)).shortest_member()
        if w is None:
            return Check(True)
        short = next(w[:k] for k in range(1, len(w)) if w[:k] in X)
        return Check(False, (short, w))
    words = sorted(set(X), key=lambda w: (len(w), w))
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            if len(y) > len(x) and y.startswith(x):
                return Check(False, (x, y))
    return Check(True)


def is_suffix(X) -> Check:
    _no_empty_word(X)
    if isinstance(X, RegularLang):
        verdict = is_prefix(X.reverse())
    else:
        verdict = is_prefix({w[::-1] for w in X})
    if verdict:
        return verdict
    a, b = verdict.witness
    return Check(False, (a[::-1], b[::-1]))


def is_bifix(X) -> Check:
    left = is_prefix(X)
    if not left:
        return Check(False, {"prefix": left.witness})
    right = is_suffix(X)
    if not right:
        return Check(False, {"suffix": right.witness})
    return Check(True)


# ---------------------------------------------------------------------------
# deciphering delays


def delay_witness(X, d: int, alphabet: Alphabet | None = None) -> Word | None:
    """Shortest word of (X^-1 X* & X^d A+) - X+, or None if the inclusion holds."""
    L = as_lang(X, alphabet)
    A_plus = fa.plus(RegularLang.letters(L.alphabet))
    lhs = fa.intersect(fa.left_quotient(fa.star(L), L), fa.concat(fa.power(L, d), A_plus))
    return fa.difference(lhs, fa.plus(L)).shortest_member()


def two_way_delay_witness(X, d: int, alphabet: Alphabet | None = None) -> Word | None:
    """Shortest word of (X* X^-1 & A+ X^d) - X+, or None if the inclusion holds."""
    L = as_lang(X, alphabet)
    A_plus = fa.plus(RegularLang.letters(L.alphabet))
    lhs = fa.intersect(fa.right_quotient(fa.star(L), L), fa.concat(A_plus, fa.power(L, d)))
    return fa.difference(lhs, fa.plus(L)).shortest_member()


def deciphering_delay(X, d_max: int = DEFAULT_CAP, alphabet: Alphabet | None = None) -> int | None:
    """Least d <= d_max with X^-1 X* & X^d A+ contained in X+; None if none up to the cap."""
    _require_code(X)
    L = as_lang(X, alphabet)
    for d in range(d_max + 1):
        if delay_witness(L, d) is None:
            return d
    return None


def two_way_delay(X, d_max: int = DEFAULT_CAP, alphabet: Alphabet | None = None) -> int | None:
    """Least d' <= d_max with X* X^-1 & A+ X^d' contained in X+."""
    _require_code(X)
    L = as_lang(X, alphabet)
    for d in range(d_max + 1):
        if two_way_delay_witness(L, d) is None:
            return d
    return None


# ---------------------------------------------------------------------------
# uniform synchronization


def _sync_left_violation(L: RegularLang, k: int):
    """Find (u, x, y) with x, y in X^k, uxy in P(X*) and ux not in X*.

    Breadth-first search over (phase, X*-state, X^k-state): phase 0 reads u,
    phase 1 reads x, phase 2 reads y.  No determinization is needed.
    """
    D = fa.star(L)
    K = fa.power(L, k)
    live = D.live_states()
    letters = L.alphabet.letters
    start = (0, 0, 0)
    parent = {start: None}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        phase, p, q = s
        moves = []
        for i, c in enumerate(letters):
            p2 = D.delta[p][i]
            if p2 not in live:
                continue
            moves.append(((phase, p2, K.delta[q][i] if phase else 0), c))
        if phase == 0:
            moves.append(((1, p, 0), _SEP))
        elif phase == 1 and q in K.accepting and p not in D.accepting:
            moves.append(((2, p, 0), _SEP))
        for nxt, c in moves:
            if nxt not in parent:
                parent[nxt] = (s, c)
                if nxt[0] == 2 and nxt[2] in K.accepting:
                    u, x, y = _path_to(parent, nxt).split(_SEP)
                    return u, x, y, nxt[1]
                todo.append(nxt)
    return None


def _completion(D: RegularLang, p: int) -> Word:
    """Shortest v with D accepting from state p."""
    letters = D.alphabet.letters
    seen = {p: ""}
    todo = deque([p])
    while todo:
        q = todo.popleft()
        if q in D.accepting:
            return seen[q]
        for i, r in enumerate(D.delta[q]):
            if r not in seen:
                seen[r] = seen[q] + letters[i]
                todo.append(r)
    raise AssertionError("state is not live")


def is_uniformly_synchronized(X, k: int, alphabet: Alphabet | None = None) -> Check:
    """uxyv in X* with x, y in X^k forces ux and yv in X*.

    Checked as two one-sided conditions: {u : uxy in P(X*)} must lie in
    X* x^-1 and {v : xyv in S(X*)} in y^-1 X*, for every x, y in X^k; the
    second is the first one on the reversed code.
    """
    if k < 1:
        raise InputError("synchronization delay must be at least 1")
    _no_empty_word(X)
    code = is_code(X)
    if not code:
        return Check(False, {"not_a_code": code.witness})
    L = as_lang(X, alphabet)
    found = _sync_left_violation(L, k)
    if found:
        u, x, y, p = found
        v = _completion(fa.star(L), p) or x + y
        return Check(False, {"u": u, "x": x, "y": y, "v": v, "side": "left",
                             "word": u + x + y + v, "not_in_star": u + x})
    found = _sync_left_violation(L.reverse(), k)
    if found:
        ru, rx, ry, p = found
        rv = _completion(fa.star(L.reverse()), p) or rx + ry
        u, x, y, v = rv[::-1], ry[::-1], rx[::-1], ru[::-1]
        return Check(False, {"u": u, "x": x, "y": y, "v": v, "side": "right",
                             "word": u + x + y + v, "not_in_star": y + v})
    return Check(True)


def sync_delay(X, k_max: int = DEFAULT_CAP, alphabet: Alphabet | None = None) -> int | None:
    """Least k <= k_max for which X is uniformly synchronized."""
    for k in range(1, k_max + 1):
        if is_uniformly_synchronized(X, k, alphabet):
            return k
    return None


# ---------------------------------------------------------------------------
# circularity


def is_circular(X, alphabet: Alphabet | None = None) -> Check:
    """X is circular iff it is a code and X* is very pure.

    Very purity fails iff words u, v exist with uv, vu in X* and u not in X*.
    With D the DFA of X*, p = D(u) and q = D(v), that means: from (start, q)
    some u leads to (p, final) with p not final, and from (p, start) some v
    leads to (final, q).  Both are reachability questions in D x D.
    """
    _no_empty_word(X)
    code = is_code(X)
    if not code:
        return Check(False, {"not_a_code": code.witness})
    L = as_lang(X, alphabet)
    D = fa.star(L)
    F = D.accepting
    letters = D.alphabet.letters
    n = D.num_states
    reach = {}

    def reached(a, b):
        key = (a, b)
        if key not in reach:
            parent = {key: None}
            todo = deque([key])
            while todo:
                s = todo.popleft()
                for i in range(len(letters)):
                    t = (D.delta[s[0]][i], D.delta[s[1]][i])
                    if t not in parent:
                        parent[t] = (s, letters[i])
                        todo.append(t)
            reach[key] = parent
        return reach[key]

    best = None
    for q in range(n):
        via_u = reached(0, q)
        for (p, r) in via_u:
            if p in F or r not in F:
                continue
            via_v = reached(p, 0)
            for (f, q2) in via_v:
                if q2 == q and f in F:
                    u = _path_to(via_u, (p, r))
                    v = _path_to(via_v, (f, q2))
                    key = (len(u) + len(v), u + v, u)
                    if best is None or key < best[0]:
                        best = (key, u, v)
    if best is None:
        return Check(True)
    _, u, v = best
    return Check(False, _circular_witness(u, v, L.member))


def _circular_witness(u: Word, v: Word, member) -> dict:
    """Express a very-purity failure (u, v) as x1..xm = s y2..yn p with y1 = ps."""
    xs = factorizations(u + v, member, limit=1)[0]
    zs = factorizations(v + u, member, limit=1)[0]
    pos = 0
    for j, z in enumerate(zs):
        if pos < len(v) < pos + len(z):
            break
        pos += len(z)
    else:
        raise AssertionError("cut falls on a factor boundary, so u would be in X*")
    p, s = zs[j][: len(v) - pos], zs[j][len(v) - pos:]
    ys = [zs[j]] + zs[j + 1:] + zs[:j]
    return {"u": u, "v": v, "s": s, "p": p, "x_factors": xs, "y_factors": ys}


# ---------------------------------------------------------------------------
# completeness, thinness, maximality


def is_complete(X, alphabet: Alphabet | None = None) -> Check:
    """F(X*) = A*; the witness is the shortlex-least word outside F(X*)."""
    L = as_lang(X, _require_alphabet(X, alphabet))
    w = fa.factor_closure(fa.star(L)).shortest_outside()
    return Check(True) if w is None else Check(False, w)


def is_thin(X, alphabet: Alphabet | None = None) -> Check:
    """F(X) != A*; the witness (a word outside F(X)) is returned when thin."""
    L = as_lang(X, _require_alphabet(X, alphabet))
    w = fa.factor_closure(L).shortest_outside()
    return Check(w is not None, w)


class Maximality(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


def is_maximal(theta: LiteralMap, X) -> tuple[Maximality, str]:
    """Maximality of a code, decided through completeness when X is thin.

    For thin theta-invariant codes completeness, maximality and maximality
    among theta-invariant codes coincide.  Nothing is claimed otherwise.
    """
    _require_code(X)
    alphabet = theta.alphabet
    if not is_thin(X, alphabet):
        return Maximality.UNKNOWN, "non-thin: completeness does not decide maximality"
    complete = is_complete(X, alphabet)
    tag = "thin code: maximal iff complete"
    if not is_invariant(theta, X):
        tag += " (input not theta-invariant)"
    if complete:
        return Maximality.YES, tag
    return Maximality.NO, f"{tag}; {complete.witness!r} is not a factor of X*"


# ---------------------------------------------------------------------------
# combined report


@dataclass
class CodeReport:
    is_code: Check
    is_prefix: Check | None = None
    is_suffix: Check | None = None
    is_bifix: Check | None = None
    deciphering_delay: int | None = None
    deciphering_delay_witness: Word | None = None
    two_way_delay: int | None = None
    two_way_delay_witness: Word | None = None
    sync_delay: int | None = None
    is_circular: Check | None = None
    is_complete: Check | None = None
    is_thin: Check | None = None
    is_invariant: bool | None = None
    is_maximal: Maximality = Maximality.UNKNOWN
    maximal_reason: str = ""
    caps: dict = field(default_factory=dict)


def build_report(theta: LiteralMap, X, delay_cap: int = DEFAULT_CAP,
                 sync_cap: int = DEFAULT_CAP) -> CodeReport:
    """Run every decider on X.  Family checks that need a code are skipped for non-codes."""
    alphabet = theta.alphabet
    L = as_lang(X, alphabet)
    report = CodeReport(
        is_code=is_code(X),
        is_complete=is_complete(L),
        is_thin=is_thin(L),
        is_invariant=is_invariant(theta, L),
        caps={"delay_cap": delay_cap, "sync_cap": sync_cap},
    )
    report.is_prefix = is_prefix(X)
    report.is_suffix = is_suffix(X)
    report.is_bifix = is_bifix(X)
    if not report.is_code:
        report.maximal_reason = "not a code"
        return report
    d = deciphering_delay(L, delay_cap)
    report.deciphering_delay = d
    report.deciphering_delay_witness = delay_witness(L, delay_cap if d is None else d - 1) if d != 0 else None
    d2 = two_way_delay(L, delay_cap)
    report.two_way_delay = d2
    report.two_way_delay_witness = two_way_delay_witness(L, delay_cap if d2 is None else d2 - 1) if d2 != 0 else None
    report.sync_delay = sync_delay(L, sync_cap)
    report.is_circular = is_circular(L)
    report.is_maximal, report.maximal_reason = is_maximal(theta, L)
    return report
