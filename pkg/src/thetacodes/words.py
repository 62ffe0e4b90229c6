"""Letters, words and literal (anti)morphisms.

Words are plain ``str`` values whose characters are letters of an
:class:`Alphabet`; finite languages are ``frozenset`` of such strings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InputError

Word = str
FiniteLang = frozenset


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of one-character letters."""

    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InputError("alphabet must contain at least one letter")
        for c in letters:
            if not isinstance(c, str) or len(c) != 1:
                raise InputError(f"letter {c!r} is not a single symbol")
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in alphabet {''.join(letters)!r}")

    @classmethod
    def of(cls, letters: Iterable[str]) -> Alphabet:
        return cls(tuple(letters))

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, c):
        return c in self.letters

    def __str__(self):
        return "".join(self.letters)

    def index(self, c: str) -> int:
        return self.letters.index(c)

    def successor(self, c: str) -> str:
        """Next letter in alphabet order, wrapping around."""
        return self.letters[(self.index(c) + 1) % len(self.letters)]

    def check(self, w: Word) -> Word:
        for c in w:
            if c not in self.letters:
                raise InputError(f"letter {c!r} of word {w!r} is not in alphabet {self}")
        return w

    def check_all(self, words: Iterable[Word]) -> FiniteLang:
        return frozenset(self.check(w) for w in words)

    def shortlex_key(self, w: Word):
        return (len(w), [self.index(c) for c in w])

    def sorted(self, words: Iterable[Word]) -> list[Word]:
        """Words in length-then-alphabet order."""
        return sorted(words, key=self.shortlex_key)


class Kind(enum.Enum):
    MORPHISM = "morphism"
    ANTIMORPHISM = "antimorphism"


@dataclass(frozen=True)
class LiteralMap:
    """The literal (anti)morphism induced by a permutation of the alphabet."""

    alphabet: Alphabet
    perm: tuple[tuple[str, str], ...]
    kind: Kind
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pairs = dict(self.perm)
        missing = [c for c in self.alphabet if c not in pairs]
        if missing or len(pairs) != len(self.perm):
            raise InputError("map must assign every letter exactly once")
        for src, dst in pairs.items():
            if src not in self.alphabet or dst not in self.alphabet:
                raise InputError(f"pair {src}:{dst} uses a letter outside the alphabet")
        if set(pairs.values()) != set(self.alphabet):
            raise InputError("letter map is not a bijection")
        object.__setattr__(self, "perm", tuple((c, pairs[c]) for c in self.alphabet))
        object.__setattr__(self, "_table", str.maketrans(pairs))

    @property
    def sigma(self) -> dict[str, str]:
        return dict(self.perm)

    @property
    def is_antimorphism(self) -> bool:
        return self.kind is Kind.ANTIMORPHISM

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def inverse_sigma(self) -> dict[str, str]:
        return {dst: src for src, dst in self.perm}

    def is_identity_permutation(self) -> bool:
        return all(src == dst for src, dst in self.perm)

    def is_involutive(self) -> bool:
        return order(self) <= 2

    def __str__(self):
        pairs = ",".join(f"{s}:{d}" for s, d in self.perm)
        return f"{self.kind.value}[{pairs}]"


def make_map(alphabet: Alphabet, pairs: Mapping[str, str] | Iterable[tuple[str, str]],
             kind: Kind | str) -> LiteralMap:
    """Build a literal map, rejecting anything that is not a bijection of ``alphabet``."""
    if isinstance(pairs, Mapping):
        pairs = pairs.items()
    try:
        kind = Kind(kind)
    except ValueError:
        raise InputError(f"unknown map kind {kind!r}") from None
    return LiteralMap(alphabet, tuple(pairs), kind)


def identity(alphabet: Alphabet, kind: Kind | str = Kind.MORPHISM) -> LiteralMap:
    return make_map(alphabet, {c: c for c in alphabet}, kind)


def apply(theta: LiteralMap, w: Word) -> Word:
    """Image of ``w``: letterwise substitution, after reversal for antimorphisms."""
    theta.alphabet.check(w)
    if theta.kind is Kind.ANTIMORPHISM:
        w = w[::-1]
    return w.translate(theta._table)


def power(theta: LiteralMap, w: Word, n: int) -> Word:
    for _ in range(n):
        w = apply(theta, w)
    return w


def order(theta: LiteralMap) -> int:
    """Smallest n >= 1 with theta^n the identity on all words.

    Found by iterating on the probe ``a0 a0 a1 ... ak``: it contains every
    letter and its first two letters are equal while the last two differ, so
    no odd power of an antimorphism can fix it on alphabets of size >= 2.
    """
    letters = theta.alphabet.letters
    probe = letters[0] + "".join(letters)
    w = apply(theta, probe)
    n = 1
    while w != probe:
        w = apply(theta, w)
        n += 1
    return n


def orbit_list(theta: LiteralMap, w: Word) -> list[Word]:
    """``[w, theta(w), ..., theta^(n-1)(w)]`` with n the order of theta."""
    out = [theta.alphabet.check(w)]
    for _ in range(order(theta) - 1):
        out.append(apply(theta, out[-1]))
    return out


def orbit(theta: LiteralMap, w: Word) -> FiniteLang:
    return frozenset(orbit_list(theta, w))


def orbit_lang(theta: LiteralMap, X: Iterable[Word]) -> FiniteLang:
    """Smallest theta-invariant superset of a finite set."""
    n = order(theta)
    out = set()
    for w in X:
        for _ in range(n):
            out.add(w)
            w = apply(theta, w)
    return frozenset(out)


def image(theta: LiteralMap, L):
    """Image of a word, a finite set or a regular language."""
    from .automata import RegularLang

    if isinstance(L, str):
        return apply(theta, L)
    if isinstance(L, RegularLang):
        if L.alphabet != theta.alphabet:
            raise InputError("language and map use different alphabets")
        out = L.relabel(theta.sigma)
        return out.reverse() if theta.is_antimorphism else out
    return frozenset(apply(theta, w) for w in L)


def is_invariant(theta: LiteralMap, L) -> bool:
    """True iff theta(L) = L."""
    from .automata import RegularLang

    if isinstance(L, RegularLang):
        return image(theta, L) == L
    L = frozenset(L)
    return image(theta, L) == L


def is_unbordered(w: Word) -> bool:
    """No nonempty proper prefix of ``w`` is also a suffix (overlap-free word)."""
    return all(w[:k] != w[-k:] for k in range(1, len(w)))


def factorizations(w: Word, member, limit: int | None = None) -> list[list[Word]]:
    """Factorizations of ``w`` into nonempty pieces accepted by ``member``.

    ``member`` is a predicate or a container.  Pieces are explored shortest
    first, so the output order is deterministic.  At most ``limit`` results.
    """
    test = member if callable(member) else member.__contains__
    n = len(w)
    # reach[i]: suffix w[i:] has at least one factorization
    reach = [False] * (n + 1)
    reach[n] = True
    for i in range(n - 1, -1, -1):
        reach[i] = any(reach[j] and test(w[i:j]) for j in range(i + 1, n + 1))
    out: list[list[Word]] = []

    def walk(i, acc):
        if limit is not None and len(out) >= limit:
            return
        if i == n:
            out.append(list(acc))
            return
        for j in range(i + 1, n + 1):
            if reach[j] and test(w[i:j]):
                acc.append(w[i:j])
                walk(j, acc)
                acc.pop()

    if reach[0]:
        walk(0, [])
    return out
