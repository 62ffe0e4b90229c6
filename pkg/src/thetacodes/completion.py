"""Augmenting non-complete theta-invariant codes and embedding them in complete ones.

Three constructions live here:

* the orbit block ``Z``: a word ``z = b^n y a^n`` built around a non-factor
  ``y = a...b`` of X*, together with all its theta-images;  X u Z stays a
  theta-invariant code (and stays prefix / circular when X was);
* the synchronized completion: the minimal generating set of
  ``(X^2k A* & A* X^2k) u X*``;
* the embedding ``X u t(Ut)*`` with ``U = A* - (X* u A*tA*)`` around a
  theta-fixed unbordered non-factor ``t``, for involutive antimorphisms
  other than plain mirror image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import automata as fa
from .automata import RegularLang
from .errors import BudgetExhausted, ConstructionError, InputError, PreconditionError
from .properties import (Check, as_lang, is_circular, is_code, is_complete, is_prefix,
                         is_uniformly_synchronized)
from .words import (Alphabet, Kind, LiteralMap, Word, apply, is_invariant, is_unbordered,
                    orbit, orbit_list)

DEFAULT_SEARCH_BUDGET = 100_000


@dataclass(frozen=True)
class BlockSpec:
    y: Word
    z: Word
    Z: frozenset
    block_len: int
    orbit: tuple = ()

    def sorted_block(self) -> list[Word]:
        return sorted(self.Z, key=lambda w: (len(w), w))


@dataclass
class OverlapReport:
    overlaps_are_letter_powers: bool
    inner_factor_free: bool
    star_block_is_prefix: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return (self.overlaps_are_letter_powers and self.inner_factor_free
                and self.star_block_is_prefix)


@dataclass
class SyncCompletion:
    submonoid: RegularLang
    generators: RegularLang
    finite_generators: frozenset | None
    certificates: dict


@dataclass
class CompletionResult:
    t: Word
    U: RegularLang
    V: RegularLang
    result: RegularLang
    certificates: dict
    expression: str
    steps: dict = field(default_factory=dict)

    def members(self, max_len: int) -> list[Word]:
        return self.result.words(max_len)


def _factors_of_star(X, alphabet: Alphabet) -> RegularLang:
    return fa.factor_closure(fa.star(as_lang(X, alphabet)))


def _require_invariant(theta, X):
    if not is_invariant(theta, X):
        raise PreconditionError("input is not theta-invariant", prop="invariant")


def _require_code(X):
    verdict = is_code(X)
    if not verdict:
        raise PreconditionError("input is not a code", prop="code", witness=verdict.witness)


def _require_not_complete(X, alphabet) -> Check:
    verdict = is_complete(X, alphabet)
    if verdict:
        raise PreconditionError("nothing to complete: input is already complete", prop="complete")
    return verdict


def _finite(X, alphabet: Alphabet) -> frozenset:
    if isinstance(X, RegularLang):
        return X.to_finite()
    return alphabet.check_all(X)


# ---------------------------------------------------------------------------
# the orbit block


def pick_witness(X, alphabet: Alphabet, override: Word | None = None) -> Word:
    """A word outside F(X*) of length >= 2 whose first and last letters differ."""
    if len(alphabet) < 2:
        raise PreconditionError("a one-letter alphabet has no non-complete codes", prop="alphabet")
    F = _factors_of_star(X, alphabet)
    if F.is_universal():
        raise PreconditionError("nothing to complete: input is already complete", prop="complete")
    if override is not None:
        alphabet.check(override)
        if len(override) < 2 or override[0] == override[-1]:
            raise InputError(f"witness {override!r} needs length >= 2 and distinct end letters")
        if override in F:
            raise InputError(f"witness {override!r} is a factor of X*")
        return override
    w = F.shortest_outside()
    if w[0] == w[-1]:
        w = w[0] + w + alphabet.successor(w[0])
    return w


def build_block(theta: LiteralMap, y: Word, X) -> BlockSpec:
    """z = last(y)^n . y . first(y)^n with n = |y|, and Z its theta-orbit."""
    alphabet = theta.alphabet
    alphabet.check(y)
    n = len(y)
    if n < 2 or y[0] == y[-1]:
        raise InputError(f"witness {y!r} needs length >= 2 and distinct end letters")
    F = _factors_of_star(X, alphabet)
    if y in F:
        raise InputError(f"witness {y!r} is a factor of X*")
    z = y[-1] * n + y + y[0] * n
    zs = orbit_list(theta, z)
    spec = BlockSpec(y=y, z=z, Z=frozenset(zs), block_len=3 * n, orbit=tuple(zs))
    for w in zs:
        # c'^n c x' c' c^n with c != c'
        outer, inner = w[0], w[n]
        if not (len(w) == 3 * n and outer != inner and w[:n] == outer * n
                and w[2 * n - 1] == outer and w[2 * n:] == inner * n):
            raise ConstructionError(f"block word {w!r} does not have the expected shape")
        if w in F:
            raise ConstructionError(f"block word {w!r} is a factor of X*")
    return spec


def check_overlap_lemmas(spec: BlockSpec, X, alphabet: Alphabet) -> OverlapReport:
    """Replay the three facts the augmentation relies on.

    (i) two block words overlap only along a letter power b^k with k <= |y|,
    i.e. with shift >= 2|y|; (ii) A+ Z A+ & Z X* Z is empty; (iii) X* Z is a
    prefix set.  A failure is a bug, not a property of the input.
    """
    n = len(spec.y)
    L = 3 * n
    details: dict = {}
    powers_ok = True
    for zi in spec.Z:
        for zj in spec.Z:
            for shift in range(1, L):
                if zi[shift:] == zj[:L - shift]:
                    overlap = zj[:L - shift]
                    if shift < 2 * n or len(set(overlap)) != 1 or len(overlap) > n:
                        powers_ok = False
                        details.setdefault("bad_overlap", (zi, zj, shift))
    Xl = as_lang(X, alphabet)
    Zl = fa.from_words(alphabet, spec.Z)
    A_plus = fa.plus(RegularLang.letters(alphabet))
    inner = fa.intersect(fa.concat(A_plus, Zl, A_plus), fa.concat(Zl, fa.star(Xl), Zl))
    inner_ok = inner.is_empty()
    if not inner_ok:
        details["inner_factor"] = inner.shortest_member()
    pref = is_prefix(fa.concat(fa.star(Xl), Zl))
    if not pref:
        details["prefix"] = pref.witness
    return OverlapReport(powers_ok, inner_ok, bool(pref), details)


def _augment_with_block(theta, X, witness, extra_check):
    alphabet = theta.alphabet
    X = _finite(X, alphabet)
    y = pick_witness(X, alphabet, witness)
    spec = build_block(theta, y, X)
    out = X | spec.Z
    if not out > X:
        raise ConstructionError("augmentation did not add any word")
    if not is_code(out):
        raise ConstructionError("augmented set is not a code")
    if not is_invariant(theta, out):
        raise ConstructionError("augmented set is not theta-invariant")
    if extra_check is not None and not extra_check(out):
        raise ConstructionError(f"augmented set lost property {extra_check.__name__}")
    return out


def augment_invariant(theta: LiteralMap, X: Iterable[Word], witness: Word | None = None) -> frozenset:
    """X u Z for a finite non-complete theta-invariant code X."""
    X = _finite(X, theta.alphabet)
    _require_code(X)
    _require_invariant(theta, X)
    _require_not_complete(X, theta.alphabet)
    return _augment_with_block(theta, X, witness, None)


def augment_circular(theta: LiteralMap, X: Iterable[Word], witness: Word | None = None) -> frozenset:
    """X u Z for a finite non-complete theta-invariant circular code X."""
    X = _finite(X, theta.alphabet)
    circ = is_circular(X, theta.alphabet)
    if not circ:
        raise PreconditionError("input is not a circular code", prop="circular",
                                witness=circ.witness)
    _require_invariant(theta, X)
    _require_not_complete(X, theta.alphabet)

    def circular(Y):
        return bool(is_circular(Y, theta.alphabet))

    return _augment_with_block(theta, X, witness, circular)


# ---------------------------------------------------------------------------
# prefix codes


def augment_prefix(theta: LiteralMap, X: Iterable[Word]) -> frozenset:
    """Grow a finite non-complete theta-invariant prefix code by one orbit.

    y is the shortest word such that X u {y} is still prefix.  Morphisms add
    the orbit of y; antimorphisms (where X is also suffix) add the orbit of
    y y' with y' the shortest word keeping X u {y'} suffix.
    """
    alphabet = theta.alphabet
    X = _finite(X, alphabet)
    pref = is_prefix(X)
    if not pref:
        raise PreconditionError("input is not a prefix code", prop="prefix", witness=pref.witness)
    _require_invariant(theta, X)
    _require_not_complete(X, alphabet)
    Xl = fa.from_words(alphabet, X)
    everything = RegularLang.universe(alphabet)
    y = fa.union(fa.prefix_closure(Xl), fa.concat(Xl, everything)).shortest_outside()
    if y is None:
        raise ConstructionError("no prefix-compatible word for a non-complete prefix code")
    if theta.kind is Kind.ANTIMORPHISM:
        y2 = fa.union(fa.suffix_closure(Xl), fa.concat(everything, Xl)).shortest_outside()
        if y2 is None:
            raise ConstructionError("no suffix-compatible word for a non-complete suffix code")
        y = y + y2
    out = X | orbit(theta, y)
    if not out > X:
        raise ConstructionError("augmentation did not add any word")
    if not is_prefix(out) or not is_code(out):
        raise ConstructionError("augmented set is not a prefix code")
    if not is_invariant(theta, out):
        raise ConstructionError("augmented set is not theta-invariant")
    return out


# ---------------------------------------------------------------------------
# uniformly synchronized codes


def complete_sync(theta: LiteralMap, X, k: int, enum_cap: int = 24) -> SyncCompletion:
    """Minimal generating set of M = (X^2k A* & A* X^2k) u X*."""
    alphabet = theta.alphabet
    Xl = as_lang(X, alphabet)
    _require_code(Xl)
    _require_invariant(theta, Xl)
    sync = is_uniformly_synchronized(Xl, k)
    if not sync:
        raise PreconditionError(f"input is not uniformly synchronized with delay {k}",
                                prop="uniformly_synchronized", witness=sync.witness)
    everything = RegularLang.universe(alphabet)
    X2k = fa.power(Xl, 2 * k)
    M = fa.union(fa.intersect(fa.concat(X2k, everything), fa.concat(everything, X2k)),
                 fa.star(Xl))
    if "" not in M or not fa.is_subset(fa.concat(M, M), M):
        raise ConstructionError("M is not a submonoid")
    gens = fa.min_gen_set(M)
    certs = {
        "is_complete": is_complete(gens),
        "is_invariant": Check(is_invariant(theta, gens)),
        "contains_input": Check(fa.is_subset(Xl, gens)),
        "is_code": is_code(gens),
    }
    for name, verdict in certs.items():
        if not verdict:
            raise ConstructionError(f"synchronized completion failed certificate {name}")
    finite = frozenset(gens.words(enum_cap)) if gens.is_finite() else None
    return SyncCompletion(M, gens, finite, certs)


# ---------------------------------------------------------------------------
# embedding into a complete code


def make_overlap_free(x: Word, X, alphabet: Alphabet,
                      budget: int = DEFAULT_SEARCH_BUDGET) -> Word:
    """x itself if unbordered, else the shortlex-first unbordered extension x.s."""
    F = _factors_of_star(X, alphabet)
    if x in F:
        raise InputError(f"{x!r} is a factor of X*")
    if is_unbordered(x):
        return x
    tried = 0
    length = 1
    while True:
        for s in fa.words_of_length(alphabet, length):
            tried += 1
            if tried > budget:
                raise BudgetExhausted(f"no unbordered extension of {x!r} within {budget} tries")
            if is_unbordered(x + s) and x + s not in F:
                return x + s
        length += 1


def _check_embeddable_map(theta: LiteralMap):
    if theta.kind is not Kind.ANTIMORPHISM:
        raise PreconditionError("unsupported map kind for completion: need an antimorphism",
                                prop="map_kind")
    if theta.is_identity_permutation():
        raise PreconditionError(
            "theta = theta_0 (mirror image) unsupported: completion is an open problem there",
            prop="map_kind")
    if not theta.is_involutive():
        raise PreconditionError("completion needs an involutive antimorphism", prop="map_kind")


def build_anchor(theta: LiteralMap, X) -> tuple[Word, dict]:
    """A theta-fixed unbordered word t outside F(X*); returns (t, trace of the steps)."""
    _check_embeddable_map(theta)
    alphabet = theta.alphabet
    Xl = as_lang(X, alphabet)
    _require_invariant(theta, Xl)
    _require_code(Xl)
    _require_not_complete(Xl, alphabet)
    F = fa.factor_closure(fa.star(Xl))
    A = RegularLang.letters(alphabet)
    long_enough = fa.concat(A, A, RegularLang.universe(alphabet))
    x0 = fa.difference(long_enough, F).shortest_member()
    x = make_overlap_free(x0, Xl, alphabet)
    trace = {"non_factor": x0, "x": x}
    if apply(theta, x) == x:
        t = x
        trace["case"] = "x"
    else:
        c = x[0]
        y = make_overlap_free(c + x, Xl, alphabet)
        trace["y"] = y
        if apply(theta, y) == y:
            t = y
            trace["case"] = "y"
        else:
            sigma = theta.sigma
            a = next(a for a in alphabet if sigma[a] != a and sigma[a] != c)
            b = sigma[a]
            n = len(y)
            t = a * n + b + apply(theta, y) + y + a + b * n
            trace.update(case="a^n b theta(y) y a b^n", a=a, b=b)
    if apply(theta, t) != t:
        raise ConstructionError(f"anchor {t!r} is not fixed by theta")
    if not is_unbordered(t):
        raise ConstructionError(f"anchor {t!r} overlaps itself")
    if t in F:
        raise ConstructionError(f"anchor {t!r} is a factor of X*")
    return t, trace


def _words_expr(X) -> str:
    if isinstance(X, RegularLang):
        return "auto(X)"
    return "words(" + ",".join(sorted(X, key=lambda w: (len(w), w))) + ")"


def embed_complete(theta: LiteralMap, X) -> CompletionResult:
    """X' = X u t(Ut)* with certificates for code, completeness and invariance."""
    alphabet = theta.alphabet
    Xl = as_lang(X, alphabet)
    t, trace = build_anchor(theta, Xl)
    everything = RegularLang.universe(alphabet)
    T = fa.from_words(alphabet, [t])
    U = fa.complement(fa.union(fa.star(Xl), fa.concat(everything, T, everything)))
    V = fa.concat(T, fa.star(fa.concat(U, T)))
    result = fa.union(Xl, V)
    certificates = {
        "is_code": is_code(result),
        "is_complete": is_complete(result),
        "is_invariant": Check(is_invariant(theta, result)),
    }
    for name, verdict in certificates.items():
        if not verdict:
            raise ConstructionError(f"completion failed certificate {name}: {verdict.witness!r}")
    expression = (f"union({_words_expr(X)}, concat(word({t}), "
                  f"star(concat(auto(U), word({t})))))")
    return CompletionResult(t=t, U=U, V=V, result=result, certificates=certificates,
                            expression=expression, steps=trace)
