import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import WORKED_X
from oracles import in_star, words_upto
from thetacodes import automata as fa
from thetacodes.automata import RegularLang, from_words
from thetacodes.errors import BudgetExhausted, InputError
from thetacodes.words import Alphabet

AB = Alphabet.of("ab")
MAXLEN = 7


@st.composite
def nfas(draw, letters="ab", max_states=4):
    n = draw(st.integers(1, max_states))
    state = st.integers(0, n - 1)
    edges = draw(st.sets(st.tuples(state, st.sampled_from(letters), state), max_size=3 * n))
    initial = draw(st.sets(state, min_size=1, max_size=2))
    accepting = draw(st.sets(state, max_size=n))
    return n, edges, initial, accepting


def nfa_text(nfa):
    n, edges, initial, accepting = nfa
    lines = [f"states {n}", "initial " + " ".join(map(str, sorted(initial))),
             "accepting " + " ".join(map(str, sorted(accepting)))]
    lines += [f"{p} {c} {q}" for p, c, q in sorted(edges)]
    return "\n".join(lines)


def nfa_accepts(nfa, w):
    _, edges, current, accepting = nfa
    current = set(current)
    for c in w:
        current = {q for p, d, q in edges if p in current and d == c}
    return bool(current & set(accepting))


def lang_set(nfa, maxlen=MAXLEN, letters="ab"):
    return {w for w in words_upto(letters, maxlen) if nfa_accepts(nfa, w)}


def build(nfa):
    return RegularLang.from_text(AB, nfa_text(nfa))


def test_from_words_examples(abc):
    L = from_words(AB, {"ab"})
    assert L.words(5) == ["ab"]
    # three useful states plus the sink
    assert L.num_states == 4
    assert len(L.live_states()) == 3
    assert fa.is_empty(from_words(AB, set()))
    X = from_words(abc, WORKED_X)
    assert X.to_finite() == WORKED_X
    assert len(X.words(10)) == 6
    assert all(len(w) == 2 for w in X.words(10))


def test_equivalence_and_membership_examples(abc, cycle3):
    assert fa.equivalent(RegularLang.universe(AB), fa.complement(RegularLang.empty(AB)))
    assert fa.member(fa.star(from_words(AB, {"ab"})), "abab")
    X = from_words(abc, WORKED_X)
    assert not fa.equivalent(fa.factor_closure(fa.star(X)), RegularLang.universe(abc))


def test_shortest_outside_examples(abc):
    F = fa.factor_closure(fa.star(from_words(abc, WORKED_X)))
    assert fa.shortest_outside(F) == "aaa"
    for w in words_upto("abc", 2):
        assert w in F
    assert fa.shortest_outside(RegularLang.universe(AB)) is None
    assert fa.shortest_outside(RegularLang.empty(AB)) == ""


def test_min_gen_set_examples():
    assert fa.min_gen_set(fa.star(from_words(AB, {"ab"}))).to_finite() == {"ab"}
    assert fa.min_gen_set(RegularLang.universe(AB)).to_finite() == {"a", "b"}
    assert fa.min_gen_set(fa.star(from_words(AB, {"a", "b"}))).to_finite() == {"a", "b"}
    with pytest.raises(InputError):
        fa.min_gen_set(from_words(AB, {"ab"}))
    with pytest.raises(InputError):
        fa.min_gen_set(from_words(AB, {"", "ab"}))


def test_alphabet_mismatch_rejected(abc):
    with pytest.raises(InputError):
        fa.union(RegularLang.universe(AB), RegularLang.universe(abc))


def test_state_budget():
    with pytest.raises(BudgetExhausted):
        fa._build(AB, 0, lambda p, c: p + 1, lambda p: False, budget=50)


def test_algebra_dispatch():
    L = from_words(AB, {"a"})
    assert fa.algebra("star", L) == fa.star(L)
    with pytest.raises(InputError):
        fa.algebra("shuffle", L)


def test_text_format_errors():
    with pytest.raises(InputError, match="line 2"):
        RegularLang.from_text(AB, "states 2\n0 c 1\n")
    with pytest.raises(InputError):
        RegularLang.from_text(AB, "initial 0\n")
    with pytest.raises(InputError):
        RegularLang.from_text(AB, "states 1\n0 a 3\n")


@settings(max_examples=150, deadline=None)
@given(nfas())
def test_determinization_matches_simulation(nfa):
    L = build(nfa)
    for w in words_upto("ab", MAXLEN):
        assert (w in L) == nfa_accepts(nfa, w)


@settings(max_examples=100, deadline=None)
@given(nfas())
def test_canonical_form_round_trip(nfa):
    L = build(nfa)
    again = RegularLang.from_text(AB, L.to_text())
    assert again == L
    assert again.to_text() == L.to_text()


@settings(max_examples=100, deadline=None)
@given(nfas(), nfas())
def test_boolean_operations(n1, n2):
    L, K = build(n1), build(n2)
    S, T = lang_set(n1), lang_set(n2)
    universe = set(words_upto("ab", MAXLEN))
    assert set((L | K).words(MAXLEN)) == S | T
    assert set((L & K).words(MAXLEN)) == S & T
    assert set((L - K).words(MAXLEN)) == S - T
    assert set((~L).words(MAXLEN)) == universe - S
    assert ~~L == L
    assert fa.is_subset(L & K, L)
    assert fa.equivalent(L, K) == (L == K)


@settings(max_examples=100, deadline=None)
@given(nfas(max_states=3), nfas(max_states=3))
def test_concat_matches_split_oracle(n1, n2):
    C = fa.concat(build(n1), build(n2))
    for w in words_upto("ab", 6):
        expect = any(nfa_accepts(n1, w[:i]) and nfa_accepts(n2, w[i:]) for i in range(len(w) + 1))
        assert (w in C) == expect


@settings(max_examples=100, deadline=None)
@given(nfas(max_states=3))
def test_star_matches_dp_oracle(nfa):
    L = build(nfa)
    S = fa.star(L)
    for w in words_upto("ab", 6):
        assert (w in S) == (w == "" or in_star(w, lambda v: v != "" and nfa_accepts(nfa, v)))
    assert fa.star(S) == S
    assert fa.plus(L) == fa.concat(L, S)


@settings(max_examples=100, deadline=None)
@given(nfas())
def test_reverse_and_relabel(nfa):
    L = build(nfa)
    R = fa.reverse(L)
    for w in words_upto("ab", 6):
        assert (w in R) == nfa_accepts(nfa, w[::-1])
    assert fa.reverse(R) == L
    swapped = fa.relabel(L, {"a": "b", "b": "a"})
    for w in words_upto("ab", 6):
        assert (w in swapped) == nfa_accepts(nfa, w.translate(str.maketrans("ab", "ba")))


@settings(max_examples=80, deadline=None)
@given(nfas(max_states=3), st.sets(st.text("ab", max_size=3), max_size=3))
def test_quotients_with_finite_divisor(nfa, K):
    L = build(nfa)
    KL = from_words(AB, K)
    left, right = fa.left_quotient(L, KL), fa.right_quotient(L, KL)
    assert fa.quotient("left", L, KL) == left
    for w in words_upto("ab", 5):
        assert (w in left) == any(nfa_accepts(nfa, k + w) for k in K)
        assert (w in right) == any(nfa_accepts(nfa, w + k) for k in K)


@settings(max_examples=80, deadline=None)
@given(nfas(max_states=3))
def test_closures(nfa):
    L = build(nfa)
    long_words = lang_set(nfa, MAXLEN)
    P, S, F = fa.prefix_closure(L), fa.suffix_closure(L), fa.factor_closure(L)
    for w in words_upto("ab", 4):
        # a witness extension, if one exists, is short: the canonical DFA is small
        if any(v.startswith(w) for v in long_words):
            assert w in P
        if any(v.endswith(w) for v in long_words):
            assert w in S
        if any(w in v for v in long_words):
            assert w in F
        if w in P:
            assert any(nfa_accepts(nfa, w + v) for v in words_upto("ab", L.num_states))
        if w in S:
            assert any(nfa_accepts(nfa, v + w) for v in words_upto("ab", L.num_states))
    assert fa.is_subset(L, P) and fa.is_subset(P, F) and fa.is_subset(S, F)
    assert fa.factor_closure(F) == F


@settings(max_examples=80, deadline=None)
@given(nfas())
def test_shortest_outside_and_member(nfa):
    L = build(nfa)
    out = L.shortest_outside()
    members = L.words(MAXLEN)
    if out is None:
        assert L.is_universal()
    else:
        assert out not in L
        shorter = [w for w in words_upto("ab", len(out)) if len(w) < len(out)]
        assert all(w in L for w in shorter)
    first = L.shortest_member()
    if members:
        assert first == members[0]
    assert members == sorted(members, key=lambda w: (len(w), w))


@settings(max_examples=80, deadline=None)
@given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3))
def test_min_gen_set_of_free_monoids(X):
    M = fa.star(from_words(AB, X))
    G = fa.min_gen_set(M).to_finite()
    # minimal generators: elements of X not products of other elements of X
    expected = {x for x in X if not in_star(x, lambda v: v in X and v != x)}
    assert G == expected
    assert fa.star(from_words(AB, G)) == M


def test_finite_and_power():
    L = from_words(AB, {"a", "bb"})
    assert L.is_finite()
    assert not fa.star(L).is_finite()
    assert fa.power(L, 0) == RegularLang.epsilon(AB)
    assert fa.power(L, 2).to_finite() == {"aa", "abb", "bba", "bbbb"}
    with pytest.raises(InputError):
        fa.star(L).to_finite()
    assert list(fa.words_of_length(AB, 2)) == ["aa", "ab", "ba", "bb"]
    assert len(list(fa.all_words(AB, 3))) == 15
