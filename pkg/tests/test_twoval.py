import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar.errors import NotFibration
from bipolar.twoval import (
    CLOPEN,
    COSIEVE,
    DOWN,
    SIEVE,
    UP,
    Poset,
    alexandrov_coreflect,
    alexandrov_reflect,
    classify_subset,
    is_cosieve,
    is_sieve,
    is_strong,
    nonstrong_atoms,
    posets_up_to_iso,
    pseudocomplement,
)

AB = Poset.generated(("a", "b"), [("a", "b")])
DISCRETE = Poset.generated(("a", "b"))


def test_classify_subsets():
    assert classify_subset(AB, {"a"}) == SIEVE
    assert classify_subset(AB, {"b"}) == COSIEVE
    assert classify_subset(DISCRETE, {"a"}) == CLOPEN


def test_reflect_and_coreflect():
    assert alexandrov_reflect(AB, {"a"}, UP) == {"a", "b"}
    assert alexandrov_reflect(AB, {"b"}, UP) == {"b"}
    assert alexandrov_reflect(AB, set(), UP) == frozenset()
    assert alexandrov_coreflect(AB, {"b"}, DOWN) == frozenset()
    assert alexandrov_coreflect(AB, {"a"}, DOWN) == {"a"}
    assert alexandrov_coreflect(AB, {"a", "b"}, DOWN) == {"a", "b"}


def test_pseudocomplement():
    assert pseudocomplement(AB, {"a"}) == {"b"}
    assert pseudocomplement(AB, set()) == {"a", "b"}
    assert pseudocomplement(AB, {"a", "b"}) == frozenset()
    chain = Poset.generated(("a", "b", "c"), [("a", "b"), ("b", "c")])
    with pytest.raises(NotFibration):
        pseudocomplement(chain, {"b"})


def test_posets_are_strong_and_have_no_nonstrong_atoms():
    for n in range(4):
        for x in posets_up_to_iso(n):
            assert is_strong(x)
            assert nonstrong_atoms(x) == []


def test_number_of_posets_up_to_iso():
    assert [len(posets_up_to_iso(n)) for n in range(5)] == [1, 1, 2, 5, 16]


POSETS = [x for n in range(6) for x in posets_up_to_iso(n)]


@st.composite
def poset_and_subset(draw):
    x = draw(st.sampled_from(POSETS))
    n = len(x.elements)
    p = draw(st.sets(st.sampled_from(x.elements))) if n else set()
    return x, frozenset(p)


@settings(max_examples=150)
@given(poset_and_subset())
def test_reflections_are_least_and_greatest(data):
    x, p = data
    up = alexandrov_reflect(x, p, UP)
    down = alexandrov_coreflect(x, p, DOWN)
    assert p <= up and is_cosieve(x, up)
    assert down <= p and is_sieve(x, down)
    for q in x.subsets():
        if is_cosieve(x, q) and p <= q:
            assert up <= q
        if is_sieve(x, q) and q <= p:
            assert q <= down


@settings(max_examples=150)
@given(poset_and_subset())
def test_double_negation_on_sieves_and_cosieves(data):
    x, p = data
    kind = classify_subset(x, p)
    if kind in (SIEVE, COSIEVE, CLOPEN):
        neg = pseudocomplement(x, p)
        assert pseudocomplement(x, neg) == p
        if kind == SIEVE:
            assert is_cosieve(x, neg)


@settings(max_examples=100)
@given(poset_and_subset())
def test_reflection_is_idempotent(data):
    x, p = data
    once = alexandrov_reflect(x, p, UP)
    assert alexandrov_reflect(x, once, UP) == once
    inner = alexandrov_coreflect(x, p, DOWN)
    assert alexandrov_coreflect(x, inner, DOWN) == inner
