import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar.errors import BudgetExceeded, UncountableChains
from bipolar.fibrations import classify_part
from bipolar.fincat import FinGraph, chain_graph, cycle_graph, loop_graph, star_graph
from bipolar.graphspace import (
    BIFUNCTIONAL,
    NEITHER,
    RIGHT_COMAPPING,
    RIGHT_FUNCTIONAL,
    CycleSum,
    chains,
    classify_graph_part,
    cycle_pairing,
    cycle_sum_of,
    empty_graph_part,
    endomap_of,
    graph_space_bridge,
    is_comapping,
    is_functional,
    loop_reflect,
    over_arrow,
    over_loop,
    zn_transfer,
)
from bipolar.oracles import endomap_hom_count, endomap_tensor_count, permutation_transfer


def test_classification_over_the_loop():
    assert classify_graph_part(over_loop(cycle_graph(3))) == BIFUNCTIONAL
    assert is_functional(over_loop(star_graph(1)))
    assert classify_graph_part(over_loop(chain_graph(3))) == NEITHER


def test_parallel_edges_make_a_comapping():
    g = FinGraph(("x", "y"), (("u", "x", "y"), ("v", "x", "y")))
    p = over_arrow(g, {"x": "0", "y": "1"})
    assert classify_graph_part(p) == RIGHT_COMAPPING
    assert is_comapping(p) and not is_functional(p)
    with pytest.raises(ValueError):
        is_functional(p, "up")


def test_chains_of_a_chain_are_empty():
    cs = chains(chain_graph(3))
    assert cs.lassos == ()
    sym = loop_reflect(chain_graph(3))
    assert sym.core == {} and sym.tails == 1


def test_chains_of_the_star():
    cs = chains(star_graph(2))
    assert len(cs.lassos) == 4
    # two copies of an edge into a fixed point
    assert cs.translation == {
        "p0:(loop0)": "p0:(loop0)",
        "p1:(loop1)": "p1:(loop1)",
        "s:to0(loop0)": "p0:(loop0)",
        "s:to1(loop1)": "p1:(loop1)",
    }
    assert loop_reflect(star_graph(2)).core.__len__() == 2


@pytest.mark.parametrize("loops", [1, 2, 3])
def test_loops_at_one_node(loops):
    sym = loop_reflect(loop_graph(loops))
    assert len(sym.core) == 1 and sym.tails == 0
    if loops > 1:
        with pytest.raises(UncountableChains):
            chains(loop_graph(loops))


def test_cycle_pairing_examples():
    r = cycle_pairing(CycleSum.single(4), CycleSum.single(6))
    assert (r.ten, r.hom, r.product) == (2, 0, CycleSum.single(12, 2))
    r = cycle_pairing(CycleSum.single(5), CycleSum.single(5))
    assert (r.ten, r.hom, r.product) == (5, 5, CycleSum.single(5, 5))
    assert cycle_pairing(CycleSum.single(4), CycleSum.single(2)).hom == 2


def test_zn_transfer_examples():
    a = CycleSum({6: 1, 2: 2})
    assert zn_transfer(a, 4, "coreflect") == CycleSum({2: 2})
    assert zn_transfer(a, 4, "reflect") == CycleSum({2: 3})
    b = CycleSum({1: 1, 2: 1, 4: 3})
    assert zn_transfer(b, 4, "reflect") == b == zn_transfer(b, 4, "coreflect")
    assert zn_transfer(CycleSum.single(5), 5, "reflect") == CycleSum.single(5)
    with pytest.raises(ValueError):
        zn_transfer(a, 0, "reflect")


def test_bridge():
    empty = graph_space_bridge(empty_graph_part(FinGraph(("0", "1"), (("a", "0", "1"),))))
    assert empty.total.objects == ()
    with pytest.raises(BudgetExceeded):
        graph_space_bridge(over_loop(chain_graph(2)))


def test_bridge_agrees_on_functional_parts():
    g = FinGraph(("x", "y", "z"), (("u", "x", "z"), ("v", "y", "z")))
    p = over_arrow(g, {"x": "0", "y": "0", "z": "1"})
    assert classify_graph_part(p) == RIGHT_FUNCTIONAL
    assert classify_part(graph_space_bridge(p)).is_dof


cycle_sums = st.dictionaries(st.integers(1, 6), st.integers(1, 2), max_size=3).map(CycleSum)
small_sums = cycle_sums.filter(lambda a: a.size() <= 6)


@settings(max_examples=60, deadline=None)
@given(small_sums, small_sums)
def test_pairing_matches_brute_force(a, b):
    r = cycle_pairing(a, b)
    sa, sb = a.to_endomap(), b.to_endomap()
    product = {(x, y): (sa[x], sb[y]) for x in sa for y in sb}
    assert r.ten == endomap_tensor_count(sa, sb)
    assert r.hom == endomap_hom_count(sa, sb)
    assert r.product == cycle_sum_of(product)


@settings(max_examples=60, deadline=None)
@given(cycle_sums, st.integers(1, 8))
def test_transfer_matches_brute_force(a, n):
    for direction in ("reflect", "coreflect"):
        brute = cycle_sum_of(permutation_transfer(a.to_endomap(), n, direction))
        assert zn_transfer(a, n, direction) == brute


@given(cycle_sums)
def test_cycle_sum_round_trips_through_its_endomap(a):
    assert cycle_sum_of(a.to_endomap()) == a
    assert cycle_sum_of(endomap_of(a.to_graph())) == a
