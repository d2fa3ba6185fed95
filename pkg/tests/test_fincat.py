import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar.errors import BadComposability, BudgetExceeded, InvalidCategory, NotAssociative
from bipolar.fincat import (
    FinCat,
    FinGraph,
    UnionFind,
    arrow_category,
    components,
    cycle_graph,
    discrete_category,
    enumerate_functors,
    free_category,
    idempotent_monoid,
    loop_graph,
    make_category,
    validate_category,
)
from bipolar.parts import Part
from bipolar.fibrations import classify_part
from bipolar.presheaf import CO, Presheaf, constant, down, elements


def two_with_d():
    """The covariant presheaf on 2 with fibres {u} and {v, w}, u sent to v."""
    return Presheaf(arrow_category(), CO, {"0": ["u"], "1": ["v", "w"]}, {"a": {"u": "v"}})


def test_arrow_and_idempotent_monoid_validate():
    assert validate_category(arrow_category()) is not None
    assert validate_category(idempotent_monoid()) is not None


def test_composing_a_non_composable_pair_is_rejected():
    two = arrow_category()
    table = dict(two.compose)
    table["a", "a"] = "a"
    with pytest.raises(BadComposability):
        validate_category(FinCat(two.objects, two.arrows, two.identity, table))


def test_non_associative_table_is_rejected():
    # e(fe) = ef = e but (ef)e = ee = f
    table = {("e", "e"): "f", ("e", "f"): "e", ("f", "e"): "f", ("f", "f"): "f"}
    c = make_category(("*",), [("e", "*", "*"), ("f", "*", "*")], table, {"*": "1"})
    with pytest.raises(NotAssociative):
        validate_category(c)


def test_component_counts():
    assert len(components(discrete_category(("a", "b", "c")))) == 3
    assert len(components(arrow_category())) == 1
    assert len(components(elements(two_with_d()).total)) == 2


def test_elements_of_representable_and_of_d():
    assert elements(down(arrow_category(), "1")).fibre_sizes() == (1, 1)
    assert len(elements(two_with_d()).total.objects) == 3


def test_constant_presheaf_gives_bifibration_with_two_components():
    p = elements(constant(arrow_category(), ("s", "t")))
    assert classify_part(p).kind == "bifibration"
    assert len(components(p.total)) == 2


def test_free_category_of_chain_of_three_nodes():
    g = FinGraph(("0", "1", "2"), (("e1", "0", "1"), ("e2", "1", "2")))
    c = free_category(g)
    assert len(c.objects) == 3
    assert len(c.arrows) == 6
    validate_category(c)


def test_free_category_of_a_loop_exceeds_budget():
    with pytest.raises(BudgetExceeded):
        free_category(loop_graph(1))
    with pytest.raises(BudgetExceeded):
        free_category(cycle_graph(3))


def test_edge_ids_may_not_contain_the_path_separator():
    with pytest.raises(InvalidCategory):
        free_category(FinGraph(("0", "1"), (("a;b", "0", "1"),)))


def test_free_category_of_empty_graph():
    c = free_category(FinGraph((), ()))
    assert c.objects == () and c.arrows == ()


def test_functors_from_two_to_two():
    # constant at 0, constant at 1, identity
    assert len(enumerate_functors(arrow_category(), arrow_category())) == 3


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=12))
def test_union_find_matches_naive_closure(pairs):
    uf = UnionFind(range(8))
    for a, b in pairs:
        uf.union(a, b)
    naive = [{i} for i in range(8)]
    for a, b in pairs:
        sa = next(s for s in naive if a in s)
        sb = next(s for s in naive if b in s)
        if sa is not sb:
            sa |= sb
            naive.remove(sb)
    assert sorted(map(sorted, uf.groups())) == sorted(map(sorted, naive))


@settings(max_examples=40)
@given(st.integers(0, 5), st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=6))
def test_free_category_on_acyclic_graph_counts_paths(n, raw):
    nodes = tuple(str(i) for i in range(n + 1))
    edges = tuple((f"e{k}", str(min(a, b) % (n + 1)), str(max(a, b) % (n + 1)))
                  for k, (a, b) in enumerate(raw) if min(a, b) % (n + 1) < max(a, b) % (n + 1))
    g = FinGraph(nodes, edges)
    c = validate_category(free_category(g))
    # edges only go upward, so paths can be counted in node order
    total = 0
    for s in nodes:
        count = {s: 1}
        for v in sorted(nodes, key=int):
            for _, a, b in edges:
                if a == v and v in count:
                    count[b] = count.get(b, 0) + count[v]
        total += sum(count.values())
    assert len(c.arrows) == total
