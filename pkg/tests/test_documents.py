import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar import documents as docs
from bipolar.errors import BadComposability, DocumentError
from bipolar.fincat import FinFunctor, arrow_category, terminal_category
from bipolar.graphspace import CycleSum, SymbolicEndomap, over_arrow
from bipolar.presheaf import CO, CONTRA
from bipolar.twoval import Poset
from bipolar.verify import base, catalog_parts, catalog_presheaves

NAMES = ("1", "2", "3", "{1,e}", "Z2", "a<b", "split", "{1,a,z}")


@pytest.mark.parametrize("name", NAMES)
def test_categories_round_trip(name):
    x = base(name)
    assert docs.load(docs.dump(x)) == x


@pytest.mark.parametrize("name", ("2", "{1,e}", "Z2"))
def test_parts_and_presheaves_round_trip(name):
    x = base(name)
    for _, p in catalog_parts(x):
        back = docs.load(docs.dump(p))
        assert back.total == p.total and back.proj.obj_map == p.proj.obj_map
    for variance in (CO, CONTRA):
        for pre in catalog_presheaves(x, 2, variance):
            assert docs.load(docs.dump(pre)) == pre


def test_other_kinds_round_trip():
    two, one = arrow_category(), terminal_category()
    f = FinFunctor(two, one, {"0": "*", "1": "*"}, {a: "1" for a in two.arrow_ids})
    back = docs.load(docs.dump(f))
    assert back.obj_map == f.obj_map and back.arr_map == f.arr_map
    poset = Poset.generated(("a", "b", "c"), [("a", "b")])
    assert docs.load(docs.dump(poset)) == poset
    sym = SymbolicEndomap({"x": "y", "y": "y"}, 2)
    assert docs.load(docs.dump(sym)) == sym
    from bipolar.fincat import FinGraph

    g = FinGraph(("x", "y"), (("u", "x", "y"),))
    gp = over_arrow(g, {"x": "0", "y": "1"})
    assert docs.load(docs.dump(gp)) == gp


@given(st.dictionaries(st.integers(1, 12), st.integers(1, 5), max_size=5))
def test_cycle_sums_round_trip(mult):
    a = CycleSum(mult)
    assert docs.load(docs.dump(a)) == a


def test_catalog_references_resolve():
    doc = docs.envelope("category", "{1,e}")
    assert docs.from_document(doc) == base("{1,e}")


def test_output_is_deterministic():
    x = base("3")
    text = docs.dump(x)
    assert text == docs.dump(docs.load(text))
    assert list(json.loads(text)) == ["kind", "payload", "version"]


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"kind": "category", "version": 1}',
        '{"kind": "mystery", "version": 1, "payload": {}}',
        '{"kind": "category", "version": 9, "payload": {}}',
        '{"kind": "category", "version": 1, "payload": {"arrows": []}}',
        '{"kind": "category", "version": 1, "payload": "no-such-base"}',
        '{"kind": "presheaf", "version": 1, "payload": {"base": "2", "variance": "sideways", "fibres": {}, "transitions": {}}}',
    ],
)
def test_malformed_documents_are_rejected(text):
    with pytest.raises(DocumentError):
        docs.load(text)


def test_invalid_category_in_document():
    payload = docs.category_payload(arrow_category())
    payload["compose"] = [["a", "a", "a"]]
    with pytest.raises(BadComposability):
        docs.load(docs.dumps(docs.envelope("category", payload)))


def test_output_only_kinds_cannot_be_loaded():
    with pytest.raises(DocumentError):
        docs.from_document(docs.envelope("report", {}))
