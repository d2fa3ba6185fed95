import json

import pytest

from bipolar import documents as docs
from bipolar.cli import main
from bipolar.fincat import arrow_category
from bipolar.presheaf import CO, CONTRA, Presheaf, down
from bipolar.twoval import Poset


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(docs.dump(obj), encoding="utf-8")
    return str(path)


def test_check_category(capsys):
    code, out, _ = run(capsys, "check", "catalog:{1,e}")
    assert code == 0
    assert json.loads(out)["payload"] == {"valid": True, "objects": 1, "arrows": 2}


def test_check_with_side_gives_a_verdict(tmp_path, capsys):
    path = write(tmp_path, "down0.json", down(arrow_category(), "0"))
    assert run(capsys, "check", path, "--side", "open")[0] == 0
    code, out, _ = run(capsys, "check", path, "--side", "closed")
    assert code == 1
    assert json.loads(out)["payload"]["classification"] == "df"


def test_reflect_emits_a_presheaf(tmp_path, capsys):
    d = Presheaf(arrow_category(), CO, {"0": ["u"], "1": ["v", "w"]}, {"a": {"u": "v"}})
    path = write(tmp_path, "d.json", d)
    code, out, _ = run(capsys, "reflect", path, "--side", "closed")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "presheaf"
    assert docs.from_document(doc).sizes() == (1, 2)


def test_tensor_and_hom(tmp_path, capsys):
    two = arrow_category()
    a = write(tmp_path, "a.json", Presheaf(two, CONTRA, {"0": ["p", "q"], "1": ["b"]}, {"a": {"b": "p"}}))
    d = write(tmp_path, "d.json", Presheaf(two, CO, {"0": ["u"], "1": ["v", "w"]}, {"a": {"u": "v"}}))
    code, out, _ = run(capsys, "tensor", a, d)
    assert code == 0 and json.loads(out)["payload"]["size"] == 3
    # an endomorphism of A fixes b and p; q may go to p or stay
    code, out, _ = run(capsys, "hom", a, a)
    assert code == 0 and json.loads(out)["payload"]["count"] == 2


def test_graph_reflections(capsys):
    code, out, _ = run(capsys, "coreflect", "catalog:S2")
    assert code == 0 and len(json.loads(out)["payload"]["core"]) == 4
    code, out, _ = run(capsys, "reflect", "catalog:C3")
    assert code == 0 and json.loads(out)["payload"] == {"core": {}, "tails": 1}


def test_uncountable_chains_exit_code(tmp_path, capsys):
    from bipolar.fincat import loop_graph

    path = write(tmp_path, "loops.json", loop_graph(2))
    code, out, err = run(capsys, "coreflect", path)
    assert code == 3
    assert json.loads(err)["error"] == "UncountableChains"


def test_malformed_input_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "category"}', encoding="utf-8")
    code, out, err = run(capsys, "check", str(path))
    assert code == 2 and out == ""
    assert json.loads(err)["exit_code"] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_alexandrov_operations(tmp_path, capsys):
    path = write(tmp_path, "ab.json", Poset.generated(("a", "b"), [("a", "b")]))
    code, out, _ = run(capsys, "alex", path, "--subset", "a", "--op", "reflect")
    assert code == 0 and json.loads(out)["payload"]["elements"] == ["a", "b"]
    code, out, _ = run(capsys, "alex", path, "--subset", "b", "--op", "coreflect")
    assert json.loads(out)["payload"]["elements"] == []
    code, out, _ = run(capsys, "alex", path, "--subset", "a")
    assert json.loads(out)["payload"]["classification"] == "sieve"
    assert run(capsys, "alex", path, "--subset", "zzz")[0] == 2


def test_cycles(tmp_path, capsys):
    from bipolar.graphspace import CycleSum

    l4 = write(tmp_path, "l4.json", CycleSum.single(4))
    l6 = write(tmp_path, "l6.json", CycleSum.single(6))
    code, out, _ = run(capsys, "cycles", l4, l6)
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["ten"] == 2 and payload["hom"] == 0
    assert payload["product"] == {"mult": {"12": 2}}
    mixed = write(tmp_path, "mixed.json", CycleSum({6: 1, 2: 2}))
    code, out, _ = run(capsys, "cycles", mixed, "--transfer", "4", "--op", "coreflect")
    assert json.loads(out)["payload"] == {"mult": {"2": 2}}


def test_atoms_and_karoubi(capsys):
    code, out, _ = run(capsys, "atoms", "catalog:{1,e}")
    assert code == 0 and all(r["atom"] for r in json.loads(out)["payload"]["atoms"])
    code, out, _ = run(capsys, "karoubi", "catalog:{1,e}")
    assert code == 0 and len(json.loads(out)["payload"]["category"]["objects"]) == 2


def test_kan(tmp_path, capsys):
    from bipolar.fincat import FinFunctor, terminal_category

    two, one = arrow_category(), terminal_category()
    f = write(tmp_path, "f.json", FinFunctor(two, one, {"0": "*", "1": "*"}, {a: "1" for a in two.arrow_ids}))
    d = write(tmp_path, "d.json", Presheaf(two, CO, {"0": ["u"], "1": ["v", "w"]}, {"a": {"u": "v"}}))
    code, out, _ = run(capsys, "kan", f, d)
    assert code == 0 and docs.load(out).sizes() == (2,)
    code, out, _ = run(capsys, "kan", f, d, "--dir", "right")
    assert code == 0 and docs.load(out).sizes() == (1,)


def test_verify_core(capsys):
    code, out, err = run(capsys, "verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS ") for line in lines)
