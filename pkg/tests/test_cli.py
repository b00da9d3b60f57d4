import json

import pytest

import horndiv.cli as cli
from horndiv import io as jio
from horndiv.cli import main
from horndiv.errors import WitnessNotFound


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return write


def test_horn_triples_command(capsys):
    code, out, _ = run(capsys, "horn-triples", "--n", "2", "--r", "1", "--json")
    assert code == 0
    doc = jio.TriplesOut.model_validate(json.loads(out))
    got = {(t.I[0], t.J[0], t.K[0]) for t in doc.triples}
    assert got == {(1, 1, 1), (2, 2, 1), (2, 1, 2)}


def test_snf_identity(capsys, files):
    m = files("m.json", {"pid": "int", "rows": 3, "cols": 3, "entries": [1, 0, 0, 0, 1, 0, 0, 0, 1]})
    code, out, _ = run(capsys, "snf", "--matrix", m, "--json")
    assert code == 0
    doc = json.loads(out)
    ident = ["1", "0", "0", "0", "1", "0", "0", "0", "1"]
    assert doc["U"]["entries"] == ident and doc["V"]["entries"] == ident
    assert doc["factors"] == ["1", "1", "1"]


def test_snf_polynomial_matrix(capsys, files):
    m = files("m.json", {"pid": "poly2", "rows": 2, "cols": 2, "entries": [[0, 1], [0], [0], [0, 0, 1]]})
    code, out, _ = run(capsys, "snf", "--matrix", m, "--json")
    assert code == 0
    assert json.loads(out)["factors"] == [[0, 0, 1], [0, 1]]


def test_lr_command(capsys):
    code, out, _ = run(capsys, "lr", "--lam", "3,2,1", "--mu", "2,1", "--nu", "2,1")
    assert code == 0 and out.strip() == "2"


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("payload,pointer", [
    ({"pid": "int", "rows": 2, "cols": 2, "entries": [1, 2, 3]}, "matrix"),
    ({"pid": "int", "rows": 1, "cols": 1, "entries": [1], "extra": 1}, "matrix/extra"),
    ({"pid": "int", "rows": 1, "cols": 1, "entries": [{"x": 1}]}, "matrix/entries/0"),
    ("{not json", "--matrix"),
])
def test_malformed_input_exit_2(capsys, files, payload, pointer):
    m = files("bad.json", payload)
    code, _, err = run(capsys, "snf", "--matrix", m)
    assert code == 2 and pointer in err


def test_module_input_pointers(capsys, files):
    mod = files("mod.json", {"pid": "int", "theta": [{"atoms": {"two": 1}}]})
    sub = files("sub.json", {"generators": []})
    code, _, err = run(capsys, "analyze", "--module", mod, "--sub", sub, "--all-triples")
    assert code == 2 and "module/theta/0/atoms" in err
    mod = files("mod.json", {"pid": "int", "theta": [{"atoms": {"2": 1}}, {"atoms": {"2": 2}}]})
    code, _, err = run(capsys, "analyze", "--module", mod, "--sub", sub, "--all-triples")
    assert code == 2 and "module/theta" in err
    mod = files("mod.json", {"pid": "int", "theta": [{"atoms": {"2": 2}}, {"atoms": {"2": 1}}]})
    sub = files("sub.json", {"generators": [[1, 0, 0]]})
    code, _, err = run(capsys, "analyze", "--module", mod, "--sub", sub, "--all-triples")
    assert code == 2 and "sub/generators/0" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["lr", "--lam", "1", "--bogus"])
    assert ei.value.code == 2


def test_analyze_and_determinism(capsys, files):
    mod = files("mod.json", {"pid": "int", "theta": [{"atoms": {"2": 3}}, {"atoms": {"2": 2}}, {"atoms": {"2": 1}}]})
    sub = files("sub.json", {"generators": [[2, 1, 0], [0, 2, 1]]})
    outs = [run(capsys, "analyze", "--module", mod, "--sub", sub, "--all-triples", "--split", "--json", "--seed", "4")
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0][0] == 0
    doc = jio.AnalyzeOut.model_validate(json.loads(outs[0][1]))
    assert all(all(c.passed for c in r.checks) for r in doc.reports)


def test_analyze_rejects_non_horn_triple(capsys, files):
    mod = files("mod.json", {"pid": "int", "theta": [{"atoms": {"2": 2}}, {"atoms": {"2": 1}}]})
    sub = files("sub.json", {"generators": [[2, 0]]})
    code, _, err = run(capsys, "analyze", "--module", mod, "--sub", sub, "--triple", "1;2;2")
    assert code == 2 and "not a Horn triple" in err
    code, _, err = run(capsys, "analyze", "--module", mod, "--sub", sub, "--triple", "1;x;2")
    assert code == 2 and "--triple" in err


def test_witness_commands(capsys, files):
    a = run(capsys, "witness", "--n", "4", "--triple", "1,4;2,4;2,4", "--seed", "2", "--json")
    b = run(capsys, "witness", "--n", "4", "--triple", "1,4;2,4;2,4", "--seed", "2", "--json")
    assert a == b and a[0] == 0
    doc = jio.WitnessOut.model_validate(json.loads(a[1]))
    assert all(c.passed for c in doc.checks) and doc.strategy == "S2"
    code, _, err = run(capsys, "witness", "--n", "4", "--triple", "2,4;2,4;2,4")
    assert code == 2 and "intersection number" in err
    mod = files("mod.json", {"pid": "int", "theta": [{"atoms": {"2": 2}}, {"atoms": {"2": 1}}]})
    sub = files("sub.json", {"generators": [[2, 0]]})
    code, out, _ = run(capsys, "witness", "--module", mod, "--sub", sub, "--triple", "1;1;1", "--json")
    assert code == 0 and json.loads(out)["Q"]["rows"] == 1


def test_witness_budget_exit_3(capsys, monkeypatch):
    def never(*a):
        raise WitnessNotFound("forced", attempts=1)

    monkeypatch.setattr(cli, "intersect_witness", never)
    code, _, err = run(capsys, "witness", "--n", "2", "--triple", "2;1;2")
    assert code == 3 and "budget" in err


def test_realize_command(capsys, tmp_path):
    out_file = tmp_path / "pair.json"
    code, out, _ = run(capsys, "realize", "--lambda", "2,1", "--mu", "1,1", "--nu", "1", "--atom", "2",
                       "--out", str(out_file))
    assert code == 0
    doc = jio.RealizeOut.model_validate(json.loads(out_file.read_text()))
    assert doc.sub.generators == [["2", "0"], ["0", "1"]]
    code, _, err = run(capsys, "realize", "--lambda", "1,1", "--mu", "2", "--atom", "2")
    assert code == 2 and "interlacing" in err
    code, _, err = run(capsys, "realize", "--lambda", "2", "--mu", "1", "--nu", "1", "--atom", "4")
    assert code == 2 and "--atom" in err
    # over GF(2)[x] the label 7 = 1 + 1*2 + 1*4 is x^2 + x + 1; label 4 is x^2, not an atom
    code, _, _ = run(capsys, "realize", "--lambda", "2", "--mu", "1", "--nu", "1", "--atom", "7", "--pid", "poly2")
    assert code == 0
    code, _, err = run(capsys, "realize", "--lambda", "2", "--mu", "1", "--nu", "1", "--atom", "4", "--pid", "poly2")
    assert code == 2 and "--atom" in err


def test_json_roundtrip_of_library_objects():
    from horndiv.modules import Submodule, TorsionModule
    from horndiv.rings import ZZ_RING
    M = TorsionModule(ZZ_RING, [12, 6, 1])
    S = Submodule(M, [[2, 3, 0]])
    M2 = jio.module_from_json(jio.module_to_json(M))
    assert M2.theta == M.theta
    assert jio.submodule_from_json(M2, jio.submodule_to_json(S)) == S
