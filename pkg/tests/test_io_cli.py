import io
import json

import pytest

from kspectra import cli
from kspectra.fixtures import library
from kspectra.io import SchemaError, algebra_from_json, algebra_to_json, content_hash, dumps, load_file
from kspectra.spectrum import spectrum

C3_JSON = {
    "name": "C3",
    "signature": [{"op": "meet", "arity": 2}],
    "size": 3,
    "tables": {"meet": [[0, 0, 0], [0, 1, 1], [0, 1, 2]]},
}


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", sorted(library()))
def test_round_trip(name):
    alg = library()[name]
    back = algebra_from_json(json.loads(dumps(algebra_to_json(alg))))
    assert back == alg and back.tables == alg.tables


def test_load_algebra_file(tmp_path):
    p = tmp_path / "c3.json"
    p.write_text(json.dumps(C3_JSON))
    kind, alg = load_file(p)
    assert kind == "algebra" and alg.size == 3 and len(alg.signature.symbols) == 1


def test_range_error_names_symbol_and_row(tmp_path):
    bad = json.loads(json.dumps(C3_JSON))
    bad["tables"]["meet"][1][2] = 7
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    with pytest.raises(SchemaError, match=r"meet.*\[1\]"):
        load_file(p)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("size"),
        lambda d: d["tables"].pop("meet"),
        lambda d: d["tables"]["meet"].pop(),
        lambda d: d["signature"][0].update(arity=-1),
        lambda d: d.update(size="three"),
    ],
)
def test_schema_violations(mutate):
    d = json.loads(json.dumps(C3_JSON))
    mutate(d)
    with pytest.raises(SchemaError):
        algebra_from_json(d)


def test_class_file(tmp_path):
    p = tmp_path / "k.json"
    p.write_text(json.dumps(["C2", "C2xC2"]))
    ws = cli.Workspace()
    kind, (name, members) = ws.load(p)
    assert kind == "class" and members == ["C2", "C2xC2"]
    assert len(ws.klass(name)) == 2


def test_content_hash_distinguishes():
    lib = library()
    assert content_hash(lib["C3"], lib["C2"]) != content_hash(lib["C2"], lib["C3"])
    assert content_hash(lib["C3"]) == content_hash(algebra_from_json(algebra_to_json(lib["C3"])))


def test_cache_coherence(tmp_path):
    lib = library()
    fresh = spectrum(lib["C2xC2"], [lib["C2"]])
    ws = cli.Workspace(tmp_path)
    first = ws.spectrum(lib["C2xC2"], (lib["C2"],))
    # a new workspace reads the on-disk entry instead of recomputing
    second = cli.Workspace(tmp_path).spectrum(lib["C2xC2"], (lib["C2"],))
    assert fresh == first == second
    assert list(tmp_path.iterdir())


def test_spec_command(tmp_path):
    out_json = tmp_path / "s.json"
    out_dot = tmp_path / "s.dot"
    code, text = run("spec", "C3", "--class", "K2", "--json", str(out_json), "--dot", str(out_dot))
    assert code == 0
    assert text.startswith("3 points, reduced=true")
    assert json.loads(out_json.read_text())["reduced"] is True
    assert out_dot.read_text().startswith("digraph")


def test_entails_command():
    code, text = run("entails", "--class", "K2", "--premise", "x=y", "--conclusion", "x^y=x")
    assert code == 0 and text.strip() == "entailed"
    code, text = run("entails", "--class", "K2", "--conclusion", "x=y")
    assert code == 0 and text.startswith("not entailed")


def test_check_all_command():
    code, text = run("check-all", "C2xC2", "--class", "K2")
    assert code == 0
    assert text.strip().endswith("14/14 suites passed")


def test_other_commands():
    assert run("radical", "C3", "--class", "K2", "--pairs", "0,1")[1].splitlines()[1] == "radical: [[0, 1], [2]]"
    assert run("reduce", "C3", "--class", "K2")[0] == 0
    assert run("free", "--class", "K2", "--vars", "x,y")[1].startswith("3 elements")
    assert run("nsatz2", "--class", "K2", "--s1", "x=y", "--s2", "x^y=x")[1].strip() == "inclusion=true entailment=true agree=true"
    code, text = run("components", "C3", "--class", "K2")
    assert code == 0 and text.split() == ["{p0,", "p2}", "{p1,", "p2}"]
    assert run("prime-decomp", "C3", "--class", "K2", "--pairs", "")[0] == 0
    assert run("separation", "C3", "--class", "C2")[0] == 0


def test_exit_codes(tmp_path, monkeypatch):
    assert run("spec", "nope", "--class", "K2")[0] == 2
    assert run("entails", "--class", "K2", "--premise", "x = (meet x")[0] == 2
    assert run("bogus")[0] == 2
    # K3 has no homs into B2, so Δ is not radical there
    assert run("prime-decomp", "K3", "--class", "KB", "--pairs", "")[0] == 2
    missing = tmp_path / "missing.json"
    assert run("--load", str(missing), "spec", "C3", "--class", "K2")[0] == 2
    from kspectra import guards

    with guards.configured(max_search=5):
        assert run("spec", "B2^3", "--class", "KB")[0] == 3


def test_refutation_exit_code(monkeypatch):
    from kspectra import suites

    def broken(A, K, s, con):
        r = suites.SuiteResult("broken")
        r.check(False, "forced counterexample")
        return r

    monkeypatch.setattr(suites, "SUITES", suites.SUITES + [broken])
    code, text = run("check-all", "C3", "--class", "K2")
    assert code == 1 and "FAIL broken (1 checks): forced counterexample" in text
