import io
import json

import pytest

from incidence import records
from incidence.algebra import basis_elem, mobius
from incidence.cli import main, render_text
from incidence.errors import ParseError, PreorderMismatch, RingMismatch
from incidence.operators import LinearOperator, inner_operator
from incidence.scalar import QQ, ZZ
from incidence.suite import SUITE_DSL
from incidence.transitive import PairFunction


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, dsl in SUITE_DSL.items():
        p = tmp_path / f"{name}.pre"
        p.write_text(dsl)
        paths[name] = str(p)

    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    paths["write"] = write
    return paths


def test_der_basis_chain(files):
    code, out = run("der-basis", "--poset", files["C2"], "--ring", "Q")
    rec = json.loads(out)
    assert code == 0 and rec["rank"] == 2 and rec["kind"] == "derivation"
    assert len(rec["generators"]) == 2


def test_transitive_crown(files, S):
    f = PairFunction.from_labels(S["K22"], QQ, {("1", "3"): 1})
    path = files["write"]("f.json", records.map_record(f))
    code, out = run("transitive", "--poset", files["K22"], "--ring", "Q", "--map", path)
    rep = json.loads(out)
    assert code == 0
    assert rep["is_transitive"] is True and rep["trivial_witness"] is None
    assert rep["obstruction"] == ["2", "4"]


def test_transitive_trivial_and_failing(files, S):
    C3 = S["C3"]
    good = PairFunction.from_labels(C3, QQ, {("1", "2"): 1, ("1", "3"): 1})
    code, out = run("transitive", "--poset", files["C3"], "--ring", "Q",
                    "--map", files["write"]("g.json", records.map_record(good)))
    assert code == 0 and json.loads(out)["trivial_witness"] == {"1": "0", "2": "-1", "3": "-1"}
    bad = PairFunction.from_labels(C3, QQ, {("1", "2"): 1})
    code, out = run("transitive", "--poset", files["C3"], "--ring", "Q",
                    "--map", files["write"]("b.json", records.map_record(bad)))
    assert code == 1 and json.loads(out)["violations"] == [["1", "2", "3"]]


def test_mobius_m2_not_invertible(files):
    code, out = run("mobius", "--poset", files["M2"], "--ring", "Q")
    assert code == 1 and json.loads(out)["error"] == "NotInvertible"


def test_mobius_chain(files, S):
    code, out = run("mobius", "--poset", files["C3"], "--ring", "Z")
    assert code == 0
    assert records.element_from_record(json.loads(out), S["C3"], ZZ) == mobius(S["C3"], ZZ)


def test_determinism(files):
    for verb in ("der-basis", "jordan-basis", "cohomology"):
        first = run(verb, "--poset", files["P6"], "--ring", "Q")
        assert first == run(verb, "--poset", files["P6"], "--ring", "Q")
        assert first[0] == 0
    a = run("cohomology", "--poset", files["K22"], "--ring", "Q", "--format", "text")
    assert a == run("cohomology", "--poset", files["K22"], "--ring", "Q", "--format", "text")
    assert "cohomology_rank" in a[1]


@pytest.mark.parametrize("name,ring", [("C3", "Q"), ("M2", "Z"), ("K22", "F3"), ("P6", "Q")])
def test_der_basis_round_trips_through_check(files, name, ring):
    code, out = run("der-basis", "--poset", files[name], "--ring", ring)
    assert code == 0
    for k, gen in enumerate(json.loads(out)["generators"]):
        path = files["write"](f"{name}-{k}.json", gen)
        code, rep = run("check", "--poset", files[name], "--ring", ring, "--operator", path)
        rep = json.loads(rep)
        assert code == 0 and rep["is_derivation"] and rep["is_jordan"]
        assert rep["conforms_derivation_form"] and rep["violations"] == []


def test_jordan_basis_comparison(files):
    code, out = run("jordan-basis", "--poset", files["M2"], "--ring", "F2")
    rep = json.loads(out)
    assert code == 0 and rep["comparison"]["equal"] is True
    assert rep["comparison"]["two_torsion_free"] is False


def test_check_non_derivation(files, S):
    C2 = S["C2"]
    D = LinearOperator.from_images(C2, QQ, {("1", "1"): basis_elem(C2, QQ, "1", "1")})
    path = files["write"]("d.json", records.operator_record(D))
    code, out = run("check", "--poset", files["C2"], "--ring", "Q", "--operator", path)
    rep = json.loads(out)
    assert code == 1 and rep["is_derivation"] is False
    assert [v["kind"] for v in rep["violations"]] == ["diagonal"]


def test_check_reports_inner_witness(files, S):
    D = inner_operator(basis_elem(S["C2"], QQ, "1", "2"))
    path = files["write"]("i.json", records.operator_record(D))
    code, out = run("check", "--poset", files["C2"], "--ring", "Q", "--operator", path)
    rep = json.loads(out)
    assert code == 0 and rep["inner_witness"] is not None


def test_decompose(files, S):
    D = inner_operator(basis_elem(S["C3"], QQ, "1", "2"))
    path = files["write"]("i.json", records.operator_record(D))
    code, out = run("decompose", "--poset", files["C3"], "--ring", "Q", "--operator", path)
    rep = json.loads(out)
    assert code == 0 and set(rep) == {"f", "g"}
    assert records.element_from_record(rep["g"], S["C3"], QQ) == basis_elem(S["C3"], QQ, "1", "2")


def test_input_errors(files, S):
    D = inner_operator(basis_elem(S["C2"], QQ, "1", "2"))
    path = files["write"]("i.json", records.operator_record(D))
    code, out = run("check", "--poset", files["C3"], "--ring", "Q", "--operator", path)
    assert code == 2 and json.loads(out)["error"] == "PreorderMismatch"
    code, out = run("check", "--poset", files["C2"], "--ring", "Z", "--operator", path)
    assert code == 2 and json.loads(out)["error"] == "RingMismatch"
    assert run("check", "--poset", files["C2"], "--ring", "Q")[0] == 2
    assert run("der-basis", "--poset", files["C2"], "--ring", "Q7")[0] == 2
    assert run("der-basis", "--poset", files["C2"], "--ring", "Z6")[0] == 2
    assert run("der-basis", "--poset", "/nonexistent.pre", "--ring", "Q")[0] == 2
    assert run("frobnicate")[0] == 2


def test_record_readers_reject_bad_input(S):
    C2 = S["C2"]
    rec = records.element_record(basis_elem(C2, QQ, "1", "2"))
    rec["entries"][0]["c"] = "0"
    with pytest.raises(ParseError):
        records.element_from_record(rec, C2, QQ)
    rec = records.element_record(basis_elem(C2, QQ, "1", "2"))
    rec["entries"].append(dict(rec["entries"][0]))
    with pytest.raises(ParseError):
        records.element_from_record(rec, C2, QQ)
    with pytest.raises(PreorderMismatch):
        records.element_from_record(rec, S["C3"], QQ)
    with pytest.raises(RingMismatch):
        records.element_from_record(rec, C2, ZZ)
    with pytest.raises(ParseError):
        records.operator_from_record({records.HASH_KEY: C2.content_hash(), "ring": "Q"}, C2, QQ)


def test_record_round_trips(S):
    P = S["P6"]
    D = inner_operator(basis_elem(P, QQ, "a", "c"))
    assert records.operator_from_record(json.loads(records.dumps(records.operator_record(D))), P, QQ) == D
    f = PairFunction.from_labels(P, QQ, {("a", "c"): "1/2"})
    assert records.map_from_record(records.map_record(f), P, QQ) == f


def test_render_text():
    assert render_text({"b": [1, 2], "a": None, "c": {}}) == "a" + " " * 24 + "none\nb:\n  - 1\n  - 2\nc" + " " * 24 + "{}"


def test_verify_exit_code():
    code, out = run("verify", "--format", "json")
    res = json.loads(out)
    assert code == 0 and [r["criterion"] for r in res] == list(range(1, 12))
    assert all(r["passed"] for r in res)
