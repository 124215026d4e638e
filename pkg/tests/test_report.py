import json

from r2k.algebra import H, L, Sym, structure_audit
from r2k.field import as_scalar
from r2k.report import CheckReport, emit_report


def test_empty_report():
    rep = CheckReport(meta={"rank": 1, "generators": ["1"], "window": 2})
    d = json.loads(emit_report(rep, "json"))
    assert d == {"meta": {"rank": 1, "generators": ["1"], "window": 2}, "checks": []}
    assert rep.passed


def test_failure_keeps_first_witness():
    rep = CheckReport()
    rep.check("x", True)
    rep.check("x", False, {"inputs": ["a"], "lhs": "1", "rhs": "2"})
    rep.check("x", False, lambda: {"inputs": ["b"], "lhs": "3", "rhs": "4"})
    r = rep["x"]
    assert (r.count, r.failures, r.witness["inputs"]) == (3, 2, ["a"])
    assert not rep.passed


def test_lazy_witness_not_built_on_pass():
    rep = CheckReport()
    rep.check("x", True, lambda: 1 / 0)
    assert rep.passed


def test_merge_order_and_info():
    a, b = CheckReport(), CheckReport()
    a.check("p", True)
    b.check("q", False, {"inputs": []})
    b.check("p", True)
    b.info("note", {"k": 1})
    a.merge(b)
    assert [r.id for r in a.records.values()] == ["p", "q", "note"]
    assert a["p"].count == 2 and not a.passed
    assert a["note"].status == "info"


def test_failing_jacobi_witness_schema():
    from r2k.algebra import Algebra
    alg = Algebra()
    key = (Sym(L, (1,)), Sym(H, (1,)))
    alg.basis_bracket(*key)
    alg._cache[key] = {Sym(H, (2,)): as_scalar(3)}
    d = json.loads(emit_report(structure_audit(alg, 1)))
    rec = next(c for c in d["checks"] if c["id"] == "structure.jacobi")
    assert rec["status"] == "fail"
    assert set(rec["witness"]) == {"inputs", "lhs", "rhs"}
    assert len(rec["witness"]["inputs"]) == 3


def test_text_format():
    rep = CheckReport(meta={"window": 1})
    rep.check("a", True)
    out = emit_report(rep, "text").decode()
    assert out.splitlines()[-1] == "PASS" and "a" in out


def test_byte_identical(alg):
    assert emit_report(structure_audit(alg, 2)) == emit_report(structure_audit(alg, 2))
