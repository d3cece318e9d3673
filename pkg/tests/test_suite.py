import qdunkl.suite as suite
from qdunkl.suite import global_cases, run_suite


def test_small_suite_passes():
    rep = run_suite(("A1", "A2"), degree=3)
    assert rep["passed"]
    ids = [c["id"] for c in rep["cases"]]
    assert ids[: len(global_cases())] == [cid for cid, _ in global_cases()]
    assert "A2/bundle.r_comm" in ids and "A1/qcalc.braid" in ids


def test_failures_carry_witnesses(monkeypatch):
    def broken(ctx, degree=6):
        raise ArithmeticError("forced")

    swap = {"dunkl.commutativity": broken, "qcalc.hopf": lambda ctx: (False, None)}
    cases = [(cid, swap.get(cid, fn)) for cid, fn in suite.SYSTEM_CASES]
    monkeypatch.setattr(suite, "SYSTEM_CASES", cases)
    rep = run_suite(("A2",), degree=2)
    assert not rep["passed"]
    bad = {c["id"]: c for c in rep["cases"] if c["status"] == "fail"}
    assert set(bad) == {"A2/dunkl.commutativity", "A2/qcalc.hopf"}
    assert bad["A2/dunkl.commutativity"]["witness"] == "ArithmeticError: forced"
    assert bad["A2/qcalc.hopf"]["witness"] == "check returned false"


def test_report_is_deterministic_across_threads():
    a = run_suite(("B2",), degree=3)
    b = run_suite(("B2",), degree=3, threads=4)
    a.pop("timings"), b.pop("timings")
    assert a == b
