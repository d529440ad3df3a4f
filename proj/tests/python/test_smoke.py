from pathlib import Path

import pytest

moncol = pytest.importorskip("moncol")

SPECS = Path(__file__).resolve().parents[2] / "specs"


def test_exception_monad_carrier_and_laws():
    t = moncol.exception_monad(["e1", "e2"])
    for n in range(4):
        assert len(t.carrier(n)) == n + 2
    assert len(t.unit(2)) == 2
    report = t.check_laws(2)
    assert report["clean"] and report["checked"] > 0


def test_broken_writer_reports_counterexamples():
    report = moncol.writer_monad(2, project=True).check_laws(1)
    assert not report["clean"]
    assert report["counterexamples"]


def test_exception_coproduct_sizes():
    r = moncol.coproduct([moncol.exception_monad(["e1", "e2"]), moncol.exception_monad(["f"])])
    for n in range(3):
        assert len(r.carrier(n)) == n + 3
        assert moncol.convergence_level(r, n) <= 2
    assert moncol.verify_universal(r)["clean"]


def test_free_coproduct_counts_towers():
    # words over two unary symbols of length <= d: 2^(d+1) - 1 per leaf
    for d in range(4):
        r = moncol.coproduct([moncol.free_monad([("s", 1)], d), moncol.free_monad([("t", 1)], d)])
        assert len(r.carrier(1)) == 2 ** (d + 1) - 1
        assert len(r.carrier(2)) == 2 * (2 ** (d + 1) - 1)


def test_terminal_summand_is_rejected():
    with pytest.raises(moncol.MoncolError, match="NotSeparated"):
        moncol.coproduct([moncol.exception_monad(["e"]), moncol.terminal_monad()])


def test_exception_merge():
    r, report = moncol.coequalize_exceptions(["e"], ["e1", "e2"], {"e": "e1"}, {"e": "e2"})
    assert report["clean"]
    assert [len(r.carrier(n)) for n in range(3)] == [1, 2, 3]


def test_l_chain():
    assert moncol.l_chain_vertices(3) == [1, 3, 9, 513]


def test_spec_parsing():
    moncol.check_spec("moncol 1\nbase set\nmonad E = exception e\n")
    with pytest.raises(moncol.MoncolError, match="line 3"):
        moncol.check_spec("moncol 1\nbase set\nmonad E = nonsense\n")


def test_run_command_exit_codes():
    code, report = moncol.run("check-laws", [SPECS / "exception.spec"])
    assert code == 0 and report["status"] == "ok"
    code, _ = moncol.run("check-laws", [SPECS / "writer_broken.spec"])
    assert code == 1
    code, _ = moncol.run("check-laws", [SPECS / "malformed.spec"])
    assert code == 2
    code, _ = moncol.run("coproduct", [SPECS / "with_terminal.spec"])
    assert code == 3
    code, report = moncol.run("counterexample", budget=3)
    assert code == 0
    assert report["result"]["no_coequalizer"]["chains"][2]["vertices"] == [1, 3, 9, 513]


def test_colimit_matches_coequalizer():
    _, coeq = moncol.run("coequalizer", [SPECS / "exception_merge.spec"])
    _, colim = moncol.run("colimit", [SPECS / "exception_merge.spec"])
    assert colim["result"]["tables"] == coeq["result"]["tables"]
