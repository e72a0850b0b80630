import json

import pytest

from prohecke import cli, suites
from prohecke.report import CACHE_ENV, build_report, dumps
from prohecke.suites import SUITES, Budget


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_shows_every_suite(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert len(out.strip().splitlines()) == len(SUITES) == 10


def test_list_instances(capsys):
    code, out, _ = run(capsys, "list", "--instances")
    assert "affine_A2_GL3" in out.split()


def test_describe(capsys):
    code, out, _ = run(capsys, "describe", "congruence")
    assert code == 0 and "default instances" in out
    code, _, err = run(capsys, "describe", "nope")
    assert code == 2 and "unknown suite" in err


def test_malformed_instance_is_a_structured_error(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("name = [unclosed\n")
    code, _, err = run(capsys, "verify", "--suite", "braid_quadratic", "--spec", str(bad))
    assert code == 2
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"] == "instance"


def test_missing_fields_are_reported(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text('name = "x"\n')
    code, _, err = run(capsys, "verify", "--suite", "braid_quadratic", "--spec", str(bad))
    assert code == 2 and json.loads(err.strip().splitlines()[-1])["error"] == "instance"


def test_compute_product(capsys):
    code, out, _ = run(capsys, "compute", "product", "--spec", "affine_A1_SL2", "T[s0]", "T[s0]")
    assert code == 0
    assert json.loads(out)["T"] == "q0*T[] + (q0-1)*T[s0]"


def test_compute_product_char_p(capsys):
    code, out, _ = run(capsys, "compute", "product", "--spec", "affine_A1_SL2", "--char-p", "3",
                       "T[s0]", "T[s0]")
    assert code == 0 and json.loads(out)["T"] == "2*T[s0]"


def test_compute_induce_and_IH(capsys):
    code, out, _ = run(capsys, "compute", "induce", "--spec", "affine_A1xA1", "--module", "trivial@0")
    assert code == 0 and json.loads(out)["rank"] == 2
    code, out, _ = run(capsys, "compute", "IH", "--spec", "affine_A1xA1", "--module", "trivial@0", "--Q", "0")
    assert code == 0 and json.loads(out)["certificate_failures"] == []


def test_verify_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "verify", "--suite", "braid_quadratic", "--spec", "affine_A1_SL2",
                         "--samples", "300", "--seed", "7", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["summary"]["refuted"] == 0 and not report["refuted"]


def test_cache_cold_and_warm_agree(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "cache"))
    budget = Budget(samples=200)
    cold = dumps(build_report("steinberg", ["affine_A1xA1"], budget))
    assert list((tmp_path / "cache").iterdir())
    warm = dumps(build_report("steinberg", ["affine_A1xA1"], budget))
    assert cold == warm
    monkeypatch.delenv(CACHE_ENV)
    assert dumps(build_report("steinberg", ["affine_A1xA1"], budget)) == cold


def test_refutation_sets_exit_code(monkeypatch, tmp_path, capsys):
    def runner(inst, budget, modules=None):
        rec = suites.Recorder(inst.name)
        rec.add("forced", "a statement that fails", False, True, witness={"x": 1})
        return rec.checks

    fake = suites.Suite("braid_quadratic", "t", ["s"], ["affine_A1_SL2"], runner)
    monkeypatch.setitem(SUITES, "braid_quadratic", fake)
    out = tmp_path / "r.json"
    md = tmp_path / "r.md"
    code, _, _ = run(capsys, "verify", "--suite", "braid_quadratic", "--out", str(out), "--markdown", str(md))
    assert code == 1
    report = json.loads(out.read_text())
    assert report["refuted"] and report["checks"][0]["witness"] == {"x": 1}
    assert "Refuted or inconclusive" in md.read_text()


def test_exceptions_inside_checks_are_refutations():
    rec = suites.Recorder("x")

    def boom():
        raise RuntimeError("bad")

    rec.guard("boom", "statement", boom)
    assert rec.checks[0]["status"] == suites.REFUTED
