"""
Integration tests for the command line: one job in, one report out.
"""
import glob
import importlib.util
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import pytest

from src import config, hopfact, ncpoly, poisson, rauto, report
from src.main import main

ROOT = Path(__file__).resolve().parent.parent


def _reports(tmp: Path):
    paths = sorted(glob.glob(str(tmp / "outputs" / "reports" / "*.json")))
    return [report.load_report(p) for p in paths]


def _only_report(tmp: Path):
    found = _reports(tmp)
    assert len(found) == 1, [r["command"] for r in found]
    return found[0]


def test_hopf_verify(temp_output_dir, capsys):
    assert main(["hopf-verify", "--n", "3"]) == 0
    out = capsys.readouterr().out
    assert "hopf-verify: n=3 lambdas=2 verdict=PASS" in out
    rep = report.load_report(str(temp_output_dir / "outputs" / "reports" / "hopf-verify_n3.json"))
    assert rep["verdict"] == "PASS"
    assert rep["schema_version"] == config.SCHEMA_VERSION
    assert set(rep["results"]["lambdas"]) == {"zeta3^1", "zeta3^2"}


def test_classify(temp_output_dir, capsys):
    assert main(["classify", "--n", "4", "--mu-order", "2"]) == 0
    assert "families=2 verdict=MATCH" in capsys.readouterr().out
    rep = _only_report(temp_output_dir)
    assert rep["inputs"]["m"] == 2
    assert all(c["passed"] for c in rep["results"]["module_algebra"])


def test_classify_without_divisibility(temp_output_dir, capsys):
    assert main(["classify", "--n", "3", "--mu-order", "2"]) == 0
    assert "families=0 verdict=MATCH" in capsys.readouterr().out


def test_fixed_ring_of_quantum_plane(temp_output_dir, capsys):
    assert main(["fixed-ring", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "fixed-ring: target=qplane n=2 m=2 degree=4" in out
    assert _only_report(temp_output_dir)["verdict"] == "MATCH"


def test_fixed_ring_of_quantum_matrices_reports_extras(temp_output_dir):
    assert main(["fixed-ring", "--target", "qmatrices", "--n", "3", "--degree", "3"]) == 0
    rep = _only_report(temp_output_dir)
    assert rep["verdict"] == "MATCH"
    assert rep["results"]["extra"]


def test_center_of_polynomial_smash(temp_output_dir, capsys):
    assert main(["center", "--target", "polyring", "--n", "2", "--degree", "2"]) == 0
    assert "verdict=MATCH" in capsys.readouterr().out
    rep = _only_report(temp_output_dir)
    assert rep["results"]["g_powers_nontrivial"] is False


def test_prime_needs_mu_of_order_n(temp_output_dir, capsys):
    assert main(["prime", "--n", "4", "--mu-order", "2"]) == 0
    assert "prime=False verdict=MATCH" in capsys.readouterr().out
    assert main(["prime", "--n", "2"]) == 0
    assert "prime=True verdict=MATCH" in capsys.readouterr().out


def test_poisson(temp_output_dir, capsys):
    assert main(["poisson", "--n", "2"]) == 0
    assert "poisson: target=qplane n=2 k=1 theta=1/4 verdict=MATCH" in capsys.readouterr().out
    rep = _only_report(temp_output_dir)
    assert all(rep["results"]["table_match"].values())


def test_poisson_weyl_accepts_any_lift_of_minus_two(temp_output_dir, capsys):
    assert main(["poisson", "--target", "weyl", "--n", "3", "--k", "1"]) == 0
    assert "poisson: target=weyl n=3 k=1" in capsys.readouterr().out
    rep = _only_report(temp_output_dir)
    assert rep["verdict"] == "MATCH"
    assert rep["results"]["lift"] == -2
    assert rep["results"]["c1_equals_minus_b1"] is True


def test_poisson_weyl_with_even_n_is_an_input_error(temp_output_dir, capsys):
    assert main(["poisson", "--target", "weyl", "--n", "2"]) == 2
    assert "needs n odd" in capsys.readouterr().err


def test_verification_exceptions_exit_with_failure(temp_output_dir, capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise poisson.JacobiViolation("Jacobi fails on (z1, z2, z3)")

    monkeypatch.setattr(poisson, "prop33_ore_data", broken)
    assert main(["poisson", "--n", "2"]) == 1
    assert "poisson: failed: Jacobi fails" in capsys.readouterr().err
    assert _reports(temp_output_dir) == []


@pytest.mark.parametrize("algebra,omega", [("rmu", 8), ("smash", 16)])
def test_disc_for_n_two(temp_output_dir, capsys, algebra, omega):
    assert main(["disc", "--n", "2", "--algebra", algebra]) == 0
    assert f"algebra={algebra} omega={omega} verdict=MATCH" in capsys.readouterr().out
    rep = _only_report(temp_output_dir)
    if algebra == "smash":
        assert rep["results"]["azumaya"]["zero_locus"] == "z1 = 0"
    else:
        assert rep["results"]["degree_census"] == 16


def test_disc_refuses_large_rank_without_heavy(temp_output_dir, capsys, monkeypatch):
    monkeypatch.delenv(config.HEAVY_ENV_VAR, raising=False)
    assert main(["disc", "--n", "3"]) == 2
    err = capsys.readouterr().err
    assert "disc: error:" in err and "--heavy" in err
    assert _reports(temp_output_dir) == []


def test_bad_action_is_an_input_error(temp_output_dir, capsys):
    assert main(["fixed-ring", "--n", "4", "--mu-order", "3"]) == 2
    assert "fixed-ring: error:" in capsys.readouterr().err


def test_rauto_suite(temp_output_dir, capsys):
    assert main(["rauto", "--seed", "7", "--draws", "2"]) == 0
    assert "rauto: seed=7 draws=2 verdict=PASS" in capsys.readouterr().out
    rep = _only_report(temp_output_dir)
    assert rep["results"]["failures"] == []
    assert rep["results"]["psi_squared"] == "even"
    search = rep["results"]["search"]
    assert search["automorphisms"] > 0
    assert set(search["linear_types"]) <= {"even", "odd"}
    # conjugations fix g and x yet match neither template
    assert {m["parity"] for m in rep["results"]["inner"].values()} == {"neither"}


def test_rauto_checks_a_saved_endomorphism(temp_output_dir, capsys):
    good = temp_output_dir / "psi.json"
    good.write_text(json.dumps(rauto.endomorphism_to_dict(rauto.build_odd(rauto.OddParams(1, 1)))))
    out_path = temp_output_dir / "psi_report.json"
    assert main(["--output", str(out_path), "rauto", "--input", str(good)]) == 0
    rep = report.load_report(str(out_path))
    assert rep["results"]["parity"] == "odd"
    assert rep["inputs"] == {"input": "psi.json"}

    S = rauto.restricted_algebra().presentation
    v = S.gen("v")
    bad = rauto.Endomorphism({"u": v, "v": v, "g": S.gen("g"), "x": S.gen("x")})
    bad_path = temp_output_dir / "bad.json"
    bad_path.write_text(json.dumps(rauto.endomorphism_to_dict(bad)))
    assert main(["rauto", "--input", str(bad_path)]) == 1
    assert "verdict=FAIL" in capsys.readouterr().out


def test_confluence_of_builtins(temp_output_dir, capsys):
    assert main(["confluence", "--n", "2"]) == 0
    assert "verdict=PASS" in capsys.readouterr().out


def test_confluence_flags_a_corrupted_presentation(temp_output_dir, capsys):
    P = hopfact.build_smash(hopfact.make_action("weyl", 3)).presentation
    data = ncpoly.presentation_to_dict(P)
    for rule in data["swap_rules"]:
        if (rule["later"], rule["earlier"]) == ("x", "u"):
            rule["rhs"] = ncpoly.element_to_list(P.monomial({"u": 1, "x": 1}))
    path = temp_output_dir / "corrupted.json"
    path.write_text(json.dumps(data))
    assert main(["confluence", "--presentation", str(path)]) == 1
    assert "presentations=1 verdict=FAIL" in capsys.readouterr().out
    rep = _only_report(temp_output_dir)
    assert rep["results"]["presentations"][0]["failure"]["overlap"] == "x*v*u"


def test_reports_are_reproducible_apart_from_timing(temp_output_dir, mocker):
    first, second = temp_output_dir / "a.json", temp_output_dir / "b.json"
    mocker.patch("src.report._utc_now", return_value=datetime(2030, 1, 1, tzinfo=timezone.utc))
    assert main(["--output", str(first), "poisson", "--n", "3"]) == 0
    mocker.patch("src.report._utc_now", return_value=datetime(2031, 6, 1, tzinfo=timezone.utc))
    assert main(["--output", str(second), "poisson", "--n", "3"]) == 0
    a, b = report.load_report(str(first)), report.load_report(str(second))
    assert a["timing"]["generated_at_utc"] != b["timing"]["generated_at_utc"]
    assert report.stable_part(a) == report.stable_part(b)


def test_code_commit_from_environment(temp_output_dir, monkeypatch):
    monkeypatch.setenv(config.GITHUB_SHA_ENV, "deadbeef")
    assert main(["hopf-verify", "--n", "2"]) == 0
    assert _only_report(temp_output_dir)["code_commit"] == "deadbeef"


def _generate_docs():
    spec = importlib.util.spec_from_file_location("generate_docs", ROOT / "scripts" / "generate_docs.py")
    module = importlib.util.module_from_spec(spec)
    sys.modules[spec.name] = module
    spec.loader.exec_module(module)
    return module


def test_generate_docs_summarizes_reports(temp_output_dir, capsys):
    assert main(["hopf-verify", "--n", "2"]) == 0
    assert main(["prime", "--n", "2"]) == 0
    assert main(["rauto", "--input", str(_write_bad_endomorphism(temp_output_dir))]) == 1
    capsys.readouterr()

    docs = temp_output_dir / "docs"
    reports_dir = str(temp_output_dir / "outputs" / "reports")
    assert _generate_docs().main(["--reports", reports_dir, "--docs", str(docs), "--no-plot"]) == 0
    out = capsys.readouterr().out
    assert "reports=3 failing=1" in out
    stats = json.loads((docs / "run_summary.json").read_text())
    assert set(stats["commands"]) == {"hopf-verify", "prime", "rauto"}
    assert stats["commands"]["rauto"]["verdicts"] == {"FAIL": 1}
    assert len(stats["failing"]) == 1
    assert not (docs / "runtime_by_command.png").exists()


def test_generate_docs_draws_runtime_chart(temp_output_dir):
    assert main(["hopf-verify", "--n", "2"]) == 0
    docs = temp_output_dir / "docs"
    reports_dir = str(temp_output_dir / "outputs" / "reports")
    assert _generate_docs().main(["--reports", reports_dir, "--docs", str(docs)]) == 0
    assert (docs / "runtime_by_command.png").exists()


def test_generate_docs_needs_reports_dir(temp_output_dir):
    with pytest.raises(FileNotFoundError):
        _generate_docs().main(["--reports", str(temp_output_dir / "missing"), "--docs", str(temp_output_dir)])


def _write_bad_endomorphism(tmp: Path) -> Path:
    S = rauto.restricted_algebra().presentation
    u = S.gen("u")
    bad = rauto.Endomorphism({"u": u, "v": u, "g": S.gen("g"), "x": S.gen("x")})
    path = tmp / "bad_input.json"
    path.write_text(json.dumps(rauto.endomorphism_to_dict(bad)))
    return path
