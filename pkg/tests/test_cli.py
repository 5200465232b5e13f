"""End-to-end checks of the command-line interface."""

import json

import pytest
from click.testing import CliRunner

import builders
from wordgrowth.automaton import format_dfa, parse_dfa
from wordgrowth.cli import main

PHI_AD = "ad 2\naaa\nbbb\n"


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def phi_dfa_path(tmp_path):
    path = tmp_path / "phi.dfa"
    path.write_text(format_dfa(builders.phi_dfa()))
    return str(path)


@pytest.fixture()
def phi_ad_path(tmp_path):
    path = tmp_path / "phi.ad"
    path.write_text(PHI_AD)
    return str(path)


def run(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result.output


# ---------------------------------------------------------------------------
# report commands


def test_dfa_report_text(runner, phi_dfa_path):
    out = run(runner, ["dfa-report", phi_dfa_path])
    assert "Exponential" in out
    assert "1.618033988749" in out
    assert "NonOscillating" in out


def test_dfa_report_json(runner, phi_dfa_path):
    out = run(runner, ["--format", "json", "dfa-report", phi_dfa_path])
    doc = json.loads(out)
    assert doc["classification"]["tag"] == "Exponential"
    assert doc["pd"] == 0
    phi = (1 + 5**0.5) / 2
    assert float(doc["gr"]["lo"]) <= phi <= float(doc["gr"]["hi"])


def test_dfa_report_rejects_bad_file(runner, tmp_path):
    bad = tmp_path / "bad.dfa"
    bad.write_text("dfa 2 2 0\naccept 5\n")
    result = runner.invoke(main, ["dfa-report", str(bad)])
    assert result.exit_code == 1
    assert "line 2" in result.output


def test_dfa_report_rejects_csv(runner, phi_dfa_path):
    result = runner.invoke(main, ["--format", "csv", "dfa-report", phi_dfa_path])
    assert result.exit_code == 1
    assert "csv" in result.output


def test_fad_report(runner, phi_ad_path):
    out = run(runner, ["fad", phi_ad_path])
    assert "alphabet     2" in out
    assert "forbidden    2 words" in out
    assert "1.618033988749" in out
    doc = json.loads(run(runner, ["--format", "json", "fad", phi_ad_path]))
    assert doc["alphabet"] == 2
    assert doc["forbidden_words"] == 2
    assert doc["automaton_states"] == 5


def test_tm_approx_levels(runner):
    out = run(runner, ["tm-approx", "--", "-1"])
    assert "forbidden    2 words" in out
    doc = json.loads(run(runner, ["--format", "json", "tm-approx", "1"]))
    assert doc["forbidden_words"] == 10
    assert float(doc["rate"]["lo"]) <= float(doc["rate"]["hi"])
    result = runner.invoke(main, ["tm-approx", "--", "-3"])
    assert result.exit_code == 1


# ---------------------------------------------------------------------------
# extendable parts


def test_extendable_report(runner, phi_dfa_path):
    out = run(runner, ["extendable", phi_dfa_path, "--side", "two_sided"])
    assert "side         two_sided" in out
    assert "5 states" in out


def test_extendable_dump_reparses(runner, phi_dfa_path):
    out = run(runner, ["extendable", phi_dfa_path, "--dump"])
    dfa = parse_dfa(out)
    assert dfa.state_count == 5


def test_extendable_rejects_non_factorial(runner, tmp_path):
    path = tmp_path / "even.dfa"
    path.write_text(format_dfa(builders.even_only_dfa()))
    result = runner.invoke(main, ["extendable", str(path)])
    assert result.exit_code == 1


# ---------------------------------------------------------------------------
# staircase language


def test_intermediate_count(runner):
    assert run(runner, ["intermediate", "4", "--k", "2"]).strip() == "14"
    out = run(runner, ["--format", "csv", "intermediate", "4", "--k", "2"])
    assert out.splitlines() == ["n,count", "4,14"]


def test_intermediate_membership(runner):
    assert run(runner, ["intermediate", "0", "--word", "abaa"]).strip() == "True"
    assert run(runner, ["intermediate", "0", "--word", "aaba"]).strip() == "False"
    out = run(runner, ["--format", "csv", "intermediate", "0", "--word", "abaa"])
    assert out.splitlines() == ["word,member", "abaa,True"]


# ---------------------------------------------------------------------------
# power-free bounds


def test_powerfree_text(runner):
    out = run(runner, ["powerfree", "2", "3", "--cap", "6"])
    assert "upper" in out and "lower" in out
    assert out.rstrip().splitlines()[-1].startswith("wall")


def test_powerfree_json(runner):
    out = run(runner, ["--format", "json", "powerfree", "2", "3", "--cap", "6"])
    doc = json.loads(out)
    assert doc["k"] == 2 and doc["beta"] == "3"
    assert "wall_seconds" in doc
    assert "unique_component" in doc
    assert float(doc["upper"]["lo"]) <= float(doc["upper"]["hi"])


def test_powerfree_finite_is_not_an_error(runner):
    out = run(runner, ["powerfree", "2", "2", "--cap", "4"])
    assert "finite" in out
    doc = json.loads(run(runner, ["--format", "json", "powerfree", "2", "2", "--cap", "4"]))
    assert doc["finite"] is True


def test_powerfree_rejects_bad_arguments(runner):
    assert runner.invoke(main, ["powerfree", "2", "1", "--cap", "4"]).exit_code == 1
    assert runner.invoke(main, ["--delta", "0", "powerfree", "2", "3", "--cap", "4"]).exit_code == 1
    assert runner.invoke(main, ["--delta", "nope", "powerfree", "2", "3", "--cap", "4"]).exit_code == 1


def test_powerfree_no_symmetry_agrees(runner):
    fast = json.loads(run(runner, ["--format", "json", "powerfree", "2", "3", "--cap", "5"]))
    slow = json.loads(run(runner, [
        "--format", "json", "--no-symmetry", "powerfree", "2", "3", "--cap", "5"
    ]))
    assert abs(float(fast["upper"]["lo"]) - float(slow["upper"]["lo"])) <= 4e-6
    assert fast["antidictionary_size"] == slow["antidictionary_size"]


# ---------------------------------------------------------------------------
# roots, circular words, scans


def test_root_table(runner):
    out = run(runner, ["root", "3", "2", "--n-max", "4"])
    lines = out.splitlines()
    assert lines[0] == "k,beta,n,count"
    assert lines[1:] == ["3,2,1,3", "3,2,2,6", "3,2,3,6", "3,2,4,6"]
    doc = json.loads(run(runner, ["--format", "json", "root", "3", "2", "--n-max", "4"]))
    assert doc[-1] == {"k": 3, "beta": "2", "n": 4, "count": 6}


def test_circular_listing(runner):
    out = run(runner, ["circular", "--n", "3"])
    assert out.splitlines() == ["n,word", "3,abc", "3,acb"]
    assert run(runner, ["circular", "--n", "5"]).splitlines() == ["n,word"]
    out = run(runner, ["circular", "--n", "4", "--counts"])
    assert out.splitlines() == ["n,count", "4,3"]
    doc = json.loads(run(runner, ["--format", "json", "circular", "--n", "3"]))
    assert [row["word"] for row in doc] == ["abc", "acb"]


def test_scan_formats(runner):
    assert run(runner, ["scan", "2", "5/2", "--p-max", "12"]).strip() == "5,9,11"
    doc = json.loads(run(runner, ["--format", "json", "scan", "2", "5/2", "--p-max", "12"]))
    assert doc["forbidden"] == [5, 9, 11]
    out = run(runner, ["--format", "csv", "scan", "2", "5/2", "--p-max", "8"])
    assert out.splitlines() == ["p", "5"]


def test_scan_budget_failure(runner):
    result = runner.invoke(main, ["--budget", "1", "scan", "2", "5/2", "--p-max", "8"])
    assert result.exit_code == 1
    assert "budget" in result.output


def test_scan_threads_deterministic(runner):
    one = run(runner, ["scan", "2", "7/3", "--p-max", "10"])
    two = run(runner, ["--threads", "2", "scan", "2", "7/3", "--p-max", "10"])
    assert one == two


def test_asymptotic_values(runner):
    out = run(runner, ["asymptotic", "10", "3"])
    assert out.startswith("9.91")
    assert "991/100" in out
    doc = json.loads(run(runner, ["--format", "json", "asymptotic", "12", "2+"]))
    assert doc["value"].startswith("11.916")
    assert runner.invoke(main, ["asymptotic", "10", "7/4"]).exit_code == 1


def test_runs_are_deterministic(runner):
    args = ["--format", "json", "powerfree", "3", "2", "--cap", "3"]
    first = json.loads(run(runner, args))
    second = json.loads(run(runner, args))
    first.pop("wall_seconds")
    second.pop("wall_seconds")
    assert first == second
