import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from s02e.cli import main


def schema(name: str) -> dict:
    return json.loads(resources.files("s02e").joinpath("schemas", name).read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["oracle-term", "(cond (s0 (s1 (s1 0))) (s0 (s0 (s1 0))) (s1 (s1 (s1 0))))"], "7"),
    (["oracle-term", "(# x1 x2)", "--env", "2,3", "--method", "rewrite"], "16"),
    (["eval-term", "(# x1 x2)", "--env", "2,3", "--bound", "15"], "None"),
    (["eval-term", "(# x1 x2)", "--env", "2,3", "--bound", "16"], "Some 16"),
    (["truth", "(= (+ (s1 0) (s1 0)) (s0 (s1 0)))", "--bound", "2", "--mode", "t0"], "true"),
    (["truth", "(ex x (s0 (s1 0)) (all y (len x) (<= y x)))", "--bound", "8"], "true"),
])
def test_simple_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_eval_tree_output(capsys):
    code, out, _ = run(capsys, "eval-term", "(# x1 x2)", "--env", "2,3", "--bound", "16", "--tree")
    assert out.splitlines()[1] == "(node (# x1 x2) 16 (node x1 2) (node x2 3))"


def test_truth_trace(capsys):
    code, out, _ = run(capsys, "truth", "(all y (len 0) (not (= y y)))", "--bound", "0", "--trace")
    assert out.splitlines()[0] == "false"
    assert json.loads(out.splitlines()[1]) == {"class": "SharplyBoundedAll", "refuted_at": 0}


@pytest.mark.parametrize("argv", [
    ["oracle-term", "(cond 0 0)"],
    ["eval-term", "x2", "--env", "1", "--bound", "3"],
    ["eval-term", "x1", "--env", "a,b", "--bound", "3"],
    ["truth", "(all y (len x1) (E y))", "--env", "1", "--bound", "3"],
    ["check-proof", "/no/such/file.s02e"],
    ["check-proof", "corpus:unknown_rule.s02e"],
    ["soundness", "corpus:ineq_axiom.s02e", "--u", "3", "--sample", "5"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_check_proof_accepts_and_reports(capsys):
    code, out, _ = run(capsys, "check-proof", "examples/rule_all-r.s02e", "--json-report")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("check_report.json"))
    assert [n["k"] for n in report["nodes"]] == [1, 2, 2, 1]


def test_check_proof_rejects(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, _, _ = run(capsys, "check-proof", "corpus:rule_ex-l_bad.s02e", "--json-report", str(target))
    assert code == 1
    report = json.loads(target.read_text())
    jsonschema.validate(report, schema("check_report.json"))
    assert report["error"]["category"] == "eigenvariable"


def test_check_proof_reads_real_files(capsys, tmp_path):
    f = tmp_path / "p.s02e"
    f.write_text("(proof (axiom e-zero) (concl (seq (ants) (sucs (E 0)))) (prems))\n")
    code, out, _ = run(capsys, "check-proof", str(f))
    assert code == 0 and out.startswith("accepted")


def test_soundness_report_and_plot(capsys, tmp_path):
    png = tmp_path / "sound.png"
    code, out, _ = run(capsys, "soundness", "corpus:rule_cut.s02e", "--u", "4", "--relative",
                       "--json-report", "--plot", str(png))
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("soundness_report.json"))
    assert report["verdict"] == "all nodes hold"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_soundness_sampling_is_seeded(capsys):
    argv = ["soundness", "corpus:example_12_nodes.s02e", "--u", "8", "--relative",
            "--sample", "20", "--seed", "3", "--json-report"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_forged_proof_counterexample(capsys):
    code, out, _ = run(capsys, "soundness", "corpus:forged_empty_sequent.s02e", "--u", "8",
                       "--relative", "--forged", "--json-report")
    assert code == 1
    report = json.loads(out)
    jsonschema.validate(report, schema("soundness_report.json"))
    assert report["verdict"] == "counterexample found"


def test_unforged_flag_rejects_forged_proof(capsys):
    code, _, _ = run(capsys, "soundness", "corpus:forged_zero_eq_one.s02e", "--u", "8")
    assert code == 1


def test_fuzz_command(capsys, tmp_path):
    png = tmp_path / "fuzz.png"
    code, out, _ = run(capsys, "fuzz", "--count", "30", "--seed", "2", "--samples", "4",
                       "--json-report", "--plot", str(png))
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema("fuzz_report.json"))
    assert report["count"] == 30
    assert png.stat().st_size > 0


def test_corpus_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "ineq_axiom.s02e" in out
    code, out, _ = run(capsys, "corpus", "show", "ineq_axiom.s02e")
    assert "(axiom le-zero)" in out
    code, _, _ = run(capsys, "corpus", "export", str(tmp_path / "out"))
    assert (tmp_path / "out" / "ineq_axiom.s02e").exists()


def test_help_shows_grammar():
    proc = subprocess.run([sys.executable, "-m", "s02e", "check-proof", "--help"],
                          capture_output=True, text=True, check=True)
    assert "(proof <rule>" in proc.stdout


def test_bad_flags_exit_2():
    proc = subprocess.run([sys.executable, "-m", "s02e", "eval-term", "0", "--bound", "-1"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
