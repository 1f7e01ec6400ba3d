import hashlib
import json

import pytest

from whyq.cli import EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_YES, main


@pytest.fixture
def reg(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["--registry", str(tmp_path), "init"]) == EXIT_YES
    return tmp_path


def run(reg, capsys, *argv):
    capsys.readouterr()
    code = main(["--registry", str(reg), *argv])
    return code, capsys.readouterr()


def test_init_copies_the_shipped_theories_once(reg, capsys):
    assert (reg / "specrel.why").is_file() and (reg / "specrel0.why").is_file()
    code, out = run(reg, capsys, "init")
    assert code == EXIT_YES and "already present" in out.out


@pytest.mark.parametrize("argv, expected", [
    (["check-acceptable", "{A; A -> B}", "B"], EXIT_YES),
    (["check-acceptable", "{A}", "B"], EXIT_NO),
    (["check-possible", "{P; Q}", "P"], EXIT_NO),
    (["check-possible", "{P -> Q}", "P"], EXIT_YES),
    (["pointless", "{K & B}", "K"], EXIT_YES),
    (["pointless", "{K}", "K"], EXIT_NO),
    (["prove", "{A; A -> B}", "B"], EXIT_YES),
    (["countermodel", "{P(c)}", "forall x:U. P(x)"], EXIT_YES),
    (["countermodel", "{A; A -> B}", "B"], EXIT_NO),
    (["countermodel", "{forall x:U. P(x)}", "P(c)"], EXIT_UNKNOWN),
    (["compare", "{K; B}", "{K & B}", "--mode", "piecewise"], EXIT_YES),
    (["compare", "{A & B}", "{A}"], EXIT_NO),
    (["compare", "{A}", "{A & B}"], EXIT_YES),
])
def test_golden_exit_codes(reg, capsys, argv, expected):
    code, out = run(reg, capsys, *argv)
    assert code == expected, out.out + out.err


def test_budget_exhaustion_is_unknown(reg, capsys):
    code, _ = run(reg, capsys, "--budget-steps", "1", "pointless", "{K & B}", "K")
    assert code == EXIT_UNKNOWN


@pytest.mark.parametrize("argv", [
    ["check-acceptable", "{A ->}", "B"],
    ["frobnicate"],
    ["compare", "specrel0"],
    ["compare", "nosuchtheory", "specrel0"],
    ["--budget-steps", "0", "prove", "{A}", "A"],
])
def test_usage_errors_exit_three(reg, capsys, argv):
    try:
        code, _ = run(reg, capsys, *argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_countermodel_json_report(reg, capsys):
    code, out = run(reg, capsys, "--json", "countermodel", "{P(c)}", "forall x:U. P(x)")
    doc = json.loads(out.out)
    assert code == EXIT_YES and doc["schema"] == "v1"
    assert "2" in json.dumps(doc)


def test_compare_reports_are_byte_identical_and_cached(reg, capsys):
    argv = ("--json", "--timeout", "2", "compare", "specrel0", "specrel")
    first = run(reg, capsys, *argv)
    second = run(reg, capsys, *argv)
    third = run(reg, capsys, *argv[:-2], "--no-cache", *argv[-2:])
    assert first[0] == second[0] == third[0] == EXIT_YES
    assert first[1].out == second[1].out == third[1].out
    text_run = run(reg, capsys, "--timeout", "2", "compare", "specrel0", "specrel")
    assert "[cached]" in text_run[1].out


def test_registry_theories_are_never_modified(reg, capsys):
    def digest():
        return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(reg.glob("*.why"))}

    before = digest()
    run(reg, capsys, "--timeout", "1", "compare", "specrel", "specrel0")
    run(reg, capsys, "--timeout", "1", "check-acceptable", "specrel0", "noftl")
    run(reg, capsys, "juxtapose", "specrel0", "specrel", "--out", str(reg / "out" / "both.why"))
    assert digest() == before


def test_export_tptp_reparses(reg, capsys):
    code, out = run(reg, capsys, "export-tptp", "specrel0", "--goal", "noftl")
    assert code == EXIT_YES
    text = (reg / "specrel0-noftl.p").read_text()
    assert text.count("fof(") + text.count("tff(") >= 9 and "conjecture" in text


def test_acceptable_unknown_suggests_external_prover(reg, capsys):
    code, out = run(reg, capsys, "--timeout", "1", "check-acceptable", "specrel0", "noftl")
    assert code == EXIT_UNKNOWN and "export" in out.out


def test_eval_model_noftl_and_negative_control(reg, capsys):
    code, out = run(reg, capsys, "--json", "eval-model", "minkowski")
    doc = json.loads(out.out)
    assert code == EXIT_YES and "380" in out.out and "200" in out.out
    assert doc["schema"] == "v1"
    code, out = run(reg, capsys, "eval-model", "minkowski", "--inject-superluminal")
    assert code == EXIT_NO


def test_theory_file_argument(reg, capsys, tmp_path):
    f = tmp_path / "small.why"
    f.write_text((reg / "specrel0.why").read_text())
    code, _ = run(reg, capsys, "--timeout", "1", "compare", str(f), "specrel0")
    assert code == EXIT_YES
