import json
from pathlib import Path

import pytest

from algebra.constructions import TWIST_CONVENTION
from cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from engine.sequences import CONVENTION

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_hopf_center_of_q8(capsys):
    code, report = run_json(capsys, "hopf-center", "--builtin", "group-algebra:Q8")
    assert code == EXIT_OK
    assert report["passed"] is True
    assert report["dimensions"] == {"A": 8, "Z": 5, "HZ": 2}
    assert report["subspaces"]["HZ"]["basis"] == [{"1": "1"}, {"-1": "1"}]


def test_cocenter_of_sweedler(capsys):
    code, report = run_json(capsys, "cocenter", "--builtin", "sweedler")
    assert code == EXIT_OK
    assert report["dimensions"]["HC"] == 1
    assert report["dimensions"]["W"] == 3
    assert report["values"]["cocenter_cocommutative"] is True


def test_verify_sample_file(capsys):
    code, report = run_json(capsys, "verify", "--file", str(SAMPLES / "sweedler_h4.json"))
    assert code == EXIT_OK
    assert report["values"] == {"commutative": False, "cocommutative": False}


def test_malformed_file_is_a_usage_error(capsys):
    code = main(["verify", "--file", str(SAMPLES / "malformed.json")])
    assert code == EXIT_USAGE
    assert "index out of range" in capsys.readouterr().err


def test_failed_axioms_exit_with_one(capsys):
    code, report = run_json(capsys, "verify", "--file", str(SAMPLES / "z3_bad_antipode.json"))
    assert code == EXIT_FAILED
    assert report["passed"] is False
    failed = [c["name"] for c in report["certificates"][0]["checks"] if not c["passed"]]
    assert failed == ["antipode"]


def test_analyses_refuse_non_hopf_input(capsys):
    code = main(["center", "--file", str(SAMPLES / "z3_bad_antipode.json")])
    assert code == EXIT_FAILED
    assert "not a Hopf algebra" in capsys.readouterr().err


def test_unknown_builtin(capsys):
    assert main(["verify", "--builtin", "octonions"]) == EXIT_USAGE


def test_json_output_is_deterministic(capsys):
    argv = ["cocenter", "--builtin", "function-algebra:S3", "--format", "json"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert "timings" not in json.loads(first)


def test_timings_only_on_request(capsys):
    code, report = run_json(capsys, "verify", "--builtin", "group-algebra:Z2", "--timings")
    assert code == EXIT_OK
    assert set(report["timings"]) == {"load", "axioms"}


def test_report_written_to_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code = main(["hopf-center", "--builtin", "sweedler", "--format", "json", "--output", str(target)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["dimensions"]["HZ"] == 1
    assert [p.name for p in tmp_path.iterdir()] == ["report.json"]


def test_unwritable_output_is_a_usage_error(capsys, tmp_path):
    target = tmp_path / "missing" / "report.json"
    assert main(["verify", "--builtin", "sweedler", "--output", str(target)]) == EXIT_USAGE


def test_central_sequence_report(capsys):
    code, report = run_json(capsys, "sequence", "--kind", "central", "--builtin", "group-algebra:Q8")
    assert code == EXIT_OK
    assert report["dimensions"] == {"C": 2, "A": 8, "B": 4}
    assert report["values"]["freeness"] == "found"
    assert report["values"]["freeness_rank"] == 4
    assert report["values"]["round_trip"] is True
    assert report["notes"] == [CONVENTION]


def test_cocentral_sequence_report(capsys):
    code, report = run_json(capsys, "sequence", "--kind", "cocentral", "--builtin", "function-algebra:Q8")
    assert code == EXIT_OK
    assert report["dimensions"] == {"C": 4, "A": 8, "B": 2}
    assert report["values"]["cocenter_group_algebra"] == "group-algebra"
    assert report["values"]["ad_multiplicative"] is True


def test_sweedler_is_reported_self_dual(capsys):
    code, report = run_json(capsys, "dual", "--builtin", "sweedler", "--self-dual")
    assert code == EXIT_OK
    assert report["values"]["self_dual"] is True
    assert report["values"]["dual"]["dim"] == 4


def test_twist_keeps_the_hopf_center(capsys):
    code, report = run_json(capsys, "twist", "--builtin", "sweedler", "--element", "1=1,x=1")
    assert code == EXIT_OK
    assert report["dimensions"]["HZ"] == report["dimensions"]["HZ(twisted)"] == 1
    assert report["notes"] == [TWIST_CONVENTION]


def test_twist_needs_an_element(capsys):
    assert main(["twist", "--builtin", "sweedler"]) == EXIT_USAGE
    assert main(["twist", "--builtin", "sweedler", "--element", "y=1"]) == EXIT_USAGE


def test_twist_element_with_a_bad_cyclotomic_coefficient(capsys):
    assert main(["twist", "--builtin", "taft:3", "--element", "1=1,x=zz"]) == EXIT_USAGE
    assert "Traceback" not in capsys.readouterr().err


def test_freeness_over_listed_labels(capsys):
    code, report = run_json(capsys, "freeness", "--builtin", "sweedler", "--over", "1,g")
    assert code == EXIT_OK
    assert report["values"]["freeness_rank"] == 2
    assert report["values"]["cofactor_basis"] == ["1", "x"]


def test_freeness_over_a_non_subalgebra_fails(capsys):
    code, report = run_json(capsys, "freeness", "--builtin", "sweedler", "--over", "1,x")
    assert code == EXIT_FAILED
    assert report["passed"] is False


def test_text_rendering(capsys):
    assert main(["hopf-center", "--builtin", "group-algebra:S3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("✅ hopf-center of k[S3] over rationals")
    assert "dim HZ = 1" in out


def test_bad_arguments_exit_through_argparse(capsys):
    with pytest.raises(SystemExit) as error:
        main(["verify"])
    assert error.value.code == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["sequence", "--builtin", "sweedler"])
