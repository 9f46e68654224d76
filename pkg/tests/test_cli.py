import json

import jsonschema
import pytest

from etf_forge.cli import main
from etf_forge.schemas.report import ReportEnvelope, published_schema


def _report(capsys):
    return json.loads(capsys.readouterr().out)


def _values(report):
    return {r["check"]: r["value"] for r in report["results"]}


@pytest.fixture
def phi7_file(tmp_path):
    path = tmp_path / "phi7.json"
    assert main(["construct", "paley", "--q", "7", "--out", str(path)]) == 0
    return path


def test_construct_writes_frame_document(phi7_file):
    document = json.loads(phi7_file.read_text())
    assert document["kind"] == "frame"
    assert (document["d"], document["n"], document["m"]) == (3, 7, 7)
    assert document["labels"] == [0, 1, 3, 2, 6, 4, 5]


def test_paley_shortcut_prints_to_stdout(capsys):
    assert main(["paley", "--q", "11"]) == 0
    document = _report(capsys)
    assert (document["d"], document["n"]) == (5, 11)


def test_analyze_paley(phi7_file, capsys):
    assert main(["analyze", "--in", str(phi7_file)]) == 0
    report = _report(capsys)
    assert report["command"] == "analyze"
    assert all(r["passed"] is not False for r in report["results"])


def test_analyze_unknown_check(phi7_file, capsys):
    assert main(["analyze", "--in", str(phi7_file), "--checks", "equiangular,orthogonal"]) == 1
    assert _report(capsys)["success"] is False


def test_timing_is_recorded_only_on_request(phi7_file, capsys):
    main(["analyze", "--in", str(phi7_file)])
    assert _report(capsys)["timing"] is None
    main(["--timing", "analyze", "--in", str(phi7_file)])
    assert "seconds" in _report(capsys)["timing"]


@pytest.mark.parametrize("argv", [
    ["paley", "--q", "5"],
    ["paley", "--q", "9"],
    ["construct", "diffset", "--group", "7", "--set", "1,2,3"],
    ["frobnicate"],
    ["paley"],
    ["analyze", "--in", "does-not-exist.json"],
])
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    body = _report(capsys)
    assert body["success"] is False
    assert body["errorMessages"]


def test_prime_power_conference_is_out_of_reach(capsys):
    assert main(["construct", "conference", "--q", "27"]) == 3
    body = _report(capsys)
    assert body["statusCode"] == 413
    assert body["report"]["q"] == 27


def test_paper_suite_out_of_reach(capsys):
    assert main(["paper-suite", "--q", "343", "--no-matroid"]) == 3
    report = _report(capsys)
    jsonschema.validate(report, published_schema())
    assert _values(report)["q=343/status"] == "out_of_reach"


def test_schema(capsys):
    assert main(["schema"]) == 0
    schema = _report(capsys)
    assert "results" in schema["properties"]


def test_field(capsys):
    assert main(["field", "--p", "3", "--s", "3"]) == 0
    values = _values(_report(capsys))
    assert values["paley_admissible"] is True
    assert values["field"]["modulus"] == [1, 0, 2, 1]
    assert len(values["qr_set"]) == 13


def test_symmetry_against_agl(phi7_file, capsys):
    assert main(["symmetry", "--in", str(phi7_file), "--expect", "agl:7"]) == 0
    values = _values(_report(capsys))
    assert values["order"] == 21
    assert values["expected_group_equal"] is True


def test_homogeneity(phi7_file, capsys):
    assert main(["homogeneity", "--in", str(phi7_file), "--max-k", "3"]) == 0
    values = _values(_report(capsys))
    assert values["2-homogeneous"] is True
    assert values["2-transitive"] is False
    assert values["3-homogeneous"] is False


def test_spark(phi7_file, capsys):
    assert main(["spark", "--in", str(phi7_file)]) == 0
    values = _values(_report(capsys))
    assert values["spark"] == 4
    assert values["full_spark"] is True


@pytest.mark.parametrize("argv", [
    ["spark", "--in", "{frame}", "--jobs", "2", "--max-size", "4"],
    ["--jobs", "2", "spark", "--in", "{frame}", "--budget", "1000"],
])
def test_spark_takes_limits_after_the_subcommand(argv, phi7_file, capsys):
    assert main([a.format(frame=phi7_file) for a in argv]) == 0
    assert _values(_report(capsys))["spark"] == 4


@pytest.mark.parametrize("argv", [
    ["--budget", "10", "spark", "--in", "{frame}"],
    ["spark", "--in", "{frame}", "--budget", "10"],
    ["bender", "--in", "{frame}", "--budget", "10"],
])
def test_budget_flag_is_honoured_in_either_position(argv, phi7_file, capsys):
    assert main([a.format(frame=phi7_file) for a in argv]) == 3
    assert _report(capsys)["statusCode"] == 413


def test_spark_max_size_below_the_spark(tmp_path, capsys):
    path = tmp_path / "phi11.json"
    assert main(["construct", "paley", "--q", "11", "--out", str(path)]) == 0
    capsys.readouterr()
    assert main(["spark", "--in", str(path), "--max-size", "4"]) == 3
    assert _report(capsys)["report"]["spark_at_least"] == 5


def test_bender_then_design(phi7_file, tmp_path, capsys):
    design_file = tmp_path / "bender.json"
    assert main(["bender", "--in", str(phi7_file), "--out", str(design_file)]) == 0
    assert _values(_report(capsys))["blocks"] == 35

    assert main(["design", "--in", str(design_file), "--t", "2"]) == 0
    values = _values(_report(capsys))
    assert values["2-design"] == 10


def test_design_rejects_frames(phi7_file, capsys):
    assert main(["design", "--in", str(phi7_file)]) == 1


def test_switch_equiv(phi7_file, capsys):
    assert main(["switch-equiv", "--in", str(phi7_file), "--other", str(phi7_file), "--permute"]) == 0
    values = _values(_report(capsys))
    assert values["aligned_equivalent"] is True
    assert values["permutation"] is not None


def test_shipped_schema_matches_the_model():
    shipped, live = published_schema(), ReportEnvelope.model_json_schema()
    assert shipped["required"] == live["required"]
    assert set(shipped["properties"]) == set(live["properties"])
    assert set(shipped["$defs"]["CheckResult"]["properties"]) == set(live["$defs"]["CheckResult"]["properties"])
