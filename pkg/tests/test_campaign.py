import json

import jsonschema
import pytest

from etf_forge.schemas.report import ReportEnvelope, published_schema
from etf_forge.services import campaign


def _values(report):
    jsonschema.validate(json.loads(report.to_json()), published_schema())
    return {r.check: r.value for r in report.results}


def test_paper_suite_for_q7(settings):
    report = campaign.cmd_paper_suite([7], settings)
    values = _values(report)
    assert campaign.campaign_exit_code(report) == 0
    assert values["q=7/status"] == "ok"
    assert values["q=7/vector_group_order"] == 21
    assert values["q=7/line_group_order"] == 21
    assert values["q=7/qr_difference_set"] == [7, 3, 1]
    assert values["q=7/spark"] == 4
    assert values["q=7/bender_blocks"] == 35
    assert all(r.passed is not False for r in report.results)


def test_paper_suite_without_matroid(settings):
    report = campaign.cmd_paper_suite([11], settings, with_matroid=False)
    values = _values(report)
    assert values["q=11/line_group_order"] == 55
    assert "q=11/spark" not in values


def test_out_of_reach_q343(settings):
    report = campaign.cmd_paper_suite([343], settings)
    values = _values(report)
    assert values["q=343/status"] == "out_of_reach"
    assert values["q=343/budget_report"]["required_subsets"] > settings.budget
    assert campaign.campaign_exit_code(report) == 3


def test_rejected_item_does_not_stop_the_campaign(settings):
    report = campaign.cmd_paper_suite([5, 7], settings, with_matroid=False)
    values = _values(report)
    assert values["q=5/status"] == "rejected"
    assert values["q=7/status"] == "ok"
    assert campaign.campaign_exit_code(report) == 1


@pytest.mark.parametrize("statuses, failed, expected", [
    (["ok"], False, 0),
    (["ok", "rejected"], False, 1),
    (["rejected", "out_of_reach"], False, 3),
    (["out_of_reach"], True, 2),
])
def test_exit_code_precedence(statuses, failed, expected):
    report = ReportEnvelope(command="paper-suite")
    for i, status in enumerate(statuses):
        report.add(f"item{i}/status", status)
    if failed:
        report.add("item0/check", passed=False)
    assert campaign.campaign_exit_code(report) == expected


def test_khom_suite(settings):
    report = campaign.cmd_khom_suite(settings)
    values = _values(report)
    assert campaign.campaign_exit_code(report) == 0
    assert values["conference_q=3/3-subset_orbit"] == 4
    assert values["conference_q=7/3-subset_orbit"] == 56
    assert values["conference_q=7/dimensions"] == {"n": 8, "d": 4}
    assert values["simplex_n=5/line_group_order"] == 120
    assert values["gabor_steiner_p=3/line_group_order"] == 216
    assert values["onb_n=4/vector_group_order"] == 24
