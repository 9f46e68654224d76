from fastapi import APIRouter, Depends

from ...api.deps import get_settings
from ...core.config import Settings
from ...schemas.report import CampaignRequest
from ...schemas.response import create_response
from ...services.campaign import campaign_exit_code, cmd_khom_suite, cmd_paper_suite

router = APIRouter()


def _campaign_response(report, message: str):
    exit_code = campaign_exit_code(report)
    return create_response(
        data=report.model_dump(mode="json"),
        message=message,
        success=exit_code == 0,
        meta={"tool_version": report.tool_version, "command": report.command, "exit_code": exit_code},
    )


@router.post("/paper-suite")
def paper_suite(body: CampaignRequest, settings: Settings = Depends(get_settings)):
    """Paley symmetry and matroid campaign; failed items never abort the run"""
    report = cmd_paper_suite(body.q, settings, body.jobs, body.with_matroid)
    return _campaign_response(report, "Paper suite finished")


@router.post("/khom-suite")
def khom_suite(settings: Settings = Depends(get_settings)):
    return _campaign_response(cmd_khom_suite(settings), "Homogeneity suite finished")
