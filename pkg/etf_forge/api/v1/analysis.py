from fastapi import APIRouter

from ...schemas.report import AnalysisRequest
from ...schemas.response import report_response
from ...services.reports import analyze_report
from ...utils.io import parse_document

router = APIRouter()


@router.post("/")
def analyze(body: AnalysisRequest):
    report = analyze_report(parse_document(body.document), body.checks)
    return report_response(report, "Analysis finished")
