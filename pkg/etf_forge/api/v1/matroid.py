from fastapi import APIRouter, Depends

from ...api.deps import get_settings
from ...core.config import Settings
from ...schemas.report import MatroidRequest
from ...schemas.response import report_response
from ...services.reports import bender_report, spark_report
from ...utils.io import parse_document, to_schema

router = APIRouter()


@router.post("/spark")
def spark(body: MatroidRequest, settings: Settings = Depends(get_settings)):
    report = spark_report(parse_document(body.document), settings, body.jobs, body.max_size)
    return report_response(report, "Spark computed")


@router.post("/bender")
def bender(body: MatroidRequest, settings: Settings = Depends(get_settings)):
    """All minimum-size dependent subsets; the block design is returned in meta"""
    report, design = bender_report(parse_document(body.document), body.design_check, settings, body.jobs)
    response = report_response(report, "Bender computed")
    response.meta["design"] = to_schema(design).model_dump(mode="json")
    return response
