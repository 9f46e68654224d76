from fastapi import APIRouter, Depends

from ...api.deps import get_settings
from ...core.config import Settings
from ...schemas.report import SymmetryRequest
from ...schemas.response import report_response
from ...services.reports import homogeneity_report, symmetry_report
from ...utils.io import parse_document

router = APIRouter()


@router.post("/")
def symmetry_group(body: SymmetryRequest, settings: Settings = Depends(get_settings)):
    """Vector or line symmetry group, optionally compared with a predicted group"""
    report = symmetry_report(parse_document(body.document), body.mode, body.expect, body.max_k, settings)
    return report_response(report, "Symmetry group computed")


@router.post("/homogeneity")
def homogeneity(body: SymmetryRequest, settings: Settings = Depends(get_settings)):
    report = homogeneity_report(parse_document(body.document), body.mode, body.max_k, settings)
    return report_response(report, "Homogeneity table computed")
