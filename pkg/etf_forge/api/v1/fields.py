from fastapi import APIRouter, Depends

from ...api.deps import get_settings
from ...core.config import Settings
from ...schemas.field import FieldRequest
from ...schemas.response import report_response
from ...services.reports import field_report

router = APIRouter()


@router.post("/")
def describe_field(body: FieldRequest, settings: Settings = Depends(get_settings)):
    """GF(p^s) with its quadratic residues and, when Paley-admissible, the intertwiner"""
    report = field_report(body.p, body.s, body.modulus, settings)
    return report_response(report, "Field described successfully")
