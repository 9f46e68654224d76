import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from .. import __version__

SCHEMA_PATH = Path(__file__).with_name("report.schema.json")


class CheckResult(BaseModel):
    """One named check; passed is None for purely informational values"""
    check: str = Field(..., description="Name of the producing check")
    passed: Optional[bool] = None
    value: Any = None
    expected: Any = None
    detail: Optional[str] = None


class ReportEnvelope(BaseModel):
    tool_version: str = __version__
    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    results: List[CheckResult] = Field(default_factory=list)
    timing: Optional[Dict[str, float]] = None

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.results)

    def add(self, check: str, value: Any = None, passed: Optional[bool] = None,
            expected: Any = None, detail: Optional[str] = None) -> "ReportEnvelope":
        self.results.append(
            CheckResult(check=check, passed=passed, value=value, expected=expected, detail=detail)
        )
        return self

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)


def published_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text())


# ==============================
# HTTP Request Bodies
# ==============================
class AnalysisRequest(BaseModel):
    document: Dict[str, Any] = Field(..., description="Frame or Gram JSON document")
    checks: List[str] = Field(default_factory=lambda: ["equiangular", "tight", "welch", "3c", "imaginary"])


class SymmetryRequest(BaseModel):
    document: Dict[str, Any] = Field(..., description="Frame, Gram or triple table JSON document")
    mode: Literal["lines", "vectors"] = "lines"
    expect: Optional[str] = Field(None, description="agl:q, asp:p or sym:n")
    max_k: int = Field(4, ge=1, le=8)


class MatroidRequest(BaseModel):
    document: Dict[str, Any]
    design_check: bool = False
    jobs: Optional[int] = Field(None, ge=1)
    max_size: Optional[int] = Field(None, ge=2, description="Largest subset size searched by spark")


class CampaignRequest(BaseModel):
    q: List[int] = Field(default_factory=lambda: [7, 11, 27])
    with_matroid: bool = True
    jobs: Optional[int] = Field(None, ge=1)
