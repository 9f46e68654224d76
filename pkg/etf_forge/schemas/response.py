from typing import Generic, Optional, TypeVar

from pydantic import BaseModel, ConfigDict

T = TypeVar('T')


class ApiResponse(BaseModel, Generic[T]):
    """Standardized API response structure"""
    model_config = ConfigDict(from_attributes=True)

    statusCode: int
    success: bool
    message: Optional[str] = None
    meta: Optional[dict] = None
    data: Optional[T] = None


def create_response(
    data: T = None,
    message: str = None,
    status_code: int = 200,
    success: bool = True,
    meta: dict = None
) -> ApiResponse[T]:
    """
    Create a standardized API response

    Args:
        data: Report envelope or exchange schema
        message: Success/error message
        status_code: HTTP status code
        success: Whether every check in the report passed
        meta: Additional metadata (tool version, command)

    Returns:
        Standardized ApiResponse object
    """
    return ApiResponse[T](
        statusCode=status_code,
        success=success,
        message=message,
        meta=meta,
        data=data
    )


def error_envelope(status_code: int, message: str, path: str, detail: str, report: dict = None) -> dict:
    """Error body shared by the HTTP handlers and the CLI"""
    body = {
        "success": False,
        "statusCode": status_code,
        "message": message,
        "errorMessages": [{"path": path, "message": detail}],
    }
    if report:
        body["report"] = report
    return body


def report_response(report, message: str) -> ApiResponse:
    """Wrap a ReportEnvelope; success mirrors whether every check passed"""
    return create_response(
        data=report.model_dump(mode="json"),
        message=message,
        success=report.passed,
        meta={"tool_version": report.tool_version, "command": report.command},
    )
