import logging

from fastapi import Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..core.exceptions import EtfForgeError, OutOfReachError
from ..schemas.response import error_envelope

logger = logging.getLogger(__name__)


def _envelope_response(status_code: int, message: str, request: Request, detail, report: dict = None):
    return JSONResponse(
        status_code=status_code,
        content=error_envelope(status_code, message, request.url.path, detail, report),
    )


# ==============================
# Request Validation Errors
# ==============================
def validation_exception_handler(request: Request, exc: RequestValidationError):
    """Malformed request bodies; one errorMessages entry per pydantic error"""
    content = error_envelope(422, "Validation Error", request.url.path, "invalid request")
    content["errorMessages"] = [
        {"path": ".".join(map(str, err["loc"][1:])) or "body", "message": err["msg"]}
        for err in exc.errors()
    ]
    return JSONResponse(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, content=content)


# ==============================
# Domain Errors
# ==============================
def etf_forge_exception_handler(request: Request, exc: EtfForgeError):
    """Usage 400, out of reach 413, failed consistency assertion 500"""
    if isinstance(exc, OutOfReachError):
        logger.warning("%s out of reach: %s", request.url.path, exc.message)
    elif exc.status_code >= 500:
        logger.error("%s assertion failed: %s", request.url.path, exc.message)
    return _envelope_response(exc.status_code, type(exc).__name__, request, exc.message, exc.report)


# ==============================
# Routing Errors
# ==============================
def http_exception_handler(request: Request, exc: StarletteHTTPException):
    if exc.status_code == 404:
        return _envelope_response(404, "Url not found", request, "Invalid URL or route")
    message = exc.detail if isinstance(exc.detail, str) else "Request error"
    return _envelope_response(exc.status_code, message, request, exc.detail)


def global_exception_handler(request: Request, exc: Exception):
    logger.exception("unhandled error on %s", request.url.path)
    return _envelope_response(
        status.HTTP_500_INTERNAL_SERVER_ERROR, "Something went wrong", request, str(exc)
    )


def register_error_handlers(app):
    app.add_exception_handler(RequestValidationError, validation_exception_handler)
    app.add_exception_handler(EtfForgeError, etf_forge_exception_handler)
    # fastapi.HTTPException subclasses the starlette one
    app.add_exception_handler(StarletteHTTPException, http_exception_handler)
    app.add_exception_handler(Exception, global_exception_handler)
