import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from . import __version__
from .core.config import settings

# import routers
from .api.v1.fields import router as fields_router
from .api.v1.frames import router as frames_router
from .api.v1.analysis import router as analysis_router
from .api.v1.symmetry import router as symmetry_router
from .api.v1.matroid import router as matroid_router
from .api.v1.campaigns import router as campaigns_router

# import middleware
from .middleware.error_handlers import register_error_handlers

# import response utilities
from .schemas.response import create_response

logger = logging.getLogger(__name__)


# ==============================
# Lifespan
# ==============================
@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log the effective limits on startup"""
    logger.info(
        "etf_forge %s started (budget=%d, field_bound=%d, group_cap=%d)",
        __version__, settings.budget, settings.field_bound, settings.group_cap,
    )
    yield


app = FastAPI(
    title="ETF Forge",
    version=__version__,
    lifespan=lifespan,
)

# ==============================
# Routers
# ==============================
app.include_router(fields_router, prefix="/api/v1/fields", tags=["fields"])
app.include_router(frames_router, prefix="/api/v1/frames", tags=["frames"])
app.include_router(analysis_router, prefix="/api/v1/analysis", tags=["analysis"])
app.include_router(symmetry_router, prefix="/api/v1/symmetry", tags=["symmetry"])
app.include_router(matroid_router, prefix="/api/v1/matroid", tags=["matroid"])
app.include_router(campaigns_router, prefix="/api/v1/campaigns", tags=["campaigns"])

# ==============================
# Error Handlers
# ==============================
register_error_handlers(app)


# ==============================
# Health Check
# ==============================
@app.get("/", tags=["health"])
async def root_health_check():
    """Root health check endpoint"""
    return create_response(
        message="ETF Forge is running",
        status_code=200,
        meta={"tool_version": __version__},
    )


@app.get("/health", tags=["health"])
async def health_check():
    """Health check endpoint"""
    return create_response(
        message="ETF Forge is healthy",
        status_code=200
    )


# ==============================
# Local Run
# ==============================
if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "etf_forge.main:app",
        host=settings.host,
        port=settings.port,
        reload=True,
    )
