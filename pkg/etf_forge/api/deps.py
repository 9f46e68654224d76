from typing import Optional

from fastapi import Query

from ..core.config import Settings, settings


def get_settings(budget: Optional[int] = Query(None, ge=1, description="Subset enumeration budget")) -> Settings:
    """
    Per-request settings. A budget query parameter overrides the configured one,
    like the --budget flag on the command line.
    """
    if budget is None:
        return settings
    return settings.model_copy(update={"budget": budget})
