import logging
import os
from typing import Annotated, Optional

from fastapi import Depends, HTTPException

# Default window for every checking command and endpoint
DEFAULT_WINDOW = int(os.getenv("QTORUS_WINDOW", "6"))

LOG_LEVEL = os.getenv("QTORUS_LOG_LEVEL", "WARNING").upper()

# Log every checked case at DEBUG when set
ECHO = os.getenv("QTORUS_ECHO", "").lower() in ("1", "true", "yes", "on")


def configure_logging(level: Optional[str] = None) -> None:
    """Install one stderr handler on the root logger."""
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(
            level=level or LOG_LEVEL,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
    root.setLevel(level or LOG_LEVEL)


def get_window(window: Optional[int] = None) -> int:
    """Resolve an optional `window` query parameter against the default."""
    if window is None:
        return DEFAULT_WINDOW
    if window < 1:
        raise HTTPException(status_code=400, detail="window must be at least 1")
    return window


WindowDep = Annotated[int, Depends(get_window)]
