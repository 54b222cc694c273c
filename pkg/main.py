from fastapi import FastAPI

from config import DEFAULT_WINDOW, configure_logging
from routers import arith, checks, expressions, lang

app = FastAPI(title="qtorus")


@app.on_event("startup")
def on_startup() -> None:
    configure_logging()


@app.get("/")
def read_root():
    """
    Index of the available endpoints.
    """
    return {
        "name": "qtorus",
        "default_window": DEFAULT_WINDOW,
        "endpoints": sorted(
            f"{method.upper()} {path}"
            for path, operations in app.openapi()["paths"].items()
            if path != "/"
            for method in operations
        ),
    }


app.include_router(expressions.router)
app.include_router(arith.router, prefix="/arith")
app.include_router(checks.router, prefix="/checks")
app.include_router(lang.router)
