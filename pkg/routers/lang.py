from fastapi import APIRouter

from config import get_window
from langtype import IntPoly, lang_check
from schemas import LangTypeRequest, LangTypeResult
from .deps import http_errors

router = APIRouter(tags=["lang-type"])


@router.post("/lang-type", response_model=LangTypeResult)
def lang_type(body: LangTypeRequest):
    """
    Gamma-points of f = 0 in the window, split into cosets and compared with N_f.
    """
    window = get_window(body.window)
    with http_errors():
        return lang_check(IntPoly.parse(body.poly, body.arity), window)
