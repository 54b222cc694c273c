from fastapi import APIRouter

from arithmetic import GammaInt, gamma_add, gamma_mul, ring_suite
from config import WindowDep
from schemas import ArithResult, Report
from .deps import http_errors

router = APIRouter(tags=["arith"])


@router.get("/add", response_model=ArithResult)
def add(a: int, b: int):
    result = gamma_add(GammaInt(a), GammaInt(b))
    return ArithResult(exponent=result.n, text=str(result))


@router.get("/mul", response_model=ArithResult)
def mul(a: int, b: int):
    """
    Multiply through the pairing of label-shifted base vectors.
    """
    with http_errors():
        result = gamma_mul(GammaInt(a), GammaInt(b))
    return ArithResult(exponent=result.n, text=str(result))


@router.get("/suite", response_model=Report)
def suite(window: WindowDep):
    return ring_suite(window)
