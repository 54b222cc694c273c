from fastapi import APIRouter

from bundle import ModuleVector, act
from qalgebra import Generator
from schemas import ActRequest, EvalRequest, EvalResult, PairRequest
from syntax import evaluate_text, pair_texts, parse_point, to_eval_result
from .deps import http_errors

router = APIRouter(tags=["expressions"])


@router.post("/eval", response_model=EvalResult)
def eval_expression(body: EvalRequest):
    """
    Evaluate a scalar, algebra, point or pairing expression.
    """
    with http_errors():
        return to_eval_result(evaluate_text(body.expr))


@router.post("/act", response_model=EvalResult)
def act_on_point(body: ActRequest):
    with http_errors():
        point = parse_point(body.point)
        return to_eval_result(ModuleVector.from_point(act(Generator(body.generator), point)))


@router.post("/pair", response_model=EvalResult)
def pair_points(body: PairRequest):
    """
    Pair two points; 422 when they lie over different bases.
    """
    with http_errors():
        return to_eval_result(pair_texts(body.left, body.right))
