from fastapi import APIRouter

from config import WindowDep
from pairing import check_pairing_axioms
from schemas import Report
from torus import TransferMap, check_psi, default_structure, verify_transfer, verify_transport

router = APIRouter(tags=["checks"])


@router.get("/axioms", response_model=Report)
def axioms(window: WindowDep):
    """
    Pairing postulates on the window.
    """
    return check_pairing_axioms(window)


@router.get("/transfer", response_model=Report)
def transfer(s: int, t: int, window: WindowDep):
    return verify_transfer(TransferMap(s, t), window)


@router.get("/psi", response_model=Report)
def psi(window: WindowDep, reduct: bool = False):
    return check_psi(default_structure(window), reduct=reduct)


@router.get("/transport", response_model=Report)
def transport(window: WindowDep):
    return verify_transport(window)
