from contextlib import contextmanager
from typing import Iterator

from fastapi import HTTPException

from arithmetic import ConfigurationError
from field import DomainError
from pairing import PairingSortError, PairingUndefinedError
from syntax import ExpressionError


@contextmanager
def http_errors() -> Iterator[None]:
    """Translate domain errors raised inside a route into HTTP errors."""
    try:
        yield
    except PairingUndefinedError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except (DomainError, ExpressionError, PairingSortError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except ConfigurationError as e:
        raise HTTPException(status_code=500, detail=str(e))
