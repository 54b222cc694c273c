"""Integers inside Gamma: q^r encodes r.

Addition is the group law of Gamma. Multiplication goes through the pairing of
label-shifted base vectors, <u(q^a u, v) | v(q^b v, u)> = q^(ab), over a base pair
whose unshifted vectors pair to 1.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Tuple

from bundle import BasePoint, GammaBundlePoint, base_pair
from field import DomainError, Scalar, is_gamma_power, q_power
from pairing import PairFn, pair
from schemas import CheckResult, Report, scan

logger = logging.getLogger(__name__)


class ConfigurationError(RuntimeError):
    """No base pair with <u(u,v) | v(v,u)> = 1 is available."""


@dataclass(frozen=True)
class GammaInt:
    n: int

    @classmethod
    def decode(cls, value: Scalar) -> "GammaInt":
        n = is_gamma_power(value)
        if n is None:
            raise DomainError(f"not an element of Gamma: {value}")
        return cls(n)

    def scalar(self) -> Scalar:
        return q_power(self.n)

    def __str__(self) -> str:
        return f"q^{self.n}"


@dataclass(frozen=True)
class ArithmeticFrame:
    """The base pair multiplication is read off."""

    u_base: BasePoint
    v_base: BasePoint
    pair_fn: PairFn = pair

    @classmethod
    def find(
        cls, pairs: Iterable[Tuple[str, str]] = (("u0", "v0"),), pair_fn: PairFn = pair
    ) -> "ArithmeticFrame":
        for u_sym, v_sym in pairs:
            bu, bv = base_pair(u_sym, v_sym)
            if pair_fn(GammaBundlePoint(0, 0, bu), GammaBundlePoint(0, 0, bv)).exponent == 0:
                return cls(bu, bv, pair_fn)
        raise ConfigurationError("no base pair with <u(u,v) | v(v,u)> = 1")


@lru_cache(maxsize=1)
def default_frame() -> ArithmeticFrame:
    return ArithmeticFrame.find()


def gamma_add(a: GammaInt, b: GammaInt) -> GammaInt:
    return GammaInt.decode(a.scalar() * b.scalar())


def gamma_mul(a: GammaInt, b: GammaInt, frame: Optional[ArithmeticFrame] = None) -> GammaInt:
    frame = frame or default_frame()
    value = frame.pair_fn(
        GammaBundlePoint(0, a.n, frame.u_base), GammaBundlePoint(0, b.n, frame.v_base)
    )
    return GammaInt(value.exponent)


def outer_factor_product(a: GammaInt, b: GammaInt, frame: Optional[ArithmeticFrame] = None) -> GammaInt:
    """<q^a u(u,v) | q^b v(v,u)> read with the exponents as outer factors: q^(b-a)."""
    frame = frame or default_frame()
    value = frame.pair_fn(
        GammaBundlePoint(a.n, 0, frame.u_base), GammaBundlePoint(b.n, 0, frame.v_base)
    )
    return GammaInt(value.exponent)


def ring_suite(window: int, frame: Optional[ArithmeticFrame] = None) -> Report:
    """Ring laws and the decode isomorphism for exponents in [-window, window]."""
    if window < 1:
        raise ValueError("window must be at least 1")
    frame = frame or default_frame()
    span = [GammaInt(n) for n in range(-window, window + 1)]
    zero, one = GammaInt(0), GammaInt(1)

    def add(a, b):
        return gamma_add(a, b)

    def mul(a, b):
        return gamma_mul(a, b, frame)

    def pair_text(c) -> str:
        return " ".join(str(x) for x in c)

    checks = [
        scan("add commutative", product(span, repeat=2), lambda c: add(*c) == add(c[1], c[0]), pair_text),
        scan("mul commutative", product(span, repeat=2), lambda c: mul(*c) == mul(c[1], c[0]), pair_text),
        scan(
            "add associative",
            product(span, repeat=3),
            lambda c: add(add(c[0], c[1]), c[2]) == add(c[0], add(c[1], c[2])),
            pair_text,
        ),
        scan(
            "mul associative",
            product(span, repeat=3),
            lambda c: mul(mul(c[0], c[1]), c[2]) == mul(c[0], mul(c[1], c[2])),
            pair_text,
        ),
        scan(
            "distributive",
            product(span, repeat=3),
            lambda c: mul(c[0], add(c[1], c[2])) == add(mul(c[0], c[1]), mul(c[0], c[2])),
            pair_text,
        ),
        scan(
            "identities",
            span,
            lambda a: add(a, zero) == a and mul(a, one) == a and mul(a, zero) == zero,
            str,
        ),
        scan("additive inverses", span, lambda a: add(a, GammaInt(-a.n)) == zero, str),
        scan(
            "decode is a ring isomorphism",
            product(span, repeat=2),
            lambda c: add(*c).n == c[0].n + c[1].n and mul(*c).n == c[0].n * c[1].n,
            pair_text,
        ),
    ]

    # PASS on the first disagreement with a*b
    name = "outer-factor reading is not multiplication"
    checked = 0
    for a, b in product(span, repeat=2):
        checked += 1
        if outer_factor_product(a, b, frame).n != a.n * b.n:
            checks.append(CheckResult(name=name, status="PASS", checked=checked))
            break
    else:
        checks.append(
            CheckResult(name=name, status="FAIL", checked=checked, witness="agrees with a*b on the window")
        )

    report = Report(title=f"arith suite window={window}", checks=checks)
    logger.info("ring suite window=%d passed=%s", window, report.passed)
    return report
