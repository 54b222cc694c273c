"""Exact scalars: rational functions in q and the base-point symbols.

A Scalar is a pair of sparse Laurent polynomials with rational coefficients. The
field is Q(q, u0, v0, ...) with every symbol an independent indeterminate, so q is
transcendental and never a root of unity.

Normal form (no multivariate gcd is taken):
    - the denominator carries no monomial content and a positive leading coefficient,
    - numerator and denominator have coprime integer coefficients,
    - zero is 0/1.
Equality is decided by cross-multiplication.
"""
from __future__ import annotations

import logging
import math
import re
import threading
from fractions import Fraction
from functools import reduce
from itertools import zip_longest
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

logger = logging.getLogger(__name__)

Q = "q"

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]
Coercible = Union["Scalar", int, Fraction]

_IDENT = re.compile(r"[a-z][a-z0-9_]*\Z")
_symbols: list[str] = [Q]
_index: dict[str, int] = {Q: 0}
_lock = threading.Lock()


class DomainError(ValueError):
    """An operation was applied outside its domain (zero inverse, zero polynomial, ...)."""


def symbol_index(name: str) -> int:
    """Position of `name` in the session symbol table, registering it on first use."""
    idx = _index.get(name)
    if idx is not None:
        return idx
    if not _IDENT.match(name) or name in ("u", "v"):
        raise DomainError(f"invalid symbol name: {name!r}")
    with _lock:
        idx = _index.get(name)
        if idx is None:
            idx = len(_symbols)
            _symbols.append(name)
            _index[name] = idx
            logger.debug("registered symbol %s at %d", name, idx)
    return idx


def symbols() -> tuple[str, ...]:
    return tuple(_symbols)


# -- sparse Laurent polynomials ------------------------------------------------


def _strip(m: Iterable[int]) -> Monomial:
    m = tuple(m)
    end = len(m)
    while end and m[end - 1] == 0:
        end -= 1
    return m[:end]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return _strip(x + y for x, y in zip_longest(a, b, fillvalue=0))


def _key(m: Monomial, width: int) -> Monomial:
    return m + (0,) * (width - len(m))


def _poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _mono_mul(ma, mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _poly_scale(p: Poly, c: Fraction, mono: Monomial = ()) -> Poly:
    return {_mono_mul(m, mono): v * c for m, v in p.items()}


def _poly_pow(p: Poly, n: int) -> Poly:
    if len(p) == 1:
        ((m, c),) = p.items()
        return {_strip(e * n for e in m): c**n}
    out: Poly = {(): Fraction(1)}
    while n:
        if n & 1:
            out = _poly_mul(out, p)
        n >>= 1
        if n:
            p = _poly_mul(p, p)
    return out


def _normalize(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not den:
        raise DomainError("zero denominator")
    if not num:
        return {}, {(): Fraction(1)}
    width = max(len(m) for m in (*num, *den))
    shift = tuple(-min(_key(m, width)[i] for m in den) for i in range(width))
    num = _poly_scale(num, Fraction(1), shift)
    den = _poly_scale(den, Fraction(1), shift)
    if num.keys() == den.keys():
        ratios = {num[m] / den[m] for m in num}
        if len(ratios) == 1:
            return {(): ratios.pop()}, {(): Fraction(1)}

    coeffs = [*num.values(), *den.values()]
    lcm = reduce(math.lcm, (c.denominator for c in coeffs), 1)
    g = reduce(math.gcd, (int(c * lcm) for c in coeffs), 0)
    factor = Fraction(lcm, g)
    order = _text_order()
    lead = den[max(den, key=lambda m: _print_key(m, width, order))]
    if lead < 0:
        factor = -factor
    return _poly_scale(num, factor), _poly_scale(den, factor)


_order_cache: list[list[int]] = [[0]]


def _text_order() -> list[int]:
    """Symbol positions in print order: q first, then by name."""
    cached = _order_cache[0]
    if len(cached) != len(_symbols):
        cached = sorted(range(len(_symbols)), key=lambda i: (i != 0, _symbols[i]))
        _order_cache[0] = cached
    return cached


def _print_key(m: Monomial, width: int, order: list[int]) -> Monomial:
    return tuple(m[i] if i < len(m) else 0 for i in order)


def _mono_text(m: Monomial, order: Optional[list[int]] = None) -> str:
    parts = []
    for i in order or _text_order():
        e = m[i] if i < len(m) else 0
        if e:
            name = _symbols[i]
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _poly_text(p: Poly) -> str:
    width = len(_symbols)
    order = _text_order()
    out = []
    for m in sorted(p, key=lambda m: _print_key(m, width, order), reverse=True):
        c = p[m]
        mono = _mono_text(m, order)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out) or "0"


class Scalar:
    """Immutable element of Q(q, symbols)."""

    __slots__ = ("_num", "_den")
    __hash__ = None  # equal values may have different normal forms

    def __init__(self, value: Union[int, Fraction] = 0):
        if isinstance(value, Scalar):
            self._num, self._den = value._num, value._den
            return
        c = Fraction(value)
        self._num, self._den = _normalize({(): c} if c else {}, {(): Fraction(1)})

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "Scalar":
        out = cls.__new__(cls)
        out._num, out._den = _normalize(num, den)
        return out

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "Scalar":
        idx = symbol_index(name)
        mono = _strip((0,) * idx + (power,))
        return cls._make({mono: Fraction(1)}, {(): Fraction(1)})

    @classmethod
    def q_power(cls, n: int) -> "Scalar":
        return cls.symbol(Q, n)

    @classmethod
    def monomial(cls, coeff: Union[int, Fraction], exponents: Mapping[str, int]) -> "Scalar":
        width = max((symbol_index(n) + 1 for n in exponents), default=0)
        mono = [0] * width
        for name, e in exponents.items():
            mono[symbol_index(name)] += e
        return cls._make({_strip(mono): Fraction(coeff)}, {(): Fraction(1)})

    # -- arithmetic --

    def __add__(self, other: Coercible) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return Scalar._make(_poly_add(self._num, other._num), self._den)
        num = _poly_add(_poly_mul(self._num, other._den), _poly_mul(other._num, self._den))
        return Scalar._make(num, _poly_mul(self._den, other._den))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._make(_poly_scale(self._num, Fraction(-1)), self._den)

    def __sub__(self, other: Coercible) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "Scalar":
        return _coerce(other) - self

    def __mul__(self, other: Coercible) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar._make(_poly_mul(self._num, other._num), _poly_mul(self._den, other._den))

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise DomainError("zero has no inverse")
        return Scalar._make(self._den, self._num)

    def __truediv__(self, other: Coercible) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Coercible) -> "Scalar":
        return _coerce(other) * self.inv()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inv()
        return Scalar._make(_poly_pow(base._num, abs(n)), _poly_pow(base._den, abs(n)))

    # -- predicates --

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        if self._den == other._den:
            return self._num == other._num
        diff = _poly_add(
            _poly_mul(self._num, other._den),
            _poly_scale(_poly_mul(other._num, self._den), Fraction(-1)),
        )
        return not diff

    def is_laurent(self) -> bool:
        """True when the denominator is a constant."""
        return set(self._den) == {()}

    def laurent_terms(self) -> Dict[Tuple[Tuple[str, int], ...], Fraction]:
        """Terms of a Laurent polynomial keyed by ((symbol, exponent), ...)."""
        if not self.is_laurent():
            raise DomainError(f"not a Laurent polynomial: {self}")
        d = self._den[()]
        out = {}
        for m, c in self._num.items():
            if c:
                key = tuple((_symbols[i], e) for i, e in enumerate(m) if e)
                out[key] = c / d
        return out

    def as_monomial(self) -> Optional[Tuple[Fraction, Dict[str, int]]]:
        """(coefficient, exponents) when the scalar is a single nonzero Laurent term."""
        if self.is_zero() or not self.is_laurent() or len(self._num) != 1:
            return None
        ((key, c),) = self.laurent_terms().items()
        return c, dict(key)

    def free_symbols(self) -> frozenset[str]:
        names = set()
        for m in (*self._num, *self._den):
            names.update(_symbols[i] for i, e in enumerate(m) if e)
        return frozenset(names)

    def substitute(self, mapping: Mapping[str, "Scalar"]) -> "Scalar":
        """Apply the field homomorphism sending each named symbol to a Scalar."""
        return _eval_poly(self._num, mapping) / _eval_poly(self._den, mapping)

    def __str__(self) -> str:
        if self.is_laurent() and self._den[()] == 1:
            return _poly_text(self._num)
        num, den = _poly_text(self._num), _poly_text(self._den)
        if len(self._num) > 1:
            num = f"({num})"
        if len(self._den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def _coerce(value: object) -> "Scalar":
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


def _eval_poly(p: Poly, mapping: Mapping[str, Scalar]) -> Scalar:
    total = Scalar(0)
    for m, c in p.items():
        term = Scalar(c)
        for i, e in enumerate(m):
            if not e:
                continue
            name = _symbols[i]
            image = mapping.get(name)
            term = term * (image ** e if image is not None else Scalar.symbol(name, e))
        total = total + term
    return total


ZERO = Scalar(0)
ONE = Scalar(1)


def q_power(n: int) -> Scalar:
    return Scalar.q_power(n)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_inv(a: Scalar) -> Scalar:
    return a.inv()


def scalar_eq(a: Scalar, b: Scalar) -> bool:
    return a == b


def is_gamma_power(a: Scalar) -> Optional[int]:
    """n when `a` is exactly q^n, otherwise None."""
    mono = a.as_monomial()
    if mono is None:
        return None
    coeff, exps = mono
    if coeff != 1 or set(exps) - {Q}:
        return None
    return exps.get(Q, 0)
