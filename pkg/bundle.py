"""Gamma-bundles, line bundles and the modules M_|u,v> and M_<v,u|.

A representative pair (u, v) is a pair of free symbols. The U-sort basis vector
u(q^k u, v) and the V-sort basis vector v(q^k v, u) are addressed by the label
shift k alone; a line-bundle point is x * u(q^k u, v) with the outer Gamma factor
of a Gamma-bundle point absorbed into x (the canonical E-class representative).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence, Tuple

from field import DomainError, Scalar, q_power, symbol_index
from qalgebra import AlgebraElement, Generator

logger = logging.getLogger(__name__)


class Sort(str, Enum):
    U = "u"
    V = "v"

    @property
    def opposite(self) -> "Sort":
        return Sort.V if self is Sort.U else Sort.U


@dataclass(frozen=True)
class BasePoint:
    u_sym: str
    v_sym: str
    sort: Sort = Sort.U

    def __post_init__(self) -> None:
        if self.u_sym == self.v_sym:
            raise DomainError(f"base symbols must differ: {self.u_sym}")
        symbol_index(self.u_sym)
        symbol_index(self.v_sym)
        object.__setattr__(self, "sort", Sort(self.sort))

    @property
    def pair(self) -> Tuple[str, str]:
        return (self.u_sym, self.v_sym)

    def with_sort(self, sort: Sort) -> "BasePoint":
        return BasePoint(self.u_sym, self.v_sym, sort)

    @property
    def eigen_symbol(self) -> str:
        """Symbol shifted by the label: u for the U-sort, v for the V-sort."""
        return self.u_sym if self.sort is Sort.U else self.v_sym

    @property
    def partner_symbol(self) -> str:
        return self.v_sym if self.sort is Sort.U else self.u_sym

    def label(self, k: int) -> Scalar:
        """The scalar q^k u (U-sort) or q^k v (V-sort) naming basis vector k."""
        return q_power(k) * Scalar.symbol(self.eigen_symbol)

    def label_text(self, k: int) -> str:
        return f"{self.sort.value}[{self.label(k)}, {self.partner_symbol}]"


def base_pair(u_sym: str, v_sym: str) -> Tuple[BasePoint, BasePoint]:
    """The U-sort and V-sort bases over one representative pair."""
    return BasePoint(u_sym, v_sym, Sort.U), BasePoint(u_sym, v_sym, Sort.V)


@dataclass(frozen=True)
class GammaBundlePoint:
    """q^c * u(q^k u, v) or q^c * v(q^k v, u): the 4-tuple (x, gamma1, gamma2, base)."""

    c: int
    k: int
    base: BasePoint

    def __str__(self) -> str:
        return f"{q_power(self.c)} * {self.base.label_text(self.k)}"


@dataclass(frozen=True)
class LineBundlePoint:
    x: Scalar
    k: int
    base: BasePoint

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Scalar(self.x))
        if self.x.is_zero():
            raise DomainError("line-bundle points have a nonzero scalar")

    def __str__(self) -> str:
        return f"{_coeff_text(self.x)} * {self.base.label_text(self.k)}"


class Fiber(NamedTuple):
    fiber: Scalar
    base: BasePoint


def _coeff_text(x: Scalar) -> str:
    text = str(x)
    if x.as_monomial() is None or "/" in text:
        return f"({text})"
    return text


def project_pi(p: GammaBundlePoint) -> Fiber:
    """pi: forget the outer Gamma factor, keep the fiber scalar and the base class."""
    return Fiber(p.base.label(p.k), p.base)


def e_normalize(x: Scalar, c: int, k: int, base: BasePoint) -> LineBundlePoint:
    """Canonical representative of the E-class of (x, q^c * u(q^k u, v))."""
    if x.is_zero():
        raise DomainError("E-classes are formed from nonzero scalars")
    return LineBundlePoint(x * q_power(c), k, base)


def embed(p: GammaBundlePoint) -> LineBundlePoint:
    return e_normalize(Scalar(1), p.c, p.k, p.base)


def act(g: Generator, p: LineBundlePoint) -> LineBundlePoint:
    """Action of one generator on a line-bundle point."""
    g = Generator(g)
    base = p.base
    u = Scalar.symbol(base.u_sym)
    v = Scalar.symbol(base.v_sym)
    if base.sort is Sort.U:
        if g is Generator.U:
            return LineBundlePoint(p.x * q_power(p.k) * u, p.k, base)
        if g is Generator.UINV:
            return LineBundlePoint(p.x * q_power(-p.k) * u.inv(), p.k, base)
        if g is Generator.V:
            return LineBundlePoint(p.x * v, p.k - 1, base)
        return LineBundlePoint(p.x * v.inv(), p.k + 1, base)
    if g is Generator.U:
        return LineBundlePoint(p.x * u, p.k + 1, base)
    if g is Generator.UINV:
        return LineBundlePoint(p.x * u.inv(), p.k - 1, base)
    if g is Generator.V:
        return LineBundlePoint(p.x * q_power(p.k) * v, p.k, base)
    return LineBundlePoint(p.x * q_power(-p.k) * v.inv(), p.k, base)


Action = Callable[[Generator, LineBundlePoint], LineBundlePoint]


def act_word(w: Sequence[Generator], p: LineBundlePoint, action: Action = act) -> LineBundlePoint:
    """Apply a word as an operator product: the rightmost letter acts first."""
    for g in reversed(w):
        p = action(g, p)
    return p


def scalar_mul_line(s: Scalar, p: LineBundlePoint) -> LineBundlePoint:
    if s.is_zero():
        raise DomainError("line bundles are scaled by nonzero scalars")
    return LineBundlePoint(s * p.x, p.k, p.base)


@dataclass(frozen=True, eq=False)
class ModuleVector:
    """Finite combination sum_k c_k * u(q^k u, v) over one base."""

    base: BasePoint
    coeffs: Mapping[int, Scalar] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {k: c for k, c in self.coeffs.items() if not c.is_zero()}
        object.__setattr__(self, "coeffs", dict(sorted(cleaned.items())))

    @classmethod
    def basis(cls, base: BasePoint, k: int = 0) -> "ModuleVector":
        return cls(base, {k: Scalar(1)})

    @classmethod
    def from_point(cls, p: LineBundlePoint) -> "ModuleVector":
        return cls(p.base, {p.k: p.x})

    @classmethod
    def combine(cls, points: Iterable[LineBundlePoint]) -> "ModuleVector":
        points = list(points)
        if not points:
            raise DomainError("empty combination has no base")
        out = cls(points[0].base)
        for p in points:
            out = out + cls.from_point(p)
        return out

    def _check_base(self, other: "ModuleVector") -> None:
        if other.base != self.base:
            raise DomainError(f"vectors live over different bases: {self.base} and {other.base}")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._check_base(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return ModuleVector(self.base, out)

    def scale(self, s: Scalar) -> "ModuleVector":
        return ModuleVector(self.base, {k: s * c for k, c in self.coeffs.items()})

    def __neg__(self) -> "ModuleVector":
        return self.scale(Scalar(-1))

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if other.base != self.base:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        zero = Scalar(0)
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero) for k in keys)

    def is_zero(self) -> bool:
        return not self.coeffs

    def points(self) -> list[LineBundlePoint]:
        return [LineBundlePoint(c, k, self.base) for k, c in self.coeffs.items()]

    def __str__(self) -> str:
        if not self.coeffs:
            return f"0 * {self.base.label_text(0)}"
        out = []
        for p in self.points():
            mono = p.x.as_monomial()
            if out and mono is not None and mono[0] < 0:
                out.append(f" - {LineBundlePoint(-p.x, p.k, p.base)}")
            elif out:
                out.append(f" + {p}")
            else:
                out.append(str(p))
        return "".join(out)


def act_module(w: AlgebraElement, m: ModuleVector) -> ModuleVector:
    """Linear extension of the generator actions; c U^a V^b applies V^b, then U^a."""
    base = m.base
    u = Scalar.symbol(base.u_sym)
    v = Scalar.symbol(base.v_sym)
    out: dict[int, Scalar] = {}
    for (a, b), c in w.terms.items():
        for k, x in m.coeffs.items():
            if base.sort is Sort.U:
                target = k - b
                coeff = c * x * v**b * q_power(a * target) * u**a
            else:
                target = k + a
                coeff = c * x * q_power(k * b) * v**b * u**a
            out[target] = out[target] + coeff if target in out else coeff
    return ModuleVector(base, out)


def act_module_word(w: Sequence[Generator], m: ModuleVector, action: Action = act) -> ModuleVector:
    """Letter-by-letter action of a word on each term: the oracle for act_module."""
    if m.is_zero():
        return m
    return ModuleVector.combine(act_word(w, p, action) for p in m.points())


def gamma_set(base: BasePoint, k: int, window: int) -> list[GammaBundlePoint]:
    """The represented part of pi^-1(q^k u, v): outer exponents c in [-window, window]."""
    return [GammaBundlePoint(c, k, base) for c in range(-window, window + 1)]


def gamma_act(n: int, p: GammaBundlePoint) -> GammaBundlePoint:
    """The element q^n of Gamma acting on a Gamma-bundle point."""
    return GammaBundlePoint(p.c + n, p.k, p.base)
