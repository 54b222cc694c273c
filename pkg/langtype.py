"""Gamma-points of hypersurfaces and their coset structure.

For f in F[x1..xn] the Gamma-points are the exponent vectors k with
f(q^k1, ..., q^kn) = 0. Inside a window [-B, B]^n they are enumerated exactly and
split greedily into affine sublattices, whose number is compared with the bound
N_f = deg(f) * (sum of the total degrees of the monomials of f).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence, Tuple

from field import DomainError, Scalar, is_gamma_power, q_power
from schemas import Coset as CosetModel
from schemas import LangTypeResult, Report, scan
from syntax import parse_scalar

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def variable(i: int) -> str:
    return f"x{i}"


@dataclass(frozen=True, eq=False)
class IntPoly:
    """sum_m c_m x^m with Scalar coefficients and nonnegative multi-indices."""

    arity: int
    monomials: Mapping[Vector, Scalar]

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise DomainError("arity must be at least 1")
        cleaned = {}
        for m, c in self.monomials.items():
            m = tuple(m)
            if len(m) != self.arity or any(e < 0 for e in m):
                raise DomainError(f"bad multi-index {m} for arity {self.arity}")
            c = Scalar(c)
            if not c.is_zero():
                cleaned[m] = c
        object.__setattr__(self, "monomials", dict(sorted(cleaned.items(), reverse=True)))

    @classmethod
    def from_scalar(cls, f: Scalar, arity: int) -> "IntPoly":
        """Split a Laurent polynomial into monomials in x1..xn; other symbols stay in coefficients."""
        names = {variable(i + 1): i for i in range(arity)}
        stray = {
            s for s in f.free_symbols() if s.startswith("x") and s[1:].isdigit() and s not in names
        }
        if stray:
            raise DomainError(f"variables beyond arity {arity}: {', '.join(sorted(stray))}")
        if not f.is_zero() and not f.is_laurent():
            raise DomainError(f"not a polynomial: {f}")
        out: dict[Vector, Scalar] = {}
        for key, c in (f.laurent_terms() if not f.is_zero() else {}).items():
            m = [0] * arity
            coeff = Scalar(c)
            for name, e in key:
                if name in names:
                    m[names[name]] = e
                else:
                    coeff = coeff * Scalar.symbol(name, e)
            m = tuple(m)
            out[m] = out[m] + coeff if m in out else coeff
        return cls(arity, out)

    @classmethod
    def parse(cls, text: str, arity: int) -> "IntPoly":
        return cls.from_scalar(parse_scalar(text), arity)

    def is_zero(self) -> bool:
        return not self.monomials

    def total_degrees(self) -> list[int]:
        return [sum(m) for m in self.monomials]

    def degree(self) -> int:
        return max(self.total_degrees(), default=0)

    def at_gamma(self, k: Sequence[int]) -> Scalar:
        """f(q^k1, ..., q^kn)."""
        total = Scalar(0)
        for m, c in self.monomials.items():
            total = total + c * q_power(sum(e * ki for e, ki in zip(m, k)))
        return total

    def to_scalar(self) -> Scalar:
        total = Scalar(0)
        for m, c in self.monomials.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term = term * Scalar.symbol(variable(i + 1), e)
            total = total + term
        return total

    def __str__(self) -> str:
        return str(self.to_scalar())


def nf_bound(f: IntPoly) -> int:
    if f.is_zero():
        raise DomainError("the zero polynomial vanishes everywhere")
    degrees = f.total_degrees()
    return max(degrees) * sum(degrees)


@dataclass(frozen=True)
class GammaPointSet:
    arity: int
    window: int
    points: Tuple[Vector, ...]

    def restrict(self, window: int) -> "GammaPointSet":
        kept = tuple(p for p in self.points if all(abs(k) <= window for k in p))
        return GammaPointSet(self.arity, window, kept)


def gamma_points(f: IntPoly, window: int) -> GammaPointSet:
    if f.is_zero():
        raise DomainError("the zero polynomial vanishes everywhere")
    if window < 1:
        raise DomainError("window must be at least 1")
    span = range(-window, window + 1)
    points = tuple(k for k in product(span, repeat=f.arity) if f.at_gamma(k).is_zero())
    logger.debug("f=%s window=%d: %d gamma-points", f, window, len(points))
    return GammaPointSet(f.arity, window, points)


def _pivot(row: Vector) -> int:
    return max(i for i, e in enumerate(row) if e)


def echelon(vectors: Iterable[Sequence[int]], n: int) -> list[Vector]:
    """Hermite basis of the lattice spanned by `vectors`, pivots taken from the last coordinate.

    Row i is zero beyond its pivot, pivots are positive and decrease with i, and the
    entries of earlier rows at a pivot column are reduced into [0, pivot).
    """
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    for col in reversed(range(n)):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head, tail = active[0], active[1:]
            for r in tail:
                f = r[col] // head[col]
                for i in range(n):
                    r[i] -= f * head[i]
            rest.extend(r for r in tail if not r[col])
            active = [head] + [r for r in tail if r[col]]
        if active:
            head = active[0]
            basis.append([-e for e in head] if head[col] < 0 else head)
        rows = [r for r in rest if any(r)]
    for j, row in enumerate(basis):
        col = _pivot(row)
        for earlier in basis[:j]:
            f = earlier[col] // row[col]
            if f:
                for i in range(n):
                    earlier[i] -= f * row[i]
    return [tuple(r) for r in basis]


def reduce_base(point: Sequence[int], basis: Sequence[Vector]) -> Vector:
    """Canonical representative of point + lattice."""
    p = list(point)
    for row in basis:
        col = _pivot(row)
        f = p[col] // row[col]
        p = [a - f * b for a, b in zip(p, row)]
    return tuple(p)


def coset_points(base: Sequence[int], basis: Sequence[Vector], window: int) -> list[Vector]:
    """base + span_Z(basis), intersected with [-window, window]^n."""
    n = len(base)
    out: list[Vector] = []

    def walk(i: int, x: list[int]) -> None:
        if i == len(basis):
            if all(-window <= e <= window for e in x):
                out.append(tuple(x))
            return
        row = basis[i]
        col = _pivot(row)
        piv = row[col]
        lo = -((window + x[col]) // piv)
        hi = (window - x[col]) // piv
        for c in range(lo, hi + 1):
            walk(i + 1, [x[j] + c * row[j] for j in range(n)])

    walk(0, list(base))
    return sorted(out)


@dataclass(frozen=True)
class Coset:
    base: Vector
    generators: Tuple[Vector, ...]

    def points(self, window: int) -> list[Vector]:
        return coset_points(self.base, self.generators, window)

    def model(self) -> CosetModel:
        return CosetModel(base=list(self.base), generators=[list(g) for g in self.generators])


@dataclass(frozen=True)
class CosetDecomposition:
    window: int
    cosets: Tuple[Coset, ...]
    overlaps: Tuple[Vector, ...] = ()

    def union(self) -> set[Vector]:
        return {p for c in self.cosets for p in c.points(self.window)}


def coset_decompose(S: GammaPointSet) -> CosetDecomposition:
    """Greedy cover of S by affine sublattices whose window part lies inside S."""
    members_of_s = set(S.points)
    n = S.arity
    hits: dict[Vector, int] = {}
    cosets = []
    for p in S.points:
        if p in hits:
            continue
        basis: list[Vector] = []
        members = {p}
        for s in S.points:
            if s in members:
                continue
            candidate = echelon([*basis, tuple(a - b for a, b in zip(s, p))], n)
            reached = set(coset_points(p, candidate, S.window))
            if reached <= members_of_s:
                basis, members = candidate, reached
        cosets.append(Coset(reduce_base(p, basis), tuple(basis)))
        for m in members:
            hits[m] = hits.get(m, 0) + 1
    overlaps = tuple(sorted(m for m, count in hits.items() if count > 1))
    if overlaps:
        logger.info("coset cover overlaps at %d points", len(overlaps))
    return CosetDecomposition(S.window, tuple(cosets), overlaps)


def lang_check(f: IntPoly, window: int) -> LangTypeResult:
    points = gamma_points(f, window)
    decomposition = coset_decompose(points)
    bound = nf_bound(f)
    result = LangTypeResult(
        poly=str(f),
        arity=f.arity,
        window=window,
        points=[list(p) for p in points.points],
        cosets=[c.model() for c in decomposition.cosets],
        overlaps=[list(p) for p in decomposition.overlaps],
        nf_bound=bound,
        passed=len(decomposition.cosets) <= bound,
    )
    logger.info("lang-type f=%s window=%d cosets=%d N_f=%d", f, window, len(result.cosets), bound)
    return result


def check_cyclic_axioms(window: int) -> Report:
    """Window evidence that Gamma is infinite cyclic, generated by q."""
    if window < 1:
        raise ValueError("window must be at least 1")
    span = range(-window, window + 1)
    q = q_power(1)

    def index_of(k: int) -> int:
        reps: list[int] = []
        for a in span:
            if not any(is_gamma_power(q_power(a) * q_power(r).inv()) % k == 0 for r in reps):
                reps.append(a)
        return len(reps)

    checks = [
        scan(
            "cyclic closed under products",
            product(span, repeat=2),
            lambda c: is_gamma_power(q_power(c[0]) * q_power(c[1])) == c[0] + c[1],
            lambda c: f"q^{c[0]} * q^{c[1]}",
        ),
        scan(
            "cyclic closed under inverses",
            span,
            lambda n: q_power(n).inv() == q_power(-n),
            lambda n: f"(q^{n})^-1",
        ),
        scan("cyclic generated by q", span, lambda n: is_gamma_power(q**n) == n, lambda n: f"q^{n}"),
        scan(
            "cyclic torsion-free",
            [n for n in span if n],
            lambda n: q**n != Scalar(1),
            lambda n: f"q^{n} = 1",
        ),
        scan(
            "cyclic index of q^(kZ) is k",
            range(1, window + 1),
            lambda k: index_of(k) == k,
            lambda k: f"k={k}",
        ),
    ]
    report = Report(title=f"cyclic axioms window={window}", checks=checks)
    logger.info("cyclic axioms window=%d passed=%s", window, report.passed)
    return report

