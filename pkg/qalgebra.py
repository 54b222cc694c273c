"""The algebra A_q generated by U, U^-1, V, V^-1 with VU = qUV.

Words are reduced to the normal form c U^a V^b by a four-rule q-commutation
rewriting system plus inverse cancellation. The system is confluent, so the
normal form does not depend on where rewriting starts.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Iterable, Mapping, Sequence, Tuple, Union

from field import DomainError, Scalar, q_power

logger = logging.getLogger(__name__)


class Generator(str, Enum):
    U = "U"
    UINV = "U^-1"
    V = "V"
    VINV = "V^-1"

    @property
    def inverse(self) -> "Generator":
        return _INVERSE[self]

    @property
    def degree(self) -> Tuple[int, int]:
        """(power of U, power of V) contributed by the letter."""
        return _DEGREE[self]


_INVERSE = {
    Generator.U: Generator.UINV,
    Generator.UINV: Generator.U,
    Generator.V: Generator.VINV,
    Generator.VINV: Generator.V,
}
_DEGREE = {
    Generator.U: (1, 0),
    Generator.UINV: (-1, 0),
    Generator.V: (0, 1),
    Generator.VINV: (0, -1),
}

Word = Tuple[Generator, ...]

# (left pair) -> q-exponent gained by swapping it into U-before-V order
SWAP_RULES: Mapping[Tuple[Generator, Generator], int] = {
    (Generator.V, Generator.U): 1,
    (Generator.V, Generator.UINV): -1,
    (Generator.VINV, Generator.U): -1,
    (Generator.VINV, Generator.UINV): 1,
}


def parse_word(letters: Iterable[Union[str, Generator]]) -> Word:
    return tuple(Generator(g) for g in letters)


def word_text(w: Sequence[Generator]) -> str:
    return "*".join(g.value for g in w) if w else "I"


def rewrite(w: Sequence[Generator]) -> Tuple[int, Word]:
    """Rewrite a word to U-letters-first order; returns (q exponent, reduced word)."""
    word = list(w)
    exponent = 0
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            pair = (word[i], word[i + 1])
            if word[i + 1] is word[i].inverse:
                del word[i : i + 2]
                changed = True
                i = max(i - 1, 0)
                continue
            gain = SWAP_RULES.get(pair)
            if gain is not None:
                word[i], word[i + 1] = word[i + 1], word[i]
                exponent += gain
                changed = True
            i += 1
    return exponent, tuple(word)


@dataclass(frozen=True)
class QMonomial:
    coeff: Scalar
    a: int
    b: int

    def __str__(self) -> str:
        return str(AlgebraElement({(self.a, self.b): self.coeff}))


def normalize_word(w: Sequence[Generator]) -> QMonomial:
    exponent, reduced = rewrite(w)
    a = sum(g.degree[0] for g in reduced)
    b = sum(g.degree[1] for g in reduced)
    return QMonomial(q_power(exponent), a, b)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Finite sum of c U^a V^b with nonzero Scalar coefficients."""

    terms: Mapping[Tuple[int, int], Scalar] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {k: Scalar(v) for k, v in self.terms.items() if not Scalar(v).is_zero()}
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def identity(cls) -> "AlgebraElement":
        return cls({(0, 0): Scalar(1)})

    @classmethod
    def scalar(cls, c: Union[Scalar, int]) -> "AlgebraElement":
        return cls({(0, 0): Scalar(c)})

    @classmethod
    def generator(cls, g: Union[str, Generator]) -> "AlgebraElement":
        return cls({Generator(g).degree: Scalar(1)})

    @classmethod
    def from_monomial(cls, m: QMonomial) -> "AlgebraElement":
        return cls({(m.a, m.b): m.coeff})

    @classmethod
    def from_word(cls, w: Sequence[Generator]) -> "AlgebraElement":
        return cls.from_monomial(normalize_word(w))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return algebra_mul(self, other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        return AlgebraElement({k: c * v for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "AlgebraElement":
        if len(self.terms) == 1:
            ((a, b), c) = next(iter(self.terms.items()))
            # (c U^a V^b)^n = c^n q^{ab n(n-1)/2} U^{na} V^{nb}
            return AlgebraElement({(n * a, n * b): c**n * q_power(a * b * n * (n - 1) // 2)})
        if n < 0:
            raise DomainError("only monomials are invertible in A_q")
        out, base = AlgebraElement.identity(), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return algebra_eq(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> list[QMonomial]:
        return [QMonomial(c, a, b) for (a, b), c in sorted(self.terms.items(), reverse=True)]

    def __str__(self) -> str:
        if not self.terms:
            return "0*U^0"
        out = []
        for (a, b), c in sorted(self.terms.items(), reverse=True):
            factors = [_power_text("U", a), _power_text("V", b)]
            # a lone constant keeps the U^0 marker
            word = "*".join(f for f in factors if f) or ("U^0" if len(self.terms) == 1 else "")
            coeff = str(c)
            negative = False
            mono = c.as_monomial()
            if mono is not None and mono[0] < 0:
                negative, coeff = True, str(-c)
            if not word:
                body = coeff
            elif coeff == "1":
                body = word
            else:
                wrapped = coeff if mono is not None and "/" not in coeff else f"({coeff})"
                body = f"{wrapped}*{word}"
            if not out:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)


def _power_text(name: str, n: int) -> str:
    if n == 0:
        return ""
    return name if n == 1 else f"{name}^{n}"


def algebra_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear product: (c1 U^a1 V^b1)(c2 U^a2 V^b2) = c1 c2 q^{b1 a2} U^{a1+a2} V^{b1+b2}."""
    out: dict[Tuple[int, int], Scalar] = {}
    for (a1, b1), c1 in x.terms.items():
        for (a2, b2), c2 in y.terms.items():
            key = (a1 + a2, b1 + b2)
            term = c1 * c2 * q_power(b1 * a2)
            out[key] = out[key] + term if key in out else term
    return AlgebraElement(out)


def algebra_eq(x: AlgebraElement, y: AlgebraElement) -> bool:
    keys = set(x.terms) | set(y.terms)
    zero = Scalar(0)
    return all(x.terms.get(k, zero) == y.terms.get(k, zero) for k in keys)
