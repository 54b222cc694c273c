"""Expression language for scalars, algebra elements, bundle points and pairings.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/')? unary)*          juxtaposition multiplies
    unary   := '-' unary | power
    power   := atom ('^' '-'? INT)?
    atom    := INT | IDENT | 'U' | 'V' | point | pairing | '(' expr ')'
    point   := ('u' | 'v') '[' expr ',' expr ']'
    pairing := '<' expr '|' expr '>'

Sorts are checked when parsing: pairing two points of one sort, applying a point
to anything, or raising a point to a power is a SortError.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Union

from bundle import BasePoint, GammaBundlePoint, LineBundlePoint, ModuleVector, Sort, act_module
from field import DomainError, Q, Scalar, is_gamma_power
from pairing import PairingValue, pair
from qalgebra import AlgebraElement
from schemas import Base, EvalResult

logger = logging.getLogger(__name__)


class ExpressionError(ValueError):
    pass


class ParseError(ExpressionError):
    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)


class SortError(ExpressionError):
    pass


# -- tokens --------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[a-z][a-z0-9_]*)
  | (?P<gen>[UV])
  | (?P<op>[-+*/^()\[\],<|>])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        if kind == "ws":
            newlines = m.group().count("\n")
            if newlines:
                line += newlines
                line_start = pos + m.group().rindex("\n") + 1
        else:
            tokens.append(Token(kind if kind != "op" else m.group(), m.group(), line, column))
        pos = m.end()
    tokens.append(Token("end", "", line, len(text) - line_start + 1))
    return tokens


# -- abstract syntax -------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Point:
    sort: str
    label: "Node"
    partner: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Pair:
    left: "Node"
    right: "Node"


Node = Union[Num, Sym, Gen, Point, Add, Sub, Mul, Div, Neg, Pow, Pair]

_ATOM_START = ("int", "ident", "gen", "(", "<")


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.current
        if tok.kind != kind:
            self.fail([kind])
        return self.advance()

    def fail(self, expected: Sequence[str]):
        tok = self.current
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"unexpected {found}", tok.line, tok.column, expected)

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            self.fail(["operator", "end of input"])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            kind = self.current.kind
            if kind in ("*", "/"):
                self.advance()
                right = self.unary()
                node = Mul(node, right) if kind == "*" else Div(node, right)
            elif kind in _ATOM_START:
                node = Mul(node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        if self.current.kind == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.current.kind != "^":
            return base
        self.advance()
        sign = 1
        if self.current.kind == "-":
            self.advance()
            sign = -1
        return Pow(base, sign * int(self.expect("int").text))

    def atom(self) -> Node:
        tok = self.current
        if tok.kind == "int":
            self.advance()
            return Num(int(tok.text))
        if tok.kind == "gen":
            self.advance()
            return Gen(tok.text)
        if tok.kind == "ident":
            self.advance()
            if tok.text in ("u", "v"):
                self.expect("[")
                label = self.expr()
                self.expect(",")
                partner = self.expr()
                self.expect("]")
                return Point(tok.text, label, partner)
            return Sym(tok.text)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "<":
            self.advance()
            left = self.expr()
            self.expect("|")
            right = self.expr()
            self.expect(">")
            return Pair(left, right)
        self.fail(["number", "symbol", "U", "V", "u[", "v[", "(", "<"])


# -- sorts ---------------------------------------------------------------------


class ExprSort(str, Enum):
    SCALAR = "scalar"
    ALGEBRA = "algebra"
    U_VECTOR = "u-vector"
    V_VECTOR = "v-vector"

    @property
    def is_vector(self) -> bool:
        return self in (ExprSort.U_VECTOR, ExprSort.V_VECTOR)


def sort_of(node: Node) -> ExprSort:
    if isinstance(node, (Num, Sym)):
        return ExprSort.SCALAR
    if isinstance(node, Gen):
        return ExprSort.ALGEBRA
    if isinstance(node, Point):
        for part in (node.label, node.partner):
            if sort_of(part) is not ExprSort.SCALAR:
                raise SortError(f"point coordinates must be scalars: {unparse(part)}")
        return ExprSort.U_VECTOR if node.sort == "u" else ExprSort.V_VECTOR
    if isinstance(node, Neg):
        return sort_of(node.operand)
    if isinstance(node, Pow):
        s = sort_of(node.base)
        if s.is_vector:
            raise SortError(f"points cannot be raised to powers: {unparse(node)}")
        return s
    if isinstance(node, Pair):
        left, right = sort_of(node.left), sort_of(node.right)
        if not (left.is_vector and right.is_vector):
            raise SortError("a pairing takes two points")
        if left is right:
            raise SortError(f"pairing needs opposite sorts, got two {left.value} points")
        return ExprSort.SCALAR
    left, right = sort_of(node.left), sort_of(node.right)
    if isinstance(node, (Add, Sub)):
        if left is right:
            return left
        if {left, right} == {ExprSort.SCALAR, ExprSort.ALGEBRA}:
            return ExprSort.ALGEBRA
        raise SortError(f"cannot add {left.value} and {right.value}")
    if isinstance(node, Mul):
        if left.is_vector:
            raise SortError(f"a point cannot act on a {right.value}")
        if right.is_vector:
            return right
        return ExprSort.SCALAR if left is right is ExprSort.SCALAR else ExprSort.ALGEBRA
    if right is not ExprSort.SCALAR:
        raise SortError(f"cannot divide by a {right.value}")
    return left


def parse(text: str) -> Node:
    node = _Parser(text).parse()
    sort_of(node)
    return node


_BINARY = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def unparse(node: Node) -> str:
    """Fully parenthesized text; parse(unparse(n)) == n."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, (Sym, Gen)):
        return node.name
    if isinstance(node, Point):
        return f"{node.sort}[{unparse(node.label)}, {unparse(node.partner)}]"
    if isinstance(node, Neg):
        return f"(-{unparse(node.operand)})"
    if isinstance(node, Pow):
        return f"({unparse(node.base)}^{node.exponent})"
    if isinstance(node, Pair):
        return f"<{unparse(node.left)} | {unparse(node.right)}>"
    return f"({unparse(node.left)} {_BINARY[type(node)]} {unparse(node.right)})"


# -- evaluation ------------------------------------------------------------------

Value = Union[Scalar, AlgebraElement, ModuleVector, PairingValue]


def _as_scalar(v: Value) -> Scalar:
    return v.scalar() if isinstance(v, PairingValue) else v


def _as_algebra(v: Value) -> AlgebraElement:
    return v if isinstance(v, AlgebraElement) else AlgebraElement.scalar(_as_scalar(v))


def _bare_symbol(s: Scalar) -> Optional[str]:
    mono = s.as_monomial()
    if mono is None or mono[0] != 1 or len(mono[1]) != 1:
        return None
    ((name, e),) = mono[1].items()
    return name if e == 1 and name != Q else None


def _point_base(node: Point, label: Scalar, partner: Scalar) -> tuple[BasePoint, int]:
    form = "q^k*u0" if node.sort == "u" else "q^k*v0"
    mono = label.as_monomial()
    names = [n for n in (mono[1] if mono else {}) if n != Q]
    if mono is None or mono[0] != 1 or len(names) != 1 or mono[1][names[0]] != 1:
        raise DomainError(f"point label must have the form {form}: {label}")
    partner_sym = _bare_symbol(partner)
    if partner_sym is None:
        raise DomainError(f"point partner must be a bare symbol: {partner}")
    eigen = names[0]
    k = mono[1].get(Q, 0)
    if node.sort == "u":
        return BasePoint(eigen, partner_sym, Sort.U), k
    return BasePoint(partner_sym, eigen, Sort.V), k


def gamma_point(v: Value) -> GammaBundlePoint:
    """A single-term vector with a q-power coefficient, as a Gamma-bundle point."""
    if not isinstance(v, ModuleVector) or len(v.coeffs) != 1:
        raise DomainError("pairings are taken between single points")
    ((k, x),) = v.coeffs.items()
    c = is_gamma_power(x)
    if c is None:
        raise DomainError(f"pairings are defined on Gamma-bundle points, coefficient {x} is not a q-power")
    return GammaBundlePoint(c, k, v.base)


def _eval(node: Node) -> Value:
    if isinstance(node, Num):
        return Scalar(node.value)
    if isinstance(node, Sym):
        return Scalar.symbol(node.name)
    if isinstance(node, Gen):
        return AlgebraElement.generator(node.name)
    if isinstance(node, Point):
        base, k = _point_base(node, _as_scalar(_eval(node.label)), _as_scalar(_eval(node.partner)))
        return ModuleVector.basis(base, k)
    if isinstance(node, Pair):
        return pair(gamma_point(_eval(node.left)), gamma_point(_eval(node.right)))
    if isinstance(node, Neg):
        v = _eval(node.operand)
        return -_as_scalar(v) if isinstance(v, (Scalar, PairingValue)) else -v
    if isinstance(node, Pow):
        v = _eval(node.base)
        return v**node.exponent if isinstance(v, AlgebraElement) else _as_scalar(v) ** node.exponent
    left, right = _eval(node.left), _eval(node.right)
    if isinstance(node, (Add, Sub)):
        if isinstance(left, ModuleVector):
            return left + right if isinstance(node, Add) else left - right
        if isinstance(left, AlgebraElement) or isinstance(right, AlgebraElement):
            a, b = _as_algebra(left), _as_algebra(right)
            return a + b if isinstance(node, Add) else a - b
        a, b = _as_scalar(left), _as_scalar(right)
        return a + b if isinstance(node, Add) else a - b
    if isinstance(node, Div):
        d = _as_scalar(right).inv()
        if isinstance(left, ModuleVector):
            return left.scale(d)
        if isinstance(left, AlgebraElement):
            return left.scale(d)
        return _as_scalar(left) * d
    if isinstance(right, ModuleVector):
        if isinstance(left, AlgebraElement):
            return act_module(left, right)
        return right.scale(_as_scalar(left))
    if isinstance(left, AlgebraElement) or isinstance(right, AlgebraElement):
        return _as_algebra(left) * _as_algebra(right)
    return _as_scalar(left) * _as_scalar(right)


def evaluate(node: Node) -> Value:
    value = _eval(node)
    logger.debug("evaluated %s to %s", unparse(node), value)
    return value


def evaluate_text(text: str) -> Value:
    return evaluate(parse(text))


def render(value: Value) -> str:
    """Canonical text; evaluating it again gives the same text."""
    return str(value)


def parse_scalar(text: str) -> Scalar:
    node = parse(text)
    if sort_of(node) is not ExprSort.SCALAR:
        raise SortError(f"expected a scalar expression, got a {sort_of(node).value}")
    return _as_scalar(evaluate(node))


def parse_point(text: str) -> LineBundlePoint:
    """A single point with any nonzero coefficient."""
    node = parse(text)
    value = evaluate(node)
    if not isinstance(value, ModuleVector) or len(value.coeffs) != 1:
        raise SortError(f"expected a single point, got {render(value)}")
    return value.points()[0]


def pair_texts(left: str, right: str) -> PairingValue:
    node = Pair(_Parser(left).parse(), _Parser(right).parse())
    sort_of(node)
    return evaluate(node)


def _base_model(base: BasePoint) -> Base:
    return Base(u=base.u_sym, v=base.v_sym, sort=base.sort.value)


def to_eval_result(value: Value) -> EvalResult:
    text = render(value)
    if isinstance(value, PairingValue):
        return EvalResult(kind="pairing", text=text, scalar=str(value.scalar()), exponent=value.exponent)
    if isinstance(value, Scalar):
        return EvalResult(kind="scalar", text=text, scalar=text, exponent=is_gamma_power(value))
    if isinstance(value, AlgebraElement):
        return EvalResult(kind="algebra", text=text)
    if len(value.coeffs) == 1:
        ((k, x),) = value.coeffs.items()
        return EvalResult(kind="point", text=text, scalar=str(x), k=k, base=_base_model(value.base))
    return EvalResult(kind="vector", text=text, base=_base_model(value.base))
