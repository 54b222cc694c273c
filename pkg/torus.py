"""The quantum 2-torus as a checkable structure.

`TorusStructure` bundles the pieces a model of the axiomatization is built from
(scalar addition, q, Gamma, the projection, the Gamma-action, F*-scaling, the
generator actions and the pairing). `check_psi` verifies the clauses one by one
on a finite window; every component can be swapped to inject a fault.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field, replace
from itertools import product
from typing import Callable, Mapping, Optional, Tuple

from bundle import (
    Action,
    BasePoint,
    Fiber,
    GammaBundlePoint,
    LineBundlePoint,
    ModuleVector,
    Sort,
    act,
    base_pair,
    embed,
    gamma_act,
    gamma_set,
    project_pi,
    scalar_mul_line,
)
from config import DEFAULT_WINDOW
from field import ONE, Scalar, is_gamma_power, q_power, scalar_add
from pairing import PairFn, check_pairing_axioms, pair
from qalgebra import Generator
from schemas import CheckResult, Report, scan

logger = logging.getLogger(__name__)

DEFAULT_PAIRS: Tuple[Tuple[str, str], ...] = (("u0", "v0"), ("u1", "v1"))
CHARACTERISTIC_SPOT_CHECK = 50


def sample_scalars(u_sym: str, v_sym: str) -> list[Scalar]:
    """Nonzero scalars used wherever a clause quantifies over F*."""
    u, v = Scalar.symbol(u_sym), Scalar.symbol(v_sym)
    q = q_power(1)
    return [ONE, q, q.inv(), u, v, Scalar(2), q * q * u.inv(), q + 1, u / (v - q)]


@dataclass(frozen=True, eq=False)
class TorusStructure:
    pairs: Tuple[Tuple[str, str], ...] = DEFAULT_PAIRS
    window: int = DEFAULT_WINDOW
    q: Scalar = dc_field(default_factory=lambda: q_power(1))
    add: Callable[[Scalar, Scalar], Scalar] = scalar_add
    gamma: Optional[Callable[[int], Scalar]] = None
    projection: Callable[[GammaBundlePoint], Fiber] = project_pi
    gamma_action: Callable[[int, GammaBundlePoint], GammaBundlePoint] = gamma_act
    scale: Callable[[Scalar, LineBundlePoint], LineBundlePoint] = scalar_mul_line
    action: Action = act
    pairing: PairFn = pair

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError("window must be at least 1")
        if not self.pairs:
            raise ValueError("a structure needs at least one representative pair")
        seen: set[str] = set()
        for u_sym, v_sym in self.pairs:
            base_pair(u_sym, v_sym)
            if u_sym in seen or v_sym in seen:
                raise ValueError(f"representative symbols are reused: {u_sym}, {v_sym}")
            seen.update((u_sym, v_sym))

    @property
    def bases(self) -> list[BasePoint]:
        return [b for u_sym, v_sym in self.pairs for b in base_pair(u_sym, v_sym)]

    @property
    def span(self) -> range:
        return range(-self.window, self.window + 1)

    def gamma_element(self, n: int) -> Scalar:
        if self.gamma is not None:
            return self.gamma(n)
        return self.q**n

    def with_window(self, window: int) -> "TorusStructure":
        return replace(self, window=window)


def default_structure(window: Optional[int] = None) -> TorusStructure:
    return TorusStructure(window=DEFAULT_WINDOW if window is None else window)


@dataclass(frozen=True)
class TransferMap:
    """Change of representatives u0 = q^s ug, v0 = q^t vg."""

    s: int
    t: int


def transfer_u(m: TransferMap, k: int) -> Tuple[int, int]:
    """u(q^k u0, v0) = q^(kt+st) u(q^(k+s) ug, vg); returns (outer exponent, label)."""
    return k * m.t + m.s * m.t, k + m.s


def transfer_v(m: TransferMap, k: int) -> Tuple[int, int]:
    """v(q^k v0, u0) = q^(-sk) v(q^(k+t) vg, ug)."""
    return -m.s * k, k + m.t


def compose_transfer(first: TransferMap, second: TransferMap) -> Tuple[TransferMap, int]:
    """Transfer by `first` then `second` as one transfer plus a uniform outer exponent."""
    return TransferMap(first.s + second.s, first.t + second.t), -second.s * first.t


def transfer_point(
    m: TransferMap, p: LineBundlePoint, old: Tuple[str, str] = ("ug", "vg")
) -> LineBundlePoint:
    """Rewrite a point over the new pair in the coordinates of the old pair."""
    new_u, new_v = p.base.pair
    target = BasePoint(old[0], old[1], p.base.sort)
    substitution = {
        new_u: q_power(m.s) * Scalar.symbol(old[0]),
        new_v: q_power(m.t) * Scalar.symbol(old[1]),
    }
    outer, label = transfer_u(m, p.k) if p.base.sort is Sort.U else transfer_v(m, p.k)
    return LineBundlePoint(p.x.substitute(substitution) * q_power(outer), label, target)


def verify_transfer(
    m: TransferMap,
    window: int,
    new: Tuple[str, str] = ("u0", "v0"),
    old: Tuple[str, str] = ("ug", "vg"),
) -> Report:
    if window < 1:
        raise ValueError("window must be at least 1")
    span = range(-window, window + 1)
    new_u, new_v = base_pair(*new)
    old_u, old_v = base_pair(*old)
    coords = [ONE, Scalar.symbol(new[0]) * Scalar.symbol(new[1])]

    def equivariant(case) -> bool:
        base, k, g, x = case
        p = LineBundlePoint(x, k, base)
        return transfer_point(m, act(g, p), old) == act(g, transfer_point(m, p, old))

    def render(case) -> str:
        base, k, g, x = case
        return f"{g.value} on {LineBundlePoint(x, k, base)}"

    checks = [
        scan(
            f"transfer equivariance {sort.value}-sort",
            product([base], span, list(Generator), coords),
            equivariant,
            render,
        )
        for sort, base in ((Sort.U, new_u), (Sort.V, new_v))
    ]

    def preserves(case) -> bool:
        k, mm = case
        a = GammaBundlePoint(*transfer_v(m, mm), old_v)
        b = GammaBundlePoint(*transfer_u(m, k), old_u)
        return pair(a, b).exponent == -mm * k

    checks.append(
        scan(
            "transfer pairing <v(q^m v0,u0) | u(q^k u0,v0)> = q^(-mk)",
            product(span, repeat=2),
            preserves,
            lambda c: f"k={c[0]} m={c[1]}",
        )
    )
    report = Report(title=f"transfer-check s={m.s} t={m.t} window={window}", checks=checks)
    logger.info("transfer s=%d t=%d window=%d passed=%s", m.s, m.t, window, report.passed)
    return report


def _rename_base(base: BasePoint, rename: Mapping[str, str]) -> BasePoint:
    return BasePoint(rename.get(base.u_sym, base.u_sym), rename.get(base.v_sym, base.v_sym), base.sort)


def transport(p: LineBundlePoint, rename: Mapping[str, str]) -> LineBundlePoint:
    """Push a point through the field isomorphism renaming its base symbols."""
    substitution = {old: Scalar.symbol(new) for old, new in rename.items()}
    return LineBundlePoint(p.x.substitute(substitution), p.k, _rename_base(p.base, rename))


def verify_transport(
    window: int,
    source: Tuple[str, str] = ("u0", "v0"),
    target: Tuple[str, str] = ("u1", "v1"),
) -> Report:
    if window < 1:
        raise ValueError("window must be at least 1")
    rename = dict(zip(source, target))
    span = range(-window, window + 1)
    src_u, src_v = base_pair(*source)
    coords = sample_scalars(*source)[:5]

    def equivariant(case) -> bool:
        base, k, g, x = case
        p = LineBundlePoint(x, k, base)
        return transport(act(g, p), rename) == act(g, transport(p, rename))

    def moved(p: GammaBundlePoint) -> Optional[GammaBundlePoint]:
        image = transport(embed(p), rename)
        c = is_gamma_power(image.x)
        return None if c is None else GammaBundlePoint(c, image.k, image.base)

    def preserves(case) -> bool:
        k, mm, c = case
        a, b = GammaBundlePoint(c, k, src_u), GammaBundlePoint(-c, mm, src_v)
        ma, mb = moved(a), moved(b)
        if ma is None or mb is None:
            return False
        return pair(a, b) == pair(ma, mb) and pair(b, a) == pair(mb, ma)

    checks = [
        scan(
            "transport equivariance",
            product([src_u, src_v], span, list(Generator), coords),
            equivariant,
            lambda c: f"{c[2].value} on {LineBundlePoint(c[3], c[1], c[0])}",
        ),
        scan(
            "transport pairing",
            product(span, span, (0, 1)),
            preserves,
            lambda c: f"k={c[0]} m={c[1]} c={c[2]}",
        ),
    ]
    title = f"transport-check {source[0]},{source[1]} -> {target[0]},{target[1]} window={window}"
    report = Report(title=title, checks=checks)
    logger.info("transport window=%d passed=%s", window, report.passed)
    return report


def _clause_characteristic(T: TorusStructure) -> CheckResult:
    name = "clause-1 characteristic zero"
    sums = []
    total = Scalar(0)
    for n in range(1, CHARACTERISTIC_SPOT_CHECK + 1):
        total = T.add(total, ONE)
        sums.append((n, total))
    return scan(name, sums, lambda c: not c[1].is_zero(), lambda c: f"{c[0]}*1 = 0")


def _clause_root_of_unity(T: TorusStructure) -> CheckResult:
    return scan(
        "clause-2 q is not a root of unity",
        range(1, T.window + 1),
        lambda n: not T.q.is_zero() and T.q**n != ONE,
        lambda n: f"q^{n} = 1",
    )


def _clause_gamma(T: TorusStructure) -> CheckResult:
    def holds(case) -> bool:
        n, m = case
        g_n = T.gamma_element(n)
        return is_gamma_power(g_n) == n and g_n * T.gamma_element(m) == T.gamma_element(n + m)

    return scan(
        "clause-3 Gamma = q^Z",
        product(T.span, repeat=2),
        holds,
        lambda c: f"n={c[0]} m={c[1]}",
    )


def _clause_projection(T: TorusStructure) -> CheckResult:
    cases = [(base, k) for base in T.bases for k in T.span]
    images: dict[BasePoint, list[Fiber]] = {
        base: [T.projection(p) for kk in T.span for p in gamma_set(base, kk, T.window)]
        for base in T.bases
    }

    def hit(case) -> bool:
        base, k = case
        return Fiber(base.label(k), base) in images[base]

    return scan(
        "clause-4 pi is surjective",
        cases,
        hit,
        lambda c: f"no point over {c[0].label_text(c[1])}",
    )


def _clause_fibers(T: TorusStructure) -> CheckResult:
    small = range(-2, 3)

    def orbit(case) -> bool:
        base, k = case
        fiber = gamma_set(base, k, T.window)
        for p in fiber:
            image = T.projection(p)
            if any(T.projection(T.gamma_action(n, p)) != image for n in small):
                return False
        for p1, p2 in product(fiber, repeat=2):
            if T.gamma_action(p2.c - p1.c, p1) != p2:
                return False
        return all(T.scale(x, embed(p)).k == k for p in fiber[:1] for x in sample_scalars(*base.pair))

    return scan(
        "clause-5 fibers are Gamma-orbits",
        [(base, k) for base in T.bases for k in T.span],
        orbit,
        lambda c: f"fiber over {c[0].label_text(c[1])}",
    )


def _clause_module(T: TorusStructure) -> CheckResult:
    def vscale(s: Scalar, m: ModuleVector) -> ModuleVector:
        if m.is_zero():
            return m
        return ModuleVector.combine(T.scale(s, p) for p in m.points())

    def holds(case) -> bool:
        base, k, s, t = case
        p = LineBundlePoint(ONE, k, base)
        if T.scale(ONE, p) != p:
            return False
        if T.scale(s, T.scale(t, p)) != T.scale(s * t, p):
            return False
        m = ModuleVector.from_point(p) + ModuleVector.basis(base, k + 1)
        n = ModuleVector.basis(base, k)
        if not (s + t).is_zero() and vscale(s + t, m) != vscale(s, m) + vscale(t, m):
            return False
        return vscale(s, m + n) == vscale(s, m) + vscale(s, n)

    cases = [
        (base, k, s, t)
        for base in T.bases
        for k in range(-2, 3)
        for s, t in product(sample_scalars(*base.pair)[:6], repeat=2)
    ]
    return scan(
        "clause-6 F*U and F*V are F-modules",
        cases,
        holds,
        lambda c: f"s={c[2]} t={c[3]} on {c[0].label_text(c[1])}",
    )


def expected_action(g: Generator, p: LineBundlePoint) -> LineBundlePoint:
    """The action read off the defining equations, in terms of the fiber scalar."""
    base, x, k = p.base, p.x, p.k
    fiber = base.label(k)
    u = Scalar.symbol(base.u_sym)
    v = Scalar.symbol(base.v_sym)
    if base.sort is Sort.U:
        table = {
            Generator.U: (x * fiber, k),
            Generator.UINV: (x * fiber.inv(), k),
            Generator.V: (x * v, k - 1),
            Generator.VINV: (x * v.inv(), k + 1),
        }
    else:
        table = {
            Generator.U: (x * u, k + 1),
            Generator.UINV: (x * u.inv(), k - 1),
            Generator.V: (x * fiber, k),
            Generator.VINV: (x * fiber.inv(), k),
        }
    y, target = table[Generator(g)]
    return LineBundlePoint(y, target, base)


def _clause_action(T: TorusStructure) -> CheckResult:
    def holds(case) -> bool:
        base, k, g, x = case
        p = LineBundlePoint(x, k, base)
        return T.action(g, p) == expected_action(g, p)

    cases = [
        (base, k, g, x)
        for base in T.bases
        for k in T.span
        for g in Generator
        for x in sample_scalars(*base.pair)[:3]
    ]
    return scan(
        "clause-7 generator actions",
        cases,
        holds,
        lambda c: f"{c[2].value} on {LineBundlePoint(c[3], c[1], c[0])}",
    )


def _clause_pairing(T: TorusStructure) -> CheckResult:
    name = "clause-8 pairing axioms"
    checked = 0
    for u_sym, v_sym in T.pairs:
        report = check_pairing_axioms(T.window, pair_fn=T.pairing, u_sym=u_sym, v_sym=v_sym)
        for c in report.checks:
            checked += c.checked
            if c.status == "FAIL":
                witness = f"{c.name}: {c.witness}"
                logger.warning("%s failed at %s", name, witness)
                return CheckResult(name=name, status="FAIL", checked=checked, witness=witness)
    return CheckResult(name=name, status="PASS", checked=checked)


def check_psi(T: TorusStructure, reduct: bool = False) -> Report:
    """Clause-by-clause verdicts for the structure on its window."""
    checks = [
        _clause_characteristic(T),
        CheckResult(
            name="clause-1 algebraically closed",
            status="SKIP",
            reason="not decidable on a symbolic field",
        ),
        _clause_root_of_unity(T),
        _clause_gamma(T),
        _clause_projection(T),
        _clause_fibers(T),
        _clause_module(T),
        _clause_action(T),
    ]
    if reduct:
        checks.append(
            CheckResult(name="clause-8 pairing axioms", status="SKIP", reason="reduct has no pairing")
        )
    else:
        checks.append(_clause_pairing(T))
    title = f"psi-check window={T.window}" + (" reduct" if reduct else "")
    report = Report(title=title, checks=checks)
    logger.info("psi window=%d reduct=%s passed=%s", T.window, reduct, report.passed)
    return report


def mutate(T: TorusStructure, **components) -> TorusStructure:
    """Copy of `T` with some components replaced."""
    return replace(T, **components)

