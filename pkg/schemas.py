import logging
from typing import Callable, Iterable, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

from config import ECHO

logger = logging.getLogger(__name__)

Status = Literal["PASS", "FAIL", "SKIP"]


class CheckResult(BaseModel):
    name: str
    status: Status
    checked: int = 0
    witness: Optional[str] = None
    reason: Optional[str] = None

    def line(self) -> str:
        if self.status == "FAIL":
            return f"{self.name}: FAIL witness={self.witness}"
        if self.status == "SKIP":
            return f"{self.name}: SKIP reason={self.reason}"
        return f"{self.name}: PASS ({self.checked} cases)"


class Report(BaseModel):
    title: str
    checks: List[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def render(self) -> str:
        return "\n".join([self.title, *(c.line() for c in self.checks)])


def scan(name: str, cases: Iterable, predicate: Callable[..., bool], render: Callable[..., str]) -> CheckResult:
    """Run `predicate` over `cases`; FAIL at the first counterexample."""
    checked = 0
    for case in cases:
        checked += 1
        if ECHO:
            logger.debug("%s: %s", name, render(case))
        if not predicate(case):
            witness = render(case)
            logger.warning("%s failed at %s", name, witness)
            return CheckResult(name=name, status="FAIL", checked=checked, witness=witness)
    return CheckResult(name=name, status="PASS", checked=checked)


class Base(BaseModel):
    u: str
    v: str
    sort: Literal["u", "v"]


class EvalResult(BaseModel):
    kind: Literal["scalar", "algebra", "point", "vector", "pairing"]
    text: str
    scalar: Optional[str] = None
    k: Optional[int] = None
    base: Optional[Base] = None
    exponent: Optional[int] = None


class EvalRequest(BaseModel):
    expr: str = Field(min_length=1)


class ActRequest(BaseModel):
    generator: Literal["U", "U^-1", "V", "V^-1"]
    point: str = Field(min_length=1)


class PairRequest(BaseModel):
    left: str = Field(min_length=1)
    right: str = Field(min_length=1)


class ArithResult(BaseModel):
    exponent: int
    text: str


class Coset(BaseModel):
    base: List[int]
    generators: List[List[int]]

    model_config = ConfigDict(frozen=True)


class LangTypeRequest(BaseModel):
    poly: str = Field(min_length=1)
    arity: int = Field(ge=1)
    window: Optional[int] = Field(default=None, ge=1)


class LangTypeResult(BaseModel):
    poly: str
    arity: int
    window: int
    points: List[List[int]]
    cosets: List[Coset]
    overlaps: List[List[int]] = Field(default_factory=list)
    nf_bound: int
    passed: bool

    def render(self) -> str:
        lines = [
            f"lang-type f={self.poly} arity={self.arity} window={self.window}",
            f"gamma-points: {len(self.points)}",
        ]
        for c in self.cosets:
            gens = " ".join(_vec(g) for g in c.generators) or "-"
            lines.append(f"coset base={_vec(c.base)} generators={gens}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"cosets: {len(self.cosets)} <= N_f = {self.nf_bound}: {verdict}")
        return "\n".join(lines)


def _vec(v: List[int]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
