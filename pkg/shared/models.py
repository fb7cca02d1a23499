from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union
from pydantic import BaseModel, Field, model_validator


class GroupAlgebraOutcome(str, Enum):
    GROUP_ALGEBRA = "group-algebra"
    NOT_GROUP_ALGEBRA = "not-group-algebra"
    EXTENSION_REQUIRED = "field-extension-required"


class FreenessStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not-found"
    BUDGET_EXCEEDED = "not-found-budget"


class HopfKernelSide(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class CheckResult(BaseModel):
    name: str = Field(..., description="Identity or condition that was checked")
    passed: bool
    witness: Optional[List[Union[int, str]]] = Field(None, description="Basis indices or coefficients exhibiting a failure")
    detail: Optional[str] = None


class Certificate(BaseModel):
    subject: str = Field(..., description="Object the checks are about")
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


class SubspaceReport(BaseModel):
    dim: int
    ambient_dim: int
    basis: List[Dict[str, str]] = Field(..., description="RREF basis vectors as label -> coefficient")


class Report(BaseModel):
    kind: str = Field(..., description="Analysis that produced the report")
    algebra: str
    field: str
    input_digest: str = Field(..., description="sha256 of the canonical algebra file")
    passed: bool
    dimensions: Dict[str, int] = Field(default_factory=dict)
    certificates: List[Certificate] = Field(default_factory=list)
    subspaces: Dict[str, SubspaceReport] = Field(default_factory=dict)
    values: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    timings: Optional[Dict[str, float]] = None


class AlgebraFile(BaseModel):
    name: Optional[str] = None
    field: str = Field("rationals", description="rationals, prime:p or cyclotomic:n")
    dim: int = Field(..., ge=1)
    labels: Optional[List[str]] = None
    unit: List[Union[str, int]] = Field(..., description="Coefficients of 1 in the basis")
    counit: List[Union[str, int]] = Field(..., description="Values of the counit on the basis")
    mult: List[Tuple[int, int, int, Union[str, int]]] = Field(default_factory=list, description="e_i e_j = sum c e_k")
    comult: List[Tuple[int, int, int, Union[str, int]]] = Field(default_factory=list, description="Δ(e_i) = sum c e_j ⊗ e_k")
    antipode: List[Tuple[int, int, Union[str, int]]] = Field(default_factory=list, description="S(e_i) = sum c e_j")

    @model_validator(mode="after")
    def check_indices(self) -> "AlgebraFile":
        n = self.dim
        if self.labels is not None:
            if len(self.labels) != n:
                raise ValueError(f"labels: expected {n} labels, got {len(self.labels)}")
            if len(set(self.labels)) != n:
                raise ValueError("labels: basis labels must be distinct")
        if len(self.unit) != n:
            raise ValueError(f"unit: expected {n} coefficients, got {len(self.unit)}")
        if len(self.counit) != n:
            raise ValueError(f"counit: expected {n} values, got {len(self.counit)}")
        for section in ("mult", "comult", "antipode"):
            for position, entry in enumerate(getattr(self, section)):
                indices = entry[:-1]
                if any(not 0 <= i < n for i in indices):
                    raise ValueError(f"{section}[{position}]: index out of range for dim {n}: {list(indices)}")
        return self


def passing(name: str, detail: Optional[str] = None) -> CheckResult:
    """Successful check"""
    return CheckResult(name=name, passed=True, detail=detail)


def failing(name: str, witness: Optional[List[Union[int, str]]] = None, detail: Optional[str] = None) -> CheckResult:
    """Failed check with its witness"""
    return CheckResult(name=name, passed=False, witness=witness, detail=detail)


def outcome(name: str, ok: bool, witness: Optional[List[Union[int, str]]] = None,
            detail: Optional[str] = None) -> CheckResult:
    """Check result from a boolean, keeping the witness only on failure"""
    return passing(name, detail) if ok else failing(name, witness, detail)
