"""
Exact sequences k -> C -> A -> B -> k of Hopf algebras.

A sequence is exact when ι is injective, π is surjective, ker π = A·ι(C)⁺
and ι(C) is the Hopf kernel {x : (π⊗id)Δx = 1⊗x}. Freeness of A over ι(C)
is certified separately by an explicit module basis.
"""
import logging
import random
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional

from algebra.constructions import (
    Quotient, augmentation, counit_kernel, quotient_hopf, two_sided_ideal,
)
from algebra.hopf import HopfAlgebra
from algebra.morphism import HopfMorphism
from shared.config import settings
from shared.errors import CertificationError, DimensionMismatchError, HopfError
from shared.linalg import SparseVec, Subspace, add_into, kernel, rank, solve
from shared.models import Certificate, CheckResult, FreenessStatus, HopfKernelSide, failing, outcome, passing

logger = logging.getLogger(__name__)

CONVENTION = "k -> C -> A -> B -> k: ι: C -> A, π: A -> B (the middle algebra is A)"


# -- Hopf kernels ---------------------------------------------------------------

def hopf_kernel(pi: HopfMorphism, side: HopfKernelSide = HopfKernelSide.LEFT) -> Subspace:
    """{x : (π⊗id)Δx = 1⊗x} on the left side, {x : (id⊗π)Δx = x⊗1} on the right"""
    A, B = pi.source, pi.target
    nA, nB = A.dim, B.dim
    unit_B = B.unit_vector()
    columns: List[SparseVec] = []
    for i in range(nA):
        image: SparseVec = {}
        for (j, k), c in A.comul_basis(i).items():
            leg = pi.columns[j] if side == HopfKernelSide.LEFT else pi.columns[k]
            for b, v in leg.items():
                position = b * nA + k if side == HopfKernelSide.LEFT else j * nB + b
                add_into(image, position, c * v)
        for b, v in unit_B.items():
            position = b * nA + i if side == HopfKernelSide.LEFT else i * nB + b
            add_into(image, position, -v)
        columns.append(image)
    return kernel(columns, nA * nB, A.field)


def is_normal(pi: HopfMorphism) -> bool:
    """Left and right Hopf kernels of π coincide"""
    return hopf_kernel(pi, HopfKernelSide.LEFT) == hopf_kernel(pi, HopfKernelSide.RIGHT)


# -- exactness ------------------------------------------------------------------

def _subspace_mismatch(name: str, left: Subspace, right: Subspace, detail: str) -> CheckResult:
    if left == right:
        return passing(name)
    for t, row in enumerate(left.rows):
        if row not in right:
            return failing(name, ["lhs", t], detail)
    for t, row in enumerate(right.rows):
        if row not in left:
            return failing(name, ["rhs", t], detail)
    return failing(name, [], detail)


def verify_exact(iota: HopfMorphism, pi: HopfMorphism) -> Certificate:
    """Decide the four exactness conditions for C -ι-> A -π-> B independently"""
    if iota.target is not pi.source and not iota.target.same_structure(pi.source):
        raise DimensionMismatchError(f"ι lands in {iota.target.name} but π starts at {pi.source.name}")
    A = pi.source
    checks: List[CheckResult] = [
        outcome("injective", iota.is_injective(), [], f"rank ι = {iota.rank} < dim C = {iota.source.dim}"),
        outcome("surjective", pi.is_surjective(), [], f"rank π = {pi.rank} < dim B = {pi.target.dim}"),
    ]
    image = iota.image()
    generated = two_sided_ideal(A, image & counit_kernel(A))
    checks.append(_subspace_mismatch("kernel-is-generated-ideal", pi.kernel(), generated, "ker π ≠ A·ι(C)⁺·A"))
    checks.append(_subspace_mismatch("image-is-hopf-kernel", image, hopf_kernel(pi), "ι(C) ≠ {x : (π⊗id)Δx = 1⊗x}"))
    composite = pi.compose(iota)
    unit_B = pi.target.unit_vector()
    bad = [
        i for i in range(iota.source.dim)
        if composite.columns[i] != {k: v * iota.source.eps_basis(i) for k, v in unit_B.items() if v * iota.source.eps_basis(i)}
    ]
    checks.append(outcome("composite-trivial", not bad, bad[:1], "π∘ι ≠ unit∘ε"))
    certificate = Certificate(subject=f"exact:{iota.source.name}->{A.name}->{pi.target.name}", checks=checks)
    if not certificate.passed:
        logger.warning("sequence through %s fails %s", A.name, [c.name for c in certificate.failures()])
    return certificate


@dataclass
class ExactSequence:
    iota: HopfMorphism
    pi: HopfMorphism
    certificate: Certificate
    convention: str = CONVENTION

    @property
    def passed(self) -> bool:
        return self.certificate.passed

    @property
    def dims(self) -> List[int]:
        return [self.iota.source.dim, self.pi.source.dim, self.pi.target.dim]


def assemble_sequence(iota: HopfMorphism, pi: HopfMorphism) -> ExactSequence:
    return ExactSequence(iota, pi, verify_exact(iota, pi))


# -- cokernels and factorizations --------------------------------------------------

def ad_stable(A: HopfAlgebra, V: Subspace) -> CheckResult:
    """S(x_(1))·V·x_(2) ⊆ V on basis x and basis vectors of V"""
    one = A.field.one
    for i in range(A.dim):
        delta = A.comul_basis(i)
        for t, y in enumerate(V.rows):
            value: SparseVec = {}
            for (a, b), c in delta.items():
                for k, v in A.mul_many(A.apply_antipode({a: one}), y, {b: one}).items():
                    add_into(value, k, c * v)
            if value not in V:
                return failing("ad-stable", [i, t], "S(x_(1))·y·x_(2) leaves the subspace")
    return passing("ad-stable")


def hopf_cokernel(iota: HopfMorphism, name: Optional[str] = None) -> Quotient:
    """A/(A·ι(C)⁺·A) for an ad-stable image, with its certified projection"""
    A = iota.target
    image = iota.image()
    check = ad_stable(A, image)
    if not check.passed:
        raise CertificationError("ad-stable", f"image of {iota.name} is not ad-stable in {A.name}", check.witness)
    ideal = two_sided_ideal(A, augmentation(A, image))
    return quotient_hopf(A, ideal, name or f"{A.name}//{iota.source.name}")


def factor_through(pi: HopfMorphism, q: HopfMorphism, name: str = "h") -> HopfMorphism:
    """The unique Hopf morphism h with h∘π = q, for surjective π with ker π ⊆ ker q"""
    if pi.source.dim != q.source.dim:
        raise DimensionMismatchError(f"{pi.name} and {q.name} have different sources")
    bad = [t for t, v in enumerate(pi.kernel().rows) if q.apply(v)]
    if bad:
        raise CertificationError("kernel-containment", f"ker {pi.name} ⊄ ker {q.name}", bad[:1])
    columns = []
    for s in range(pi.target.dim):
        preimage = solve(pi.matrix, {s: pi.source.field.one}, pi.source.field)
        if preimage is None:
            raise CertificationError("surjective", f"{pi.name} misses basis vector {s} of {pi.target.name}", [s])
        columns.append(q.apply(preimage))
    return HopfMorphism.certified(pi.target, q.target, columns, name)


def round_trip(sequence: ExactSequence) -> HopfMorphism:
    """Hopf isomorphism from the cokernel of ι onto B, solved through the two projections"""
    cokernel = hopf_cokernel(sequence.iota)
    h = factor_through(cokernel.projection, sequence.pi, name="coker(ι)≅B")
    if not (h.is_injective() and h.is_surjective()):
        raise CertificationError("round-trip", f"cokernel of ι has dim {h.source.dim}, B has dim {h.target.dim}")
    return h


# -- freeness ----------------------------------------------------------------------

@dataclass
class FreenessCertificate:
    status: FreenessStatus
    subalgebra: Subspace
    cofactor_basis: List[SparseVec] = dataclass_field(default_factory=list)
    steps: int = 0
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.status == FreenessStatus.FOUND

    @property
    def rank(self) -> int:
        return len(self.cofactor_basis)


def _module_span(A: HopfAlgebra, C: Subspace, a: SparseVec) -> List[SparseVec]:
    return [A.mul(c, a) for c in C.rows]


def freeness_certificate(A: HopfAlgebra, C: Subspace, budget: Optional[int] = None,
                         seed: Optional[int] = None) -> FreenessCertificate:
    """Search a_1 = 1, a_2, ... with A = ⊕ C·a_t, backtracking within a step budget"""
    budget = budget or settings.freeness_budget
    n, d = A.dim, C.dim
    if d == 0 or n % d:
        return FreenessCertificate(FreenessStatus.NOT_FOUND, C, detail=f"dim C = {d} does not divide dim A = {n}")
    target_rank = n // d
    rng = random.Random(settings.seed if seed is None else seed)
    candidates = [{i: A.field.one} for i in range(n)]
    candidates += [
        {i: c for i, c in ((i, A.field.random_element(rng)) for i in range(n)) if c} for _ in range(n)
    ]
    candidates = [c for c in candidates if c]
    steps = 0
    chosen: List[SparseVec] = [A.unit_vector()]
    start = Subspace.span(A.field, n, _module_span(A, C, chosen[0]))
    if start.dim != d:
        return FreenessCertificate(FreenessStatus.NOT_FOUND, C, detail="C·1 is not of full dimension")

    def extend(span: Subspace) -> Optional[bool]:
        nonlocal steps
        if len(chosen) == target_rank:
            return True
        for candidate in candidates:
            if candidate in span:
                continue
            steps += 1
            if steps > budget:
                return None
            enlarged = span + Subspace.span(A.field, n, _module_span(A, C, candidate))
            if enlarged.dim != span.dim + d:
                continue
            chosen.append(candidate)
            result = extend(enlarged)
            if result is None or result:
                return result
            chosen.pop()
        return False

    result = extend(start)
    if result is None:
        logger.info("freeness search over %s exhausted its budget of %d", A.name, budget)
        return FreenessCertificate(FreenessStatus.BUDGET_EXCEEDED, C, steps=steps,
                                   detail=f"budget of {budget} candidate extensions exhausted")
    if not result:
        return FreenessCertificate(FreenessStatus.NOT_FOUND, C, steps=steps, detail="no cofactor basis among candidates")
    products = [v for a in chosen for v in _module_span(A, C, a)]
    if rank(products, n, A.field) != n:
        raise HopfError(f"freeness certificate for {A.name} failed its rank re-check")
    return FreenessCertificate(FreenessStatus.FOUND, C, list(chosen), steps)
