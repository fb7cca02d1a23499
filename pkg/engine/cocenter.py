"""
Adjoint coaction, cocentral quotients and the Hopf cocenter.

ad(x) = x_(2) ⊗ S(x_(1))x_(3). The Hopf cocenter A -> HC(A) is built by
duality: its kernel is the annihilator of the Hopf center of A*. The
cocentral subspace W and its Hopf ideal closure give an independent lower
bound for that kernel.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional

from algebra.constructions import (
    Quotient, dual_hopf, hopf_ideal_closure, quotient_hopf, sub_hopf, subcoalgebra_check,
    tensor_in_leg,
)
from algebra.hopf import HopfAlgebra
from algebra.morphism import HopfMorphism, counit_morphism
from algebra.pointed import Grouplikes, grouplikes
from engine.center import HopfCenter, hopf_center
from engine.sequences import (
    ExactSequence, FreenessCertificate, assemble_sequence, factor_through, freeness_certificate, hopf_kernel,
    round_trip,
)
from shared.config import settings
from shared.errors import CertificationError, ConsistencyError, TheoremViolationError
from shared.linalg import SparseTensor, SparseVec, Subspace, add_into, axpy, basis_tuples, kernel
from shared.models import Certificate, CheckResult, GroupAlgebraOutcome, HopfKernelSide, failing, outcome, passing

logger = logging.getLogger(__name__)


# -- the adjoint coaction ----------------------------------------------------------

@dataclass
class AdjointCoaction:
    algebra: HopfAlgebra
    tensors: List[SparseTensor]
    certificate: Certificate

    def __call__(self, v: SparseVec) -> SparseTensor:
        result: SparseTensor = {}
        for i, c in v.items():
            axpy(result, c, self.tensors[i])
        return result


def ad_tensor(H: HopfAlgebra, i: int) -> SparseTensor:
    """ad(e_i) = x_(2) ⊗ S(x_(1))x_(3)"""
    one = H.field.one
    result: SparseTensor = {}
    for (a, b, c), coeff in H.iterated_comul({i: one}, 3).items():
        for k, v in H.mul(H.apply_antipode({a: one}), {c: one}).items():
            add_into(result, (b, k), coeff * v)
    return result


def adjoint_coaction(H: HopfAlgebra) -> AdjointCoaction:
    """ad on every basis element, with the coaction laws certified"""
    tensors = [ad_tensor(H, i) for i in range(H.dim)]
    one = H.field.one
    bad = []
    for i, tensor in enumerate(tensors):
        lhs: SparseTensor = {}
        for (u, w), c in tensor.items():
            for (s, t), d in tensors[u].items():
                add_into(lhs, (s, t, w), c * d)
        if lhs != H.comul_leg(tensor, 1):
            bad.append(i)
            break
    checks = [outcome("coassociative", not bad, bad, "(ad⊗id)ad ≠ (id⊗Δ)ad")]
    bad = [i for i, t in enumerate(tensors) if {k[0]: c for k, c in H.counit_leg(t, 1).items()} != {i: one}]
    checks.append(outcome("counital", not bad, bad[:1], "(id⊗ε)ad ≠ id"))
    certificate = Certificate(subject=f"adjoint-coaction:{H.name}", checks=checks)
    if not certificate.passed:
        raise ConsistencyError(f"adjoint coaction of {H.name} fails {certificate.failures()[0].name}",
                               certificate.failures()[0].witness)
    return AdjointCoaction(H, tensors, certificate)


def _flat(tensor: SparseTensor, width: int) -> SparseVec:
    return {a * width + b: c for (a, b), c in tensor.items()}


def ad_invariants(H: HopfAlgebra, ad: Optional[AdjointCoaction] = None) -> Subspace:
    """{x : ad(x) = x⊗1}"""
    ad = ad or adjoint_coaction(H)
    n = H.dim
    columns = []
    for i in range(n):
        column = _flat(ad.tensors[i], n)
        for k, v in H.unit_vector().items():
            add_into(column, i * n + k, -v)
        columns.append(column)
    return kernel(columns, n * n, H.field)


def inval1_set(H: HopfAlgebra) -> Subspace:
    """{x : Δx = (id⊗S²)(Δ^op x)}"""
    n = H.dim
    one = H.field.one
    square = lambda a: H.apply_antipode(H.apply_antipode({a: one}))
    columns = []
    for i in range(n):
        column = _flat(H.comul_basis(i), n)
        for key, c in H.map_leg(H.comul_op({i: one}), 1, square).items():
            add_into(column, key[0] * n + key[1], -c)
        columns.append(column)
    return kernel(columns, n * n, H.field)


def checked_ad_invariants(H: HopfAlgebra, ad: Optional[AdjointCoaction] = None) -> Subspace:
    invariants = ad_invariants(H, ad)
    if invariants != inval1_set(H):
        raise ConsistencyError(f"ad-invariants and the S²-twisted cocommutative set of {H.name} differ")
    return invariants


@dataclass
class AdHomomorphism:
    multiplicative: bool
    containment: bool
    into_hopf_center: Optional[bool]
    witness: List[int] = dataclass_field(default_factory=list)


def ad_is_homomorphism(H: HopfAlgebra, ad: Optional[AdjointCoaction] = None,
                       hz: Optional[HopfCenter] = None, seed: Optional[int] = None) -> AdHomomorphism:
    """ad(xy) = ad(x)ad(y) on basis pairs, decided together with ad(A) ⊆ A⊗Z(A)"""
    ad = ad or adjoint_coaction(H)
    hz = hz or hopf_center(H)
    seed = settings.seed if seed is None else seed
    pairs = basis_tuples(H.dim, 2, seed, settings.exhaustive_limit, settings.property_sample)
    witness: List[int] = []
    for i, j in pairs:
        if ad(H.mul_basis(i, j)) != H.tensor_mul(ad.tensors[i], ad.tensors[j]):
            witness = [i, j]
            break
    multiplicative = not witness
    outside = [i for i, t in enumerate(ad.tensors) if not tensor_in_leg(H, t, 1, hz.center)]
    containment = not outside
    if multiplicative != containment:
        raise TheoremViolationError(
            f"ad on {H.name}: multiplicative={multiplicative} but ad(A) ⊆ A⊗Z(A) is {containment}",
            witness or outside[:1],
        )
    into_hopf_center = None
    if containment:
        into_hopf_center = all(tensor_in_leg(H, t, 1, hz.subspace) for t in ad.tensors)
        if not into_hopf_center:
            raise TheoremViolationError(f"ad(A) ⊆ A⊗Z(A) but not A⊗HZ(A) in {H.name}")
    return AdHomomorphism(multiplicative, containment, into_hopf_center, witness or outside[:1])


# -- C and D -------------------------------------------------------------------------

@dataclass
class CoefficientCoalgebra:
    subspace: Subspace
    certificate: Certificate


def coefficient_coalgebra(H: HopfAlgebra, ad: Optional[AdjointCoaction] = None) -> CoefficientCoalgebra:
    """C = span{(ω⊗id)ad(x)}, with ω running over the dual basis"""
    ad = ad or adjoint_coaction(H)
    slices = []
    for tensor in ad.tensors:
        by_left: dict = {}
        for (u, w), c in tensor.items():
            add_into(by_left.setdefault(u, {}), w, c)
        slices.extend(by_left.values())
    C = Subspace.span(H.field, H.dim, slices)
    bad = [i for i, t in enumerate(ad.tensors) if not tensor_in_leg(H, t, 1, C)]
    checks = [subcoalgebra_check(H, C), outcome("ad-image", not bad, bad[:1], "ad(A) ⊄ A⊗C")]
    return CoefficientCoalgebra(C, Certificate(subject=f"coefficient-coalgebra:{H.name}", checks=checks))


@dataclass
class GeneratedSubalgebra:
    subspace: Subspace
    bialgebra: bool
    antipode_stable: bool
    ad_stable: bool
    rounds: int


def generated_subalgebra(H: HopfAlgebra, C: Subspace) -> GeneratedSubalgebra:
    """D = the subalgebra generated by C and 1, with its bialgebra, antipode and ad-stability flags"""
    one = H.field.one
    D = C + Subspace.span(H.field, H.dim, [H.unit_vector()])
    rounds = 0
    while True:
        rounds += 1
        enlarged = D + Subspace.span(H.field, H.dim, [H.mul(d, c) for d in D.rows for c in C.rows])
        if enlarged == D:
            break
        D = enlarged
    bialgebra = subcoalgebra_check(H, D).passed
    antipode_stable = all(H.apply_antipode(d) in D for d in D.rows)
    ad_stable = True
    for i in range(H.dim):
        for d in D.rows:
            value: SparseVec = {}
            for (a, b), c in H.comul_basis(i).items():
                axpy(value, c, H.mul_many(H.apply_antipode({a: one}), d, {b: one}))
            if value not in D:
                ad_stable = False
                break
        if not ad_stable:
            break
    if not ad_stable:
        raise TheoremViolationError(f"S(x_(1))·D·x_(2) ⊄ D in {H.name}")
    logger.info("D in %s: dim %d after %d rounds", H.name, D.dim, rounds)
    return GeneratedSubalgebra(D, bialgebra, antipode_stable, ad_stable, rounds)


# -- cocentrality ----------------------------------------------------------------------

def cocentral_subspace(H: HopfAlgebra) -> Subspace:
    """W = span{f(x_(1))x_(2) − f(x_(2))x_(1)} over the dual basis f and basis x"""
    vectors = []
    for i in range(H.dim):
        by_functional: dict = {}
        for (j, k), c in H.comul_basis(i).items():
            add_into(by_functional.setdefault(j, {}), k, c)
            add_into(by_functional.setdefault(k, {}), j, -c)
        vectors.extend(by_functional.values())
    return Subspace.span(H.field, H.dim, vectors)


def is_cocentral(q: HopfMorphism) -> bool:
    """(id⊗q)Δ = (id⊗q)Δ^op on the basis"""
    H = q.source
    one = H.field.one
    return all(
        q.apply_tensor(H.comul_basis(i), (1,)) == q.apply_tensor(H.comul_op({i: one}), (1,))
        for i in range(H.dim)
    )


def ad_criterion(q: HopfMorphism, ad: Optional[AdjointCoaction] = None) -> bool:
    """(id⊗q)ad(x) = x⊗1 on the basis"""
    ad = ad or adjoint_coaction(q.source)
    unit = q.target.unit_vector()
    return all(
        q.apply_tensor(tensor, (1,)) == {(i, k): v for k, v in unit.items()}
        for i, tensor in enumerate(ad.tensors)
    )


def cocentrality_checks(q: HopfMorphism, W: Subspace, ad: Optional[AdjointCoaction] = None) -> List[CheckResult]:
    """Direct definition, ad criterion and W ⊆ ker q, which must agree"""
    direct = is_cocentral(q)
    via_ad = ad_criterion(q, ad)
    via_w = W <= q.kernel()
    if not direct == via_ad == via_w:
        raise TheoremViolationError(
            f"cocentrality tests disagree for {q.name}: direct={direct}, ad={via_ad}, W={via_w}"
        )
    return [
        outcome("cocentral", direct, [], "(id⊗q)Δ ≠ (id⊗q)Δ^op"),
        outcome("cocentral-ad-criterion", via_ad, [], "(id⊗q)ad(x) ≠ x⊗1"),
        outcome("cocentral-subspace-in-kernel", via_w, [], "W ⊄ ker q"),
    ]


# -- the Hopf cocenter -------------------------------------------------------------------

@dataclass
class Cocenter:
    quotient: Quotient
    dual_center: HopfCenter
    cocentral: Subspace
    closure: Subspace
    certificate: Certificate

    @property
    def algebra(self) -> HopfAlgebra:
        return self.quotient.algebra

    @property
    def projection(self) -> HopfMorphism:
        return self.quotient.projection

    @property
    def kernel(self) -> Subspace:
        return self.quotient.ideal


def annihilator(H: HopfAlgebra, functionals: Subspace) -> Subspace:
    """{x ∈ H : f(x) = 0 for f in a subspace of H*, in the dual basis}"""
    columns = [{r: row[i] for r, row in enumerate(functionals.rows) if row.get(i)} for i in range(H.dim)]
    return kernel(columns, functionals.dim, H.field)


def hopf_cocenter(H: HopfAlgebra, ad: Optional[AdjointCoaction] = None) -> Cocenter:
    """HC(A) = A / (annihilator of HZ(A*)), certified cocentral and cocommutative"""
    dual = dual_hopf(H)
    dual_center = hopf_center(dual)
    ideal = annihilator(H, dual_center.subspace)
    quotient = quotient_hopf(H, ideal, name=f"HC({H.name})")
    W = cocentral_subspace(H)
    closure = hopf_ideal_closure(H, W)
    checks = cocentrality_checks(quotient.projection, W, ad)
    checks.append(outcome("cocommutative", quotient.algebra.is_cocommutative(), [], "HC is not cocommutative"))
    checks.append(outcome("closure-in-kernel", closure <= ideal, [], "Hopf ideal closure of W ⊄ ker π"))
    certificate = Certificate(subject=f"hopf-cocenter:{H.name}", checks=checks)
    if not certificate.passed:
        failure = certificate.failures()[0]
        raise CertificationError(failure.name, f"cocenter of {H.name} fails certification", failure.witness)
    logger.info("Hopf cocenter of %s has dim %d", H.name, quotient.algebra.dim)
    return Cocenter(quotient, dual_center, W, closure, certificate)


def factor_through_cocenter(cocenter: Cocenter, q: HopfMorphism) -> HopfMorphism:
    """The unique h with h∘π = q for a cocentral Hopf morphism q"""
    if not is_cocentral(q):
        raise CertificationError("cocentral", f"{q.name} is not cocentral")
    try:
        return factor_through(cocenter.projection, q, name=f"{q.name}/HC")
    except CertificationError as e:
        raise TheoremViolationError(f"cocentral {q.name} does not factor through the cocenter: {e.detail}", e.witness)


# -- coalgebra cocenter ---------------------------------------------------------------------

@dataclass
class CoalgebraCocenter:
    subcoalgebra: Subspace
    kernel: Subspace
    quotient_dim: int


def coalgebra_cocenter(H: HopfAlgebra, C: Subspace) -> CoalgebraCocenter:
    """ker(C -> cz(C)): the annihilator in C of the center of the dual algebra C*"""
    check = subcoalgebra_check(H, C)
    if not check.passed:
        raise CertificationError("subcoalgebra", f"subspace of dim {C.dim} is not a subcoalgebra of {H.name}",
                                 check.witness)
    m = C.dim
    pivots = C.pivots
    # structure constants of C in the RREF basis, read at pivot pairs
    gamma = []
    for row in C.rows:
        delta = H.comul(row)
        gamma.append({(r, s): delta[(p, q)] for r, p in enumerate(pivots) for s, q in enumerate(pivots)
                      if delta.get((p, q))})
    products: dict = {}
    for t, constants in enumerate(gamma):
        for (r, s), c in constants.items():
            add_into(products.setdefault((r, s), {}), t, c)
    columns = []
    for j in range(m):
        column: SparseVec = {}
        for i in range(m):
            for t, c in products.get((j, i), {}).items():
                add_into(column, i * m + t, c)
            for t, c in products.get((i, j), {}).items():
                add_into(column, i * m + t, -c)
        columns.append(column)
    dual_center = kernel(columns, m * m, H.field)
    annihilated = kernel(
        [{r: row[t] for r, row in enumerate(dual_center.rows) if row.get(t)} for t in range(m)],
        dual_center.dim, H.field,
    )
    vectors = []
    for coords in annihilated.rows:
        vector: SparseVec = {}
        for t, c in coords.items():
            axpy(vector, c, C.rows[t])
        vectors.append(vector)
    return CoalgebraCocenter(C, Subspace.span(H.field, H.dim, vectors), dual_center.dim)


def hopf_span_of(H: HopfAlgebra, C: Subspace) -> Subspace:
    """Subalgebra generated by S^n(C) for all n"""
    V = C
    while True:
        enlarged = V + Subspace.span(H.field, H.dim, [H.apply_antipode(v) for v in V.rows])
        if enlarged == V:
            break
        V = enlarged
    return generated_subalgebra_span(H, V)


def generated_subalgebra_span(H: HopfAlgebra, V: Subspace) -> Subspace:
    D = V + Subspace.span(H.field, H.dim, [H.unit_vector()])
    while True:
        enlarged = D + Subspace.span(H.field, H.dim, [H.mul(d, v) for d in D.rows for v in V.rows])
        if enlarged == D:
            return D
        D = enlarged


def coalgebra_generation_check(H: HopfAlgebra, C: Subspace, cocenter: Optional[Cocenter] = None) -> CheckResult:
    """For C generating H as a Hopf algebra, the Hopf ideal closure of ker(C -> cz(C)) is ker(H -> HC)"""
    if not hopf_span_of(H, C).is_full():
        return failing("coalgebra-generation", [], "C does not generate the algebra as a Hopf algebra")
    cocenter = cocenter or hopf_cocenter(H)
    closure = hopf_ideal_closure(H, coalgebra_cocenter(H, C).kernel)
    return outcome("coalgebra-generation", closure == cocenter.kernel, [closure.dim, cocenter.kernel.dim],
                   "closure of ker(C -> cz(C)) ≠ ker(A -> HC)")


# -- group algebras ---------------------------------------------------------------------------

@dataclass
class GroupAlgebraCheck:
    outcome: GroupAlgebraOutcome
    grouplikes: Grouplikes

    @property
    def is_group_algebra(self) -> bool:
        return self.outcome == GroupAlgebraOutcome.GROUP_ALGEBRA


def group_algebra_check(B: HopfAlgebra) -> GroupAlgebraCheck:
    found = grouplikes(B)
    return GroupAlgebraCheck(found.outcome, found)


# -- the cocentral sequence -------------------------------------------------------------------

@dataclass
class CocenterReport:
    algebra: HopfAlgebra
    ad: AdjointCoaction
    coefficient: CoefficientCoalgebra
    generated: GeneratedSubalgebra
    invariants: Subspace
    homomorphism: AdHomomorphism
    cocenter: Cocenter
    hopf_kernel: Subspace
    right_hopf_kernel: Subspace
    normal: bool
    sequence: ExactSequence
    freeness: FreenessCertificate
    d_in_kernel: bool
    d_equals_kernel: bool
    round_trip: Optional[HopfMorphism]
    group_check: GroupAlgebraCheck
    certificates: List[Certificate] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.sequence.passed and all(c.passed for c in self.certificates)


def cocentral_sequence(H: HopfAlgebra, seed: Optional[int] = None, budget: Optional[int] = None) -> CocenterReport:
    """k -> C′ -> A -> HC(A) -> k with C′ the Hopf kernel of the cocenter projection"""
    logger.info("cocentral sequence of %s", H.name)
    ad = adjoint_coaction(H)
    coefficient = coefficient_coalgebra(H, ad)
    generated = generated_subalgebra(H, coefficient.subspace)
    invariants = checked_ad_invariants(H, ad)
    homomorphism = ad_is_homomorphism(H, ad, seed=seed)
    cocenter = hopf_cocenter(H, ad)
    pi = cocenter.projection
    left = hopf_kernel(pi, HopfKernelSide.LEFT)
    right = hopf_kernel(pi, HopfKernelSide.RIGHT)
    kernel_algebra = sub_hopf(H, left, name=f"C′({H.name})")
    sequence = assemble_sequence(kernel_algebra.inclusion, pi)
    freeness = freeness_certificate(H, left, budget=budget, seed=seed)
    D = generated.subspace
    d_in_kernel = D <= left
    checks = [
        coefficient.certificate.checks[0],
        coefficient.certificate.checks[1],
        outcome("normal", left == right, [], "left and right Hopf kernels differ"),
        outcome("d-in-hopf-kernel", d_in_kernel, [], "D ⊄ C′"),
        outcome("freeness", freeness.found, [], freeness.detail or freeness.status.value),
    ]
    if freeness.found:
        checks.append(outcome("dimension-product", H.dim == left.dim * cocenter.algebra.dim, [H.dim, left.dim],
                              "dim A ≠ dim C′ × dim HC"))
    counit_q = counit_morphism(H)
    try:
        factor_through_cocenter(cocenter, counit_q)
        checks.append(passing("counit-factors"))
    except TheoremViolationError as e:
        checks.append(failing("counit-factors", [], e.detail))
    iso = round_trip(sequence) if sequence.passed else None
    checks.append(outcome("round-trip", iso is not None, [], "cokernel of ι does not reproduce HC"))
    group_check = group_algebra_check(cocenter.algebra)
    certificates = [ad.certificate, cocenter.certificate, kernel_algebra.certificate,
                    Certificate(subject=f"cocentral-sequence:{H.name}", checks=checks)]
    return CocenterReport(
        H, ad, coefficient, generated, invariants, homomorphism, cocenter, left, right, left == right,
        sequence, freeness, d_in_kernel, D == left, iso, group_check, certificates,
    )
