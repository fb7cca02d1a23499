"""
Center, Hopf center and the central exact sequence.

The Hopf center HZ(A) is computed three ways, {x : Δx ∈ A⊗Z(A)},
{x : Δx ∈ Z(A)⊗A} and {x ∈ Z(A) : Δx ∈ Z(A)⊗Z(A)}, and the three are
required to coincide.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional

from algebra.constructions import (
    Quotient, Subalgebra, augmentation, certify_hopf_subalgebra, left_ideal, quotient_columns,
    quotient_hopf, sub_hopf, two_sided_ideal,
)
from algebra.hopf import Element, HopfAlgebra
from algebra.morphism import HopfMorphism
from algebra.pointed import grouplikes
from engine.sequences import (
    ExactSequence, FreenessCertificate, assemble_sequence, freeness_certificate, is_normal, round_trip,
)
from shared.config import settings
from shared.errors import AlgebraMismatchError, CertificationError, ConsistencyError, TheoremViolationError
from shared.linalg import SparseTensor, SparseVec, Subspace, add_into, axpy, basis_tuples, kernel
from shared.models import Certificate, CheckResult, outcome

logger = logging.getLogger(__name__)


# -- adjoint action ------------------------------------------------------------

def ad_left(H: HopfAlgebra, x: SparseVec, y: SparseVec) -> SparseVec:
    """Ad_x(y) = x_(1)·y·S(x_(2))"""
    result: SparseVec = {}
    for (a, b), c in H.comul(x).items():
        axpy(result, c, H.mul_many({a: H.field.one}, y, H.apply_antipode({b: H.field.one})))
    return result


def adjoint_action(x: Element, y: Element) -> Element:
    if x.algebra is not y.algebra:
        raise AlgebraMismatchError("adjoint action needs elements of one algebra")
    return Element(x.algebra, ad_left(x.algebra, x.coeffs, y.coeffs))


# -- centers ----------------------------------------------------------------------

def _stacked_kernel(H: HopfAlgebra, image) -> Subspace:
    """Kernel of x -> (image(x, e_0), ..., image(x, e_{n-1})) stacked into one vector"""
    n = H.dim
    columns = []
    for j in range(n):
        column: SparseVec = {}
        for i in range(n):
            for k, v in image(j, i).items():
                column[i * n + k] = v
        columns.append(column)
    return kernel(columns, n * n, H.field)


def commutant(H: HopfAlgebra) -> Subspace:
    one = H.field.one
    return _stacked_kernel(H, lambda j, i: _minus(H.mul_basis(j, i), H.mul_basis(i, j), one))


def ad_trivial_set(H: HopfAlgebra) -> Subspace:
    """{x : Ad_y(x) = ε(y)x for every basis y}"""
    one = H.field.one
    return _stacked_kernel(
        H, lambda j, i: _minus(ad_left(H, {i: one}, {j: one}), {j: H.eps_basis(i)} if H.eps_basis(i) else {}, one)
    )


def _minus(u: SparseVec, v: SparseVec, one) -> SparseVec:
    result = dict(u)
    axpy(result, -one, v)
    return result


def algebra_center(H: HopfAlgebra) -> Subspace:
    """Z(A) by the commutant, cross-checked against the adjoint-invariant description"""
    Z = commutant(H)
    if Z != ad_trivial_set(H):
        raise ConsistencyError(f"commutant and adjoint-invariant center of {H.name} differ")
    logger.info("center of %s has dim %d", H.name, Z.dim)
    return Z


@dataclass
class HopfCenter:
    center: Subspace
    subspace: Subspace
    right: Subspace
    left: Subspace
    within_center: Subspace
    certificate: Certificate

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _leg_in(H: HopfAlgebra, Z: Subspace, leg: int) -> Subspace:
    """{x : the given leg of Δx lies in Z}"""
    n = H.dim
    if Z.is_full():
        return Subspace.full(H.field, n)
    columns_Z = quotient_columns(Z)
    m = n - Z.dim
    columns = []
    for i in range(n):
        projected = H.map_leg(H.comul_basis(i), leg, lambda a: columns_Z[a])
        # leg 1 projected: index j*m + t; leg 0 projected: index t*n + k
        width = m if leg == 1 else n
        columns.append({a * width + b: c for (a, b), c in projected.items()})
    return kernel(columns, n * m, H.field)


def _within_center(H: HopfAlgebra, Z: Subspace) -> Subspace:
    """{x ∈ Z : Δx ∈ Z⊗Z}, solved over coordinates in the basis of Z"""
    n = H.dim
    if Z.is_full():
        return Z
    columns_Z = quotient_columns(Z)
    m = n - Z.dim
    columns = []
    for z in Z.rows:
        delta = H.comul(z)
        first = H.map_leg(delta, 0, lambda a: columns_Z[a])
        second = H.map_leg(delta, 1, lambda a: columns_Z[a])
        column: SparseVec = {}
        for (t, k), c in first.items():
            add_into(column, t * n + k, c)
        for (j, t), c in second.items():
            add_into(column, m * n + j * m + t, c)
        columns.append(column)
    relations = kernel(columns, 2 * m * n, H.field)
    vectors = []
    for relation in relations.rows:
        vector: SparseVec = {}
        for r, c in relation.items():
            axpy(vector, c, Z.rows[r])
        vectors.append(vector)
    return Subspace.span(H.field, n, vectors)


def hopf_center(H: HopfAlgebra, Z: Optional[Subspace] = None) -> HopfCenter:
    """HZ(A) by its right, left and central characterizations, certified as a Hopf subalgebra"""
    Z = Z if Z is not None else algebra_center(H)
    right = _leg_in(H, Z, 1)
    left = _leg_in(H, Z, 0)
    within = _within_center(H, Z)
    if not (right == left == within):
        raise ConsistencyError(
            f"Hopf center characterizations of {H.name} disagree: dims {right.dim}, {left.dim}, {within.dim}"
        )
    checks: List[CheckResult] = [outcome("inside-center", right <= Z, [], "HZ ⊄ Z")]
    checks.extend(certify_hopf_subalgebra(H, right).checks)
    certificate = Certificate(subject=f"hopf-center:{H.name}", checks=checks)
    if not certificate.passed:
        failure = certificate.failures()[0]
        raise CertificationError(failure.name, f"Hopf center of {H.name} is not a Hopf subalgebra of Z", failure.witness)
    logger.info("Hopf center of %s has dim %d", H.name, right.dim)
    return HopfCenter(Z, right, right, left, within, certificate)


# -- comodules ---------------------------------------------------------------------

def regular_coaction_on(H: HopfAlgebra, V: Subspace) -> List[SparseTensor]:
    """Δ restricted to a right coideal V, as a coaction V -> V⊗A in the basis of V"""
    rho = []
    for r, v in enumerate(V.rows):
        tensor: SparseTensor = {}
        for (j, k), c in H.comul(v).items():
            if j in V.pivots:
                add_into(tensor, (V.pivots.index(j), k), c)
        expanded: SparseTensor = {}
        for (t, k), c in tensor.items():
            for j, w in V.rows[t].items():
                add_into(expanded, (j, k), c * w)
        if expanded != H.comul(v):
            raise CertificationError("right-coideal", f"Δ(V) ⊄ V⊗A in {H.name}", [r])
        rho.append(tensor)
    return rho


def trivial_coaction(H: HopfAlgebra, dim: int) -> List[SparseTensor]:
    """v -> v⊗1"""
    return [{(r, k): c for k, c in H.unit_vector().items()} for r in range(dim)]


def _check_coaction(H: HopfAlgebra, rho: List[SparseTensor]) -> None:
    one = H.field.one
    for r, tensor in enumerate(rho):
        lhs: SparseTensor = {}
        for (s, a), c in tensor.items():
            for (t, b), d in rho[s].items():
                add_into(lhs, (t, b, a), c * d)
        if lhs != H.comul_leg(tensor, 1):
            raise CertificationError("coassociative-coaction", "(ρ⊗id)ρ ≠ (id⊗Δ)ρ", [r])
        if {key[0]: c for key, c in H.counit_leg(tensor, 1).items()} != {r: one}:
            raise CertificationError("counital-coaction", "(id⊗ε)ρ ≠ id", [r])


@dataclass
class Corestriction:
    coaction: List[SparseTensor]
    hopf_center: Subspace


def corestrict_comodule(H: HopfAlgebra, rho: List[SparseTensor], hz: Optional[HopfCenter] = None) -> Corestriction:
    """Re-express a coaction V -> V⊗Z(A) as V -> V⊗HZ(A), second leg in the RREF basis of HZ"""
    _check_coaction(H, rho)
    hz = hz or hopf_center(H)
    for r, tensor in enumerate(rho):
        if not _second_leg_in(H, tensor, hz.center):
            raise CertificationError("coaction-in-center", f"ρ(v_{r}) ∉ V⊗Z({H.name})", [r])
        if not _second_leg_in(H, tensor, hz.subspace):
            raise TheoremViolationError(f"coaction lands in V⊗Z but not in V⊗HZ for {H.name}", [r])
    pivots = hz.subspace.pivots
    corestricted = []
    for tensor in rho:
        # second leg is a combination of HZ rows; its pivot entries are the coordinates
        by_row: dict = {}
        for (r, k), c in tensor.items():
            by_row.setdefault(r, {})[k] = c
        coords: SparseTensor = {}
        for r, vector in by_row.items():
            for t, p in enumerate(pivots):
                if vector.get(p):
                    coords[(r, t)] = vector[p]
        corestricted.append(coords)
    return Corestriction(corestricted, hz.subspace)


def _second_leg_in(H: HopfAlgebra, tensor: SparseTensor, V: Subspace) -> bool:
    by_row: dict = {}
    for (r, k), c in tensor.items():
        by_row.setdefault(r, {})[k] = c
    return all(vector in V for vector in by_row.values())


# -- adjoint identities -------------------------------------------------------------

def adjoint_identities(H: HopfAlgebra, Z: Optional[Subspace] = None, seed: Optional[int] = None) -> Certificate:
    """Ad_{xy} = Ad_x∘Ad_y, the Leibniz rule, the coproduct of Ad and Ad-triviality on Z(A)"""
    one = H.field.one
    seed = settings.seed if seed is None else seed
    triples = basis_tuples(H.dim, 3, seed, settings.exhaustive_limit, settings.property_sample)
    pairs = basis_tuples(H.dim, 2, seed, settings.exhaustive_limit, settings.property_sample)
    checks: List[CheckResult] = []

    failure = next(
        ((x, y, z) for x, y, z in triples
         if ad_left(H, H.mul_basis(x, y), {z: one}) != ad_left(H, {x: one}, ad_left(H, {y: one}, {z: one}))),
        None,
    )
    checks.append(outcome("ad-composition", failure is None, list(failure or []), "Ad_{xy} ≠ Ad_x∘Ad_y"))

    def leibniz_holds(x: int, y: int, z: int) -> bool:
        rhs: SparseVec = {}
        for (a, b), c in H.comul_basis(x).items():
            axpy(rhs, c, H.mul(ad_left(H, {a: one}, {y: one}), ad_left(H, {b: one}, {z: one})))
        return ad_left(H, {x: one}, H.mul_basis(y, z)) == rhs

    failure = next((t for t in triples if not leibniz_holds(*t)), None)
    checks.append(outcome("leibniz", failure is None, list(failure or []), "Ad_x(yz) ≠ Ad_{x1}(y)·Ad_{x2}(z)"))

    def coproduct_holds(x: int, y: int) -> bool:
        rhs: SparseTensor = {}
        for (x1, x2, x3, x4), c in H.iterated_comul({x: one}, 4).items():
            for (y1, y2), d in H.comul_basis(y).items():
                first = H.mul_many({x1: one}, {y1: one}, H.apply_antipode({x4: one}))
                second = H.mul_many({x2: one}, {y2: one}, H.apply_antipode({x3: one}))
                for k, u in first.items():
                    for m, w in second.items():
                        add_into(rhs, (k, m), c * d * u * w)
        return H.comul(ad_left(H, {x: one}, {y: one})) == rhs

    failure = next((p for p in pairs if not coproduct_holds(*p)), None)
    checks.append(outcome("ad-coproduct", failure is None, list(failure or []),
                          "Δ(Ad_x y) ≠ x1 y1 S(x4) ⊗ Ad_{x2}(y2)"))

    Z = Z if Z is not None else commutant(H)
    bad = next(
        ([y, t] for y in range(H.dim) for t, z in enumerate(Z.rows)
         if ad_left(H, {y: one}, z) != {k: v * H.eps_basis(y) for k, v in z.items() if v * H.eps_basis(y)}),
        None,
    )
    checks.append(outcome("center-ad-trivial", bad is None, bad, "Ad_y(z) ≠ ε(y)z for central z"))
    return Certificate(subject=f"adjoint-identities:{H.name}", checks=checks)


# -- the central sequence -------------------------------------------------------------

@dataclass
class CentralReport:
    algebra: HopfAlgebra
    center: Subspace
    hopf_center: HopfCenter
    subalgebra: Subalgebra
    quotient: Quotient
    sequence: ExactSequence
    freeness: FreenessCertificate
    normal: bool
    round_trip: Optional[HopfMorphism]
    certificates: List[Certificate] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.sequence.passed and all(c.passed for c in self.certificates)


def central_grouplikes_check(H: HopfAlgebra, hz: HopfCenter) -> CheckResult:
    """Every grouplike lying in Z(A) lies in HZ(A)"""
    found = grouplikes(H)
    bad = [t for t, g in enumerate(found.elements) if g in hz.center and g not in hz.subspace]
    return outcome("central-grouplikes-in-hopf-center", not bad, bad[:1], "a central grouplike lies outside HZ")


def central_sequence(H: HopfAlgebra, seed: Optional[int] = None, budget: Optional[int] = None) -> CentralReport:
    """k -> HZ(A) -> A -> B -> k with every condition certified"""
    logger.info("central sequence of %s", H.name)
    Z = algebra_center(H)
    hz = hopf_center(H, Z)
    M = hz.subspace
    plus = augmentation(H, M)
    one_sided = left_ideal(H, plus)
    ideal = two_sided_ideal(H, plus)
    if one_sided != ideal:
        raise ConsistencyError(f"A·HZ⁺ and A·HZ⁺·A differ in {H.name}")
    subalgebra = sub_hopf(H, M, name=f"HZ({H.name})")
    quotient = quotient_hopf(H, ideal, name=f"{H.name}/HZ⁺")
    sequence = assemble_sequence(subalgebra.inclusion, quotient.projection)
    freeness = freeness_certificate(H, M, budget=budget, seed=seed)
    normal = is_normal(quotient.projection)
    checks = [
        outcome("normal", normal, [], "left and right Hopf kernels of π differ"),
        outcome("freeness", freeness.found, [], freeness.detail or freeness.status.value),
        central_grouplikes_check(H, hz),
    ]
    if freeness.found:
        checks.append(outcome("dimension-product", H.dim == M.dim * quotient.algebra.dim, [H.dim, M.dim],
                              "dim A ≠ dim HZ × dim B"))
    iso = round_trip(sequence) if sequence.passed else None
    checks.append(outcome("round-trip", iso is not None, [], "cokernel of ι does not reproduce B"))
    certificates = [hz.certificate, subalgebra.certificate, quotient.certificate,
                    Certificate(subject=f"central-sequence:{H.name}", checks=checks)]
    return CentralReport(H, Z, hz, subalgebra, quotient, sequence, freeness, normal, iso,
                         certificates)
