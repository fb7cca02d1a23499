"""
New Hopf algebras from old: duals, quotients by Hopf ideals, Hopf
subalgebras, tensor products and Drinfeld twists, plus the ideal closures
the engines need.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from algebra.hopf import HopfAlgebra, verify_axioms
from algebra.morphism import HopfMorphism
from algebra.operators import convolution_inverse
from shared.errors import CertificationError, ConsistencyError, HopfError, NotInvertibleError
from shared.linalg import (
    SparseTensor, SparseVec, Subspace, add_into, axpy, columns_of, flatten, identity_matrix,
    kernel, matrix_from_columns, solve, unflatten,
)
from shared.models import Certificate, CheckResult, failing, outcome, passing

logger = logging.getLogger(__name__)


# -- projections onto quotients ----------------------------------------------

def quotient_columns(I: Subspace) -> List[SparseVec]:
    """Columns of the projection A -> A/I in the basis of non-pivot representatives"""
    position = {c: t for t, c in enumerate(I.complement_indices())}
    columns = []
    for i in range(I.ambient_dim):
        residual = I.reduce({i: I.field.one})
        columns.append({position[k]: v for k, v in residual.items()})
    return columns


def _project(columns: List[SparseVec]) -> Callable[[int], SparseVec]:
    return lambda i: columns[i]


def tensor_in_leg(H: HopfAlgebra, tensor: SparseTensor, leg: int, V: Subspace) -> bool:
    """Whether the given leg of a tensor lies in V (the others unrestricted)"""
    if V.is_full():
        return True
    return not H.map_leg(tensor, leg, _project(quotient_columns(V)))


# -- ideals ---------------------------------------------------------------------

def left_ideal(H: HopfAlgebra, V: Subspace) -> Subspace:
    """A·V"""
    one = H.field.one
    return Subspace.span(H.field, H.dim, [H.mul({i: one}, v) for v in V.rows for i in range(H.dim)])


def right_ideal(H: HopfAlgebra, V: Subspace) -> Subspace:
    """V·A"""
    one = H.field.one
    return Subspace.span(H.field, H.dim, [H.mul(v, {i: one}) for v in V.rows for i in range(H.dim)])


def two_sided_ideal(H: HopfAlgebra, V: Subspace) -> Subspace:
    """A·V·A"""
    return right_ideal(H, left_ideal(H, V))


def hopf_ideal_closure(H: HopfAlgebra, K: Subspace) -> Subspace:
    """Smallest two-sided ideal containing K that is stable under S"""
    current = K
    rounds = 0
    while True:
        rounds += 1
        ideal = two_sided_ideal(H, current)
        image = Subspace.span(H.field, H.dim, [H.apply_antipode(v) for v in ideal.rows])
        enlarged = ideal + image
        logger.debug("hopf ideal closure round %d: dim %d", rounds, enlarged.dim)
        if enlarged == current:
            return enlarged
        current = enlarged


def counit_kernel(H: HopfAlgebra) -> Subspace:
    """A⁺ = ker ε"""
    return kernel([{0: c} if c else {} for c in H.counit_values], 1, H.field)


def augmentation(H: HopfAlgebra, V: Subspace) -> Subspace:
    """V⁺ = V ∩ ker ε"""
    return V & counit_kernel(H)


def certify_hopf_ideal(H: HopfAlgebra, I: Subspace) -> Certificate:
    """Two-sided ideal, coideal, killed by ε and stable under S"""
    one = H.field.one
    checks: List[CheckResult] = []
    witness = None
    for r, v in enumerate(I.rows):
        for i in range(H.dim):
            if not (I.contains(H.mul({i: one}, v)) and I.contains(H.mul(v, {i: one}))):
                witness = [r, i]
                break
        if witness:
            break
    checks.append(outcome("two-sided-ideal", witness is None, witness, "e_i·v or v·e_i leaves I"))
    columns = quotient_columns(I)
    bad = [r for r, v in enumerate(I.rows)
           if H.map_leg(H.map_leg(H.comul(v), 0, _project(columns)), 1, _project(columns))]
    checks.append(outcome("coideal", not bad, bad[:1], "Δ(v) ∉ I⊗A + A⊗I"))
    bad = [r for r, v in enumerate(I.rows) if H.eps(v)]
    checks.append(outcome("counit-vanishes", not bad, bad[:1], "ε(v) ≠ 0"))
    bad = [r for r, v in enumerate(I.rows) if not I.contains(H.apply_antipode(v))]
    checks.append(outcome("antipode-stable", not bad, bad[:1], "S(v) ∉ I"))
    return Certificate(subject=f"hopf-ideal:{H.name}", checks=checks)


@dataclass
class Quotient:
    algebra: HopfAlgebra
    projection: HopfMorphism
    ideal: Subspace
    certificate: Certificate


def quotient_hopf(H: HopfAlgebra, I: Subspace, name: Optional[str] = None) -> Quotient:
    """A/I for a certified Hopf ideal I, with the projection A -> A/I"""
    name = name or f"{H.name}/I"
    certificate = certify_hopf_ideal(H, I)
    if not certificate.passed:
        failure = certificate.failures()[0]
        raise CertificationError(failure.name, f"subspace of dim {I.dim} is not a Hopf ideal of {H.name}",
                                 failure.witness)
    reps = I.complement_indices()
    columns = quotient_columns(I)
    project = _project(columns)

    def down(v: SparseVec) -> SparseVec:
        result: SparseVec = {}
        for i, c in v.items():
            axpy(result, c, columns[i])
        return result

    mult: Dict[Tuple[int, int], SparseVec] = {}
    for s, a in enumerate(reps):
        for t, b in enumerate(reps):
            product = down(H.mul_basis(a, b))
            if product:
                mult[(s, t)] = product
    comult = [H.map_leg(H.map_leg(H.comul_basis(a), 0, project), 1, project) for a in reps]
    B = HopfAlgebra(
        H.field, [H.labels[a] for a in reps], mult, down(H.unit_vector()), comult,
        [H.eps_basis(a) for a in reps], [down(H.apply_antipode({a: H.field.one})) for a in reps], name=name,
    )
    if not I.is_zero():
        axioms = verify_axioms(B)
        if not axioms.passed:
            raise ConsistencyError(f"quotient {name} fails {axioms.failures()[0].name} despite a certified ideal")
    projection = HopfMorphism.certified(H, B, columns, name="π")
    if projection.kernel() != I:
        raise ConsistencyError(f"kernel of the projection onto {name} differs from the ideal")
    logger.info("built quotient %s of dim %d", name, B.dim)
    return Quotient(B, projection, I, certificate)


# -- subalgebras ------------------------------------------------------------------

def certify_hopf_subalgebra(H: HopfAlgebra, V: Subspace) -> Certificate:
    """Unital, multiplicatively closed, a subcoalgebra and S-stable"""
    checks: List[CheckResult] = [outcome("unit", V.contains(H.unit_vector()), [], "1 ∉ V")]
    witness = None
    for r, u in enumerate(V.rows):
        for s, v in enumerate(V.rows):
            if not V.contains(H.mul(u, v)):
                witness = [r, s]
                break
        if witness:
            break
    checks.append(outcome("multiplicatively-closed", witness is None, witness, "b_r·b_s ∉ V"))
    checks.append(subcoalgebra_check(H, V))
    bad = [r for r, v in enumerate(V.rows) if not V.contains(H.apply_antipode(v))]
    checks.append(outcome("antipode-stable", not bad, bad[:1], "S(b_r) ∉ V"))
    return Certificate(subject=f"hopf-subalgebra:{H.name}", checks=checks)


def subcoalgebra_check(H: HopfAlgebra, V: Subspace) -> CheckResult:
    bad = [r for r, v in enumerate(V.rows)
           if not (tensor_in_leg(H, H.comul(v), 0, V) and tensor_in_leg(H, H.comul(v), 1, V))]
    return outcome("subcoalgebra", not bad, bad[:1], "Δ(b_r) ∉ V⊗V")


@dataclass
class Subalgebra:
    algebra: HopfAlgebra
    inclusion: HopfMorphism
    subspace: Subspace
    certificate: Certificate


def sub_hopf(H: HopfAlgebra, V: Subspace, name: Optional[str] = None) -> Subalgebra:
    """The Hopf algebra structure on a certified Hopf subalgebra V, basis = RREF rows of V"""
    name = name or f"{H.name}|V"
    certificate = certify_hopf_subalgebra(H, V)
    if not certificate.passed:
        failure = certificate.failures()[0]
        raise CertificationError(failure.name, f"subspace of dim {V.dim} is not a Hopf subalgebra of {H.name}",
                                 failure.witness)
    pivots = V.pivots

    def coords(v: SparseVec) -> SparseVec:
        return {t: v[p] for t, p in enumerate(pivots) if v.get(p)}

    def tensor_coords(tensor: SparseTensor) -> SparseTensor:
        return {(s, t): tensor[(p, q)] for s, p in enumerate(pivots) for t, q in enumerate(pivots)
                if tensor.get((p, q))}

    mult = {(r, s): coords(H.mul(u, v)) for r, u in enumerate(V.rows) for s, v in enumerate(V.rows)}
    labels = [H.format_vector(v) for v in V.rows]
    K = HopfAlgebra(
        H.field, labels, mult, coords(H.unit_vector()), [tensor_coords(H.comul(v)) for v in V.rows],
        [H.eps(v) for v in V.rows], [coords(H.apply_antipode(v)) for v in V.rows], name=name,
    )
    if not V.is_full():
        axioms = verify_axioms(K)
        if not axioms.passed:
            raise ConsistencyError(f"subalgebra {name} fails {axioms.failures()[0].name} despite certification")
    inclusion = HopfMorphism.certified(K, H, V.basis, name="ι")
    return Subalgebra(K, inclusion, V, certificate)


# -- duality and products ----------------------------------------------------------

def dual_hopf(H: HopfAlgebra, labels: Optional[Sequence[str]] = None, name: Optional[str] = None) -> HopfAlgebra:
    """H* on the dual basis: every structure tensor transposed"""
    n = H.dim
    mult: Dict[Tuple[int, int], SparseVec] = {}
    for i in range(n):
        for (a, b), c in H.comul_basis(i).items():
            add_into(mult.setdefault((a, b), {}), i, c)
    comult: List[SparseTensor] = [{} for _ in range(n)]
    for (j, k), product in H.mult_table().items():
        for i, c in product.items():
            add_into(comult[i], (j, k), c)
    unit = {i: c for i, c in enumerate(H.counit_values) if c}
    unit_vector = H.unit_vector()
    counit = [unit_vector.get(i, H.field.zero) for i in range(n)]
    antipode_columns = H.antipode_columns
    antipode = [{j: antipode_columns[j][i] for j in range(n) if antipode_columns[j].get(i)} for i in range(n)]
    return HopfAlgebra(H.field, labels or [f"{label}*" for label in H.labels], mult, unit, comult, counit,
                       antipode, name=name or f"{H.name}*")


def tensor_product(H1: HopfAlgebra, H2: HopfAlgebra, name: Optional[str] = None) -> HopfAlgebra:
    """H1⊗H2 with componentwise structure; basis e_a⊗f_b at index a*dim(H2) + b"""
    if H1.field != H2.field:
        raise HopfError("tensor factors must share a field")
    n1, n2 = H1.dim, H2.dim
    one = H1.field.one

    def pair(u: SparseVec, v: SparseVec) -> SparseVec:
        return {a * n2 + b: x * y for a, x in u.items() for b, y in v.items()}

    mult = {}
    for a in range(n1):
        for b in range(n2):
            for c in range(n1):
                for d in range(n2):
                    product = pair(H1.mul_basis(a, c), H2.mul_basis(b, d))
                    if product:
                        mult[(a * n2 + b, c * n2 + d)] = product
    comult = []
    counit = []
    antipode = []
    for a in range(n1):
        for b in range(n2):
            delta: SparseTensor = {}
            for (a1, a2), x in H1.comul_basis(a).items():
                for (b1, b2), y in H2.comul_basis(b).items():
                    add_into(delta, (a1 * n2 + b1, a2 * n2 + b2), x * y)
            comult.append(delta)
            counit.append(H1.eps_basis(a) * H2.eps_basis(b))
            antipode.append(pair(H1.apply_antipode({a: one}), H2.apply_antipode({b: one})))
    labels = [f"{x}⊗{y}" for x in H1.labels for y in H2.labels]
    return HopfAlgebra(H1.field, labels, mult, pair(H1.unit_vector(), H2.unit_vector()), comult, counit,
                       antipode, name=name or f"{H1.name}⊗{H2.name}")


# -- inverses ----------------------------------------------------------------------

def element_inverse(H: HopfAlgebra, u: SparseVec) -> SparseVec:
    """Two-sided inverse of u in H"""
    one = H.field.one
    columns = [H.mul(u, {j: one}) for j in range(H.dim)]
    solution = solve(matrix_from_columns(columns, H.dim, H.field), H.unit_vector(), H.field)
    if solution is None or H.mul(solution, u) != H.unit_vector():
        raise NotInvertibleError(f"{H.format_vector(u)} is not invertible in {H.name}")
    return solution


def tensor_inverse(H: HopfAlgebra, psi: SparseTensor) -> SparseTensor:
    """Two-sided inverse of psi in A⊗A"""
    n = H.dim
    one = H.field.one
    columns = []
    for a in range(n):
        for b in range(n):
            product = H.tensor_mul(psi, {(a, b): one})
            columns.append({flatten(key, n): c for key, c in product.items()})
    unit = H.unit_tensor(2)
    solution = solve(matrix_from_columns(columns, n * n, H.field), {flatten(k, n): c for k, c in unit.items()},
                     H.field)
    if solution is None:
        raise NotInvertibleError(f"tensor is not invertible in {H.name}⊗{H.name}")
    inverse = {unflatten(flat, n, 2): c for flat, c in solution.items()}
    if H.tensor_mul(inverse, psi) != unit:
        raise NotInvertibleError(f"tensor has only a one-sided inverse in {H.name}⊗{H.name}")
    return inverse


# -- twists ------------------------------------------------------------------------

TWIST_CONVENTION = "cocycle: (Ψ⊗1)(Δ⊗id)Ψ = (1⊗Ψ)(id⊗Δ)Ψ; Δ^Ψ = ΨΔ(·)Ψ⁻¹; S^Ψ = U S(·) U⁻¹ with U = m(id⊗S)Ψ"


def coboundary_cocycle(H: HopfAlgebra, u: SparseVec) -> SparseTensor:
    """Ψ = (u⊗u)·Δ(u⁻¹) for invertible u with ε(u) = 1"""
    if H.eps(u) != H.field.one:
        raise HopfError(f"coboundary needs ε(u) = 1, got {H.field.format(H.eps(u))}")
    u_inv = element_inverse(H, u)
    uu = {(a, b): x * y for a, x in u.items() for b, y in u.items()}
    return H.tensor_mul(uu, H.comul(u_inv))


def verify_two_cocycle(H: HopfAlgebra, psi: SparseTensor) -> Certificate:
    """(Ψ⊗1)(Δ⊗id)Ψ = (1⊗Ψ)(id⊗Δ)Ψ and (ε⊗id)Ψ = 1 = (id⊗ε)Ψ"""
    unit = H.unit_vector()
    psi_1 = {key + (k,): c * v for key, c in psi.items() for k, v in unit.items()}
    one_psi = {(k,) + key: c * v for key, c in psi.items() for k, v in unit.items()}
    left = H.tensor_mul(psi_1, H.comul_leg(psi, 0))
    right = H.tensor_mul(one_psi, H.comul_leg(psi, 1))
    checks: List[CheckResult] = []
    if left == right:
        checks.append(passing("cocycle-identity"))
    else:
        differing = sorted(set(left) ^ set(right) | {k for k in left if k in right and left[k] != right[k]})
        checks.append(failing("cocycle-identity", list(differing[0]),
                              "(Ψ⊗1)(Δ⊗id)Ψ and (1⊗Ψ)(id⊗Δ)Ψ differ at these legs"))
    for leg, name in ((0, "counit-left"), (1, "counit-right")):
        contracted = {key[0]: c for key, c in H.counit_leg(psi, leg).items()}
        checks.append(outcome(name, contracted == unit, [], f"contracting leg {leg + 1} with ε does not give 1"))
    try:
        tensor_inverse(H, psi)
        checks.append(passing("invertible"))
    except NotInvertibleError as e:
        checks.append(failing("invertible", [], e.detail))
    return Certificate(subject=f"two-cocycle:{H.name}", checks=checks)


def drinfeld_twist(H: HopfAlgebra, psi: SparseTensor, name: Optional[str] = None) -> HopfAlgebra:
    """H with Δ^Ψ(x) = ΨΔ(x)Ψ⁻¹, same algebra structure, antipode recomputed"""
    name = name or f"{H.name}^Ψ"
    certificate = verify_two_cocycle(H, psi)
    if not certificate.passed:
        failure = certificate.failures()[0]
        raise CertificationError(failure.name, "twist is not an invertible normalised 2-cocycle", failure.witness)
    psi_inv = tensor_inverse(H, psi)
    one = H.field.one
    n = H.dim
    comult = [H.tensor_mul(H.tensor_mul(psi, H.comul_basis(i)), psi_inv) for i in range(n)]
    mult = H.mult_table()

    def build(antipode: List[SparseVec]) -> HopfAlgebra:
        return HopfAlgebra(H.field, H.labels, mult, H.unit_vector(), comult, H.counit_values, antipode, name=name)

    candidate: Optional[List[SparseVec]] = None
    u_vec: SparseVec = {}
    for (a, b), c in psi.items():
        axpy(u_vec, c, H.mul({a: one}, H.apply_antipode({b: one})))
    try:
        u_inv = element_inverse(H, u_vec)
        candidate = [H.mul_many(u_vec, H.apply_antipode({i: one}), u_inv) for i in range(n)]
    except NotInvertibleError:
        logger.debug("U = m(id⊗S)Ψ is not invertible in %s", H.name)
    if candidate is not None:
        twisted = build(candidate)
        if verify_axioms(twisted).passed:
            return twisted
    logger.info("conjugated antipode fails for %s, solving for the antipode", name)
    bialgebra = build(H.antipode_columns)
    solved = convolution_inverse(bialgebra, identity_matrix(n, H.field))
    if solved is None:
        raise CertificationError("antipode", f"twisted bialgebra {name} has no antipode")
    twisted = build(columns_of(solved))
    axioms = verify_axioms(twisted)
    if not axioms.passed:
        raise CertificationError(axioms.failures()[0].name, f"twisted algebra {name} fails the Hopf axioms")
    return twisted
