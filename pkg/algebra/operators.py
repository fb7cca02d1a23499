"""Convolution of linear maps and the W-operator on A⊗A."""
import logging
from dataclasses import dataclass
from typing import List, Optional

from sympy.polys.matrices import DomainMatrix

from algebra.hopf import HopfAlgebra
from shared.config import settings
from shared.errors import DimensionMismatchError, HopfError
from shared.linalg import (
    SparseTensor, SparseVec, add_into, axpy, basis_tuples, columns_of,
    identity_matrix, leg_apply, matrices_equal, matrix_from_columns, solve,
)
from shared.models import Certificate, CheckResult, failing, passing

logger = logging.getLogger(__name__)


def _check_map(H: HopfAlgebra, f: DomainMatrix, target: HopfAlgebra, what: str) -> List[SparseVec]:
    if f.shape != (target.dim, H.dim):
        raise DimensionMismatchError(f"{what} has shape {f.shape}, expected {(target.dim, H.dim)}")
    return columns_of(f)


def convolution(H: HopfAlgebra, f: DomainMatrix, g: DomainMatrix,
                target: Optional[HopfAlgebra] = None) -> DomainMatrix:
    """(f*g)(x) = f(x_(1))·g(x_(2)) for maps H -> target (default H)"""
    target = target or H
    f_cols = _check_map(H, f, target, "f")
    g_cols = _check_map(H, g, target, "g")
    columns = []
    for i in range(H.dim):
        image: SparseVec = {}
        for (a, b), c in H.comul_basis(i).items():
            axpy(image, c, target.mul(f_cols[a], g_cols[b]))
        columns.append(image)
    return matrix_from_columns(columns, target.dim, H.field)


def unit_counit(H: HopfAlgebra, target: Optional[HopfAlgebra] = None) -> DomainMatrix:
    """The convolution identity x -> ε(x)1"""
    target = target or H
    unit = target.unit_vector()
    return matrix_from_columns([{k: v * H.eps_basis(i) for k, v in unit.items()} for i in range(H.dim)],
                               target.dim, H.field)


def convolution_inverse(H: HopfAlgebra, f: DomainMatrix,
                        target: Optional[HopfAlgebra] = None) -> Optional[DomainMatrix]:
    """Solve f*g = unit∘ε = g*f for g; None when f is not convolution invertible"""
    target = target or H
    f_cols = _check_map(H, f, target, "f")
    n, t = H.dim, target.dim
    one = H.field.one
    # unknown g[r, k] sits at column r*n + k
    rows: List[SparseVec] = []
    rhs: SparseVec = {}
    unit = target.unit_vector()
    for i in range(n):
        for side in ("left", "right"):
            equations: dict = {}
            for (a, b), c in H.comul_basis(i).items():
                for r in range(t):
                    if side == "left":
                        product = target.mul(f_cols[a], {r: one})
                        column = r * n + b
                    else:
                        product = target.mul({r: one}, f_cols[b])
                        column = r * n + a
                    for s, v in product.items():
                        add_into(equations.setdefault(s, {}), column, c * v)
            for s in range(t):
                position = len(rows)
                rows.append(equations.get(s, {}))
                value = unit.get(s, H.field.zero) * H.eps_basis(i)
                if value:
                    rhs[position] = value
    data = {i: row for i, row in enumerate(rows) if row}
    system = DomainMatrix(data, (len(rows), t * n), H.field.domain)
    solution = solve(system, rhs, H.field)
    if solution is None:
        logger.debug("convolution system of %s is infeasible", H.name)
        return None
    columns: List[SparseVec] = [{} for _ in range(n)]
    for position, value in solution.items():
        r, k = divmod(position, n)
        columns[k][r] = value
    return matrix_from_columns(columns, t, H.field)


@dataclass
class WOperator:
    matrix: DomainMatrix
    inverse: DomainMatrix
    certificate: Certificate


def _w_columns(H: HopfAlgebra, inverse: bool) -> List[SparseVec]:
    n = H.dim
    one = H.field.one
    columns = []
    for a in range(n):
        for b in range(n):
            image: SparseVec = {}
            for (j, k), c in H.comul_basis(a).items():
                second = H.apply_antipode({k: one}) if inverse else {k: one}
                for m, v in H.mul(second, {b: one}).items():
                    add_into(image, j * n + m, c * v)
            columns.append(image)
    return columns


def w_operator(H: HopfAlgebra, seed: Optional[int] = None) -> WOperator:
    """W(a⊗a') = a_(1)⊗a_(2)a' with its inverse and the pentagon identity certified"""
    n = H.dim
    w_cols = _w_columns(H, inverse=False)
    inv_cols = _w_columns(H, inverse=True)
    W = matrix_from_columns(w_cols, n * n, H.field)
    W_inv = matrix_from_columns(inv_cols, n * n, H.field)
    identity = identity_matrix(n * n, H.field)
    checks: List[CheckResult] = []
    inverse_ok = matrices_equal(W.matmul(W_inv), identity) and matrices_equal(W_inv.matmul(W), identity)
    checks.append(passing("inverse-formula") if inverse_ok else failing("inverse-formula", [], "W·W⁻¹ ≠ id"))
    checks.append(_pentagon(H, w_cols, inv_cols, seed))
    checks.append(_u_operator(H, w_cols, inv_cols, seed))
    certificate = Certificate(subject=f"w-operator:{H.name}", checks=checks)
    if not certificate.passed:
        raise HopfError(f"W-operator identities fail on {H.name}; the algebra is inconsistent",
                        certificate.failures()[0].witness)
    return WOperator(W, W_inv, certificate)


def _triples(H: HopfAlgebra, seed: Optional[int]):
    return basis_tuples(H.dim, 3, settings.seed if seed is None else seed,
                        settings.exhaustive_limit, settings.property_sample)


def _pentagon(H: HopfAlgebra, w_cols, inv_cols, seed: Optional[int]) -> CheckResult:
    n = H.dim
    one = H.field.one
    for triple in _triples(H, seed):
        x: SparseTensor = {triple: one}
        left = leg_apply(w_cols, (2, 3), leg_apply(w_cols, (1, 2), leg_apply(inv_cols, (2, 3), x, n), n), n)
        right = leg_apply(w_cols, (1, 2), leg_apply(w_cols, (1, 3), x, n), n)
        if left != right:
            return failing("pentagon", list(triple), "W23 W12 W23⁻¹ ≠ W12 W13")
    return passing("pentagon")


def _u_operator(H: HopfAlgebra, w_cols, inv_cols, seed: Optional[int]) -> CheckResult:
    """W12⁻¹ W13 W12 (a⊗b⊗c) = a_(1) ⊗ S(a_(2)) a_(4) b ⊗ a_(3) c"""
    n = H.dim
    one = H.field.one
    for a, b, c in _triples(H, seed):
        x: SparseTensor = {(a, b, c): one}
        conjugated = leg_apply(inv_cols, (1, 2), leg_apply(w_cols, (1, 3), leg_apply(w_cols, (1, 2), x, n), n), n)
        expected: SparseTensor = {}
        for (a1, a2, a3, a4), coeff in H.iterated_comul({a: one}, 4).items():
            middle = H.mul_many(H.apply_antipode({a2: one}), {a4: one}, {b: one})
            last = H.mul({a3: one}, {c: one})
            for m, v in middle.items():
                for l, w in last.items():
                    add_into(expected, (a1, m, l), coeff * v * w)
        if conjugated != expected:
            return failing("u-operator", [a, b, c], "W12⁻¹ W13 W12 does not match its Sweedler form")
    return passing("u-operator")


def u_operator_check(H: HopfAlgebra, seed: Optional[int] = None) -> CheckResult:
    return _u_operator(H, _w_columns(H, inverse=False), _w_columns(H, inverse=True), seed)
