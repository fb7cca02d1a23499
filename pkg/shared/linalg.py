"""
Exact linear algebra over a Field.

Vectors are sparse ``{index: value}`` dictionaries holding raw domain
elements with zeros dropped. Elimination goes through sympy's
``DomainMatrix.rref`` (leftmost pivots, pivots normalised to one), and every
subspace is stored as the nonzero rows of its reduced row echelon form, so
two ``Subspace`` values are equal exactly when they describe the same space.

Tensors of order k over an n-dimensional space are ``{(i_1, ..., i_k): value}``
dictionaries; flattening is row-major, (i, j) -> i*n + j.
"""
import itertools
import logging
import random
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from shared.errors import DimensionMismatchError
from shared.scalars import Field

logger = logging.getLogger(__name__)

SparseVec = Dict[int, Any]
SparseTensor = Dict[Tuple[int, ...], Any]


# -- sparse vectors --------------------------------------------------------

def add_into(target: Dict, key: Any, value: Any) -> None:
    """target[key] += value, dropping the entry when it cancels"""
    if not value:
        return
    current = target.get(key)
    if current is None:
        target[key] = value
        return
    total = current + value
    if total:
        target[key] = total
    else:
        del target[key]


def axpy(target: Dict, scale: Any, source: Dict) -> Dict:
    """target += scale * source, in place"""
    if scale:
        for key, value in source.items():
            add_into(target, key, scale * value)
    return target


def scaled(vector: Dict, scale: Any) -> Dict:
    if not scale:
        return {}
    return {key: scale * value for key, value in vector.items()}


def difference(u: Dict, v: Dict) -> Dict:
    result = dict(u)
    for key, value in v.items():
        add_into(result, key, -value)
    return result


def dense(vector: SparseVec, length: int, field: Field) -> List[Any]:
    return [vector.get(i, field.zero) for i in range(length)]


def sparse(values: Sequence[Any]) -> SparseVec:
    return {i: v for i, v in enumerate(values) if v}


# -- matrices --------------------------------------------------------------

def matrix_from_columns(columns: Sequence[SparseVec], nrows: int, field: Field) -> DomainMatrix:
    """Matrix whose j-th column is columns[j]"""
    rows: Dict[int, Dict[int, Any]] = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if not 0 <= i < nrows:
                raise DimensionMismatchError(f"row index {i} outside {nrows} rows")
            if value:
                rows.setdefault(i, {})[j] = value
    return DomainMatrix(rows, (nrows, len(columns)), field.domain)


def matrix_from_rows(rows: Sequence[SparseVec], ncols: int, field: Field) -> DomainMatrix:
    data: Dict[int, Dict[int, Any]] = {}
    for i, row in enumerate(rows):
        entries = {j: v for j, v in row.items() if v}
        for j in entries:
            if not 0 <= j < ncols:
                raise DimensionMismatchError(f"column index {j} outside {ncols} columns")
        if entries:
            data[i] = entries
    return DomainMatrix(data, (len(rows), ncols), field.domain)


def sparse_rows(matrix: DomainMatrix) -> Dict[int, Dict[int, Any]]:
    return {i: dict(row) for i, row in matrix.to_sparse().rep.items() if row}


def columns_of(matrix: DomainMatrix) -> List[SparseVec]:
    columns: List[SparseVec] = [{} for _ in range(matrix.shape[1])]
    for i, row in matrix.to_sparse().rep.items():
        for j, value in row.items():
            if value:
                columns[j][i] = value
    return columns


def apply_columns(columns: Sequence[SparseVec], vector: SparseVec) -> SparseVec:
    """Image of a sparse vector under the map with the given columns"""
    result: SparseVec = {}
    for j, c in vector.items():
        axpy(result, c, columns[j])
    return result


def matrices_equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and sparse_rows(a) == sparse_rows(b)


def identity_matrix(n: int, field: Field) -> DomainMatrix:
    return matrix_from_columns([{i: field.one} for i in range(n)], n, field)


def compose(outer: DomainMatrix, inner: DomainMatrix) -> DomainMatrix:
    if outer.shape[1] != inner.shape[0]:
        raise DimensionMismatchError(f"cannot compose {outer.shape} after {inner.shape}")
    return outer.matmul(inner)


# -- elimination -----------------------------------------------------------

@dataclass(frozen=True)
class Elimination:
    rref: DomainMatrix
    pivots: Tuple[int, ...]
    kernel: "Subspace"

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _rref(matrix: DomainMatrix) -> Tuple[Dict[int, Dict[int, Any]], Tuple[int, ...], DomainMatrix]:
    nrows, ncols = matrix.shape
    if nrows == 0 or ncols == 0:
        return {}, (), matrix
    reduced, pivots = matrix.to_dense().rref()
    return sparse_rows(reduced), tuple(pivots), reduced


def rref_kernel_solve(matrix: DomainMatrix, field: Field) -> Elimination:
    """Reduced row echelon form, pivots and kernel of a matrix"""
    ncols = matrix.shape[1]
    rows, pivots, reduced = _rref(matrix)
    pivot_set = set(pivots)
    vectors = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector: SparseVec = {free: field.one}
        for r, p in enumerate(pivots):
            value = rows.get(r, {}).get(free)
            if value:
                vector[p] = -value
        vectors.append(vector)
    return Elimination(reduced, pivots, Subspace.span(field, ncols, vectors))


def kernel(columns: Sequence[SparseVec], nrows: int, field: Field) -> "Subspace":
    """Kernel of the map whose images of the basis vectors are ``columns``"""
    return rref_kernel_solve(matrix_from_columns(columns, nrows, field), field).kernel


def rank(vectors: Sequence[SparseVec], length: int, field: Field) -> int:
    if not vectors:
        return 0
    _, pivots, _ = _rref(matrix_from_rows(vectors, length, field))
    return len(pivots)


def solve(matrix: DomainMatrix, rhs: SparseVec, field: Field) -> Optional[SparseVec]:
    """A solution x of matrix * x = rhs, or None when the system is infeasible"""
    nrows, ncols = matrix.shape
    for i in rhs:
        if not 0 <= i < nrows:
            raise DimensionMismatchError(f"right-hand side index {i} outside {nrows} rows")
    data = sparse_rows(matrix)
    for i, value in rhs.items():
        if value:
            data.setdefault(i, {})[ncols] = value
    augmented = DomainMatrix(data, (nrows, ncols + 1), field.domain)
    rows, pivots, _ = _rref(augmented)
    if ncols in pivots:
        return None
    return {p: rows[r][ncols] for r, p in enumerate(pivots) if rows.get(r, {}).get(ncols)}


# -- subspaces -------------------------------------------------------------

class Subspace:
    """A subspace of field^ambient_dim held in canonical RREF form"""

    __slots__ = ("field", "ambient_dim", "rows", "pivots")

    def __init__(self, field: Field, ambient_dim: int, rows: Sequence[SparseVec], pivots: Sequence[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows: Tuple[SparseVec, ...] = tuple(rows)
        self.pivots: Tuple[int, ...] = tuple(pivots)

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[SparseVec]) -> "Subspace":
        vectors = [v for v in vectors if v]
        if not vectors:
            return cls(field, ambient_dim, (), ())
        rows, pivots, _ = _rref(matrix_from_rows(vectors, ambient_dim, field))
        return cls(field, ambient_dim, [rows[r] for r in range(len(pivots))], pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, [{i: field.one} for i in range(ambient_dim)], range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> List[SparseVec]:
        return [dict(row) for row in self.rows]

    def is_zero(self) -> bool:
        return not self.pivots

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def reduce(self, vector: SparseVec) -> SparseVec:
        """Residual of a vector after clearing every pivot column"""
        residual = dict(vector)
        for row, pivot in zip(self.rows, self.pivots):
            c = residual.get(pivot)
            if c:
                axpy(residual, -c, row)
        return residual

    def contains(self, vector: SparseVec) -> bool:
        return not self.reduce(vector)

    def __contains__(self, vector: SparseVec) -> bool:
        return self.contains(vector)

    def coordinates(self, vector: SparseVec) -> List[Any]:
        """Coefficients of a member vector in the RREF basis"""
        return [vector.get(p, self.field.zero) for p in self.pivots]

    def complement_indices(self) -> List[int]:
        pivot_set = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in pivot_set]

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.rows)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, list(self.rows) + list(other.rows))

    def intersection(self, other: "Subspace") -> "Subspace":
        """U ∩ V from the kernel of [U^T | -V^T]"""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient_dim)
        columns = list(self.rows) + [scaled(row, -self.field.one) for row in other.rows]
        relations = kernel(columns, self.ambient_dim, self.field)
        vectors = []
        for relation in relations.rows:
            vector: SparseVec = {}
            for t, c in relation.items():
                if t < self.dim:
                    axpy(vector, c, self.rows[t])
            vectors.append(vector)
        return Subspace.span(self.field, self.ambient_dim, vectors)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersection(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def dense_rows(self) -> List[List[str]]:
        return [[self.field.format(v) for v in dense(row, self.ambient_dim, self.field)] for row in self.rows]


# -- tensor legs -----------------------------------------------------------

def flatten(index: Sequence[int], dim: int) -> int:
    flat = 0
    for i in index:
        if not 0 <= i < dim:
            raise DimensionMismatchError(f"tensor index {i} outside dimension {dim}")
        flat = flat * dim + i
    return flat


def unflatten(flat: int, dim: int, order: int) -> Tuple[int, ...]:
    if not 0 <= flat < dim ** order:
        raise DimensionMismatchError(f"flat index {flat} outside {dim}^{order}")
    index = []
    for _ in range(order):
        flat, i = divmod(flat, dim)
        index.append(i)
    return tuple(reversed(index))


def flatten_tensor(tensor: SparseTensor, dim: int) -> SparseVec:
    return {flatten(key, dim): value for key, value in tensor.items()}


def unflatten_vector(vector: SparseVec, dim: int, order: int) -> SparseTensor:
    return {unflatten(flat, dim, order): value for flat, value in vector.items()}


LegOperator = Union[DomainMatrix, Sequence[SparseVec]]


def leg_apply(op: LegOperator, legs: Sequence[int], tensor: SparseTensor, dim: int,
              order: Optional[int] = None) -> SparseTensor:
    """Apply a linear map to the given legs (1-based) of an order-k tensor, identity elsewhere"""
    if order is None:
        order = len(next(iter(tensor))) if tensor else max(legs, default=0)
    if len(set(legs)) != len(legs):
        raise DimensionMismatchError(f"repeated leg in {tuple(legs)}")
    for leg in legs:
        if not 1 <= leg <= order:
            raise DimensionMismatchError(f"leg {leg} outside tensor order {order}")
    columns = columns_of(op) if isinstance(op, DomainMatrix) else op
    if len(columns) != dim ** len(legs):
        raise DimensionMismatchError(
            f"map acts on {len(columns)} coordinates, legs {tuple(legs)} need {dim ** len(legs)}"
        )
    result: SparseTensor = {}
    for key, c in tensor.items():
        if len(key) != order:
            raise DimensionMismatchError(f"tensor entry {key} is not of order {order}")
        column = columns[flatten([key[leg - 1] for leg in legs], dim)]
        for flat, value in column.items():
            target = list(key)
            for leg, i in zip(legs, unflatten(flat, dim, len(legs))):
                target[leg - 1] = i
            add_into(result, tuple(target), c * value)
    return result


# -- property-check tuples -------------------------------------------------

def basis_tuples(dim: int, arity: int, seed: int, exhaustive_limit: int, sample_size: int) -> List[Tuple[int, ...]]:
    """All basis index tuples when few enough, else a seeded sample of them"""
    total = dim ** arity
    if total <= exhaustive_limit:
        return list(itertools.product(range(dim), repeat=arity))
    rng = random.Random(seed)
    picked = set()
    while len(picked) < min(sample_size, total):
        picked.add(tuple(rng.randrange(dim) for _ in range(arity)))
    logger.debug("sampling %d of %d basis %d-tuples", len(picked), total, arity)
    return sorted(picked)
