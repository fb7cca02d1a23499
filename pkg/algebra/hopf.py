"""
Hopf algebras presented by structure constants.

``HopfAlgebra`` keeps m, 1, Δ, ε and S as sparse tables on a fixed basis
e_0..e_{n-1}. The dictionary-level methods (``mul``, ``comul``, ``tensor_mul``
and friends) are what the engines contract with; ``Element`` and ``Tensor``
wrap them for interactive use and tests.
"""
import logging
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from shared.errors import AlgebraMismatchError, DimensionMismatchError, HopfError, NotInvertibleError
from shared.linalg import (
    SparseTensor, SparseVec, add_into, axpy, columns_of, matrix_from_columns, rank, scaled,
)
from shared.models import Certificate, CheckResult, failing, passing
from shared.scalars import Field, Scalar

logger = logging.getLogger(__name__)


class HopfAlgebra:
    """A finite-dimensional Hopf algebra over an exact field"""

    def __init__(self, field: Field, labels: Sequence[str],
                 mult: Mapping[Tuple[int, int], SparseVec], unit: SparseVec,
                 comult: Sequence[SparseTensor], counit: Sequence[Any],
                 antipode: Sequence[SparseVec], name: str = "H"):
        n = len(labels)
        if len(set(labels)) != n:
            raise HopfError("basis labels must be distinct")
        if len(comult) != n or len(counit) != n or len(antipode) != n:
            raise DimensionMismatchError(f"structure tables do not all have {n} entries")
        self.field = field
        self.labels: Tuple[str, ...] = tuple(labels)
        self.name = name
        self._index = {label: i for i, label in enumerate(self.labels)}
        self._mult: Dict[Tuple[int, int], SparseVec] = {}
        for (i, j), product in mult.items():
            self._check_indices((i, j), "mult")
            self._check_indices(tuple(product), "mult")
            entries = {k: v for k, v in product.items() if v}
            if entries:
                self._mult[(i, j)] = entries
        self._check_indices(tuple(unit), "unit")
        self._unit: SparseVec = {k: v for k, v in unit.items() if v}
        self._comult: Tuple[SparseTensor, ...] = tuple({key: v for key, v in t.items() if v} for t in comult)
        for t in self._comult:
            for key in t:
                self._check_indices(key, "comult")
        self._counit: Tuple[Any, ...] = tuple(field.convert(c) for c in counit)
        self._antipode: Tuple[SparseVec, ...] = tuple({k: v for k, v in s.items() if v} for s in antipode)
        for s in self._antipode:
            self._check_indices(tuple(s), "antipode")

    def _check_indices(self, indices: Iterable[int], where: str) -> None:
        for i in indices:
            if not 0 <= i < len(self.labels):
                raise DimensionMismatchError(f"{where}: basis index {i} out of range for dim {len(self.labels)}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.name}, dim={self.dim}, field={self.field.descriptor})"

    def index(self, label: Union[str, int]) -> int:
        if isinstance(label, int):
            self._check_indices((label,), "basis")
            return label
        try:
            return self._index[label]
        except KeyError:
            raise HopfError(f"{self.name} has no basis element labelled {label!r}")

    # -- raw contraction ----------------------------------------------------

    def basis_vector(self, i: int) -> SparseVec:
        return {i: self.field.one}

    def unit_vector(self) -> SparseVec:
        return dict(self._unit)

    def mul_basis(self, i: int, j: int) -> SparseVec:
        return self._mult.get((i, j), {})

    def mul(self, u: SparseVec, v: SparseVec) -> SparseVec:
        result: SparseVec = {}
        for i, a in u.items():
            for j, b in v.items():
                product = self._mult.get((i, j))
                if product:
                    axpy(result, a * b, product)
        return result

    def mul_many(self, *vectors: SparseVec) -> SparseVec:
        result = self.unit_vector()
        for v in vectors:
            result = self.mul(result, v)
        return result

    def comul_basis(self, i: int) -> SparseTensor:
        return self._comult[i]

    def comul(self, v: SparseVec) -> SparseTensor:
        result: SparseTensor = {}
        for i, a in v.items():
            axpy(result, a, self._comult[i])
        return result

    def comul_op(self, v: SparseVec) -> SparseTensor:
        return {(k, j): c for (j, k), c in self.comul(v).items()}

    def eps(self, v: SparseVec) -> Any:
        total = self.field.zero
        for i, a in v.items():
            total += a * self._counit[i]
        return total

    def eps_basis(self, i: int) -> Any:
        return self._counit[i]

    def apply_antipode(self, v: SparseVec) -> SparseVec:
        result: SparseVec = {}
        for i, a in v.items():
            axpy(result, a, self._antipode[i])
        return result

    def apply_antipode_inverse(self, v: SparseVec) -> SparseVec:
        columns = self._antipode_inverse_columns
        result: SparseVec = {}
        for i, a in v.items():
            axpy(result, a, columns[i])
        return result

    @cached_property
    def _antipode_inverse_columns(self) -> List[SparseVec]:
        try:
            inverse = self.antipode_matrix.to_dense().inv()
        except DMNonInvertibleMatrixError:
            raise NotInvertibleError(f"antipode of {self.name} is not invertible")
        return columns_of(inverse)

    # -- tensors ------------------------------------------------------------

    def tensor_mul(self, s: SparseTensor, t: SparseTensor) -> SparseTensor:
        """Componentwise product in A⊗...⊗A"""
        result: SparseTensor = {}
        for left, a in s.items():
            for right, b in t.items():
                partial: List[Tuple[Tuple[int, ...], Any]] = [((), a * b)]
                for i, j in zip(left, right):
                    product = self._mult.get((i, j))
                    if not product:
                        partial = []
                        break
                    partial = [(key + (k,), c * w) for key, c in partial for k, w in product.items()]
                for key, c in partial:
                    add_into(result, key, c)
        return result

    def unit_tensor(self, order: int) -> SparseTensor:
        result: SparseTensor = {(): self.field.one}
        for _ in range(order):
            result = {key + (k,): c * v for key, c in result.items() for k, v in self._unit.items()}
        return result

    def comul_leg(self, tensor: SparseTensor, leg: int) -> SparseTensor:
        """Apply Δ to one leg (0-based) of a tensor, raising its order by one"""
        result: SparseTensor = {}
        for key, c in tensor.items():
            for (a, b), v in self._comult[key[leg]].items():
                add_into(result, key[:leg] + (a, b) + key[leg + 1:], c * v)
        return result

    def counit_leg(self, tensor: SparseTensor, leg: int) -> SparseTensor:
        result: SparseTensor = {}
        for key, c in tensor.items():
            value = self._counit[key[leg]]
            if value:
                add_into(result, key[:leg] + key[leg + 1:], c * value)
        return result

    def map_leg(self, tensor: SparseTensor, leg: int, image) -> SparseTensor:
        """Apply a basis-indexed linear map (i -> sparse vector) on one leg"""
        result: SparseTensor = {}
        for key, c in tensor.items():
            for k, v in image(key[leg]).items():
                add_into(result, key[:leg] + (k,) + key[leg + 1:], c * v)
        return result

    def iterated_comul(self, v: SparseVec, order: int) -> SparseTensor:
        """Δ^(order-1)(v) as an order-``order`` tensor, x_(1)⊗...⊗x_(order)"""
        tensor: SparseTensor = {(i,): c for i, c in v.items()}
        for _ in range(order - 1):
            tensor = self.comul_leg(tensor, 0)
        return tensor

    def multiply_legs(self, tensor: SparseTensor) -> SparseVec:
        """m applied to all legs in order"""
        result: SparseVec = {}
        for key, c in tensor.items():
            product = self.basis_vector(key[0])
            for i in key[1:]:
                product = self.mul(product, self.basis_vector(i))
            axpy(result, c, product)
        return result

    # -- matrices -------------------------------------------------------------

    @cached_property
    def mult_matrix(self) -> DomainMatrix:
        """n × n² matrix of m"""
        n = self.dim
        columns = [self.mul_basis(i, j) for i in range(n) for j in range(n)]
        return matrix_from_columns(columns, n, self.field)

    @cached_property
    def comult_matrix(self) -> DomainMatrix:
        """n² × n matrix of Δ"""
        n = self.dim
        columns = [{a * n + b: c for (a, b), c in t.items()} for t in self._comult]
        return matrix_from_columns(columns, n * n, self.field)

    @cached_property
    def antipode_matrix(self) -> DomainMatrix:
        return matrix_from_columns(self._antipode, self.dim, self.field)

    @cached_property
    def counit_matrix(self) -> DomainMatrix:
        return matrix_from_columns([{0: c} if c else {} for c in self._counit], 1, self.field)

    @cached_property
    def unit_matrix(self) -> DomainMatrix:
        return matrix_from_columns([self._unit], self.dim, self.field)

    @property
    def antipode_columns(self) -> List[SparseVec]:
        return [dict(s) for s in self._antipode]

    @property
    def counit_values(self) -> List[Any]:
        return list(self._counit)

    def mult_table(self) -> Dict[Tuple[int, int], SparseVec]:
        return {key: dict(v) for key, v in self._mult.items()}

    def comult_table(self) -> List[SparseTensor]:
        return [dict(t) for t in self._comult]

    # -- structural predicates ----------------------------------------------

    def same_structure(self, other: "HopfAlgebra") -> bool:
        """Equal structure constants on the same basis order (labels ignored)"""
        return (
            self.field == other.field
            and self.dim == other.dim
            and self._mult == other._mult
            and self._unit == other._unit
            and self._comult == other._comult
            and self._counit == other._counit
            and self._antipode == other._antipode
        )

    def is_commutative(self) -> bool:
        return all(
            self.mul_basis(i, j) == self.mul_basis(j, i)
            for i in range(self.dim) for j in range(i + 1, self.dim)
        )

    def is_cocommutative(self) -> bool:
        return all(self.comul_basis(i) == self.comul_op({i: self.field.one}) for i in range(self.dim))

    # -- element API ----------------------------------------------------------

    def basis(self, label: Union[str, int]) -> "Element":
        return Element(self, self.basis_vector(self.index(label)))

    def one(self) -> "Element":
        return Element(self, self.unit_vector())

    def zero(self) -> "Element":
        return Element(self, {})

    def element(self, coeffs: Union[Mapping[Union[str, int], Any], Sequence[Any]]) -> "Element":
        """Element from {label: coefficient} or a dense coefficient list"""
        vector: SparseVec = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        for key, value in items:
            add_into(vector, self.index(key), self.field.convert(value))
        return Element(self, vector)

    def tensor(self, terms: Iterable[Tuple[Any, ...]]) -> "Tensor":
        """Tensor from (label_1, ..., label_k, coefficient) terms"""
        coeffs: SparseTensor = {}
        for term in terms:
            *legs, value = term
            add_into(coeffs, tuple(self.index(leg) for leg in legs), self.field.convert(value))
        return Tensor(self, coeffs)

    def _own(self, x: Any) -> Any:
        if isinstance(x, (Element, Tensor)):
            if x.algebra is not self:
                raise AlgebraMismatchError(f"argument belongs to {x.algebra.name}, not {self.name}")
            return x
        raise AlgebraMismatchError(f"expected an element of {self.name}, got {type(x).__name__}")

    def multiply(self, x: "Element", y: "Element") -> "Element":
        return Element(self, self.mul(self._own(x).coeffs, self._own(y).coeffs))

    def comultiply(self, x: "Element") -> "Tensor":
        return Tensor(self, self.comul(self._own(x).coeffs))

    def comultiply_op(self, x: "Element") -> "Tensor":
        return Tensor(self, self.comul_op(self._own(x).coeffs))

    def antipode(self, x: "Element") -> "Element":
        return Element(self, self.apply_antipode(self._own(x).coeffs))

    def antipode_inverse(self, x: "Element") -> "Element":
        return Element(self, self.apply_antipode_inverse(self._own(x).coeffs))

    def counit(self, x: "Element") -> Scalar:
        return Scalar(self.field, self.eps(self._own(x).coeffs))

    def evaluate(self, op: str, *args: "Element") -> Union["Element", "Tensor", Scalar]:
        """Dispatch one of the structure maps by name"""
        operations = {
            "multiply": self.multiply,
            "comultiply": self.comultiply,
            "comultiply_op": self.comultiply_op,
            "antipode": self.antipode,
            "antipode_inverse": self.antipode_inverse,
            "counit": self.counit,
        }
        if op not in operations:
            raise HopfError(f"unknown operation {op!r}")
        return operations[op](*args)

    def format_vector(self, vector: SparseVec) -> str:
        return _format_terms(self.field, [((i,), c) for i, c in sorted(vector.items())], self.labels)

    def format_tensor(self, tensor: SparseTensor) -> str:
        return _format_terms(self.field, sorted(tensor.items()), self.labels)


def _format_terms(field: Field, terms: List[Tuple[Tuple[int, ...], Any]], labels: Sequence[str]) -> str:
    if not terms:
        return "0"
    parts = []
    for key, c in terms:
        name = "⊗".join(labels[i] for i in key)
        text = field.format(c)
        if text == "1":
            parts.append(name)
        elif text == "-1":
            parts.append(f"-{name}")
        elif " " in text:
            parts.append(f"({text})*{name}")
        else:
            parts.append(f"{text}*{name}")
    return " + ".join(parts).replace("+ -", "- ")


class Element:
    """An element of a HopfAlgebra"""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: HopfAlgebra, coeffs: SparseVec):
        self.algebra = algebra
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def _same(self, other: "Element") -> "Element":
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise AlgebraMismatchError("elements of different algebras")
        return other

    def __add__(self, other: "Element") -> "Element":
        result = dict(self.coeffs)
        axpy(result, self.algebra.field.one, self._same(other).coeffs)
        return Element(self.algebra, result)

    def __sub__(self, other: "Element") -> "Element":
        result = dict(self.coeffs)
        axpy(result, -self.algebra.field.one, self._same(other).coeffs)
        return Element(self.algebra, result)

    def __neg__(self) -> "Element":
        return Element(self.algebra, scaled(self.coeffs, -self.algebra.field.one))

    def __mul__(self, other: Any) -> "Element":
        if isinstance(other, Element):
            return Element(self.algebra, self.algebra.mul(self.coeffs, self._same(other).coeffs))
        return Element(self.algebra, scaled(self.coeffs, self.algebra.field.convert(other)))

    def __rmul__(self, other: Any) -> "Element":
        return Element(self.algebra, scaled(self.coeffs, self.algebra.field.convert(other)))

    def __pow__(self, k: int) -> "Element":
        result = self.algebra.unit_vector()
        for _ in range(k):
            result = self.algebra.mul(result, self.coeffs)
        return Element(self.algebra, result)

    def tensor(self, other: "Element") -> "Tensor":
        """x ⊗ y"""
        self._same(other)
        return Tensor(self.algebra, {(i, j): a * b for i, a in self.coeffs.items() for j, b in other.coeffs.items()})

    def coefficient(self, label: Union[str, int]) -> Scalar:
        return Scalar(self.algebra.field, self.coeffs.get(self.algebra.index(label), self.algebra.field.zero))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs)))

    def __repr__(self) -> str:
        return self.algebra.format_vector(self.coeffs)


class Tensor:
    """An element of A⊗...⊗A; order two is the Tensor2 of Δ(x), ad(x) and twists"""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: HopfAlgebra, coeffs: SparseTensor):
        self.algebra = algebra
        self.coeffs = {key: c for key, c in coeffs.items() if c}

    @property
    def order(self) -> int:
        return len(next(iter(self.coeffs))) if self.coeffs else 0

    def _same(self, other: "Tensor") -> "Tensor":
        if not isinstance(other, Tensor) or other.algebra is not self.algebra:
            raise AlgebraMismatchError("tensors over different algebras")
        return other

    def __add__(self, other: "Tensor") -> "Tensor":
        result = dict(self.coeffs)
        axpy(result, self.algebra.field.one, self._same(other).coeffs)
        return Tensor(self.algebra, result)

    def __sub__(self, other: "Tensor") -> "Tensor":
        result = dict(self.coeffs)
        axpy(result, -self.algebra.field.one, self._same(other).coeffs)
        return Tensor(self.algebra, result)

    def __neg__(self) -> "Tensor":
        return Tensor(self.algebra, scaled(self.coeffs, -self.algebra.field.one))

    def __mul__(self, other: Any) -> "Tensor":
        if isinstance(other, Tensor):
            return Tensor(self.algebra, self.algebra.tensor_mul(self.coeffs, self._same(other).coeffs))
        return Tensor(self.algebra, scaled(self.coeffs, self.algebra.field.convert(other)))

    def __rmul__(self, other: Any) -> "Tensor":
        return Tensor(self.algebra, scaled(self.coeffs, self.algebra.field.convert(other)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tensor) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs)))

    def __repr__(self) -> str:
        return self.algebra.format_tensor(self.coeffs)


Tensor2 = Tensor


def verify_axioms(H: HopfAlgebra) -> Certificate:
    """Check every Hopf algebra axiom on the basis, with a witness for each failure"""
    logger.info("verifying Hopf axioms of %s (dim %d)", H.name, H.dim)
    n = H.dim
    one = H.field.one
    unit = H.unit_vector()
    checks: List[CheckResult] = []

    def first_failure(name: str, candidates, predicate) -> CheckResult:
        for witness in candidates:
            if not predicate(*witness):
                return failing(name, list(witness), f"fails at {[H.labels[i] for i in witness]}")
        return passing(name)

    pairs = [(i, j) for i in range(n) for j in range(n)]
    singles = [(i,) for i in range(n)]
    triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]

    checks.append(first_failure(
        "associativity", triples,
        lambda i, j, k: H.mul(H.mul_basis(i, j), {k: one}) == H.mul({i: one}, H.mul_basis(j, k)),
    ))
    checks.append(first_failure(
        "unit", singles,
        lambda i: H.mul(unit, {i: one}) == {i: one} == H.mul({i: one}, unit),
    ))
    checks.append(first_failure(
        "coassociativity", singles,
        lambda i: H.comul_leg(H.comul_basis(i), 0) == H.comul_leg(H.comul_basis(i), 1),
    ))
    checks.append(first_failure(
        "counit", singles,
        lambda i: _single_leg(H.counit_leg(H.comul_basis(i), 0)) == {i: one}
        == _single_leg(H.counit_leg(H.comul_basis(i), 1)),
    ))
    checks.append(first_failure(
        "comultiplication-multiplicative", pairs,
        lambda i, j: H.comul(H.mul_basis(i, j)) == H.tensor_mul(H.comul_basis(i), H.comul_basis(j)),
    ))
    unit_ok = H.comul(unit) == H.unit_tensor(2)
    checks.append(passing("comultiplication-unital") if unit_ok else failing("comultiplication-unital", [], "Δ(1) ≠ 1⊗1"))
    checks.append(first_failure(
        "counit-multiplicative", pairs,
        lambda i, j: H.eps(H.mul_basis(i, j)) == H.eps_basis(i) * H.eps_basis(j),
    ))
    counit_unit_ok = H.eps(unit) == one
    checks.append(passing("counit-unital") if counit_unit_ok else failing("counit-unital", [], "ε(1) ≠ 1"))

    def antipode_holds(i: int) -> bool:
        delta = H.comul_basis(i)
        target = scaled(unit, H.eps_basis(i))
        left = H.multiply_legs(H.map_leg(delta, 0, lambda a: H.apply_antipode({a: one})))
        right = H.multiply_legs(H.map_leg(delta, 1, lambda a: H.apply_antipode({a: one})))
        return left == target == right

    checks.append(first_failure("antipode", singles, antipode_holds))
    invertible = rank(H.antipode_columns, n, H.field) == n
    checks.append(passing("antipode-invertible") if invertible else failing("antipode-invertible", [], "S is singular"))
    certificate = Certificate(subject=f"hopf-axioms:{H.name}", checks=checks)
    if not certificate.passed:
        logger.warning("%s fails %s", H.name, [c.name for c in certificate.failures()])
    return certificate


def _single_leg(tensor: SparseTensor) -> SparseVec:
    return {key[0]: c for key, c in tensor.items()}


def require_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """Raise unless H passes verify_axioms"""
    certificate = verify_axioms(H)
    if not certificate.passed:
        failure = certificate.failures()[0]
        raise HopfError(f"{H.name} is not a Hopf algebra: {failure.name} fails", failure.witness)
    return H


def trivial_hopf(field: Field) -> HopfAlgebra:
    """The one-dimensional Hopf algebra k"""
    one = field.one
    return HopfAlgebra(field, ("1",), {(0, 0): {0: one}}, {0: one}, [{(0, 0): one}], [one], [{0: one}], name="k")
