import logging
from typing import List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from algebra.hopf import Element, HopfAlgebra, trivial_hopf
from shared.errors import CertificationError, DimensionMismatchError, FieldMismatchError
from shared.linalg import (
    SparseTensor, SparseVec, Subspace, add_into, apply_columns, columns_of, kernel,
    matrix_from_columns,
)
from shared.models import Certificate, CheckResult, failing, passing

logger = logging.getLogger(__name__)


class HopfMorphism:
    """A linear map between Hopf algebras, stored as a target.dim × source.dim matrix"""

    def __init__(self, source: HopfAlgebra, target: HopfAlgebra, matrix: DomainMatrix, name: str = "f"):
        if source.field != target.field:
            raise FieldMismatchError(f"{source.name} and {target.name} live over different fields")
        if matrix.shape != (target.dim, source.dim):
            raise DimensionMismatchError(f"matrix shape {matrix.shape} does not match {target.dim}×{source.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.name = name
        self.columns: List[SparseVec] = columns_of(matrix)

    @classmethod
    def from_columns(cls, source: HopfAlgebra, target: HopfAlgebra, columns: Sequence[SparseVec],
                     name: str = "f") -> "HopfMorphism":
        return cls(source, target, matrix_from_columns(columns, target.dim, source.field), name)

    @classmethod
    def certified(cls, source: HopfAlgebra, target: HopfAlgebra, columns: Sequence[SparseVec],
                  name: str = "f") -> "HopfMorphism":
        """Build a morphism and raise unless every structure identity holds"""
        f = cls.from_columns(source, target, columns, name)
        certificate = verify_morphism(f)
        if not certificate.passed:
            failure = certificate.failures()[0]
            raise CertificationError(failure.name, f"{name} is not a Hopf morphism", failure.witness)
        return f

    def apply(self, vector: SparseVec) -> SparseVec:
        return apply_columns(self.columns, vector)

    def __call__(self, x: Element) -> Element:
        return Element(self.target, self.apply(self.source._own(x).coeffs))

    def apply_tensor(self, tensor: SparseTensor, legs: Sequence[int]) -> SparseTensor:
        """Apply the map on the given 0-based legs of a tensor over the source"""
        result = dict(tensor)
        for leg in legs:
            mapped: SparseTensor = {}
            for key, c in result.items():
                for k, v in self.columns[key[leg]].items():
                    add_into(mapped, key[:leg] + (k,) + key[leg + 1:], c * v)
            result = mapped
        return result

    def kernel(self) -> Subspace:
        return kernel(self.columns, self.target.dim, self.source.field)

    def image(self) -> Subspace:
        return Subspace.span(self.source.field, self.target.dim, self.columns)

    @property
    def rank(self) -> int:
        return self.image().dim

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def compose(self, inner: "HopfMorphism") -> "HopfMorphism":
        """self ∘ inner"""
        if inner.target.dim != self.source.dim:
            raise DimensionMismatchError(f"cannot compose {self.name} after {inner.name}")
        return HopfMorphism(inner.source, self.target, self.matrix.matmul(inner.matrix), f"{self.name}∘{inner.name}")

    def __repr__(self) -> str:
        return f"HopfMorphism({self.name}: {self.source.name} -> {self.target.name})"


def verify_morphism(f: HopfMorphism) -> Certificate:
    """Check the five structure identities of a Hopf morphism on the basis"""
    A, B = f.source, f.target
    one = A.field.one
    n = A.dim
    checks: List[CheckResult] = []

    witness: Optional[List[int]] = None
    for i in range(n):
        for j in range(n):
            if f.apply(A.mul_basis(i, j)) != B.mul(f.columns[i], f.columns[j]):
                witness = [i, j]
                break
        if witness:
            break
    checks.append(failing("multiplicative", witness) if witness else passing("multiplicative"))

    unital = f.apply(A.unit_vector()) == B.unit_vector()
    checks.append(passing("unital") if unital else failing("unital", [], "f(1) ≠ 1"))

    bad = [i for i in range(n) if f.apply_tensor(A.comul_basis(i), (0, 1)) != B.comul(f.columns[i])]
    checks.append(failing("comultiplicative", bad[:1]) if bad else passing("comultiplicative"))

    bad = [i for i in range(n) if B.eps(f.columns[i]) != A.eps_basis(i)]
    checks.append(failing("counital", bad[:1]) if bad else passing("counital"))

    bad = [i for i in range(n) if f.apply(A.apply_antipode({i: one})) != B.apply_antipode(f.columns[i])]
    checks.append(failing("antipode", bad[:1]) if bad else passing("antipode"))
    return Certificate(subject=f"morphism:{f.name}", checks=checks)


def identity_morphism(H: HopfAlgebra) -> HopfMorphism:
    return HopfMorphism.from_columns(H, H, [H.basis_vector(i) for i in range(H.dim)], name="id")


def counit_morphism(H: HopfAlgebra, k: Optional[HopfAlgebra] = None) -> HopfMorphism:
    """ε viewed as the quotient map H -> k"""
    k = k or trivial_hopf(H.field)
    return HopfMorphism.from_columns(H, k, [{0: c} if c else {} for c in H.counit_values], name="ε")


def unit_morphism(H: HopfAlgebra, k: Optional[HopfAlgebra] = None) -> HopfMorphism:
    """The unit k -> H"""
    k = k or trivial_hopf(H.field)
    return HopfMorphism.from_columns(k, H, [H.unit_vector()], name="unit")
