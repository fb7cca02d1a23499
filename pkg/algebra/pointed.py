"""
Grouplikes, skew-primitives and isomorphisms of pointed Hopf algebras.

Grouplikes of H are the characters of the dual algebra H*. They are found
as common eigenvectors of the left multiplications of H*, branching over
the eigenvalues that lie in the base field.
"""
import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from algebra.hopf import HopfAlgebra
from algebra.morphism import HopfMorphism, verify_morphism
from shared.errors import HopfError
from shared.linalg import SparseVec, Subspace, difference, kernel, matrix_from_rows
from shared.models import GroupAlgebraOutcome

logger = logging.getLogger(__name__)


@dataclass
class Grouplikes:
    elements: List[SparseVec]
    outcome: GroupAlgebraOutcome
    splits: bool = True
    table: Dict[Tuple[int, int], int] = dataclass_field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.elements)


def is_grouplike(H: HopfAlgebra, v: SparseVec) -> bool:
    return bool(v) and H.eps(v) == H.field.one and H.comul(v) == {
        (a, b): x * y for a, x in v.items() for b, y in v.items()
    }


def _dual_left_multiplication(H: HopfAlgebra) -> List[Dict[int, SparseVec]]:
    """For each a, rows b -> {i: Δcoef(i; a, b)}: the transpose of e^a· on H*"""
    rows: List[Dict[int, SparseVec]] = [{} for _ in range(H.dim)]
    for i in range(H.dim):
        for (a, b), c in H.comul_basis(i).items():
            rows[a].setdefault(b, {})[i] = c
    return rows


def grouplikes(H: HopfAlgebra) -> Grouplikes:
    """All grouplike elements of H, with whether they form a basis"""
    n = H.dim
    F = H.field
    transposed = _dual_left_multiplication(H)
    leaves: List[Tuple[Subspace, Tuple]] = [(Subspace.full(F, n), ())]
    splits = True
    for a in range(n):
        matrix = matrix_from_rows([transposed[a].get(b, {}) for b in range(n)], n, F)
        roots, split = F.roots(matrix.to_dense().charpoly())
        splits = splits and split
        eigenspaces = {}
        for mu in roots:
            columns = [{b: row.get(i, F.zero) for b, row in transposed[a].items() if row.get(i)} for i in range(n)]
            for i in range(n):
                columns[i][i] = columns[i].get(i, F.zero) - mu
                if not columns[i][i]:
                    del columns[i][i]
            eigenspaces[mu] = kernel(columns, n, F)
        refined = []
        for space, values in leaves:
            for mu in roots:
                common = space & eigenspaces[mu]
                if not common.is_zero():
                    refined.append((common, values + (mu,)))
        leaves = refined
        logger.debug("grouplike search on %s: %d branches after e^%d", H.name, len(leaves), a)
    elements = []
    for space, values in leaves:
        candidate = {i: v for i, v in enumerate(values) if v}
        if candidate in space and is_grouplike(H, candidate):
            elements.append(candidate)
    elements.sort(key=lambda v: [(i, F.format(c)) for i, c in sorted(v.items())])
    if elements and Subspace.span(F, n, elements).dim == n:
        result = GroupAlgebraOutcome.GROUP_ALGEBRA
    elif not splits:
        result = GroupAlgebraOutcome.EXTENSION_REQUIRED
    else:
        result = GroupAlgebraOutcome.NOT_GROUP_ALGEBRA
    table = _grouplike_table(H, elements)
    logger.info("%s has %d grouplikes (%s)", H.name, len(elements), result.value)
    return Grouplikes(elements, result, splits, table)


def _key(H: HopfAlgebra, v: SparseVec) -> Tuple:
    return tuple((i, H.field.format(c)) for i, c in sorted(v.items()))


def _grouplike_table(H: HopfAlgebra, elements: List[SparseVec]) -> Dict[Tuple[int, int], int]:
    position = {_key(H, v): t for t, v in enumerate(elements)}
    table = {}
    for s, u in enumerate(elements):
        for t, v in enumerate(elements):
            product = _key(H, H.mul(u, v))
            if product not in position:
                raise HopfError(f"product of grouplikes {s}, {t} of {H.name} is not among the grouplikes found")
            table[(s, t)] = position[product]
    return table


def skew_primitives(H: HopfAlgebra, a: SparseVec, b: SparseVec) -> Subspace:
    """P_{a,b} = {x : Δx = x⊗a + b⊗x}"""
    n = H.dim
    columns = []
    for i in range(n):
        image = {flat: c for flat, c in ((j * n + k, c) for (j, k), c in H.comul_basis(i).items())}
        for k, c in a.items():
            image[i * n + k] = image.get(i * n + k, H.field.zero) - c
        for j, c in b.items():
            image[j * n + i] = image.get(j * n + i, H.field.zero) - c
        columns.append({k: v for k, v in image.items() if v})
    return kernel(columns, n * n, H.field)


def nontrivial_skew_primitives(H: HopfAlgebra, a: SparseVec, b: SparseVec) -> List[SparseVec]:
    """Basis vectors of P_{a,b} complementing the trivial span(a − b)"""
    trivial = Subspace.span(H.field, H.dim, [difference(a, b)])
    chosen: List[SparseVec] = []
    for row in skew_primitives(H, a, b).rows:
        if row not in trivial + Subspace.span(H.field, H.dim, chosen):
            chosen.append(row)
    return chosen


@dataclass
class PointedGenerators:
    grouplikes: Grouplikes
    skew: List[Tuple[int, int, SparseVec]]
    words: List[Tuple[int, ...]]
    basis: List[SparseVec]


def _word_basis(H: HopfAlgebra, generators: List[SparseVec]) -> Tuple[List[Tuple[int, ...]], List[SparseVec], Subspace]:
    """Words in the generators spanning the subalgebra they generate"""
    words: List[Tuple[int, ...]] = [()]
    basis = [H.unit_vector()]
    span = Subspace.span(H.field, H.dim, basis)
    frontier = list(zip(words, basis))
    while frontier and span.dim < H.dim:
        extended = []
        for word, vector in frontier:
            for g, generator in enumerate(generators):
                product = H.mul(vector, generator)
                if product and product not in span:
                    span = span + Subspace.span(H.field, H.dim, [product])
                    words.append(word + (g,))
                    basis.append(product)
                    extended.append((word + (g,), product))
        frontier = extended
    return words, basis, span


def pointed_generators(H: HopfAlgebra) -> PointedGenerators:
    """Grouplikes plus the skew-primitives not already generated, and a basis of H made of words in them"""
    found = grouplikes(H)
    generators = list(found.elements)
    words, basis, span = _word_basis(H, generators)
    skew: List[Tuple[int, int, SparseVec]] = []
    for s, t in itertools.product(range(found.count), repeat=2):
        for x in nontrivial_skew_primitives(H, found.elements[s], found.elements[t]):
            if x in span:
                continue
            skew.append((s, t, x))
            generators.append(x)
            words, basis, span = _word_basis(H, generators)
    if span.dim < H.dim:
        raise HopfError(f"{H.name} is not generated by grouplikes and skew-primitives (span {span.dim} of {H.dim})")
    return PointedGenerators(found, skew, words, basis)


def _group_isomorphisms(source: Grouplikes, target: Grouplikes):
    n = source.count
    assignment: List[int] = []

    def extend():
        if len(assignment) == n:
            yield list(assignment)
            return
        for t in range(n):
            if t in assignment:
                continue
            assignment.append(t)
            if all(
                source.table[(u, v)] >= len(assignment)
                or assignment[source.table[(u, v)]] == target.table[(assignment[u], assignment[v])]
                for u in range(len(assignment)) for v in range(len(assignment))
            ):
                yield from extend()
            assignment.pop()

    yield from extend()


def find_hopf_isomorphism(H: HopfAlgebra, K: HopfAlgebra, name: str = "φ") -> Optional[HopfMorphism]:
    """A Hopf isomorphism H -> K for pointed algebras generated by grouplikes and skew-primitives.

    Each skew-primitive generator of H is sent to ± a canonical basis vector of
    the matching skew-primitive space of K; other scalar multiples are not
    searched. That is complete when the relations are homogeneous in the
    skew-primitives (x^n = 0, xg = q·gx as in the Taft algebras). Relations
    such as EF − FE = (K − K⁻¹)/(q − q⁻¹) fix the scalars, and an isomorphism
    needing a scalar other than ±1 is missed, so None means "none found".
    """
    if H.dim != K.dim or H.field != K.field:
        return None
    source = pointed_generators(H)
    target = grouplikes(K)
    if source.grouplikes.count != target.count:
        return None
    F = H.field
    try:
        to_words = matrix_from_rows(source.basis, H.dim, F).transpose().to_dense().inv()
    except DMNonInvertibleMatrixError:
        raise HopfError(f"word basis of {H.name} is singular")
    for phi in _group_isomorphisms(source.grouplikes, target):
        options = []
        for s, t, _ in source.skew:
            candidates = nontrivial_skew_primitives(K, target.elements[phi[s]], target.elements[phi[t]])
            options.append(candidates + [{k: -v for k, v in y.items()} for y in candidates])
        if any(not choices for choices in options):
            continue
        for images in itertools.product(*options):
            generator_images = [target.elements[phi[s]] for s in range(source.grouplikes.count)] + list(images)
            word_images = []
            for word in source.words:
                value = K.unit_vector()
                for g in word:
                    value = K.mul(value, generator_images[g])
                word_images.append(value)
            # images are known on the word basis; change back to the standard basis of H
            matrix = matrix_from_rows(word_images, K.dim, F).transpose().to_dense().matmul(to_words)
            candidate = HopfMorphism(H, K, matrix, name)
            if candidate.is_injective() and verify_morphism(candidate).passed:
                logger.info("found Hopf isomorphism %s -> %s", H.name, K.name)
                return candidate
    logger.info("no Hopf isomorphism %s -> %s among pointed candidates", H.name, K.name)
    return None
