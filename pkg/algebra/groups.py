"""
Finite groups given by Cayley tables.

``table[g][h]`` is the index of g·h. The named groups come from sympy:
permutation groups for S3 and D4 (g·h is sympy's ``g*h``, apply g then h),
integer quaternions for Q8. Centers, conjugacy classes and quotients by
normal subgroups serve as oracles for the engines.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy.algebras.quaternion import Quaternion
from sympy.combinatorics.named_groups import DihedralGroup, SymmetricGroup
from sympy.combinatorics.perm_groups import PermutationGroup
from sympy.combinatorics.permutations import Permutation

from shared.errors import HopfError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    labels: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_table(cls, name: str, labels: Sequence[str], table: Sequence[Sequence[int]]) -> "FiniteGroup":
        """Validate a Cayley table: closed, associative, with identity and inverses"""
        n = len(labels)
        if len(set(labels)) != n:
            raise HopfError(f"{name}: element labels must be distinct")
        if len(table) != n or any(len(row) != n for row in table):
            raise HopfError(f"{name}: Cayley table must be {n}×{n}")
        if any(not 0 <= k < n for row in table for k in row):
            raise HopfError(f"{name}: Cayley table entry out of range")
        group = cls(name, tuple(labels), tuple(tuple(row) for row in table))
        for a, b, c in itertools.product(range(n), repeat=3):
            if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)):
                raise HopfError(f"{name}: Cayley table is not associative", [a, b, c])
        identity = group.identity
        for a in range(n):
            if not any(group.mul(a, b) == identity == group.mul(b, a) for b in range(n)):
                raise HopfError(f"{name}: element {labels[a]} has no inverse", [a])
        return group

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.mul(e, a) == a == self.mul(a, e) for a in range(self.order)):
                return e
        raise HopfError(f"{self.name} has no identity element")

    def inverse(self, a: int) -> int:
        return next(b for b in range(self.order) if self.mul(a, b) == self.identity)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def center(self) -> List[int]:
        return [z for z in range(self.order) if all(self.mul(z, a) == self.mul(a, z) for a in range(self.order))]

    def conjugacy_classes(self) -> List[List[int]]:
        seen = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            orbit = sorted({self.mul(self.mul(g, a), self.inverse(g)) for g in range(self.order)})
            seen.update(orbit)
            classes.append(orbit)
        return classes

    def is_normal(self, subgroup: Sequence[int]) -> bool:
        members = set(subgroup)
        closed = all(self.mul(a, b) in members for a in members for b in members)
        return closed and all(
            self.mul(self.mul(g, h), self.inverse(g)) in members for g in range(self.order) for h in members
        )

    def quotient(self, normal: Sequence[int], name: str = "") -> Tuple["FiniteGroup", List[int]]:
        """G/N with the coset index of every element of G"""
        if not self.is_normal(normal):
            raise HopfError(f"{list(normal)} is not a normal subgroup of {self.name}")
        coset_of: Dict[int, int] = {}
        representatives: List[int] = []
        for a in range(self.order):
            if a in coset_of:
                continue
            for h in normal:
                coset_of[self.mul(a, h)] = len(representatives)
            representatives.append(a)
        table = [[coset_of[self.mul(a, b)] for b in representatives] for a in representatives]
        labels = [f"{self.labels[a]}N" if a != self.identity else "1" for a in representatives]
        quotient = FiniteGroup(name or f"{self.name}/N", tuple(labels), tuple(tuple(row) for row in table))
        return quotient, [coset_of[a] for a in range(self.order)]


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ParseError(f"cyclic group order must be positive, got {n}", "group")
    labels = ["1", "g"] + [f"g^{k}" for k in range(2, n)]
    return FiniteGroup(f"Z{n}", tuple(labels[:n]), tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def klein_four() -> FiniteGroup:
    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]
    table = [[elements.index(((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)) for b in elements] for a in elements]
    return FiniteGroup("Z2xZ2", ("1", "a", "b", "ab"), tuple(tuple(row) for row in table))


def _cycle_label(p: Permutation) -> str:
    if p.is_Identity:
        return "1"
    return "".join("(" + " ".join(str(i) for i in cycle) + ")" for cycle in p.cyclic_form)


def permutation_group(name: str, group: PermutationGroup) -> FiniteGroup:
    elements = sorted(group.generate(), key=lambda p: p.array_form)
    position = {tuple(p.array_form): i for i, p in enumerate(elements)}
    table = tuple(tuple(position[tuple((p * q).array_form)] for q in elements) for p in elements)
    return FiniteGroup(name, tuple(_cycle_label(p) for p in elements), table)


def quaternion_group() -> FiniteGroup:
    units = {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}
    elements: List[Tuple[str, Quaternion]] = []
    for label, coords in units.items():
        elements.append((label, Quaternion(*coords)))
        elements.append((f"-{label}", Quaternion(*(-c for c in coords))))
    keys = [tuple(q.args) for _, q in elements]
    table = tuple(tuple(keys.index(tuple((p * q).args)) for _, q in elements) for _, p in elements)
    return FiniteGroup("Q8", tuple(label for label, _ in elements), table)


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    """Zn, S3, D4, Q8 or Z2xZ2"""
    if name == "S3":
        return permutation_group("S3", SymmetricGroup(3))
    if name == "D4":
        return permutation_group("D4", DihedralGroup(4))
    if name == "Q8":
        return quaternion_group()
    if name == "Z2xZ2":
        return klein_four()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise ParseError(f"unknown group {name!r}; expected Zn, S3, D4, Q8 or Z2xZ2", "group")
