"""
Builtin Hopf algebras.

Every constructor returns an algebra that passes ``verify_axioms``; the
catalog tests check this for each entry. ``parse_builtin`` reads the
shell-friendly ``name:arg,key=value`` form used by the CLI.
"""
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from algebra.constructions import coboundary_cocycle, drinfeld_twist, dual_hopf
from algebra.groups import FiniteGroup, named_group
from algebra.hopf import HopfAlgebra
from shared.errors import HopfError, ParseError
from shared.linalg import SparseVec, axpy
from shared.scalars import RATIONALS, Field, cyclotomic, get_field

logger = logging.getLogger(__name__)


def group_algebra(G: FiniteGroup, field: Field = RATIONALS) -> HopfAlgebra:
    """k[G]: basis the group elements, all grouplike"""
    one = field.one
    n = G.order
    mult = {(a, b): {G.mul(a, b): one} for a in range(n) for b in range(n)}
    return HopfAlgebra(
        field, G.labels, mult, {G.identity: one}, [{(a, a): one} for a in range(n)],
        [one] * n, [{G.inverse(a): one} for a in range(n)], name=f"k[{G.name}]",
    )


def function_algebra(G: FiniteGroup, field: Field = RATIONALS) -> HopfAlgebra:
    """k(G) = k[G]*, basis the delta functions"""
    return dual_hopf(group_algebra(G, field), labels=[f"δ_{label}" for label in G.labels], name=f"k({G.name})")


# -- algebras presented by generators ------------------------------------------

def _skeleton(field: Field, labels: Sequence[str], mult: Dict[Tuple[int, int], SparseVec],
              unit: SparseVec) -> HopfAlgebra:
    """Algebra part only, so products in A⊗A can be formed before Δ is known"""
    n = len(labels)
    return HopfAlgebra(field, labels, mult, unit, [{}] * n, [field.zero] * n, [{}] * n, name="skeleton")


def _extend(skeleton: HopfAlgebra, words: Sequence[Sequence[str]], images: Dict[str, Any], unit: Any,
            product: Callable[[Any, Any], Any]) -> List[Any]:
    """Images of the basis words under a map determined by its values on generators"""
    result = []
    for word in words:
        value = unit
        for letter in word:
            value = product(value, images[letter])
        result.append(value)
    return result


def _monomial(parts: Sequence[Tuple[str, int]]) -> str:
    text = "".join(name if k == 1 else f"{name}^{k}" for name, k in parts if k)
    return text or "1"


def taft(n: int, field: Optional[Field] = None) -> HopfAlgebra:
    """Taft algebra of dimension n²: g^n = 1, x^n = 0, xg = q·gx, Δx = x⊗1 + g⊗x"""
    if n < 2:
        raise HopfError(f"taft algebra needs n >= 2, got {n}")
    field = field or cyclotomic(n)
    q = field.primitive_root_of_unity(n).value
    one = field.one
    # g^a x^b sits at index b*n + a
    index = lambda a, b: b * n + a
    labels = [_monomial([("g", a), ("x", b)]) for b in range(n) for a in range(n)]
    mult: Dict[Tuple[int, int], SparseVec] = {}
    for b in range(n):
        for a in range(n):
            for d in range(n):
                for c in range(n):
                    if b + d < n:
                        mult[(index(a, b), index(c, d))] = {index((a + c) % n, b + d): field.power(q, b * c)}
    skeleton = _skeleton(field, labels, mult, {0: one})
    g, x = index(1, 0), index(0, 1)
    g_inv = index(n - 1, 0)
    words = [["g"] * a + ["x"] * b for b in range(n) for a in range(n)]
    comult = _extend(skeleton, words, {"g": {(g, g): one}, "x": {(x, 0): one, (g, x): one}},
                     {(0, 0): one}, skeleton.tensor_mul)
    counit = _extend(skeleton, words, {"g": one, "x": field.zero}, one, lambda u, v: u * v)
    reversed_words = [list(reversed(word)) for word in words]
    antipode = _extend(skeleton, reversed_words, {"g": {g_inv: one}, "x": {index(n - 1, 1): -one}},
                       {0: one}, skeleton.mul)
    return HopfAlgebra(field, labels, mult, {0: one}, comult, counit, antipode,
                       name="H4" if n == 2 else f"taft({n})")


def sweedler_h4(field: Field = RATIONALS) -> HopfAlgebra:
    """Sweedler's 4-dimensional algebra, basis 1, g, x, gx"""
    return taft(2, field)


def small_quantum_sl2(p: int) -> HopfAlgebra:
    """u_q(sl2) at q = ζ_p, PBW basis F^a K^b E^c (0 ≤ a, b, c < p) at index a*p² + b*p + c"""
    if p < 3 or p % 2 == 0:
        raise HopfError(f"small quantum sl2 needs an odd p >= 3, got {p}")
    field = cyclotomic(p)
    q = field.generator
    one = field.one
    bracket = field.inverse(q - field.inverse(q))
    index = lambda a, b, c: (a * p + b) * p + c
    labels = [_monomial([("F", a), ("K", b), ("E", c)]) for a in range(p) for b in range(p) for c in range(p)]

    def left(generator: str, vector: SparseVec) -> SparseVec:
        result: SparseVec = {}
        for flat, coeff in vector.items():
            a, rest = divmod(flat, p * p)
            b, c = divmod(rest, p)
            if generator == "F":
                if a + 1 < p:
                    axpy(result, coeff, {index(a + 1, b, c): one})
            elif generator == "K":
                axpy(result, coeff * field.power(q, -2 * a), {index(a, (b + 1) % p, c): one})
            else:
                if c + 1 < p:
                    axpy(result, coeff * field.power(q, -2 * b), {index(a, b, c + 1): one})
                # [E, F^a] = F^(a-1) Σ_i (q^(-2(a-1-i)) K - q^(2(a-1-i)) K^-1) / (q - q^-1)
                for i in range(a):
                    m = a - 1 - i
                    axpy(result, coeff * bracket * field.power(q, -2 * m), {index(a - 1, (b + 1) % p, c): one})
                    axpy(result, -coeff * bracket * field.power(q, 2 * m), {index(a - 1, (b - 1) % p, c): one})
        return result

    words = [["F"] * a + ["K"] * b + ["E"] * c for a in range(p) for b in range(p) for c in range(p)]
    mult: Dict[Tuple[int, int], SparseVec] = {}
    for i, word in enumerate(words):
        for j in range(len(words)):
            product: SparseVec = {j: one}
            for letter in reversed(word):
                product = left(letter, product)
            if product:
                mult[(i, j)] = product
    unit = {0: one}
    skeleton = _skeleton(field, labels, mult, unit)
    E, F, K = index(0, 0, 1), index(1, 0, 0), index(0, 1, 0)
    K_inv = index(0, p - 1, 0)
    comult = _extend(skeleton, words, {
        "E": {(E, K): one, (0, E): one},
        "F": {(F, 0): one, (K_inv, F): one},
        "K": {(K, K): one},
    }, {(0, 0): one}, skeleton.tensor_mul)
    counit = _extend(skeleton, words, {"E": field.zero, "F": field.zero, "K": one}, one, lambda u, v: u * v)
    antipode_images = {
        "E": {k: -v for k, v in skeleton.mul({E: one}, {K_inv: one}).items()},
        "F": {k: -v for k, v in skeleton.mul({K: one}, {F: one}).items()},
        "K": {K_inv: one},
    }
    antipode = _extend(skeleton, [list(reversed(word)) for word in words], antipode_images, unit, skeleton.mul)
    logger.info("built small quantum sl2 at p=%d (dim %d)", p, p ** 3)
    return HopfAlgebra(field, labels, mult, unit, comult, counit, antipode, name=f"u_q(sl2),p={p}")


def sweedler_twist_unit(H: HopfAlgebra) -> SparseVec:
    """u = 1 + x, invertible with ε(u) = 1"""
    return {H.index("1"): H.field.one, H.index("x"): H.field.one}


def sweedler_twist() -> HopfAlgebra:
    """H4 twisted by the coboundary of 1 + x"""
    H = sweedler_h4()
    return drinfeld_twist(H, coboundary_cocycle(H, sweedler_twist_unit(H)), name="H4^Ψ")


# -- name:arg,key=value parsing ----------------------------------------------------

def _split(text: str) -> Tuple[str, List[str], Dict[str, str]]:
    name, _, rest = text.strip().partition(":")
    positional: List[str] = []
    options: Dict[str, str] = {}
    for part in filter(None, (p.strip() for p in rest.split(","))):
        key, sep, value = part.partition("=")
        if sep:
            options[key.strip()] = value.strip()
        else:
            positional.append(part)
    return name.strip().lower(), positional, options


def _int_option(name: str, key: str, positional: List[str], options: Dict[str, str], default: int) -> int:
    raw = options.get(key, positional[0] if positional else str(default))
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {raw!r}", f"builtin {name}")


BUILTINS = ("group-algebra", "function-algebra", "sweedler", "taft", "small-quantum-sl2", "sweedler-twist")


def parse_builtin(text: str) -> HopfAlgebra:
    """Build a catalog algebra from e.g. "group-algebra:Q8" or "small-quantum-sl2:p=3" """
    name, positional, options = _split(text)
    field = get_field(options["field"]) if "field" in options else None
    logger.debug("builtin %s args=%s options=%s", name, positional, options)
    if name in ("group-algebra", "function-algebra"):
        group_name = options.get("group", positional[0] if positional else "")
        if not group_name:
            raise ParseError("a group is required, e.g. group-algebra:Q8", f"builtin {name}")
        build = group_algebra if name == "group-algebra" else function_algebra
        return build(named_group(group_name), field or RATIONALS)
    if name == "sweedler":
        return sweedler_h4(field or RATIONALS)
    if name == "taft":
        return taft(_int_option(name, "n", positional, options, 2), field)
    if name == "small-quantum-sl2":
        return small_quantum_sl2(_int_option(name, "p", positional, options, 3))
    if name == "sweedler-twist":
        return sweedler_twist()
    raise ParseError(f"unknown builtin {name!r}; expected one of {', '.join(BUILTINS)}", "builtin")
