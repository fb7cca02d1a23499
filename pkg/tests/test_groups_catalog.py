import pytest

from algebra.catalog import parse_builtin, small_quantum_sl2, taft
from algebra.groups import FiniteGroup, named_group
from shared.errors import HopfError, ParseError


@pytest.mark.parametrize("name, order, center, classes", [
    ("Z1", 1, 1, 1),
    ("Z6", 6, 6, 6),
    ("Z2xZ2", 4, 4, 4),
    ("S3", 6, 1, 3),
    ("D4", 8, 2, 5),
    ("Q8", 8, 2, 5),
])
def test_named_groups(name, order, center, classes):
    G = named_group(name)
    assert G.order == order
    assert len(G.center()) == center
    assert len(G.conjugacy_classes()) == classes


def test_quaternion_relations():
    G = named_group("Q8")
    i, j, k, minus_one = (G.index(label) for label in ("i", "j", "k", "-1"))
    assert G.mul(i, j) == k
    assert G.mul(j, i) == G.index("-k")
    assert G.mul(i, i) == minus_one
    assert sorted(G.center()) == sorted([G.identity, minus_one])


def test_quotient_by_the_center():
    G = named_group("Q8")
    Q, coset = G.quotient(G.center(), name="Q8/Z")
    assert Q.order == 4
    # Q8/Z is the Klein four group
    assert all(Q.mul(a, a) == 0 for a in range(Q.order))
    for a in range(G.order):
        for b in range(G.order):
            assert coset[G.mul(a, b)] == Q.mul(coset[a], coset[b])


def test_quotient_rejects_non_normal_subgroups():
    G = named_group("S3")
    transposition = next(a for a in range(G.order) if a != G.identity and G.mul(a, a) == G.identity)
    with pytest.raises(HopfError):
        G.quotient([G.identity, transposition])


def test_cayley_table_validation():
    with pytest.raises(HopfError):
        FiniteGroup.from_table("bad", ["e", "a", "b"], [[0, 1, 2], [1, 0, 0], [2, 0, 0]])
    with pytest.raises(HopfError):
        FiniteGroup.from_table("monoid", ["e", "a"], [[0, 1], [1, 1]])
    assert FiniteGroup.from_table("Z2", ["e", "a"], [[0, 1], [1, 0]]).order == 2


def test_unknown_group():
    with pytest.raises(ParseError):
        named_group("A5")


@pytest.mark.parametrize("name, dim, field", [
    ("group-algebra:Q8", 8, "rationals"),
    ("function-algebra:group=S3", 6, "rationals"),
    ("group-algebra:Z3,field=prime:7", 3, "prime:7"),
    ("sweedler", 4, "rationals"),
    ("taft:3", 9, "cyclotomic:3"),
    ("taft:n=3,field=prime:7", 9, "prime:7"),
])
def test_parse_builtin(name, dim, field):
    H = parse_builtin(name)
    assert H.dim == dim
    assert H.field.descriptor == field


@pytest.mark.parametrize("name", ["nonsense", "group-algebra", "group-algebra:A5", "taft:n=two", "taft:2,field=reals"])
def test_parse_builtin_errors(name):
    with pytest.raises(ParseError):
        parse_builtin(name)


def test_catalog_parameter_ranges():
    with pytest.raises(HopfError):
        taft(1)
    with pytest.raises(HopfError):
        small_quantum_sl2(4)


def test_taft_labels():
    H = taft(3)
    assert H.labels[:4] == ("1", "g", "g^2", "x")
    g, x = H.basis("g"), H.basis("x")
    assert g ** 3 == H.one()
    assert (x ** 3).is_zero()
