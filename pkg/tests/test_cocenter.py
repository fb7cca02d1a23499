import pytest

from algebra.catalog import function_algebra
from algebra.constructions import dual_hopf, quotient_hopf
from algebra.groups import named_group
from algebra.morphism import counit_morphism
from engine.center import hopf_center
from engine.cocenter import (
    ad_is_homomorphism, ad_tensor, adjoint_coaction, checked_ad_invariants, coalgebra_cocenter,
    coalgebra_generation_check, cocentral_sequence, cocentral_subspace, factor_through_cocenter,
    group_algebra_check, hopf_cocenter, is_cocentral,
)
from shared.errors import CertificationError
from shared.linalg import Subspace
from shared.models import GroupAlgebraOutcome
from shared.scalars import RATIONALS, cyclotomic


def span(H, *labels):
    return Subspace.span(H.field, H.dim, [H.basis_vector(H.index(label)) for label in labels])


@pytest.mark.parametrize("fixture, cocenter_dim", [
    ("kS3", 6),
    ("kQ8", 8),
    ("funS3", 1),
    ("funD4", 2),
    ("funQ8", 2),
    ("h4", 1),
])
def test_hopf_cocenter_dimensions(request, fixture, cocenter_dim):
    cocenter = hopf_cocenter(request.getfixturevalue(fixture))
    assert cocenter.algebra.dim == cocenter_dim
    assert cocenter.dual_center.dim == cocenter_dim
    assert cocenter.algebra.is_cocommutative()
    assert cocenter.certificate.passed
    assert cocenter.closure <= cocenter.kernel


def test_cocenter_of_a_function_algebra_is_a_group_algebra(funQ8):
    check = group_algebra_check(hopf_cocenter(funQ8).algebra)
    assert check.is_group_algebra
    assert check.grouplikes.count == 2


def test_cocentral_subspace_of_sweedler(h4):
    one = RATIONALS.one
    W = cocentral_subspace(h4)
    assert W == Subspace.span(RATIONALS, 4, [{0: one, 1: -one}, {2: one}, {3: one}])
    assert hopf_cocenter(h4).kernel == W


def test_adjoint_coaction_of_sweedler(h4):
    one = RATIONALS.one
    ad = adjoint_coaction(h4)
    assert ad.certificate.passed
    # ad(x) = 1⊗S(x) + x⊗g + g⊗gx
    assert ad.tensors[h4.index("x")] == {(0, 3): -one, (2, 1): one, (1, 3): one}
    assert ad(h4.unit_vector()) == {(0, 0): one}


def test_adjoint_coaction_of_e_in_small_quantum_sl2(sl2):
    one = sl2.field.one
    E, K = sl2.index("E"), sl2.index("K")
    assert ad_tensor(sl2, E) == {(K, E): -one, (E, K): one, (0, E): one}


def test_ad_invariants(kS3, h4):
    assert checked_ad_invariants(kS3).is_full()
    invariants = checked_ad_invariants(h4)
    assert h4.unit_vector() in invariants


def test_ad_is_a_homomorphism_exactly_when_it_lands_in_the_center(funS3, h4):
    commutative = ad_is_homomorphism(funS3)
    assert commutative.multiplicative and commutative.containment and commutative.into_hopf_center
    sweedler = ad_is_homomorphism(h4)
    assert not sweedler.multiplicative and not sweedler.containment
    assert sweedler.into_hopf_center is None
    assert sweedler.witness


def test_counit_factors_through_the_cocenter(h4):
    h = factor_through_cocenter(hopf_cocenter(h4), counit_morphism(h4))
    assert h.source.dim == 1 and h.target.dim == 1


def test_restriction_to_the_center_factors_through_the_cocenter(funQ8):
    # k(Q8) -> k(Z(Q8)) kills the delta functions away from {1, -1}
    outside = [label for label in funQ8.labels if label not in ("δ_1", "δ_-1")]
    restriction = quotient_hopf(funQ8, span(funQ8, *outside), name="k(Z(Q8))").projection
    assert is_cocentral(restriction)
    h = factor_through_cocenter(hopf_cocenter(funQ8), restriction)
    assert h.is_injective() and h.is_surjective()


def test_non_cocentral_maps_are_rejected(funQ8):
    # restriction to the non-central subgroup {±1, ±i}
    outside = ["δ_j", "δ_-j", "δ_k", "δ_-k"]
    restriction = quotient_hopf(funQ8, span(funQ8, *outside)).projection
    assert not is_cocentral(restriction)
    with pytest.raises(CertificationError):
        factor_through_cocenter(hopf_cocenter(funQ8), restriction)


def test_cocentral_sequence_of_sweedler(h4):
    report = cocentral_sequence(h4)
    assert report.passed
    assert report.sequence.dims == [4, 4, 1]
    assert report.d_in_kernel
    assert report.normal
    assert report.freeness.found
    assert report.round_trip is not None


def test_cocentral_sequence_of_a_function_algebra(funQ8):
    report = cocentral_sequence(funQ8)
    assert report.passed
    assert report.sequence.dims == [4, 8, 2]
    assert report.freeness.rank == 2
    assert report.group_check.is_group_algebra


@pytest.mark.slow
def test_cocentral_sequence_of_small_quantum_sl2(sl2):
    report = cocentral_sequence(sl2)
    assert report.passed
    assert report.d_equals_kernel
    assert report.generated.subspace.is_full()


def test_coalgebra_cocenter_of_a_cocommutative_subcoalgebra(h4):
    assert coalgebra_cocenter(h4, span(h4, "1", "g")).kernel.is_zero()


def test_coalgebra_cocenter_needs_a_subcoalgebra(h4):
    with pytest.raises(CertificationError):
        coalgebra_cocenter(h4, span(h4, "x"))


def test_generating_subcoalgebra_recovers_the_cocenter(h4):
    assert coalgebra_generation_check(h4, span(h4, "1", "g", "x")).passed
    assert not coalgebra_generation_check(h4, span(h4, "1", "g")).passed


@pytest.mark.slow
def test_generating_subcoalgebra_of_small_quantum_sl2(sl2):
    assert coalgebra_generation_check(sl2, span(sl2, "1", "K", "K^2", "E", "F")).passed


# the cocenter of k(G) is k(Z(G)), a group algebra over Q exactly when Z(G) has exponent at most 2
NEEDS_EXTENSION = {"k(Z4)", "k(Z6)"}


def test_every_builtin_has_a_certified_cocentral_sequence(builtin):
    report = cocentral_sequence(builtin)
    assert report.passed
    assert report.d_in_kernel
    assert report.cocenter.algebra.dim == hopf_center(dual_hopf(builtin)).dim
    assert hopf_cocenter(dual_hopf(builtin)).algebra.dim == hopf_center(builtin).dim
    if builtin.name in NEEDS_EXTENSION:
        assert report.group_check.outcome == GroupAlgebraOutcome.EXTENSION_REQUIRED
    elif builtin.name.startswith(("k[", "k(")):
        assert report.group_check.outcome == GroupAlgebraOutcome.GROUP_ALGEBRA


def test_group_algebra_check_needs_roots_of_unity():
    G = named_group("Z3")
    over_rationals = group_algebra_check(function_algebra(G))
    assert over_rationals.outcome == GroupAlgebraOutcome.EXTENSION_REQUIRED
    assert over_rationals.grouplikes.count == 1
    over_cyclotomic = group_algebra_check(function_algebra(G, cyclotomic(3)))
    assert over_cyclotomic.outcome == GroupAlgebraOutcome.GROUP_ALGEBRA
    assert over_cyclotomic.grouplikes.count == 3


@pytest.mark.slow
def test_small_quantum_sl2_has_trivial_center_and_cocenter_on_both_sides(sl2):
    assert hopf_center(sl2).dim == 1
    assert hopf_cocenter(sl2).algebra.dim == 1
    dual = dual_hopf(sl2)
    assert hopf_center(dual).dim == 1
    assert hopf_cocenter(dual).algebra.dim == 1
