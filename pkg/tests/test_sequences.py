import pytest

from algebra.constructions import counit_kernel, quotient_hopf, sub_hopf, two_sided_ideal
from algebra.groups import named_group
from algebra.morphism import counit_morphism, identity_morphism
from engine.sequences import (
    CONVENTION, assemble_sequence, factor_through, freeness_certificate, hopf_cokernel, hopf_kernel, is_normal,
    round_trip, verify_exact,
)
from shared.errors import CertificationError, DimensionMismatchError
from shared.linalg import Subspace
from shared.models import FreenessStatus, HopfKernelSide
from shared.scalars import RATIONALS


@pytest.fixture(scope="module")
def s3_sequence(kS3):
    """k -> k[A3] -> k[S3] -> k[Z2] -> k"""
    G = named_group("S3")
    one = RATIONALS.one
    a3 = [g for g in range(G.order) if G.mul(G.mul(g, g), g) == G.identity]
    sub = sub_hopf(kS3, Subspace.span(RATIONALS, 6, [{g: one} for g in a3]), name="k[A3]")
    generators = [{g: one, G.identity: -one} for g in a3 if g != G.identity]
    quotient = quotient_hopf(kS3, two_sided_ideal(kS3, Subspace.span(RATIONALS, 6, generators)), name="k[Z2]")
    return sub, quotient


def test_hopf_kernel_of_the_counit_is_everything(h4):
    assert hopf_kernel(counit_morphism(h4)).is_full()
    assert hopf_kernel(counit_morphism(h4), HopfKernelSide.RIGHT).is_full()


def test_hopf_kernel_of_a_group_quotient(s3_sequence):
    sub, quotient = s3_sequence
    assert hopf_kernel(quotient.projection) == sub.subspace
    assert is_normal(quotient.projection)


def test_exact_sequence(s3_sequence):
    sub, quotient = s3_sequence
    sequence = assemble_sequence(sub.inclusion, quotient.projection)
    assert sequence.passed
    assert sequence.dims == [3, 6, 2]
    assert sequence.convention == CONVENTION
    assert [c.name for c in sequence.certificate.checks] == [
        "injective", "surjective", "kernel-is-generated-ideal", "image-is-hopf-kernel", "composite-trivial",
    ]


def test_non_exact_sequence_names_the_failing_conditions(s3_sequence, kS3):
    sub, _ = s3_sequence
    certificate = verify_exact(sub.inclusion, counit_morphism(kS3))
    assert not certificate.passed
    failed = [c.name for c in certificate.failures()]
    assert failed == ["kernel-is-generated-ideal", "image-is-hopf-kernel"]


def test_generated_ideal_is_two_sided_for_non_normal_images(h4):
    # A·(1-g) misses x but A·(1-g)·A is the whole augmentation ideal
    grouplikes = sub_hopf(h4, Subspace.span(RATIONALS, 4, [h4.basis_vector(0), h4.basis_vector(1)]))
    certificate = verify_exact(grouplikes.inclusion, counit_morphism(h4))
    assert certificate.check("kernel-is-generated-ideal").passed
    assert [c.name for c in certificate.failures()] == ["image-is-hopf-kernel"]


def test_verify_exact_rejects_unrelated_maps(s3_sequence, h4):
    sub, _ = s3_sequence
    with pytest.raises(DimensionMismatchError):
        verify_exact(sub.inclusion, counit_morphism(h4))


def test_round_trip_recovers_the_quotient(s3_sequence):
    sub, quotient = s3_sequence
    iso = round_trip(assemble_sequence(sub.inclusion, quotient.projection))
    assert iso.is_injective() and iso.is_surjective()
    assert iso.target is quotient.algebra


def test_cokernel_needs_an_ad_stable_image(h4):
    grouplikes = sub_hopf(h4, Subspace.span(RATIONALS, 4, [h4.basis_vector(0), h4.basis_vector(1)]))
    with pytest.raises(CertificationError):
        hopf_cokernel(grouplikes.inclusion)


def test_factor_through_checks_kernels(s3_sequence, kS3, h4):
    _, quotient = s3_sequence
    h = factor_through(quotient.projection, counit_morphism(kS3))
    assert h.source.dim == 2 and h.target.dim == 1
    with pytest.raises(CertificationError):
        factor_through(quotient.projection, identity_morphism(kS3))
    with pytest.raises(DimensionMismatchError):
        factor_through(quotient.projection, counit_morphism(h4))


def test_sweedler_is_free_over_its_grouplikes(h4):
    one = RATIONALS.one
    C = Subspace.span(RATIONALS, 4, [h4.basis_vector(0), h4.basis_vector(1)])
    result = freeness_certificate(h4, C)
    assert result.found
    assert result.cofactor_basis == [{0: one}, {2: one}]
    assert result.rank == 2


def test_freeness_needs_a_dividing_dimension(h4):
    result = freeness_certificate(h4, counit_kernel(h4))
    assert result.status == FreenessStatus.NOT_FOUND
    assert result.rank == 0


def test_freeness_search_respects_its_budget(kQ8):
    one = RATIONALS.one
    C = Subspace.span(RATIONALS, 8, [{0: one}, {1: one}])
    result = freeness_certificate(kQ8, C, budget=1)
    assert result.status == FreenessStatus.BUDGET_EXCEEDED
    assert not result.found
    assert freeness_certificate(kQ8, C).rank == 4
