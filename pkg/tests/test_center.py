import sys

import pytest

from algebra.catalog import sweedler_h4
from engine.center import (
    adjoint_action, adjoint_identities, algebra_center, central_grouplikes_check, central_sequence,
    corestrict_comodule, hopf_center, regular_coaction_on,
)
from shared.config import settings
from shared.errors import CertificationError
from shared.linalg import Subspace
from shared.scalars import RATIONALS


@pytest.mark.parametrize("fixture, center_dim, hopf_center_dim", [
    ("kS3", 3, 1),
    ("kD4", 5, 2),
    ("kQ8", 5, 2),
    ("h4", 1, 1),
])
def test_center_and_hopf_center(request, fixture, center_dim, hopf_center_dim):
    H = request.getfixturevalue(fixture)
    assert algebra_center(H).dim == center_dim
    hz = hopf_center(H)
    assert hz.dim == hopf_center_dim
    assert hz.right == hz.left == hz.within_center
    assert hz.certificate.passed


def test_hopf_center_of_a_group_algebra_is_spanned_by_the_center_of_the_group(kQ8):
    hz = hopf_center(kQ8)
    expected = Subspace.span(RATIONALS, 8, [kQ8.basis_vector(kQ8.index("1")), kQ8.basis_vector(kQ8.index("-1"))])
    assert hz.subspace == expected


def test_commutative_algebra_is_its_own_hopf_center(funS3):
    hz = hopf_center(funS3)
    assert hz.center.is_full()
    assert hz.subspace.is_full()


@pytest.mark.slow
def test_hopf_center_of_small_quantum_sl2_is_trivial(sl2):
    assert hopf_center(sl2).dim == 1


def test_hopf_center_is_invariant_under_the_twist(h4, h4_twisted):
    assert algebra_center(h4_twisted) == algebra_center(h4)
    assert hopf_center(h4_twisted).subspace == hopf_center(h4).subspace


@pytest.mark.parametrize("fixture", ["h4", "kS3", "funS3", "taft3"])
def test_adjoint_identities(request, fixture):
    certificate = adjoint_identities(request.getfixturevalue(fixture))
    assert certificate.passed, certificate.failures()
    assert [c.name for c in certificate.checks] == ["ad-composition", "leibniz", "ad-coproduct", "center-ad-trivial"]


def test_adjoint_action_of_a_grouplike_is_conjugation(h4):
    g, x = h4.basis("g"), h4.basis("x")
    assert adjoint_action(g, x) == -x
    assert adjoint_action(x, g) == -2 * h4.basis("gx")
    assert adjoint_action(h4.one(), x) == x


def test_central_sequence_for_q8(kQ8):
    report = central_sequence(kQ8)
    assert report.passed
    assert report.sequence.dims == [2, 8, 4]
    assert report.freeness.found and report.freeness.rank == 4
    assert report.normal
    assert report.round_trip is not None
    assert central_grouplikes_check(kQ8, report.hopf_center).passed


def test_central_sequence_with_trivial_hopf_center():
    H = sweedler_h4()
    report = central_sequence(H)
    assert report.passed
    assert report.sequence.dims == [1, 4, 4]
    assert report.quotient.ideal.is_zero()


def test_corestriction_to_the_hopf_center(kQ8):
    one = RATIONALS.one
    V = Subspace.span(RATIONALS, 8, [kQ8.basis_vector(0), kQ8.basis_vector(1)])
    rho = regular_coaction_on(kQ8, V)
    corestriction = corestrict_comodule(kQ8, rho)
    assert corestriction.hopf_center.dim == 2
    assert corestriction.coaction == [{(0, 0): one}, {(1, 1): one}]


def test_corestriction_rejects_non_central_coactions(kQ8):
    V = Subspace.span(RATIONALS, 8, [kQ8.basis_vector(kQ8.index("i"))])
    with pytest.raises(CertificationError):
        corestrict_comodule(kQ8, regular_coaction_on(kQ8, V))


def test_regular_coaction_needs_a_right_coideal(h4):
    V = Subspace.span(RATIONALS, 4, [h4.basis_vector(h4.index("x"))])
    with pytest.raises(CertificationError):
        regular_coaction_on(h4, V)


def test_every_builtin_has_a_certified_central_sequence(builtin):
    hz = hopf_center(builtin)
    assert hz.right == hz.left == hz.within_center
    assert adjoint_identities(builtin).passed
    report = central_sequence(builtin)
    assert report.passed
    assert report.normal
    assert report.certificates[-1].check("normal").passed
    assert builtin.dim == hz.dim * report.quotient.algebra.dim


@pytest.mark.slow
def test_adjoint_identities_of_small_quantum_sl2_on_every_basis_tuple(sl2, monkeypatch):
    monkeypatch.setattr(settings, "exhaustive_limit", sys.maxsize)
    certificate = adjoint_identities(sl2)
    assert certificate.passed, certificate.failures()


@pytest.mark.slow
def test_central_sequence_of_small_quantum_sl2(sl2):
    # HZ = k1, so the cokernel is all of u_q(sl2)
    report = central_sequence(sl2)
    assert report.passed
    assert report.normal
    assert report.hopf_center.dim == 1
    assert report.quotient.algebra.dim == 27
