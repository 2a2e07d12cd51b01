from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radialmasa.algebra import (
    GroupAlgebraElement,
    InversionEigenvector,
    chi,
    chi_norm_sq_exact,
    chi_support_size,
    inner_product,
    multiply,
    radial_moment_exact,
    sandwich_project,
)
from radialmasa.errors import RankMismatchError, ResourceCapError
from radialmasa.words import EMPTY, words_of_length


def element(rank, terms):
    return GroupAlgebraElement(rank, terms)


def beta_minus(rank=2):
    return InversionEigenvector.from_letter_coeffs(rank, {1: 1, -1: -1}, -1)


# ---------------------------------------------------------------- multiply


def test_radial_square_recurrence():
    # chi_1 * chi_1 = chi_2 + 2N, checked coefficientwise for N = 2
    prod = multiply(chi(1, 2), chi(1, 2))
    assert prod.coeff(EMPTY) == 4
    for w in words_of_length(2, 2):
        assert prod.coeff(w) == 1
    assert prod == chi(2, 2) + GroupAlgebraElement.one(2).scale(4)


def test_radial_step_recurrence():
    prod = multiply(chi(1, 2), chi(2, 2))
    assert prod == chi(3, 2) + chi(1, 2).scale(3)


def test_unit():
    x = element(2, {(1, 2): Fraction(3, 7), (-1,): 2})
    assert multiply(x, GroupAlgebraElement.one(2)) == x
    assert multiply(GroupAlgebraElement.one(2), x) == x


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        multiply(chi(1, 2), chi(1, 3))
    with pytest.raises(RankMismatchError):
        inner_product(chi(1, 2), chi(1, 3))


def test_floats_rejected():
    with pytest.raises(TypeError):
        element(2, {(1,): 0.5})


def test_resource_cap():
    with pytest.raises(ResourceCapError):
        multiply(chi(2, 2), chi(2, 2), cap=10)
    with pytest.raises(ResourceCapError):
        chi(4, 2, cap=10)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("RADIAL_MASA_CAP", "5")
    with pytest.raises(ResourceCapError):
        chi(2, 2)
    monkeypatch.delenv("RADIAL_MASA_CAP")
    assert len(chi(2, 2)) == 12


# ---------------------------------------------------------------- adjoint / trace


def test_adjoint_reverses_words():
    x = element(2, {(1, 2): 1})
    assert x.adjoint() == element(2, {(-2, -1): 1})


def test_adjoint_involution_and_chi_fixed():
    for n in range(5):
        c = chi(n, 2)
        assert c.adjoint() == c
        assert c.adjoint().adjoint() == c


def test_adjoint_of_odd_vector_is_negation():
    # coefficient symmetry c(w^-1) = -c(w) makes the adjoint the negative
    v = beta_minus().element
    assert v.adjoint() == -v


def test_trace_values():
    assert multiply(chi(1, 2), chi(1, 2)).trace() == 4
    assert multiply(chi(1, 3), chi(1, 3)).trace() == 6
    for n in range(1, 5):
        assert chi(n, 2).trace() == 0
    assert multiply(chi(3, 2), chi(3, 2)).trace() == 36


def small_elements(rank=2, max_len=5):
    word_pool = [w for n in range(max_len + 1) for w in words_of_length(n, rank)]
    coeffs = st.integers(-3, 3)
    return st.dictionaries(st.sampled_from(word_pool), coeffs, max_size=5).map(
        lambda terms: GroupAlgebraElement(rank, terms)
    )


@given(small_elements(), small_elements())
@settings(max_examples=150, deadline=None)
def test_trace_commutes(x, y):
    assert multiply(x, y).trace() == multiply(y, x).trace()


@given(small_elements(), small_elements(), small_elements())
@settings(max_examples=60, deadline=None)
def test_multiply_associative(x, y, z):
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


# ---------------------------------------------------------------- inner product


def test_chi_orthogonality_exact():
    for rank in (2, 3):
        cs = {n: chi(n, rank) for n in range(7)}
        for n in range(1, 7):
            for m in range(1, 7):
                expected = chi_norm_sq_exact(n, rank) if n == m else 0
                assert inner_product(cs[n], cs[m]) == expected


def test_inner_product_examples():
    assert inner_product(chi(2, 2), chi(2, 2)) == 12
    assert inner_product(chi(2, 2), chi(3, 2)) == 0
    v = beta_minus()
    assert v.norm_sq() == 2


def test_inner_product_positive_definite():
    x = element(2, {(1,): Fraction(1, 2), (1, 2): -3, EMPTY: 1})
    assert inner_product(x, x) == Fraction(1, 4) + 9 + 1
    assert inner_product(GroupAlgebraElement.zero(2), x) == 0


# ---------------------------------------------------------------- chi


def test_chi_basics():
    assert chi(0, 2) == GroupAlgebraElement.one(2)
    assert len(chi(3, 2)) == 36
    assert chi_support_size(3, 2) == 36
    assert chi(2, 2) == multiply(chi(1, 2), chi(1, 2)) - GroupAlgebraElement.one(2).scale(4)


# ---------------------------------------------------------------- projections


def test_project_length():
    prod = multiply(chi(1, 2), chi(1, 2))
    assert prod.project_length(0) == GroupAlgebraElement.one(2).scale(4)
    assert chi(3, 2).project_length(2).is_zero()
    # projections over occupied lengths resum to the element
    x = element(2, {EMPTY: 1, (1,): 2, (1, 2): Fraction(1, 3)})
    resum = GroupAlgebraElement.zero(2)
    for length in sorted(x.support_lengths()):
        resum = resum + x.project_length(length)
    assert resum == x
    assert x.project_length(1).project_length(1) == x.project_length(1)


def test_project_length_sandwich_norm():
    # the (2,1) component of chi_2 v chi_1 has squared norm (2N-1)^3 |v|^2
    v = beta_minus()
    full = multiply(multiply(chi(2, 2), v.element), chi(1, 2))
    comp = full.project_length(4)
    assert comp == sandwich_project(v.element, 2, 1)
    assert inner_product(comp, comp) == 27 * v.norm_sq()


# ---------------------------------------------------------------- sandwich components


def test_sandwich_identity_component():
    v = beta_minus()
    assert sandwich_project(v.element, 0, 0) == v.element


def test_sandwich_negative_indices_vanish():
    v = beta_minus()
    for r, s in [(-1, 3), (3, -1), (-2, -2), (-1, 0)]:
        assert sandwich_project(v.element, r, s).is_zero()


def test_sandwich_rejects_inhomogeneous():
    x = element(2, {(1,): 1, (1, 2): 1})
    with pytest.raises(ValueError):
        sandwich_project(x, 1, 1)


def test_sandwich_shifted_inner_product():
    # <v_{1,2}, v_{2,1}> = (2N-1)^3 * (2N-1)^-1 * |v|^2 for the sign -1 vector
    v = beta_minus()
    a = sandwich_project(v.element, 1, 2)
    b = sandwich_project(v.element, 2, 1)
    assert inner_product(a, b) == Fraction(27, 3) * 2


# ---------------------------------------------------------------- test vectors


def test_vector_validation():
    with pytest.raises(ValueError):  # wrong symmetry
        InversionEigenvector.from_letter_coeffs(2, {1: 1, -1: 1}, -1)
    with pytest.raises(ValueError):  # symmetric but not mean zero
        InversionEigenvector.from_letter_coeffs(2, {1: 1, -1: 1}, 1)
    with pytest.raises(ValueError):  # not length-one support
        InversionEigenvector(element(2, {(1, 2): 1, (-2, -1): -1}), -1)
    with pytest.raises(ValueError):  # zero vector
        InversionEigenvector(GroupAlgebraElement.zero(2), -1)
    ok = InversionEigenvector.from_letter_coeffs(2, {1: 1, -1: 1, 2: -1, -2: -1}, 1)
    assert ok.norm_sq() == 4


# ---------------------------------------------------------------- moments


def test_moment_counts_match_direct_power():
    # the split-power shortcut against literally multiplying out chi_1^k
    for rank in (2, 3):
        c1 = chi(1, rank)
        power = GroupAlgebraElement.one(rank)
        for k in range(7):
            assert radial_moment_exact(k, rank) == power.trace()
            power = multiply(power, c1)


def test_low_moments():
    assert radial_moment_exact(0, 2) == 1
    assert radial_moment_exact(1, 2) == 0
    assert radial_moment_exact(2, 2) == 4
    assert radial_moment_exact(2, 3) == 6
    # odd walks cannot return
    assert radial_moment_exact(5, 2) == 0
