import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dscat.errors import NotInSU11, PoleError
from dscat.linalg2c import (
    ConjugacyKind,
    classify_su11,
    eigenvalues,
    mat2c,
    mobius_star,
    su11_distance,
    su11_distance_rel,
)


def su11_element(v: complex, phase: float) -> np.ndarray:
    u = cmath.exp(1j * phase) * math.sqrt(1.0 + abs(v) ** 2)
    return mat2c(u, v, v.conjugate(), u.conjugate())


def boost(s: float) -> np.ndarray:
    return mat2c(math.cosh(s), math.sinh(s), math.sinh(s), math.cosh(s))


def rotation(theta: float) -> np.ndarray:
    return mat2c(cmath.exp(1j * theta), 0, 0, cmath.exp(-1j * theta))


def test_su11_distance_identity():
    assert su11_distance(np.eye(2, dtype=complex)) == 0.0


def test_su11_distance_boost():
    assert su11_distance(boost(1.0)) < 1e-15


def test_su11_distance_diagonal_example():
    # residuals are {1.5, 0, 3, 0}; the distance is their maximum
    assert su11_distance(mat2c(2, 0, 0, 0.5)) == pytest.approx(3.0)


@given(
    v=st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    phase=st.floats(min_value=-math.pi, max_value=math.pi),
)
def test_su11_distance_on_members(v, phase):
    assert su11_distance(su11_element(v, phase)) < 1e-13


def test_classification_of_model_matrices():
    ct = classify_su11(rotation(math.pi / 3))
    assert ct.kind is ConjugacyKind.ELLIPTIC
    assert ct.parameter == pytest.approx(math.pi / 3)

    ct = classify_su11(boost(1.0))
    assert ct.kind is ConjugacyKind.HYPERBOLIC
    assert ct.parameter == pytest.approx(1.0)

    ct = classify_su11(mat2c(1 + 1j, 1, 1, 1 - 1j))
    assert ct.kind is ConjugacyKind.PARABOLIC
    assert ct.parameter == 0.0


@given(theta=st.floats(min_value=0.01, max_value=math.pi - 0.01))
def test_rotation_family_is_elliptic(theta):
    assert classify_su11(rotation(theta)).kind is ConjugacyKind.ELLIPTIC


@given(s=st.floats(min_value=0.01, max_value=4.0), sign=st.sampled_from((1, -1)))
def test_boost_family_is_hyperbolic(s, sign):
    assert classify_su11(sign * boost(s)).kind is ConjugacyKind.HYPERBOLIC


def test_classify_requires_membership():
    with pytest.raises(NotInSU11):
        classify_su11(mat2c(2, 0, 0, 0.5))


def test_eigenvalues_examples():
    assert eigenvalues(np.eye(2, dtype=complex)) == (1, 1)
    lam = eigenvalues(rotation(math.pi / 3))
    assert lam[0] == pytest.approx(cmath.exp(1j * math.pi / 3))
    assert lam[1] == pytest.approx(cmath.exp(-1j * math.pi / 3))
    lam = eigenvalues(mat2c(0, 1, -1, 0))
    assert lam[0] == pytest.approx(1j)
    assert lam[1] == pytest.approx(-1j)


@given(
    v=st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    phase=st.floats(min_value=-math.pi, max_value=math.pi),
)
def test_member_eigenvalue_structure(v, phase):
    m = su11_element(v, phase)
    lam1, lam2 = eigenvalues(m)
    assert abs(lam1 * lam2 - 1.0) < 1e-10
    assert abs((m[0, 0] + m[1, 1]).imag) < 1e-10


@given(
    v=st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    phase=st.floats(min_value=-math.pi, max_value=math.pi),
    v2=st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    phase2=st.floats(min_value=-math.pi, max_value=math.pi),
)
def test_membership_preserved_under_conjugation(v, phase, v2, phase2):
    m = su11_element(v, phase)
    u = su11_element(v2, phase2)
    assert su11_distance(np.linalg.inv(u) @ m @ u) < 1e-12


def test_mobius_identity_and_diagonal():
    assert mobius_star(np.eye(2, dtype=complex), 0.3 + 0.4j) == pytest.approx(0.3 + 0.4j)
    assert mobius_star(mat2c(2, 0, 0, 0.5), 1.0) == pytest.approx(0.25)


@given(
    v=st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    phase=st.floats(min_value=-math.pi, max_value=math.pi),
    angle=st.floats(min_value=-math.pi, max_value=math.pi),
)
def test_mobius_preserves_unit_circle(v, phase, angle):
    m = su11_element(v, phase)
    g = cmath.exp(1j * angle)
    image = mobius_star(m, g)
    assert abs(abs(image) - 1.0) < 1e-12


def test_mobius_pole_and_infinity():
    with pytest.raises(PoleError):
        mobius_star(mat2c(0, 1, -1, 0), 0.0)
    m = mat2c(2, 1, 1, 1)
    assert mobius_star(m, complex(math.inf, 0.0)) == pytest.approx(1 / -1)


def test_rel_distance_scales():
    # an exact large boost: the absolute defect is floored by cancellation of
    # cosh^2 - sinh^2 at entry size squared times machine epsilon, while the
    # normalized defect stays at machine level
    m = boost(14.0)
    assert su11_distance(m) > 1e-9
    assert su11_distance_rel(m) < 1e-15
