import numpy as np
import pytest
from hypothesis import given, strategies as st

from truncosc import algebra
from truncosc.algebra import Truncation
from truncosc.errors import DomainError

TWO_S = range(1, 31)


def test_truncation_basics():
    t = Truncation.from_s(1.5)
    assert (t.two_s, t.dim, t.s) == (3, 4, 1.5)
    for bad in (0, -2, 2.5, True):
        with pytest.raises(DomainError):
            Truncation(bad)
    with pytest.raises(DomainError):
        Truncation.from_s(0.3)
    with pytest.raises(DomainError):
        algebra.ladder_matrices(Truncation(algebra.MAX_TWO_S + 1))


@pytest.mark.parametrize("two_s, n, expected", [(2, 0, 0.0), (2, 1, 1.0), (2, 2, 1.0), (2, 3, 0.0), (7, 8, 0.0)])
def test_structure_function_values(two_s, n, expected):
    assert algebra.structure_function(Truncation(two_s), n) == expected


def test_structure_function_domain():
    with pytest.raises(DomainError):
        algebra.structure_function(Truncation(2), 4)
    with pytest.raises(DomainError):
        algebra.structure_function(Truncation(2), -1)


@given(st.integers(1, 400))
def test_structure_function_recursion_and_sign(two_s):
    t = Truncation(two_s)
    f = [algebra.structure_function(t, n) for n in range(two_s + 2)]
    assert f[0] == 0 and f[-1] == 0
    assert all(v > 0 for v in f[1:-1])
    steps = np.diff(f) - (1 - 2 * np.arange(two_s + 1) / two_s)
    assert np.max(np.abs(steps)) <= 1e-12 * max(1, two_s)


def test_ladder_smallest_cases():
    half = algebra.ladder_matrices(Truncation(1))
    np.testing.assert_array_equal(half.a_minus, [[0, 1], [0, 0]])
    one = algebra.ladder_matrices(Truncation(2))
    np.testing.assert_allclose(one.a_minus, [[0, 1, 0], [0, 0, 1], [0, 0, 0]], atol=1e-15)
    np.testing.assert_array_equal(one.number, np.diag([0, 1, 2]))


@pytest.mark.parametrize("two_s", TWO_S)
def test_ladder_invariants(two_s):
    t = Truncation(two_s)
    lad = algebra.ladder_matrices(t)
    np.testing.assert_array_equal(lad.a_plus, lad.a_minus.conj().T)
    off = lad.a_minus - np.diag(np.diag(lad.a_minus, 1), 1)
    assert not off.any()
    for m in algebra.nilpotency_residue(t):
        assert not m.any()  # structural zeros, no tolerance


def test_commutator_defect_by_hand():
    # s = 1/2: [a-, a+] = diag(1, -1) = 1 - 2N
    lad = algebra.ladder_matrices(Truncation(1))
    comm = lad.a_minus @ lad.a_plus - lad.a_plus @ lad.a_minus
    np.testing.assert_array_equal(comm, np.diag([1.0, -1.0]))
    assert algebra.commutator_defect(Truncation(1)) <= 1e-15
    assert algebra.commutator_defect(Truncation(2)) <= 1e-15
    assert algebra.commutator_defect(Truncation(20)) <= 1e-12


@pytest.mark.parametrize("two_s", TWO_S)
def test_defects_over_range(two_s):
    t = Truncation(two_s)
    assert algebra.commutator_defect(t) <= 1e-12
    assert max(algebra.number_commutator_defects(t)) <= 1e-12
    assert algebra.holstein_primakoff_defect(t) <= 1e-12
    assert algebra.kerr_identity_defect(t) <= 1e-12


def test_holstein_primakoff_entrywise_s1():
    # sqrt(n(3-n)/2) against sqrt(n) sqrt(1 - (n-1)/2)
    for n in (1, 2):
        assert np.isclose(np.sqrt(n * (3 - n) / 2), np.sqrt(n) * np.sqrt(1 - (n - 1) / 2), atol=1e-15)
    assert algebra.holstein_primakoff_defect(Truncation(2)) <= 1e-15
    assert algebra.holstein_primakoff_defect(Truncation(30)) <= 1e-12


def test_kerr_small_cases():
    assert algebra.kerr_identity_defect(Truncation(1)) == 0
    assert algebra.kerr_identity_defect(Truncation(2)) <= 1e-15
    assert algebra.kerr_identity_defect(Truncation(14)) <= 1e-12


def test_stokes_half_integer():
    sp, sm, s3 = algebra.stokes_operators(Truncation(1))
    np.testing.assert_allclose(s3, np.diag([-0.25, 0.25]))
    np.testing.assert_allclose(sp @ sm - sm @ sp, 2 * s3, atol=1e-16)


@pytest.mark.parametrize("two_s", [1, 2, 9, 30])
def test_stokes_trace_and_raising_relation(two_s):
    t = Truncation(two_s)
    sp, sm, s3 = algebra.stokes_operators(t)
    assert abs(np.trace(s3)) <= 1e-12
    assert algebra.stokes_defects(t)["plus_minus"] <= 1e-12
    # s3 = (N - s)/2 moves the weight by 1/2 per quantum, so [s3, s+] = s+/2
    np.testing.assert_allclose(s3 @ sp - sp @ s3, 0.5 * sp, atol=1e-12)


@pytest.mark.parametrize("two_s", TWO_S)
def test_spin_operators_close_su2(two_s):
    assert max(algebra.su2_defects(*algebra.spin_operators(Truncation(two_s))).values()) <= 1e-12


def test_large_s_recovers_bosons():
    t = Truncation(20000)
    f = np.array([algebra.structure_function(t, n) for n in range(6)])
    assert np.max(np.abs(np.sqrt(f) - np.sqrt(np.arange(6)))) < 1e-3
