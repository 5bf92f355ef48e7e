from fractions import Fraction

import numpy as np
import pytest

from conftest import random_hermitian
from spinwit.numerics import (
    DensityMatrix,
    ValidationError,
    hermitian_eigen,
    kron,
    partial_transpose,
    vandermonde_solve,
)
from spinwit.spin_ops import SpinLabel, dot_operator, pairing_matrix, spin_matrices, swap_matrix


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_diagonal():
    got = kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    assert np.array_equal(got, np.diag([3.0, 4.0, 6.0, 8.0]))


def test_kron_spin_z_product():
    # direct multiplication of the 2x2 sz matrices: diag(1/4, -1/4, -1/4, 1/4)
    sz = spin_matrices(SpinLabel(1)).sz
    got = kron(sz, sz)
    assert np.max(np.abs(got - np.diag([0.25, -0.25, -0.25, 0.25]))) == 0.0


def test_partial_transpose_identity():
    for d in (2, 3):
        assert np.array_equal(partial_transpose(np.eye(d * d), d, d), np.eye(d * d))


def test_partial_transpose_is_involution():
    rng = np.random.default_rng(11)
    for da, db in ((2, 2), (2, 3), (3, 4)):
        m = random_hermitian(da * db, rng)
        back = partial_transpose(partial_transpose(m, da, db), da, db)
        assert np.array_equal(back, m.astype(complex))


def test_partial_transpose_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(12)
    for da, db in ((2, 3), (3, 3)):
        m = random_hermitian(da * db, rng)
        pt = partial_transpose(m, da, db)
        assert abs(pt.trace() - m.trace()) < 1e-13
        assert np.max(np.abs(pt - pt.conj().T)) < 1e-13


def test_partial_transpose_swap_gives_pairing():
    for twice_spin in range(1, 6):
        s = SpinLabel(twice_spin)
        pt = partial_transpose(swap_matrix(s), s.dim, s.dim)
        assert np.max(np.abs(pt - pairing_matrix(s))) <= 1e-12


def test_partial_transpose_rejects_bad_dims():
    with pytest.raises(ValidationError):
        partial_transpose(np.eye(6), 2, 2)


def test_hermitian_eigen_diagonal():
    w, _ = hermitian_eigen(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1.0, 2.0, 3.0], atol=1e-14)


def test_hermitian_eigen_swap_spectrum():
    # S^2 = 1 and Tr S = 2 force eigenvalues (-1, 1, 1, 1) on the 4-dim space
    w, _ = hermitian_eigen(swap_matrix(SpinLabel(1)))
    assert np.allclose(w, [-1.0, 1.0, 1.0, 1.0], atol=1e-12)


def test_hermitian_eigen_dot_operator_channels():
    for twice_spin in (1, 2, 3):
        s = SpinLabel(twice_spin)
        w, _ = hermitian_eigen(dot_operator(s))
        casimir = float(s.casimir)
        expected = []
        for f in range(twice_spin + 1):
            expected += [0.5 * f * (f + 1) - casimir] * (2 * f + 1)
        assert np.allclose(w, expected, atol=1e-12)


def test_hermitian_eigen_contract():
    rng = np.random.default_rng(5)
    m = random_hermitian(40, rng)
    w, v = hermitian_eigen(m)
    scale = np.max(np.abs(m))
    assert np.max(np.abs(m @ v - v * w)) <= 1e-10 * scale
    assert np.max(np.abs(v.conj().T @ v - np.eye(40))) <= 1e-10
    assert np.all(np.diff(w) >= -1e-14)
    assert abs(w.sum() - m.trace().real) <= 1e-10 * max(1.0, scale)
    assert abs((w ** 2).sum() - (m @ m).trace().real) <= 1e-9 * max(1.0, scale ** 2)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_eigen_rejects_oversized():
    with pytest.raises(ValidationError):
        hermitian_eigen(np.zeros((1030, 1030)))


def test_vandermonde_spec_cases():
    f = Fraction
    assert vandermonde_solve([f(-3, 4), f(1, 4)], 0) == (f(1, 4), f(-1))
    assert vandermonde_solve([f(0), f(1)], 1) == (f(0), f(1))
    assert vandermonde_solve([f(-2), f(-1), f(1)], 0) == (f(-1, 3), f(0), f(1, 3))


def test_vandermonde_cardinal_property():
    rng = np.random.default_rng(21)
    for _ in range(20):
        nodes = []
        while len(nodes) < 5:
            cand = Fraction(int(rng.integers(-60, 60)), int(rng.integers(1, 17)))
            if cand not in nodes:
                nodes.append(cand)
        target = int(rng.integers(0, 5))
        coeffs = vandermonde_solve(nodes, target)
        for k, node in enumerate(nodes):
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * node + c
            assert acc == (1 if k == target else 0)


def test_vandermonde_rejects_duplicates():
    with pytest.raises(ValidationError):
        vandermonde_solve([Fraction(1), Fraction(1), Fraction(2)], 0)


def test_rational_arithmetic_is_exact():
    rng = np.random.default_rng(3)
    big = 2 ** 63
    for _ in range(50):
        a = Fraction(int(rng.integers(-big, big)), int(rng.integers(1, big)))
        b = Fraction(int(rng.integers(-big, big)), int(rng.integers(1, big)))
        assert (a + b) - b == a
        if b != 0:
            assert (a * b) / b == a


def test_density_matrix_accepts_valid():
    dm = DensityMatrix(np.eye(4) / 4, (2, 2))
    assert dm.dim == 4
    assert dm.local_dims == (2, 2)


def test_density_matrix_distinct_diagnostics():
    with pytest.raises(ValidationError, match="Hermitian"):
        DensityMatrix(np.array([[0.5, 0.3], [0.0, 0.5]]), (2,))
    with pytest.raises(ValidationError, match="trace"):
        DensityMatrix(np.eye(2) * 0.45, (2,))
    with pytest.raises(ValidationError, match="negative eigenvalue"):
        DensityMatrix(np.diag([1.5, -0.5]), (2,))
    with pytest.raises(ValidationError, match="local dimensions"):
        DensityMatrix(np.eye(4) / 4, (2, 3))


def test_density_matrix_is_frozen():
    dm = DensityMatrix(np.eye(2) / 2, (2,))
    with pytest.raises(ValueError):
        dm.matrix[0, 0] = 9.0
