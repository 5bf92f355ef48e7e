"""Exact rational helpers and dense complex matrix kernels.

Shared foundation for the operator builders, the 6-j machinery, and the
negativity oracles. Rational arithmetic goes through ``fractions.Fraction``
(arbitrary precision, always reduced); floating point enters only when a
matrix is actually assembled. Nothing here mutates its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

EIGEN_DIM_CAP = 1024


class ValidationError(ValueError):
    """A matrix, state, or argument failed one of its defining constraints."""


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor on the slow (row-major) index."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(*factors: np.ndarray) -> np.ndarray:
    """Left-to-right Kronecker product of any number of factors."""
    out = np.asarray(factors[0])
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation of ``m`` from its conjugate transpose."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def partial_transpose(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose only the indices of the second tensor factor.

    The entry convention is <mu a|out|nu b> = <mu b|m|nu a> with mu, nu on
    the first factor. Applying the map twice returns the input exactly.
    """
    m = np.asarray(m, dtype=complex)
    d = dim_a * dim_b
    if m.shape != (d, d):
        raise ValidationError(
            f"partial transpose needs a {d}x{d} matrix for dims ({dim_a},{dim_b}), got {m.shape}"
        )
    return (
        m.reshape(dim_a, dim_b, dim_a, dim_b)
        .transpose(0, 3, 2, 1)
        .reshape(d, d)
    )


def hermitian_eigen(m: np.ndarray, atol: float = 1e-9):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues ascending and
    eigenvectors in columns. Rejects non-Hermitian input (beyond ``atol``),
    matrices above the supported dimension, and solver non-convergence.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > EIGEN_DIM_CAP:
        raise ValidationError(
            f"dimension {m.shape[0]} exceeds the eigensolver cap {EIGEN_DIM_CAP}"
        )
    defect = hermiticity_defect(m)
    if defect > atol:
        raise ValidationError(f"matrix is not Hermitian: max |M - M^dag| = {defect:.3e}")
    try:
        w, v = np.linalg.eigh((m + m.conj().T) / 2)
    except np.linalg.LinAlgError as exc:
        raise ValidationError(f"eigensolver did not converge: {exc}") from exc
    return w, v


def vandermonde_solve(nodes: Sequence[Fraction], target: int) -> tuple[Fraction, ...]:
    """Monomial coefficients of the Lagrange cardinal polynomial for one node.

    Given pairwise-distinct nodes l_0..l_{n-1}, returns the exact
    coefficients c_0..c_{n-1} of the degree n-1 polynomial that is 1 at
    ``nodes[target]`` and 0 at every other node. Equivalently, this is the
    ``target`` column of the inverse of the Vandermonde matrix built from
    the nodes.
    """
    nodes = [Fraction(x) for x in nodes]
    n = len(nodes)
    if not 0 <= target < n:
        raise ValidationError(f"target index {target} out of range for {n} nodes")
    if len(set(nodes)) != n:
        raise ValidationError("duplicate nodes: the Vandermonde determinant vanishes")
    coeffs = [Fraction(1)]
    denom = Fraction(1)
    for k, node in enumerate(nodes):
        if k == target:
            continue
        denom *= nodes[target] - node
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * node
        coeffs = nxt
    return tuple(c / denom for c in coeffs)


class DensityMatrix:
    """Density matrix with a declared tensor factorization.

    Hermiticity, unit trace, and positivity are checked at construction
    (absolute tolerance 1e-9 each); the stored array is frozen afterwards.
    """

    ATOL = 1e-9

    def __init__(self, matrix: np.ndarray, local_dims: Sequence[int]):
        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {matrix.shape}")
        local_dims = tuple(int(d) for d in local_dims)
        if not local_dims or any(d < 1 for d in local_dims):
            raise ValidationError(f"invalid local dimensions {local_dims}")
        prod = 1
        for d in local_dims:
            prod *= d
        if prod != matrix.shape[0]:
            raise ValidationError(
                f"local dimensions {local_dims} multiply to {prod}, matrix is {matrix.shape[0]}-dimensional"
            )
        defect = hermiticity_defect(matrix)
        if defect > self.ATOL:
            raise ValidationError(f"not Hermitian: max |M - M^dag| = {defect:.3e}")
        tr = complex(matrix.trace())
        if abs(tr - 1.0) > self.ATOL:
            raise ValidationError(f"trace is {tr.real:.12g}, expected 1")
        lowest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
        if lowest < -self.ATOL:
            raise ValidationError(f"negative eigenvalue {lowest:.3e}")
        matrix.setflags(write=False)
        self.matrix = matrix
        self.local_dims = local_dims

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expectation(self, op: np.ndarray) -> float:
        """Real part of Tr(rho op)."""
        return float(np.einsum("ij,ji->", self.matrix, op).real)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, local_dims={self.local_dims})"
