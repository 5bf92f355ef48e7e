"""Spin-s matrices and the two-site operator zoo.

Builds the angular-momentum triple, the dot-product operator, the swap and
pairing matrices, the total-spin channel projectors, the twisted (K-type)
channel projectors, and the two maximally entangled reference vectors.

Conventions, fixed once for every builder here:
  * local basis ordered m = s, s-1, ..., -s (index i holds m = s - i),
  * tensor indexing is row-major with the first site as the slow index,
  * the singlet and pairing vectors carry the (-1)^(s-m) phase on the
    m -> -m component and no other global phase.

All builders are pure and cached per spin; returned arrays are frozen
(read-only), so they are safe to share across threads. Copy before writing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .numerics import ValidationError, hermitian_eigen, kron


@dataclass(frozen=True)
class SpinLabel:
    """Spin quantum number stored as the integer 2s."""

    twice_spin: int

    def __post_init__(self):
        if not isinstance(self.twice_spin, int) or self.twice_spin < 1:
            raise ValidationError(f"twice_spin must be a positive integer, got {self.twice_spin!r}")

    @property
    def dim(self) -> int:
        """Local Hilbert-space dimension N = 2s + 1."""
        return self.twice_spin + 1

    @property
    def spin(self) -> Fraction:
        return Fraction(self.twice_spin, 2)

    @property
    def casimir(self) -> Fraction:
        """s(s+1) as an exact rational."""
        return Fraction(self.twice_spin * (self.twice_spin + 2), 4)

    @classmethod
    def parse(cls, text: str) -> "SpinLabel":
        """Accept spin written as a fraction ("1/2", "3/2") or integer ("1")."""
        try:
            frac = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse spin value {text!r}") from exc
        twice = frac * 2
        if twice.denominator != 1 or twice <= 0:
            raise ValidationError(f"spin must be a positive integer or half-integer, got {text!r}")
        return cls(int(twice))

    def __str__(self):
        return str(self.spin)


class SpinTriple(NamedTuple):
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray


def _freeze(*arrays: np.ndarray):
    for a in arrays:
        a.setflags(write=False)


@lru_cache(maxsize=None)
def _spin_matrices(twice_spin: int) -> SpinTriple:
    n = twice_spin + 1
    s = twice_spin / 2.0
    mz = s - np.arange(n)
    raising = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        m = mz[i]
        raising[i - 1, i] = math.sqrt(s * (s + 1) - m * (m + 1))
    sx = (raising + raising.conj().T) / 2
    sy = (raising - raising.conj().T) / 2j
    sz = np.diag(mz).astype(complex)
    _freeze(sx, sy, sz)
    return SpinTriple(sx, sy, sz)


def spin_matrices(s: SpinLabel) -> SpinTriple:
    """Angular-momentum matrices (sx, sy, sz) in the |s,m> basis."""
    return _spin_matrices(s.twice_spin)


@lru_cache(maxsize=None)
def _dot_operator(twice_spin: int) -> np.ndarray:
    sx, sy, sz = _spin_matrices(twice_spin)
    d = kron(sx, sx) + kron(sy, sy) + kron(sz, sz)
    _freeze(d)
    return d


def dot_operator(s: SpinLabel) -> np.ndarray:
    """Two-site spin dot product on the N^2-dimensional pair space."""
    return _dot_operator(s.twice_spin)


@lru_cache(maxsize=None)
def _swap_matrix(twice_spin: int) -> np.ndarray:
    n = twice_spin + 1
    sw = (
        np.eye(n * n, dtype=complex)
        .reshape(n, n, n, n)
        .transpose(1, 0, 2, 3)
        .reshape(n * n, n * n)
    )
    _freeze(sw)
    return sw


def swap_matrix(s: SpinLabel) -> np.ndarray:
    """Exchange operator: <mu nu|S|alpha beta> = delta(mu,beta) delta(nu,alpha)."""
    return _swap_matrix(s.twice_spin)


@lru_cache(maxsize=None)
def _pairing_matrix(twice_spin: int) -> np.ndarray:
    n = twice_spin + 1
    v = np.zeros(n * n, dtype=complex)
    v[:: n + 1] = 1.0
    p = np.outer(v, v)
    _freeze(p)
    return p


def pairing_matrix(s: SpinLabel) -> np.ndarray:
    """Rank-one pairing operator: <mu nu|P'|alpha beta> = delta(mu,nu) delta(alpha,beta)."""
    return _pairing_matrix(s.twice_spin)


def _spectral_projectors(op: np.ndarray, targets, expected_mults) -> tuple[np.ndarray, ...]:
    # Eigenvalue gaps of both operators handled here are >= 1, so a window
    # of 0.25 assigns every eigenvector unambiguously.
    w, v = hermitian_eigen(op)
    out = []
    for value, mult in zip(targets, expected_mults):
        sel = np.abs(w - value) < 0.25
        if int(sel.sum()) != mult:
            raise ValidationError(
                f"eigenvalue {value} has multiplicity {int(sel.sum())}, expected {mult}"
            )
        block = v[:, sel]
        proj = block @ block.conj().T
        out.append(proj)
    _freeze(*out)
    return tuple(out)


@lru_cache(maxsize=None)
def _channel_projectors(twice_spin: int) -> tuple[np.ndarray, ...]:
    casimir = twice_spin * (twice_spin + 2) / 4.0
    targets = [0.5 * f * (f + 1) - casimir for f in range(twice_spin + 1)]
    mults = [2 * f + 1 for f in range(twice_spin + 1)]
    return _spectral_projectors(_dot_operator(twice_spin), targets, mults)


def channel_projector(s: SpinLabel, total_spin: int) -> np.ndarray:
    """Projector onto the total-spin-F eigenspace of the dot product."""
    if not 0 <= total_spin <= s.twice_spin:
        raise ValidationError(
            f"total spin channel {total_spin} out of range 0..{s.twice_spin}"
        )
    return _channel_projectors(s.twice_spin)[total_spin]


@lru_cache(maxsize=None)
def _singlet_vector(twice_spin: int) -> np.ndarray:
    n = twice_spin + 1
    v = np.zeros(n * n, dtype=complex)
    for i in range(n):
        v[i * n + (n - 1 - i)] = -1.0 if i % 2 else 1.0
    v /= math.sqrt(n)
    _freeze(v)
    return v


def singlet_vector(s: SpinLabel) -> np.ndarray:
    """Normalized total-spin-zero state of two spin-s sites."""
    return _singlet_vector(s.twice_spin)


@lru_cache(maxsize=None)
def _pairing_vector(twice_spin: int) -> np.ndarray:
    n = twice_spin + 1
    v = np.zeros(n * n, dtype=complex)
    v[:: n + 1] = 1.0 / math.sqrt(n)
    _freeze(v)
    return v


def pairing_vector(s: SpinLabel) -> np.ndarray:
    """Normalized maximally entangled state sum_m |m>|m> / sqrt(N)."""
    return _pairing_vector(s.twice_spin)


@lru_cache(maxsize=None)
def _k_operators(twice_spin: int) -> SpinTriple:
    sx, sy, sz = _spin_matrices(twice_spin)
    eye = np.eye(twice_spin + 1)
    kx = kron(sx, eye) - kron(eye, sx)
    ky = kron(sy, eye) + kron(eye, sy)
    kz = kron(sz, eye) - kron(eye, sz)
    _freeze(kx, ky, kz)
    return SpinTriple(kx, ky, kz)


def k_operators(s: SpinLabel) -> SpinTriple:
    """Twisted pair angular momentum (Kx, Ky, Kz) = (sx-sx', sy+sy', sz-sz')."""
    return _k_operators(s.twice_spin)


@lru_cache(maxsize=None)
def _k_projectors(twice_spin: int) -> tuple[np.ndarray, ...]:
    kx, ky, kz = _k_operators(twice_spin)
    ksq = kx @ kx + ky @ ky + kz @ kz
    targets = [float(k * (k + 1)) for k in range(twice_spin + 1)]
    mults = [2 * k + 1 for k in range(twice_spin + 1)]
    return _spectral_projectors(ksq, targets, mults)


def k_projector(s: SpinLabel, k_channel: int) -> np.ndarray:
    """Projector onto the K(K+1) eigenspace of the twisted angular momentum."""
    if not 0 <= k_channel <= s.twice_spin:
        raise ValidationError(
            f"K channel {k_channel} out of range 0..{s.twice_spin}"
        )
    return _k_projectors(s.twice_spin)[k_channel]


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-style random unitary from QR of a seeded complex Gaussian matrix."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases
