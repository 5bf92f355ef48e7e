"""Exact polynomial expansions in the two-site dot product.

Every channel projector, the swap operator, and the singlet projector can
be written as a polynomial of degree at most 2s in D = s_i . s_j, because D
takes the value lambda_F = [F(F+1) - 2s(s+1)]/2 on the total-spin-F channel
and those values are pairwise distinct. Coefficients are kept as exact
Fractions in the monomial basis, constant term first, length exactly 2s+1
(trailing zeros retained).

Exactness tests cover 2s up to 9; beyond that everything still works, the
rationals just grow.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .numerics import ValidationError, vandermonde_solve
from .spin_ops import SpinLabel, dot_operator

RationalPoly = tuple[Fraction, ...]


def lambda_values(s: SpinLabel) -> RationalPoly:
    """Dot-product eigenvalue for each total-spin channel F = 0..2s."""
    c = s.casimir
    return tuple(Fraction(f * (f + 1), 2) - c for f in range(s.twice_spin + 1))


def projector_coeffs(s: SpinLabel, total_spin: int) -> RationalPoly:
    """Exact monomial coefficients of the channel-F projector polynomial."""
    if not 0 <= total_spin <= s.twice_spin:
        raise ValidationError(
            f"total spin channel {total_spin} out of range 0..{s.twice_spin}"
        )
    return vandermonde_solve(lambda_values(s), total_spin)


def swap_coeffs(s: SpinLabel) -> RationalPoly:
    """Swap operator as the alternating-sign sum of channel projectors."""
    n = s.twice_spin + 1
    acc = [Fraction(0)] * n
    for f in range(n):
        sign = -1 if (s.twice_spin + f) % 2 else 1
        for i, c in enumerate(projector_coeffs(s, f)):
            acc[i] += sign * c
    return tuple(acc)


def singlet_coeffs(s: SpinLabel) -> RationalPoly:
    """Singlet projector from the product over k of [1 - 2(D + s(s+1))/(k(k+1))].

    This route is independent of the Lagrange construction behind
    projector_coeffs(s, 0); the two agree exactly and tests assert it.
    """
    c = s.casimir
    poly = [Fraction(1)]
    for k in range(1, s.twice_spin + 1):
        kk = Fraction(k * (k + 1))
        poly = _poly_mul(poly, [1 - 2 * c / kk, Fraction(-2) / kk])
    return tuple(poly)


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def eval_poly_operator(coeffs: Sequence[Fraction], s: SpinLabel) -> np.ndarray:
    """Evaluate a coefficient list at the dot-product operator (Horner)."""
    if len(coeffs) != s.dim:
        raise ValidationError(
            f"coefficient list has length {len(coeffs)}, expected 2s+1 = {s.dim}"
        )
    d = dot_operator(s)
    eye = np.eye(d.shape[0], dtype=complex)
    acc = float(coeffs[-1]) * eye
    for c in reversed(coeffs[:-1]):
        acc = acc @ d + float(c) * eye
    return acc
