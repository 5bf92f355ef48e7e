"""Rotation-invariant two-site states and their negativity.

A bipartite state commuting with every simultaneous rotation U x U is fixed
by its channel coefficients alpha_F = (2s+1) Tr(rho P_F) / sqrt(2F+1); this
module converts between the coefficient vector and the density matrix,
twirls arbitrary states onto the invariant family, builds the canonical
Werner and isotropic families, and computes negativity two independent
ways: through the 6-j coefficient map and by brute-force diagonalization of
the partial transpose. The brute-force route is the project-wide oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import DensityMatrix, ValidationError, partial_transpose
from .spin_ops import (
    SpinLabel,
    channel_projector,
    dot_operator,
    pairing_matrix,
    swap_matrix,
)
from .wigner import theta_matrix


@dataclass
class AlphaVector:
    """Channel coefficients of a rotation-invariant two-site state.

    For a physical state every entry is nonnegative and
    sum_F sqrt(2F+1) alpha_F = 2s+1; call validate() to enforce that.
    Instances produced by the coefficient map of a transposed state may
    legitimately carry negative entries, so construction does not validate.
    """

    twice_spin: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.twice_spin + 1,):
            raise ValidationError(
                f"alpha vector needs {self.twice_spin + 1} entries, got shape {values.shape}"
            )
        self.values = values

    @property
    def spin(self) -> SpinLabel:
        return SpinLabel(self.twice_spin)

    def validate(self, atol: float = 1e-9) -> "AlphaVector":
        lowest = float(self.values.min())
        if lowest < -1e-9:
            raise ValidationError(f"negative channel coefficient alpha = {lowest:.3e}")
        weights = np.sqrt(2 * np.arange(self.twice_spin + 1) + 1)
        total = float(weights @ self.values)
        expected = self.twice_spin + 1
        if abs(total - expected) > atol:
            raise ValidationError(
                f"trace normalization: sum sqrt(2F+1) alpha_F = {total:.12g}, expected {expected}"
            )
        return self

    def channel_weights(self) -> np.ndarray:
        """Tr(rho P_F) for each channel."""
        weights = np.sqrt(2 * np.arange(self.twice_spin + 1) + 1)
        return weights * self.values / (self.twice_spin + 1)


def alpha_from_weights(s: SpinLabel, weights) -> AlphaVector:
    """Channel coefficients from the projector weights Tr(rho P_F)."""
    weights = np.asarray(weights, dtype=float)
    factors = np.sqrt(2 * np.arange(s.twice_spin + 1) + 1)
    return AlphaVector(s.twice_spin, s.dim * weights / factors)


def random_invariant_alpha(s: SpinLabel, rng) -> AlphaVector:
    """Random physical coefficient vector, channel weights uniform on the simplex."""
    rng = np.random.default_rng(rng)
    w = rng.exponential(size=s.dim)
    return alpha_from_weights(s, w / w.sum())


def alpha_from_density(rho: DensityMatrix, s: SpinLabel) -> AlphaVector:
    """Project out the channel coefficients of a two-site state."""
    if rho.dim != s.dim ** 2:
        raise ValidationError(
            f"state dimension {rho.dim} does not match two spin-{s} sites ({s.dim ** 2})"
        )
    weights = [rho.expectation(channel_projector(s, f)) for f in range(s.dim)]
    return alpha_from_weights(s, weights)


def density_from_alpha(alpha: AlphaVector) -> DensityMatrix:
    """Assemble the invariant density matrix with the given coefficients."""
    alpha.validate()
    s = alpha.spin
    n = s.dim
    acc = np.zeros((n * n, n * n), dtype=complex)
    for f in range(n):
        acc += (alpha.values[f] / math.sqrt(2 * f + 1)) * channel_projector(s, f)
    return DensityMatrix(acc / n, (n, n))


def twirl(rho: DensityMatrix, s: SpinLabel) -> DensityMatrix:
    """Project a state onto the invariant family, preserving channel weights."""
    if rho.dim != s.dim ** 2:
        raise ValidationError(
            f"state dimension {rho.dim} does not match two spin-{s} sites ({s.dim ** 2})"
        )
    acc = np.zeros_like(rho.matrix)
    for f in range(s.dim):
        proj = channel_projector(s, f)
        acc = acc + (rho.expectation(proj) / (2 * f + 1)) * proj
    return DensityMatrix(acc, rho.local_dims)


@dataclass
class NegativityResult:
    """Negativity value plus, for the coefficient-map route, its K-channel terms."""

    value: float
    per_channel: tuple[float, ...]
    method: str


def negativity_formula(alpha: AlphaVector) -> NegativityResult:
    """Negativity from the 6-j coefficient map.

    The transposed state has eigenvalue alpha'_K / ((2s+1) sqrt(2K+1)) with
    multiplicity 2K+1 in twisted channel K, so the negativity is
    sum_K max(0, -sqrt(2K+1) alpha'_K) / (2s+1) over K = 0..2s-1; the top
    channel never goes negative and is omitted.
    """
    alpha.validate()
    s = alpha.spin
    primed = theta_matrix(s) @ alpha.values
    terms = tuple(
        max(0.0, -math.sqrt(2 * k + 1) * primed[k]) / s.dim
        for k in range(s.twice_spin)
    )
    return NegativityResult(value=float(sum(terms)), per_channel=terms, method="formula")


def negativity_brute(rho: DensityMatrix, dim_a: int, dim_b: int) -> NegativityResult:
    """Negativity by diagonalizing the partial transpose. The oracle route."""
    if dim_a * dim_b != rho.dim:
        raise ValidationError(
            f"bipartition ({dim_a},{dim_b}) does not match state dimension {rho.dim}"
        )
    pt = partial_transpose(rho.matrix, dim_a, dim_b)
    w = np.linalg.eigvalsh((pt + pt.conj().T) / 2)
    value = float(np.sum(np.clip(-w, 0.0, None)))
    return NegativityResult(value=value, per_channel=(), method="brute")


def closed_form_negativity_spin1(state, form: str = "moments") -> NegativityResult:
    """Spin-1 negativity from two-site correlators.

    form="moments" uses <D> and <D^2> with the swap expansion
    S = D^2 + D - 1 substituted into the swap term; form="operators" uses
    <P0> and <S> directly. Both equal the coefficient-map negativity.
    Accepts an AlphaVector or a 9-dimensional DensityMatrix.
    """
    s = SpinLabel(2)
    if isinstance(state, AlphaVector):
        if state.twice_spin != 2:
            raise ValidationError("closed forms are specific to spin 1")
        rho = density_from_alpha(state)
    elif isinstance(state, DensityMatrix):
        if state.dim != 9 or state.local_dims != (3, 3):
            raise ValidationError("closed forms are specific to two spin-1 sites")
        rho = state
    else:
        raise ValidationError(f"expected AlphaVector or DensityMatrix, got {type(state).__name__}")

    if form == "moments":
        d = dot_operator(s)
        exp_d = rho.expectation(d)
        exp_d2 = rho.expectation(np.asarray(d @ d))
        swap_term = max(0.0, 1.0 - exp_d - exp_d2) / 3
        singlet_term = max(0.0, exp_d2 - 2.0) / 2
    elif form == "operators":
        exp_s = rho.expectation(swap_matrix(s))
        exp_p = rho.expectation(channel_projector(s, 0))
        swap_term = max(0.0, -exp_s) / 3
        singlet_term = max(0.0, 3.0 * exp_p - 1.0) / 2
    else:
        raise ValidationError(f"unknown closed form {form!r}")
    return NegativityResult(
        value=swap_term + singlet_term,
        per_channel=(swap_term, singlet_term),
        method="closed_form",
    )


def werner_state(s: SpinLabel, p: float) -> DensityMatrix:
    """Mixture p rho_- + (1-p) rho_+ of the antisymmetric and symmetric states.

    rho_+- = (1 +- S) / (N(N +- 1)); the swap expectation is 1 - 2p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"mixing parameter p = {p} outside [0, 1]")
    n = s.dim
    sw = swap_matrix(s)
    eye = np.eye(n * n, dtype=complex)
    rho_minus = (eye - sw) / (n * (n - 1))
    rho_plus = (eye + sw) / (n * (n + 1))
    return DensityMatrix(p * rho_minus + (1 - p) * rho_plus, (n, n))


def isotropic_state(s: SpinLabel, w: float) -> DensityMatrix:
    """Mixture of the maximally entangled pairing state and its complement."""
    if not 0.0 <= w <= 1.0:
        raise ValidationError(f"mixing parameter w = {w} outside [0, 1]")
    n = s.dim
    rho1 = pairing_matrix(s) / n
    rho2 = (np.eye(n * n, dtype=complex) - rho1) / (n * n - 1)
    return DensityMatrix(w * rho1 + (1 - w) * rho2, (n, n))
