import math

import numpy as np
import pytest

from conftest import random_density
from spinwit.numerics import DensityMatrix, ValidationError, kron, partial_transpose
from spinwit.spin_ops import (
    SpinLabel,
    channel_projector,
    dot_operator,
    spin_matrices,
    swap_matrix,
)
from spinwit.su2_states import (
    AlphaVector,
    alpha_from_density,
    alpha_from_weights,
    closed_form_negativity_spin1,
    density_from_alpha,
    isotropic_state,
    negativity_brute,
    negativity_formula,
    random_invariant_alpha,
    twirl,
    werner_state,
)
from spinwit.wigner import theta_matrix


def maximally_mixed_alpha(s):
    return AlphaVector(
        s.twice_spin, np.array([math.sqrt(2 * f + 1) / s.dim for f in range(s.dim)])
    )


def test_alpha_from_density_singlet():
    s = SpinLabel(1)
    rho = DensityMatrix(channel_projector(s, 0), (2, 2))
    alpha = alpha_from_density(rho, s)
    assert np.max(np.abs(alpha.values - np.array([2.0, 0.0]))) <= 1e-12


def test_alpha_from_density_maximally_mixed():
    for twice_spin in (1, 2, 3):
        s = SpinLabel(twice_spin)
        rho = DensityMatrix(np.eye(s.dim ** 2) / s.dim ** 2, (s.dim, s.dim))
        alpha = alpha_from_density(rho, s)
        assert np.max(np.abs(alpha.values - maximally_mixed_alpha(s).values)) <= 1e-12


def test_alpha_trace_normalization():
    rng = np.random.default_rng(31)
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        rho = random_density((s.dim, s.dim), rng)
        alpha = alpha_from_density(rho, s)
        weights = np.sqrt(2 * np.arange(s.dim) + 1)
        assert abs(weights @ alpha.values - s.dim) <= 1e-9


def test_density_from_alpha_round_trip():
    rng = np.random.default_rng(37)
    for twice_spin in (1, 2, 3):
        s = SpinLabel(twice_spin)
        alpha = random_invariant_alpha(s, rng)
        back = alpha_from_density(density_from_alpha(alpha), s)
        assert np.max(np.abs(back.values - alpha.values)) <= 1e-10


def test_density_from_alpha_single_channel():
    s = SpinLabel(2)
    weights = np.array([0.0, 1.0, 0.0])
    rho = density_from_alpha(alpha_from_weights(s, weights))
    assert np.max(np.abs(rho.matrix - channel_projector(s, 1) / 3)) <= 1e-12


def test_density_from_alpha_commutes_with_rotations():
    rng = np.random.default_rng(41)
    for twice_spin in (1, 2):
        s = SpinLabel(twice_spin)
        rho = density_from_alpha(random_invariant_alpha(s, rng))
        eye = np.eye(s.dim)
        for axis in range(3):
            comp = spin_matrices(s)[axis]
            total = kron(comp, eye) + kron(eye, comp)
            theta = float(rng.uniform(0, 2 * math.pi))
            w, v = np.linalg.eigh(total)
            u = (v * np.exp(1j * theta * w)) @ v.conj().T
            assert np.max(np.abs(u @ rho.matrix - rho.matrix @ u)) <= 1e-9


def test_density_from_alpha_rejects_invalid():
    with pytest.raises(ValidationError, match="negative channel"):
        density_from_alpha(AlphaVector(1, np.array([2.5, -0.5])))
    with pytest.raises(ValidationError, match="trace normalization"):
        density_from_alpha(AlphaVector(1, np.array([1.0, 0.0])))


def test_twirl_fixes_invariant_states():
    rng = np.random.default_rng(43)
    for twice_spin in (1, 2):
        s = SpinLabel(twice_spin)
        rho = density_from_alpha(random_invariant_alpha(s, rng))
        assert np.max(np.abs(twirl(rho, s).matrix - rho.matrix)) <= 1e-10


def test_twirl_up_up_gives_top_channel():
    s = SpinLabel(1)
    vec = np.zeros(4)
    vec[0] = 1.0  # |up up>
    rho = DensityMatrix(np.outer(vec, vec), (2, 2))
    got = twirl(rho, s)
    assert np.max(np.abs(got.matrix - channel_projector(s, 1) / 3)) <= 1e-12


def test_twirl_idempotent_and_weight_preserving():
    rng = np.random.default_rng(47)
    for twice_spin in (1, 2):
        s = SpinLabel(twice_spin)
        rho = random_density((s.dim, s.dim), rng)
        once = twirl(rho, s)
        twice = twirl(once, s)
        assert np.max(np.abs(twice.matrix - once.matrix)) <= 1e-12
        for f in range(s.dim):
            proj = channel_projector(s, f)
            assert abs(once.expectation(proj) - rho.expectation(proj)) <= 1e-12


def test_negativity_formula_singlet():
    result = negativity_formula(AlphaVector(1, np.array([2.0, 0.0])))
    assert abs(result.value - 0.5) <= 1e-12
    assert result.method == "formula"
    assert len(result.per_channel) == 1
    assert abs(sum(result.per_channel) - result.value) == 0.0


def test_negativity_formula_maximally_mixed_is_zero():
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        assert negativity_formula(maximally_mixed_alpha(s)).value == 0.0


def test_negativity_top_channel_pure_states():
    # state proportional to the channel-(2s-1) projector: negativity 1/(2s+1)
    for twice_spin in (2, 3, 4):
        s = SpinLabel(twice_spin)
        weights = np.zeros(s.dim)
        weights[twice_spin - 1] = 1.0
        alpha = alpha_from_weights(s, weights)
        assert abs(negativity_formula(alpha).value - 1.0 / s.dim) <= 1e-9
        brute = negativity_brute(density_from_alpha(alpha), s.dim, s.dim)
        assert abs(brute.value - 1.0 / s.dim) <= 1e-9


def test_negativity_cross_oracle():
    rng = np.random.default_rng(53)
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        for _ in range(50):
            alpha = random_invariant_alpha(s, rng)
            formula = negativity_formula(alpha)
            brute = negativity_brute(density_from_alpha(alpha), s.dim, s.dim)
            assert abs(formula.value - brute.value) <= 1e-9


def test_negativity_leading_term_is_swap_expectation():
    rng = np.random.default_rng(59)
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        for _ in range(20):
            alpha = random_invariant_alpha(s, rng)
            rho = density_from_alpha(alpha)
            lead = negativity_formula(alpha).per_channel[0]
            expected = max(0.0, -rho.expectation(swap_matrix(s))) / s.dim
            assert abs(lead - expected) <= 1e-10


def test_negativity_top_k_term_vanishes():
    rng = np.random.default_rng(61)
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        theta = theta_matrix(s)
        for _ in range(30):
            alpha = random_invariant_alpha(s, rng)
            primed = theta @ alpha.values
            tail = max(0.0, -math.sqrt(2 * twice_spin + 1) * primed[twice_spin]) / s.dim
            assert tail <= 1e-9


def test_negativity_brute_product_state_is_ppt():
    rng = np.random.default_rng(67)
    for dim in (2, 3):
        va = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        vb = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        va /= np.linalg.norm(va)
        vb /= np.linalg.norm(vb)
        vec = np.kron(va, vb)
        rho = DensityMatrix(np.outer(vec, vec.conj()), (dim, dim))
        assert negativity_brute(rho, dim, dim).value <= 1e-10


def test_negativity_brute_maximally_entangled():
    from spinwit.spin_ops import pairing_vector

    for twice_spin in range(1, 6):
        s = SpinLabel(twice_spin)
        v = pairing_vector(s)
        rho = DensityMatrix(np.outer(v, v.conj()), (s.dim, s.dim))
        assert abs(negativity_brute(rho, s.dim, s.dim).value - (s.dim - 1) / 2) <= 1e-10


def test_negativity_brute_rejects_mismatch():
    rho = DensityMatrix(np.eye(4) / 4, (2, 2))
    with pytest.raises(ValidationError):
        negativity_brute(rho, 2, 3)


def test_spin1_closed_forms_reference_points():
    s = SpinLabel(2)
    singlet = alpha_from_weights(s, np.array([1.0, 0.0, 0.0]))
    rho = density_from_alpha(singlet)
    assert abs(rho.expectation(dot_operator(s)) + 2.0) <= 1e-12
    assert abs(rho.expectation(dot_operator(s) @ dot_operator(s)) - 4.0) <= 1e-12
    assert abs(closed_form_negativity_spin1(singlet, "moments").value - 1.0) <= 1e-9
    assert abs(closed_form_negativity_spin1(singlet, "operators").value - 1.0) <= 1e-9

    middle = alpha_from_weights(s, np.array([0.0, 1.0, 0.0]))
    assert abs(closed_form_negativity_spin1(middle, "moments").value - 1 / 3) <= 1e-9

    mixed = maximally_mixed_alpha(s)
    assert closed_form_negativity_spin1(mixed, "moments").value == 0.0


def test_spin1_closed_forms_agree_on_grid():
    rng = np.random.default_rng(71)
    s = SpinLabel(2)
    for _ in range(50):
        alpha = random_invariant_alpha(s, rng)
        moments = closed_form_negativity_spin1(alpha, "moments").value
        operators = closed_form_negativity_spin1(alpha, "operators").value
        brute = negativity_brute(density_from_alpha(alpha), 3, 3).value
        assert abs(moments - operators) <= 1e-9
        assert abs(moments - brute) <= 1e-9
        assert abs(negativity_formula(alpha).value - brute) <= 1e-9


def test_spin1_closed_forms_reject_other_spins():
    with pytest.raises(ValidationError):
        closed_form_negativity_spin1(AlphaVector(1, np.array([2.0, 0.0])))
    with pytest.raises(ValidationError):
        closed_form_negativity_spin1(DensityMatrix(np.eye(4) / 4, (2, 2)))


def test_werner_swap_expectation_is_one_minus_two_p():
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        sw = swap_matrix(s)
        for p in (0.0, 0.3, 0.5, 0.8, 1.0):
            rho = werner_state(s, p)
            assert abs(rho.expectation(sw) - (1 - 2 * p)) <= 1e-10


def test_werner_rejects_out_of_range():
    with pytest.raises(ValidationError):
        werner_state(SpinLabel(1), 1.5)
    with pytest.raises(ValidationError):
        werner_state(SpinLabel(1), -0.1)


def test_isotropic_maximally_entangled_endpoint():
    for twice_spin in (1, 2, 3):
        s = SpinLabel(twice_spin)
        rho = isotropic_state(s, 1.0)
        assert abs(negativity_brute(rho, s.dim, s.dim).value - (s.dim - 1) / 2) <= 1e-9


def test_isotropic_ppt_boundary_at_one_over_n():
    # bisection on the brute-force negativity; the crossover sits at w = 1/N
    for twice_spin in (1, 2, 3):
        s = SpinLabel(twice_spin)
        lo, hi = 0.0, 1.0
        for _ in range(40):
            mid = (lo + hi) / 2
            if negativity_brute(isotropic_state(s, mid), s.dim, s.dim).value > 1e-12:
                hi = mid
            else:
                lo = mid
        assert abs(hi - 1.0 / s.dim) <= 1e-6


def test_isotropic_conjugate_invariance():
    from spinwit.spin_ops import random_unitary

    for seed, twice_spin in ((1, 1), (2, 2)):
        s = SpinLabel(twice_spin)
        rho = isotropic_state(s, 0.7)
        u = random_unitary(s.dim, seed)
        uu = kron(u, u.conj())
        assert np.max(np.abs(uu @ rho.matrix @ uu.conj().T - rho.matrix)) <= 1e-9


def test_isotropic_transpose_is_werner_form():
    # the partial transpose lands in span{identity, swap}
    for twice_spin in (1, 2, 3):
        s = SpinLabel(twice_spin)
        n = s.dim
        for w in (0.0, 0.4, 1.0):
            pt = partial_transpose(isotropic_state(s, w).matrix, n, n)
            sw = swap_matrix(s)
            # project onto the orthogonal basis {I, S - Tr(S)/N^2 I}
            a = pt.trace().real / (n * n)
            centered = sw - (sw.trace() / (n * n)) * np.eye(n * n)
            b = (pt * centered.conj()).sum().real / (centered * centered.conj()).sum().real
            recon = a * np.eye(n * n) + b * centered
            assert np.max(np.abs(pt - recon)) <= 1e-12


def test_isotropic_rejects_out_of_range():
    with pytest.raises(ValidationError):
        isotropic_state(SpinLabel(1), -0.2)
