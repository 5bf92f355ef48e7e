"""Self-check suite: every headline identity and witness property, each
verified against an independent route (exact rationals, brute-force
diagonalization, direct overlap computation, or closed forms).

The checks are exposed one by one so the CLI, the HTTP service, and the
test suite can all drive them; ``run_verification`` executes a selection
and reports pass/fail with a short numeric summary per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .numerics import DensityMatrix, partial_transpose
from .projector_poly import lambda_values, singlet_coeffs, swap_coeffs
from .spin_ops import (
    SpinLabel,
    channel_projector,
    dot_operator,
    pairing_matrix,
    swap_matrix,
)
from .su2_states import (
    alpha_from_weights,
    density_from_alpha,
    negativity_brute,
    negativity_formula,
    closed_form_negativity_spin1,
    random_invariant_alpha,
    werner_state,
)
from .wigner import theta_matrix
from .witnesses import (
    Permutation,
    chain_hamiltonian,
    concurrence_su2,
    hamiltonian_witness,
    permutation_witness,
    random_separable,
    singlet_witness,
    swap_witness,
)


@dataclass
class CheckResult:
    index: int
    name: str
    passed: bool
    detail: str


def _max_diff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


EXPECTED_SWAP = {
    1: (Fraction(1, 2), Fraction(2)),
    2: (Fraction(-1), Fraction(1), Fraction(1)),
    3: (Fraction(-67, 32), Fraction(-9, 8), Fraction(11, 18), Fraction(2, 9)),
    4: (Fraction(-1), Fraction(-5, 2), Fraction(-13, 36), Fraction(1, 6), Fraction(1, 36)),
}
EXPECTED_SINGLET = {
    1: (Fraction(1, 4), Fraction(-1)),
    2: (Fraction(-1, 3), Fraction(0), Fraction(1, 3)),
    3: (Fraction(33, 128), Fraction(31, 96), Fraction(-5, 72), Fraction(-1, 18)),
    4: (Fraction(0), Fraction(-1, 3), Fraction(-17, 180), Fraction(1, 45), Fraction(1, 180)),
}


def check_coefficients(seed=0):
    """Swap and singlet expansions for s = 1/2..2 match the reference tables exactly."""
    for twice_spin, expected in EXPECTED_SWAP.items():
        got = swap_coeffs(SpinLabel(twice_spin))
        if got != expected:
            return False, f"swap 2s={twice_spin}: got {got}, expected {expected}"
    for twice_spin, expected in EXPECTED_SINGLET.items():
        got = singlet_coeffs(SpinLabel(twice_spin))
        if got != expected:
            return False, f"singlet 2s={twice_spin}: got {got}, expected {expected}"
    return True, "8 coefficient tables reproduced with exact rational equality"


def check_partial_transpose_identity(seed=0):
    """Partial transpose of the swap equals the pairing operator, 2s = 1..5."""
    worst = 0.0
    for twice_spin in range(1, 6):
        s = SpinLabel(twice_spin)
        pt = partial_transpose(swap_matrix(s), s.dim, s.dim)
        worst = max(worst, _max_diff(pt, pairing_matrix(s)))
    ok = worst <= 1e-12
    return ok, f"max entrywise deviation {worst:.3e} (tolerance 1e-12)"


def check_operator_identities(seed=0):
    """Swap involution/Hermiticity/trace and channel projector algebra, 2s = 1..5."""
    worst = 0.0
    for twice_spin in range(1, 6):
        s = SpinLabel(twice_spin)
        n = s.dim
        sw = swap_matrix(s)
        eye = np.eye(n * n)
        worst = max(worst, _max_diff(sw @ sw, eye))
        worst = max(worst, _max_diff(sw, sw.conj().T))
        worst = max(worst, abs(float(sw.trace().real) - n))
        projs = [channel_projector(s, f) for f in range(n)]
        worst = max(worst, _max_diff(sum(projs), eye))
        d = dot_operator(s)
        lams = lambda_values(s)
        for f, p in enumerate(projs):
            worst = max(worst, _max_diff(d @ p, float(lams[f]) * p))
            for g in range(f, n):
                target = p if f == g else np.zeros_like(p)
                worst = max(worst, _max_diff(projs[f] @ projs[g], target))
    ok = worst <= 1e-12
    return ok, f"max deviation over all identities {worst:.3e} (tolerance 1e-12)"


def check_negativity_cross_oracle(seed=0, samples=200):
    """Coefficient-map negativity vs brute-force partial transpose, plus the
    vanishing of the top twisted channel."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_tail = 0.0
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        theta = theta_matrix(s)
        for _ in range(samples):
            alpha = random_invariant_alpha(s, rng)
            formula = negativity_formula(alpha)
            brute = negativity_brute(density_from_alpha(alpha), s.dim, s.dim)
            worst = max(worst, abs(formula.value - brute.value))
            primed = theta @ alpha.values
            tail = max(0.0, -math.sqrt(2 * twice_spin + 1) * primed[twice_spin]) / s.dim
            worst_tail = max(worst_tail, tail)
    ok = worst <= 1e-9 and worst_tail <= 1e-9
    return ok, (
        f"max |formula - brute| {worst:.3e} over {4 * samples} states, "
        f"top-channel term at most {worst_tail:.3e} (tolerance 1e-9)"
    )


def check_theta_properties(seed=0):
    """Coefficient map is symmetric, squares to the identity, and its first
    row follows the closed form (-1)^(2s+K) sqrt(2K+1)/(2s+1)."""
    worst_sym = worst_inv = worst_row = 0.0
    for twice_spin in range(1, 6):
        s = SpinLabel(twice_spin)
        theta = theta_matrix(s)
        worst_sym = max(worst_sym, _max_diff(theta, theta.T))
        worst_inv = max(worst_inv, _max_diff(theta @ theta, np.eye(s.dim)))
        row = np.array(
            [
                (-1.0 if (twice_spin + k) % 2 else 1.0) * math.sqrt(2 * k + 1) / s.dim
                for k in range(s.dim)
            ]
        )
        worst_row = max(worst_row, _max_diff(theta[0], row))
    ok = worst_sym <= 1e-12 and worst_inv <= 1e-10 and worst_row <= 1e-12
    return ok, (
        f"symmetry {worst_sym:.3e}, involution {worst_inv:.3e} (1e-10), "
        f"first row {worst_row:.3e} (1e-12)"
    )


def check_pure_state_example(seed=0):
    """State proportional to the channel-(2s-1) projector: swap expectation -1
    and negativity 1/(2s+1)."""
    details = []
    ok = True
    for twice_spin in (2, 3, 4):
        s = SpinLabel(twice_spin)
        weights = np.zeros(s.dim)
        weights[twice_spin - 1] = 1.0
        rho = density_from_alpha(alpha_from_weights(s, weights))
        exp_swap = rho.expectation(swap_matrix(s))
        neg = negativity_brute(rho, s.dim, s.dim).value
        target = 1.0 / s.dim
        ok = ok and abs(exp_swap + 1.0) <= 1e-10 and abs(neg - target) <= 1e-9
        details.append(f"2s={twice_spin}: <S>={exp_swap:.12f}, N={neg:.12f} (target {target:.12f})")
    return ok, "; ".join(details)


def _spin1_alpha_grid(points=50, seed=0):
    rng = np.random.default_rng(seed)
    s = SpinLabel(2)
    out = []
    for _ in range(points):
        w = rng.exponential(size=3)
        out.append(alpha_from_weights(s, w / w.sum()))
    return out


def check_spin1_closed_forms(seed=0):
    """Both spin-1 closed forms agree with each other and with brute force."""
    worst_pair = worst_brute = 0.0
    s = SpinLabel(2)
    for alpha in _spin1_alpha_grid(50, seed):
        moments = closed_form_negativity_spin1(alpha, form="moments")
        operators = closed_form_negativity_spin1(alpha, form="operators")
        brute = negativity_brute(density_from_alpha(alpha), s.dim, s.dim)
        worst_pair = max(worst_pair, abs(moments.value - operators.value))
        worst_brute = max(worst_brute, abs(moments.value - brute.value))
    ok = worst_pair <= 1e-9 and worst_brute <= 1e-9
    return ok, (
        f"closed forms differ by at most {worst_pair:.3e}, "
        f"vs brute force {worst_brute:.3e} (tolerance 1e-9) on 50 states"
    )


def check_witness_soundness(seed=0, samples=10_000):
    """No witness fires on seeded separable states (spins 1/2..3/2, 2-3 sites)."""
    rng = np.random.default_rng(seed)
    worst_swap = worst_perm = 0.0
    worst_singlet_excess = -math.inf
    total = 0
    for twice_spin in (1, 2, 3):
        s = SpinLabel(twice_spin)
        for n_sites in (2, 3):
            pairs = [(i, j) for i in range(n_sites) for j in range(i + 1, n_sites)]
            perms = []
            for i, j in pairs:
                mapping = list(range(n_sites))
                mapping[i], mapping[j] = j, i
                perms.append(Permutation(tuple(mapping)))
            for k in range(samples):
                rho = random_separable(s, n_sites, n_terms=(k % 4) + 1, seed=rng)
                total += 1
                for pair, perm in zip(pairs, perms):
                    sw = swap_witness(rho, s, pair)
                    sg = singlet_witness(rho, s, pair)
                    pw = permutation_witness(rho, perm, s)
                    if "entangled" in (sw.verdict, sg.verdict, pw.verdict):
                        return False, (
                            f"witness fired on a separable state: 2s={twice_spin}, "
                            f"sites={n_sites}, pair={pair}, swap={sw.expectation:.3e}, "
                            f"singlet={sg.expectation:.3e}, perm={pw.expectation:.3e}"
                        )
                    worst_swap = min(worst_swap, sw.expectation)
                    worst_perm = min(worst_perm, pw.expectation)
                    worst_singlet_excess = max(
                        worst_singlet_excess, sg.expectation - sg.threshold
                    )
    ok = worst_swap >= -1e-9 and worst_perm >= -1e-9 and worst_singlet_excess <= 1e-9
    return ok, (
        f"{total} separable samples: min <S> {worst_swap:.3e}, min <R> {worst_perm:.3e}, "
        f"max <P>-1/(2s+1) {worst_singlet_excess:.3e} (margins 1e-9)"
    )


def check_werner_detection(seed=0):
    """Swap witness fires exactly on the entangled half of the Werner line."""
    for twice_spin in (1, 2, 3, 4):
        s = SpinLabel(twice_spin)
        for k in range(1, 11):
            p = 0.5 + 0.05 * k
            rho = werner_state(s, p)
            report = swap_witness(rho, s, (0, 1))
            neg = negativity_brute(rho, s.dim, s.dim).value
            if report.verdict != "entangled" or not neg > 0:
                return False, (
                    f"2s={twice_spin}, p={p:.2f}: verdict {report.verdict}, negativity {neg:.3e}"
                )
        for p in (0.0, 0.25, 0.5):
            report = swap_witness(werner_state(s, p), s, (0, 1))
            if report.verdict != "inconclusive":
                return False, f"2s={twice_spin}, p={p:.2f}: witness fired below threshold"
    return True, "fires for p in 0.55..1.00 with positive negativity, silent for p <= 0.5"


def _spin_flip_concurrence(rho: DensityMatrix) -> float:
    # Independent two-qubit concurrence oracle: spin-flip eigenvalues.
    sy = np.array([[0, -1j], [1j, 0]])
    flip = np.kron(sy, sy)
    m = rho.matrix
    product = m @ flip @ m.conj() @ flip
    lams = np.sort(np.linalg.eigvals(product).real)[::-1]
    roots = np.sqrt(np.clip(lams, 0.0, None))
    return max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3]))


def check_concurrence(seed=0, samples=100):
    """Invariant-state concurrence equals the spin-flip oracle and the Werner line."""
    rng = np.random.default_rng(seed)
    s = SpinLabel(1)
    worst = 0.0
    for _ in range(samples):
        rho = density_from_alpha(random_invariant_alpha(s, rng))
        worst = max(worst, abs(concurrence_su2(rho) - _spin_flip_concurrence(rho)))
    worst_werner = 0.0
    for p in np.linspace(0.0, 1.0, 21):
        got = concurrence_su2(werner_state(s, float(p)))
        worst_werner = max(worst_werner, abs(got - max(0.0, 2 * float(p) - 1)))
    ok = worst <= 1e-9 and worst_werner <= 1e-9
    return ok, (
        f"max |shortcut - spin flip| {worst:.3e} on {samples} states, "
        f"Werner line deviation {worst_werner:.3e} (tolerance 1e-9)"
    )


def check_hamiltonian_witness(seed=0):
    """Two-site swap chain has ground energy -1; the open four-site chain is
    negative and its ground state trips the swap witness on edge bonds.

    The middle bond of the open four-site chain carries exactly zero swap
    expectation, so the nearest-neighbor detection claim is about the
    strictly negative bonds.
    """
    s = SpinLabel(1)
    report2 = hamiltonian_witness(s, 2, "swap", 1.0, "open")
    ok = abs(report2.expectation + 1.0) <= 1e-10 and report2.verdict == "entangled"
    h4 = chain_hamiltonian(s, 4, "swap", 1.0, "open")
    w, v = np.linalg.eigh(h4)
    ground_energy = float(w[0])
    ground = v[:, 0]
    from .witnesses import embed_two_site

    bond_exps = []
    for i in range(3):
        op = embed_two_site(swap_matrix(s), s, 4, i, i + 1)
        bond_exps.append(float((ground.conj() @ op @ ground).real))
    report4 = hamiltonian_witness(s, 4, "swap", 1.0, "open")
    ok = (
        ok
        and ground_energy < -1e-10
        and report4.verdict == "entangled"
        and min(bond_exps) < -1e-10
    )
    return ok, (
        f"L=2 ground {report2.expectation:.12f} ({report2.verdict}); "
        f"L=4 ground {ground_energy:.6f}, bond <S> {['%.4f' % b for b in bond_exps]}"
    )


CHECKS: tuple[tuple[int, str, Callable], ...] = (
    (1, "swap and singlet expansions match the reference tables exactly", check_coefficients),
    (2, "partial transpose of swap equals pairing (2s = 1..5)", check_partial_transpose_identity),
    (3, "swap and channel projector operator identities (2s = 1..5)", check_operator_identities),
    (4, "negativity: coefficient map vs brute force (200 states x 4 spins)", check_negativity_cross_oracle),
    (5, "theta matrix symmetry, involution, first-row closed form", check_theta_properties),
    (6, "channel-(2s-1) pure state: swap expectation -1, negativity 1/(2s+1)", check_pure_state_example),
    (7, "spin-1 closed-form negativity on a 50-state grid", check_spin1_closed_forms),
    (8, "witness soundness on 10^4 separable samples per configuration", check_witness_soundness),
    (9, "Werner family detection grid (spins 1/2..2)", check_werner_detection),
    (10, "concurrence shortcut vs spin-flip oracle and Werner line", check_concurrence),
    (11, "swap-chain Hamiltonian witness (L = 2 and L = 4)", check_hamiltonian_witness),
)


def run_verification(items: Iterable[int] | None = None, seed: int = 0) -> list[CheckResult]:
    """Run the numbered self-checks (all by default) and collect results."""
    selected = set(items) if items is not None else {idx for idx, _, _ in CHECKS}
    unknown = selected - {idx for idx, _, _ in CHECKS}
    if unknown:
        from .numerics import ValidationError

        raise ValidationError(f"unknown check numbers {sorted(unknown)} (valid: 1..{len(CHECKS)})")
    results = []
    for index, name, fn in CHECKS:
        if index not in selected:
            continue
        try:
            passed, detail = fn(seed=seed)
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(index, name, passed, detail))
    return results
