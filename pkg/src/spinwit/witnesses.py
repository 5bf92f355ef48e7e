"""Entanglement witnesses built from swaps, singlet projectors, and permutations.

Every witness here is one-sided: a verdict of "entangled" certifies
entanglement, while "inconclusive" says nothing. The firing conditions are

  * swap / permutation / Hamiltonian: expectation < 0 (separable states
    give nonnegative expectations),
  * singlet projector: expectation > 1/(2s+1) (separable states cannot
    exceed that overlap).

A guard band of 1e-10 keeps floating-point noise from flipping verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .numerics import DensityMatrix, ValidationError, kron_all
from .spin_ops import SpinLabel, channel_projector, spin_matrices, swap_matrix
from .su2_states import twirl

SITE_DIM_CAP = 1024
FIRE_MARGIN = 1e-10


@dataclass(frozen=True)
class Permutation:
    """Site permutation given as an image list: factor k moves to slot mapping[k]."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValidationError(f"mapping {mapping} is not a bijection on 0..{len(mapping) - 1}")

    @property
    def n_sites(self) -> int:
        return len(self.mapping)

    def is_identity(self) -> bool:
        return all(i == m for i, m in enumerate(self.mapping))

    def is_involution(self) -> bool:
        return all(self.mapping[m] == i for i, m in enumerate(self.mapping))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n_sites
        out = []
        for start in range(self.n_sites):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.mapping[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.mapping[nxt]
            out.append(tuple(cyc))
        return out


@dataclass
class WitnessReport:
    witness_kind: str
    expectation: float
    threshold: float
    verdict: str
    sites: tuple[int, ...] = field(default=())


def _check_sites(rho: DensityMatrix, s: SpinLabel, sites) -> tuple[int, int]:
    n_sites = len(rho.local_dims)
    if any(d != s.dim for d in rho.local_dims):
        raise ValidationError(
            f"state has local dimensions {rho.local_dims}, expected spin-{s} sites of dimension {s.dim}"
        )
    i, j = (int(x) for x in sites)
    if not (0 <= i < n_sites and 0 <= j < n_sites):
        raise ValidationError(f"sites {sites} out of range for {n_sites} sites")
    if i == j:
        raise ValidationError("witness needs two distinct sites")
    return i, j


def embed_two_site(op: np.ndarray, s: SpinLabel, n_sites: int, i: int, j: int) -> np.ndarray:
    """Lift a two-site operator to sites (i, j) of an n-site register."""
    n = s.dim
    if n ** n_sites > SITE_DIM_CAP:
        raise ValidationError(f"register dimension {n ** n_sites} exceeds cap {SITE_DIM_CAP}")
    full = np.kron(np.asarray(op, dtype=complex), np.eye(n ** (n_sites - 2)))
    order = [i, j] + [k for k in range(n_sites) if k not in (i, j)]
    perm = [order.index(p) for p in range(n_sites)]
    tensor = full.reshape((n,) * (2 * n_sites))
    tensor = tensor.transpose(perm + [n_sites + q for q in perm])
    return tensor.reshape(n ** n_sites, n ** n_sites)


@lru_cache(maxsize=None)
def _lifted_pair_op(twice_spin: int, n_sites: int, i: int, j: int, kind: str) -> np.ndarray:
    s = SpinLabel(twice_spin)
    base = swap_matrix(s) if kind == "swap" else channel_projector(s, 0)
    lifted = embed_two_site(base, s, n_sites, i, j)
    lifted.setflags(write=False)
    return lifted


def swap_witness(rho: DensityMatrix, s: SpinLabel, sites) -> WitnessReport:
    """Exchange-operator witness on one pair of sites; fires on negative expectation."""
    i, j = _check_sites(rho, s, sites)
    op = _lifted_pair_op(s.twice_spin, len(rho.local_dims), i, j, "swap")
    value = rho.expectation(op)
    verdict = "entangled" if value < -FIRE_MARGIN else "inconclusive"
    return WitnessReport("swap", value, 0.0, verdict, (i, j))


def singlet_witness(rho: DensityMatrix, s: SpinLabel, sites) -> WitnessReport:
    """Singlet-projector witness; fires when the overlap exceeds 1/(2s+1)."""
    i, j = _check_sites(rho, s, sites)
    op = _lifted_pair_op(s.twice_spin, len(rho.local_dims), i, j, "singlet")
    value = rho.expectation(op)
    threshold = 1.0 / s.dim
    verdict = "entangled" if value > threshold + FIRE_MARGIN else "inconclusive"
    return WitnessReport("singlet", value, threshold, verdict, (i, j))


def concurrence_su2(rho: DensityMatrix) -> float:
    """Concurrence of a rotation-invariant two-qubit state: max(0, -<S>)."""
    s = SpinLabel(1)
    if rho.local_dims != (2, 2):
        raise ValidationError(
            f"concurrence shortcut needs two spin-1/2 sites, got local dims {rho.local_dims}"
        )
    fixed = twirl(rho, s)
    drift = float(np.max(np.abs(fixed.matrix - rho.matrix)))
    if drift > 1e-8:
        raise ValidationError(f"state is not rotation invariant (twirl moves it by {drift:.3e})")
    return max(0.0, -rho.expectation(swap_matrix(s)))


@lru_cache(maxsize=None)
def _permutation_operator(mapping: tuple[int, ...], twice_spin: int) -> np.ndarray:
    n = twice_spin + 1
    n_sites = len(mapping)
    dim = n ** n_sites
    if dim > SITE_DIM_CAP:
        raise ValidationError(f"register dimension {dim} exceeds cap {SITE_DIM_CAP}")
    shape = (n,) * n_sites
    cols = np.arange(dim)
    digits = np.array(np.unravel_index(cols, shape))
    moved = np.empty_like(digits)
    moved[list(mapping), :] = digits
    rows = np.ravel_multi_index(tuple(moved), shape)
    op = np.zeros((dim, dim), dtype=complex)
    op[rows, cols] = 1.0
    op.setflags(write=False)
    return op


def permutation_operator(perm: Permutation, s: SpinLabel) -> np.ndarray:
    """Matrix sending factor k of a product state to slot perm.mapping[k]."""
    return _permutation_operator(perm.mapping, s.twice_spin)


def is_witness_permutation(perm: Permutation) -> bool:
    """True for nontrivial involutions, the permutations usable as witnesses.

    An involution is a product of disjoint transpositions; its operator is
    Hermitian and a product state gives it the expectation
    prod |<phi_i|phi_j>|^2 >= 0 over the swapped pairs. Permutations with a
    longer cycle can take complex product-state expectations, so they make
    no one-sided test.
    """
    return perm.is_involution() and not perm.is_identity()


def permutation_witness(rho: DensityMatrix, perm: Permutation, s: SpinLabel) -> WitnessReport:
    """Evaluate a permutation witness; only nontrivial involutions are accepted."""
    if not is_witness_permutation(perm):
        if perm.is_identity():
            reason = "the identity permutation detects nothing"
        else:
            long = [c for c in perm.cycles() if len(c) > 2]
            reason = f"cycles {long} of length > 2 give non-Hermitian operators"
        raise ValidationError(f"not a witness permutation: {reason}")
    if len(rho.local_dims) != perm.n_sites or any(d != s.dim for d in rho.local_dims):
        raise ValidationError(
            f"state with local dims {rho.local_dims} does not match a {perm.n_sites}-site spin-{s} register"
        )
    value = rho.expectation(permutation_operator(perm, s))
    verdict = "entangled" if value < -FIRE_MARGIN else "inconclusive"
    return WitnessReport("permutation", value, 0.0, verdict, tuple(perm.mapping))


def random_separable(s: SpinLabel, n_sites: int, n_terms: int, seed) -> DensityMatrix:
    """Seeded convex mixture of random pure product states.

    Mixing weights are uniform on the simplex (normalized exponentials);
    each local factor is a normalized complex Gaussian vector.
    """
    if n_terms < 1:
        raise ValidationError(f"need at least one product term, got {n_terms}")
    n = s.dim
    if n ** n_sites > SITE_DIM_CAP:
        raise ValidationError(f"register dimension {n ** n_sites} exceeds cap {SITE_DIM_CAP}")
    rng = np.random.default_rng(seed)
    weights = rng.exponential(size=n_terms)
    weights /= weights.sum()
    dim = n ** n_sites
    acc = np.zeros((dim, dim), dtype=complex)
    for p in weights:
        factors = []
        for _ in range(n_sites):
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            factors.append(v / np.linalg.norm(v))
        vec = kron_all(*factors)
        acc += p * np.outer(vec, vec.conj())
    return DensityMatrix(acc, (n,) * n_sites)


def chain_hamiltonian(
    s: SpinLabel, length: int, model: str, coupling: float = 1.0, boundary: str = "open"
) -> np.ndarray:
    """Nearest-neighbor chain of swaps or of shifted singlet projectors.

    model="swap" gives J sum_<ij> S_ij; model="singlet" gives
    J sum_<ij> (P0_ij - 1/(2s+1)). The periodic bond is added for length
    three and up (for two sites it would duplicate the only bond).
    """
    if length < 2:
        raise ValidationError(f"chain needs at least two sites, got {length}")
    if model not in ("swap", "singlet"):
        raise ValidationError(f"unknown chain model {model!r}")
    if boundary not in ("open", "periodic"):
        raise ValidationError(f"unknown boundary {boundary!r}")
    n = s.dim
    if n ** length > SITE_DIM_CAP:
        raise ValidationError(f"register dimension {n ** length} exceeds cap {SITE_DIM_CAP}")
    bonds = [(i, i + 1) for i in range(length - 1)]
    if boundary == "periodic" and length > 2:
        bonds.append((length - 1, 0))
    dim = n ** length
    acc = np.zeros((dim, dim), dtype=complex)
    shift = 1.0 / n if model == "singlet" else 0.0
    for i, j in bonds:
        acc += _lifted_pair_op(s.twice_spin, length, i, j, model)
        if shift:
            acc -= shift * np.eye(dim)
    return coupling * acc


def hamiltonian_witness(
    s: SpinLabel, length: int, model: str, coupling: float = 1.0, boundary: str = "open"
) -> WitnessReport:
    """Ground-state energy of a chain witness operator.

    For the swap model the witness is the Hamiltonian itself; for the
    singlet model it is sum_<ij> (1/(2s+1) - P0_ij), which separable states
    keep nonnegative. Both need antiferromagnetic coupling J > 0; a
    negative ground energy certifies an entangled ground state.
    """
    if coupling <= 0:
        raise ValidationError(
            f"witness requires antiferromagnetic coupling J > 0, got J = {coupling}"
        )
    h = chain_hamiltonian(s, length, model, coupling, boundary)
    witness_op = -h if model == "singlet" else h
    ground = float(np.linalg.eigvalsh((witness_op + witness_op.conj().T) / 2)[0])
    verdict = "entangled" if ground < -FIRE_MARGIN else "inconclusive"
    return WitnessReport(f"hamiltonian_{model}", ground, 0.0, verdict)


def total_spin_component(s: SpinLabel, n_sites: int, axis: int) -> np.ndarray:
    """Sum over sites of one single-site spin component, lifted to the register."""
    n = s.dim
    comp = spin_matrices(s)[axis]
    dim = n ** n_sites
    acc = np.zeros((dim, dim), dtype=complex)
    for site in range(n_sites):
        factors = [np.eye(n, dtype=complex)] * n_sites
        factors[site] = comp
        acc += kron_all(*factors)
    return acc
