import numpy as np

from spinwit.numerics import DensityMatrix


def random_hermitian(dim, rng):
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (m + m.conj().T) / 2


def random_density(local_dims, rng):
    """Full-rank random mixed state (Wishart normalized to unit trace)."""
    dim = int(np.prod(local_dims))
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace(), local_dims)


def random_state_vector(dim, rng):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
