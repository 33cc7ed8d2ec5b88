import numpy as np

# Bell basis kets in the {HH, HV, VH, VV} ordering.
_S2 = 1.0 / np.sqrt(2.0)
BELL_KETS = np.array([
    [_S2, 0.0, 0.0, _S2],     # phi+
    [_S2, 0.0, 0.0, -_S2],    # phi-
    [0.0, _S2, _S2, 0.0],     # psi+
    [0.0, _S2, -_S2, 0.0],    # psi-
], dtype=complex)


def random_pure_ket(rng, dim=4):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim=4, rank=None):
    # Ginibre ensemble: G G^dag normalized, full rank by default.
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_bell_diagonal(rng):
    p = rng.dirichlet(np.ones(4))
    return (BELL_KETS.T * p) @ BELL_KETS.conj()


def random_unitary(rng, dim=2):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))
