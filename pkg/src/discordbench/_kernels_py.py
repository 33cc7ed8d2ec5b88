"""Pure-numpy fallback for the measurement-scan kernel.

Semantics must match the compiled extension ``_kernels`` bit-for-bit at the
level of the formulas used: projector kets, the 1e-12 outcome-probability
floor, and the closed-form 2x2 eigenvalues. Keep the two implementations in
lockstep; ``tests/test_kernels.py`` enforces agreement.
"""

from __future__ import annotations

import numpy as np

# Outcomes with probability below this floor contribute zero entropy.
P_FLOOR = 1e-12


def conditional_entropy_scan(rho: np.ndarray, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Conditional entropy of qubit A after measuring qubit B projectively.

    For each angle pair ``(theta_k, phi_k)`` the measurement basis on B is
    ``|n> = cos(theta/2)|H> + e^{i phi} sin(theta/2)|V>`` and its orthogonal
    complement. Returns ``sum_j P_j S(rho_{A|j})`` in bits, one value per
    angle pair.
    """
    n = thetas.shape[0]
    half = thetas / 2.0
    phase = np.exp(1j * phis)
    # kets[o, k, b]: outcome o in {0, 1}, grid point k, B-basis component b
    kets = np.empty((2, n, 2), dtype=complex)
    kets[0, :, 0] = np.cos(half)
    kets[0, :, 1] = phase * np.sin(half)
    kets[1, :, 0] = np.sin(half)
    kets[1, :, 1] = -phase * np.cos(half)

    t = rho.reshape(2, 2, 2, 2)  # [a, b, a', b']
    out = np.zeros(n, dtype=float)
    for o in (0, 1):
        v = kets[o]
        # M[k, a, a'] = sum_{b, b'} conj(v[k, b]) rho[a, b, a', b'] v[k, b']
        m = np.einsum("kb,abcd,kd->kac", v.conj(), t, v)
        p = (m[:, 0, 0] + m[:, 1, 1]).real
        det = (m[:, 0, 0].real * m[:, 1, 1].real) - (np.abs(m[:, 0, 1]) ** 2)
        live = p > P_FLOOR
        d = np.zeros(n)
        d[live] = det[live] / (p[live] * p[live])
        r = np.sqrt(np.maximum(1.0 - 4.0 * d, 0.0))
        r = np.minimum(r, 1.0)
        lam_hi = (1.0 + r) / 2.0
        lam_lo = (1.0 - r) / 2.0
        s = np.zeros(n)
        pos = lam_hi > 0.0
        s[pos] -= lam_hi[pos] * np.log2(lam_hi[pos])
        pos = lam_lo > 0.0
        s[pos] -= lam_lo[pos] * np.log2(lam_lo[pos])
        out[live] += p[live] * s[live]
    return out
