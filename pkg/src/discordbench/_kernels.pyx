# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled measurement-scan kernel.

Same contract as ``_kernels_py.conditional_entropy_scan``; this version runs
the angle loop in C and is the default backend for the discord optimizer.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, log

cnp.import_array()

cdef double P_FLOOR = 1e-12
cdef double LN2 = 0.6931471805599453


cdef inline double _entropy2(double r) nogil:
    # Entropy in bits of a qubit state with eigenvalues (1 +- r) / 2.
    cdef double hi = (1.0 + r) / 2.0
    cdef double lo = (1.0 - r) / 2.0
    cdef double s = 0.0
    if hi > 0.0:
        s -= hi * log(hi)
    if lo > 0.0:
        s -= lo * log(lo)
    return s / LN2


cdef inline double complex _sandwich(const double complex[:, :] rho, int ra, int ca,
                                     double complex v0, double complex v1) nogil:
    # sum_{b, b'} conj(v_b) rho[ra + b, ca + b'] v_{b'} for a 2x2 block.
    cdef double complex acc
    acc = v0.conjugate() * (rho[ra, ca] * v0 + rho[ra, ca + 1] * v1)
    acc = acc + v1.conjugate() * (rho[ra + 1, ca] * v0 + rho[ra + 1, ca + 1] * v1)
    return acc


def conditional_entropy_scan(const double complex[:, :] rho,
                             const double[:] thetas,
                             const double[:] phis):
    """Conditional entropy of qubit A after measuring qubit B projectively.

    See ``_kernels_py.conditional_entropy_scan`` for the definition; input
    validation lives in ``kernels``.
    """
    cdef Py_ssize_t n = thetas.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n, dtype=np.float64)
    cdef double[:] out_v = out
    cdef Py_ssize_t k
    cdef int o
    cdef double ct, st, cp, sp, p, det, d, disc, r, total
    cdef double complex phase, v0, v1, m00, m11, m01

    with nogil:
        for k in range(n):
            ct = cos(thetas[k] / 2.0)
            st = sin(thetas[k] / 2.0)
            cp = cos(phis[k])
            sp = sin(phis[k])
            phase = cp + 1j * sp
            total = 0.0
            for o in range(2):
                if o == 0:
                    v0 = ct
                    v1 = phase * st
                else:
                    v0 = st
                    v1 = -phase * ct
                m00 = _sandwich(rho, 0, 0, v0, v1)
                m01 = _sandwich(rho, 0, 2, v0, v1)
                m11 = _sandwich(rho, 2, 2, v0, v1)
                p = m00.real + m11.real
                if p > P_FLOOR:
                    det = m00.real * m11.real - (m01.real * m01.real + m01.imag * m01.imag)
                    d = det / (p * p)
                    disc = 1.0 - 4.0 * d
                    if disc < 0.0:
                        disc = 0.0
                    r = sqrt(disc)
                    if r > 1.0:
                        r = 1.0
                    total += p * _entropy2(r)
            out_v[k] = total
    return out
