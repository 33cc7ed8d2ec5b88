"""Dense complex linear algebra for one- and two-qubit states.

All matrices are numpy ``complex128`` arrays. Two-qubit operators use the
fixed product basis ``{|HH>, |HV>, |VH>, |VV>}`` where the first tensor
factor is subsystem A (beamsplitter output c) and the second is subsystem B
(output d). Every module in the package relies on this ordering.
"""

from __future__ import annotations

import numpy as np

#: Fixed two-qubit basis labels, first factor = subsystem A (output c).
BASIS_2Q = ("HH", "HV", "VH", "VV")
#: Single-qubit basis labels.
BASIS_1Q = ("H", "V")

ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Construction tolerances for DensityMatrix (see class docstring).
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


class NotHermitianError(ValueError):
    """Raised when a matrix required to be Hermitian is not."""


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor as the slow index.

    ``tensor(A, B)[(i*rb + k), (j*cb + l)] = A[i, j] * B[k, l]``, so for
    qubit states the result is expressed in the ``BASIS_2Q`` ordering.
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _as_matrix(rho) -> np.ndarray:
    """Accept a DensityMatrix or a bare ndarray and return the ndarray."""
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


class DensityMatrix:
    """A validated 1- or 2-qubit density matrix.

    Construction enforces the state invariants:

    - Hermitian within ``max |rho - rho^dag| <= 1e-12``,
    - unit trace within ``1e-10``,
    - positive semidefinite: smallest eigenvalue ``>= -1e-10``.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero and the state is
    renormalized, absorbing floating-point noise from mixing operations;
    anything more negative is rejected. The stored matrix is read-only.
    """

    __slots__ = ("_mat",)

    def __init__(self, mat: np.ndarray):
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if mat.shape[0] not in (2, 4):
            raise ValueError(f"only 1- and 2-qubit states supported, got dim {mat.shape[0]}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("density matrix contains NaN or Inf")
        herm_defect = np.max(np.abs(mat - mat.conj().T))
        if herm_defect > HERMITICITY_TOL:
            raise NotHermitianError(
                f"density matrix not Hermitian: max |rho - rho^dag| = {herm_defect:.3e}"
            )
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} != 1")
        mat = (mat + mat.conj().T) / 2.0
        w, v = np.linalg.eigh(mat)
        if w[0] < -PSD_TOL:
            raise ValueError(f"density matrix not PSD: min eigenvalue {w[0]:.3e}")
        if w[0] < 0.0:
            w = np.maximum(w, 0.0)
            mat = (v * w) @ v.conj().T
            mat = (mat + mat.conj().T) / 2.0
            mat = mat / np.trace(mat).real
        mat.setflags(write=False)
        self._mat = mat

    @property
    def matrix(self) -> np.ndarray:
        """The underlying read-only complex matrix."""
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._mat
        return self._mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})\n{np.array_str(self._mat, precision=6)}"


def partial_trace(rho, keep: str = "A") -> DensityMatrix:
    """Reduce a two-qubit state to one of its single-qubit marginals.

    Parameters
    ----------
    rho : DensityMatrix or (4, 4) array
        Two-qubit state in the ``BASIS_2Q`` ordering.
    keep : {"A", "B"}
        Which subsystem survives: "A" traces out B (the second factor),
        "B" traces out A.

    Returns
    -------
    DensityMatrix
        The 2x2 reduced state.
    """
    mat = _as_matrix(rho)
    if mat.shape != (4, 4):
        raise ValueError(f"partial_trace needs a 4x4 matrix, got {mat.shape}")
    t = mat.reshape(2, 2, 2, 2)
    if keep == "A":
        red = np.einsum("abcb->ac", t)
    elif keep == "B":
        red = np.einsum("abad->bd", t)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityMatrix(red)


def hermitian_eig(m: np.ndarray, tol: float = 1e-10):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Parameters
    ----------
    m : square array
        Matrix to decompose; must satisfy ``max |m - m^dag| <= tol``.
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    (w, v) : (ndarray, ndarray)
        Real eigenvalues sorted descending and the matching orthonormal
        eigenvectors as columns, so ``m = v @ diag(w) @ v^dag``.

    Raises
    ------
    NotHermitianError
        If the Hermiticity defect exceeds ``tol``.
    """
    m = _as_matrix(m)
    defect = np.max(np.abs(m - m.conj().T))
    if defect > tol:
        raise NotHermitianError(f"max |m - m^dag| = {defect:.3e} exceeds tol {tol:.3e}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2.0)
    return w[::-1].copy(), v[:, ::-1].copy()


def purity(rho) -> float:
    """Tr(rho^2)."""
    mat = _as_matrix(rho)
    return float(np.trace(mat @ mat).real)


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(mat)
    w = np.maximum(w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(a, b) -> float:
    """Uhlmann fidelity ``F = (Tr sqrt(sqrt(a) b sqrt(a)))^2``.

    Symmetric in its arguments and equal to 1 iff the states coincide.
    For a pure ``a = |psi><psi|`` this reduces to ``<psi|b|psi>``.
    """
    ma = _as_matrix(a)
    mb = _as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    sa = _psd_sqrt(ma)
    w = np.linalg.eigvalsh(sa @ mb @ sa)
    w = np.maximum(w, 0.0)
    f = float(np.sum(np.sqrt(w)) ** 2)
    # rounding can push F a hair past the [0, 1] range
    return min(max(f, 0.0), 1.0)
