"""Simulated two-qubit state tomography with maximum-likelihood reconstruction.

Pipeline: a schedule of local projector settings, Poissonian coincidence
counts drawn from the true state, reconstruction by maximizing the count
likelihood over physical states (Cholesky-style positive parametrization,
so the estimate is PSD with unit trace by construction), and parametric
bootstrap for uncertainty on derived quantities.

The total flux is not an input of the reconstruction: the Poisson
log-likelihood ``sum_k (n_k log(N p_k) - N p_k)`` is profiled over the scale
N analytically (``N_hat = sum n / sum p``), leaving a multinomial-style
objective in the state alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import minimize
from scipy.special import gammaln

from .linalg import DensityMatrix, _as_matrix, fidelity as _fidelity
from . import measures

_KET = {
    "H": np.array([1.0, 0.0], dtype=complex),
    "V": np.array([0.0, 1.0], dtype=complex),
    "D": np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0),
    "R": np.array([1.0, 1.0j], dtype=complex) / math.sqrt(2.0),
}

# Lower-triangle layout of the 16 real parameters: 4 real diagonal entries,
# then (re, im) pairs for the strictly-lower entries in this order.
_LOWER = ((1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2))

_REV = np.eye(4)[::-1]  # index-reversal permutation


class NotInformationallyCompleteError(ValueError):
    """The records cannot determine a unique two-qubit state."""


@dataclass(frozen=True)
class ProjectorSetting:
    """A local projector pair: measure |ket_a><ket_a| x |ket_b><ket_b|."""

    label: str
    ket_a: np.ndarray
    ket_b: np.ndarray

    def __post_init__(self):
        for ket in (self.ket_a, self.ket_b):
            if abs(np.vdot(ket, ket).real - 1.0) > 1e-12:
                raise ValueError(f"setting {self.label!r} has an unnormalized ket")

    def ket(self) -> np.ndarray:
        """The two-qubit projector ket in the {HH, HV, VH, VV} basis."""
        return np.kron(self.ket_a, self.ket_b)


@dataclass(frozen=True)
class TomographyRecord:
    """One projector setting together with its coincidence count."""

    setting: ProjectorSetting
    count: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"count must be >= 0, got {self.count}")


@dataclass(frozen=True)
class ReconstructionResult:
    """Maximum-likelihood estimate and optimizer diagnostics."""

    rho: DensityMatrix
    log_likelihood: float
    iterations: int
    converged: bool
    loglik_path: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))


def standard_settings() -> list[ProjectorSetting]:
    """The 16-setting schedule {H, V, D, R} x {H, V, D, R}.

    D = (H + V)/sqrt2 and R = (H + iV)/sqrt2; the per-arm set spans the
    single-qubit operator space, so the tensored schedule is informationally
    complete.
    """
    return [
        ProjectorSetting(a + b, _KET[a], _KET[b])
        for a in "HVDR"
        for b in "HVDR"
    ]


def setting_probabilities(rho, settings) -> np.ndarray:
    """Born probabilities <s_k| rho |s_k> for each setting."""
    mat = _as_matrix(rho)
    kets = np.array([s.ket() for s in settings])
    return np.einsum("ki,ij,kj->k", kets.conj(), mat, kets).real


def simulate_counts(rho_true, settings, mean_total: float, seed: int) -> list[TomographyRecord]:
    """Draw Poissonian coincidence counts for every setting.

    ``mean_total`` is the expected count for a unit-probability projector;
    setting k draws Poisson(mean_total * <s_k|rho|s_k>). Deterministic for a
    fixed seed.
    """
    if not mean_total > 0:
        raise ValueError(f"mean_total must be positive, got {mean_total}")
    probs = np.clip(setting_probabilities(rho_true, settings), 0.0, None)
    rng = np.random.default_rng(seed)
    counts = rng.poisson(mean_total * probs)
    return [TomographyRecord(s, int(c)) for s, c in zip(settings, counts)]


def _t_from_params(t: np.ndarray) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[np.diag_indices(4)] = t[:4]
    for idx, (i, j) in enumerate(_LOWER):
        m[i, j] = t[4 + 2 * idx] + 1j * t[5 + 2 * idx]
    return m


def _params_from_t(m: np.ndarray) -> np.ndarray:
    t = np.zeros(16)
    t[:4] = np.diag(m).real
    for idx, (i, j) in enumerate(_LOWER):
        t[4 + 2 * idx] = m[i, j].real
        t[5 + 2 * idx] = m[i, j].imag
    return t


def _design_matrix(kets: np.ndarray) -> np.ndarray:
    """Rows map a Hermitian matrix (16 real parameters) to <s|X|s>."""
    cols = []
    for i in range(4):
        cols.append(np.abs(kets[:, i]) ** 2)
    for i in range(4):
        for j in range(i + 1, 4):
            z = kets[:, i].conj() * kets[:, j]
            cols.append(2.0 * z.real)
            cols.append(-2.0 * z.imag)
    return np.column_stack(cols)


def _linear_inversion(kets: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Least-squares estimate of the (unnormalized) state, PSD-floored."""
    design = _design_matrix(kets)
    x, *_ = np.linalg.lstsq(design, counts, rcond=None)
    m = np.zeros((4, 4), dtype=complex)
    m[np.diag_indices(4)] = x[:4]
    k = 4
    for i in range(4):
        for j in range(i + 1, 4):
            m[i, j] = x[k] + 1j * x[k + 1]
            m[j, i] = x[k] - 1j * x[k + 1]
            k += 2
    w, v = np.linalg.eigh(m)
    floor = max(1e-6 * float(np.sum(np.abs(w))), 1e-12)
    w = np.maximum(w, floor)
    m = (v * w) @ v.conj().T
    return m / np.trace(m).real


def _cholesky_lower_dag(rho0: np.ndarray) -> np.ndarray:
    # T lower-triangular with T^dag T = rho0: upper-Cholesky in reversed
    # index order, permuted back.
    r = scipy.linalg.cholesky(_REV @ rho0 @ _REV, lower=False)
    return _REV @ r @ _REV


def mle_reconstruct(records, max_iter: int = 5000, tol: float = 1e-10) -> ReconstructionResult:
    """Maximum-likelihood state estimate from tomography records.

    The state is parametrized as ``rho = T^dag T / Tr(T^dag T)`` with a
    lower-triangular T (16 real parameters), so every candidate is physical.
    The profiled Poisson log-likelihood is maximized with L-BFGS-B starting
    from a PSD-floored linear-inversion estimate; ``converged`` reports a
    relative log-likelihood change below ``tol`` within ``max_iter``
    iterations, and a non-converged run still returns the best state found.

    Raises
    ------
    NotInformationallyCompleteError
        Fewer than 16 records, settings that do not span the operator
        space, or all-zero counts.
    """
    records = list(records)
    if len(records) < 16:
        raise NotInformationallyCompleteError(f"need >= 16 records, got {len(records)}")
    kets = np.array([r.setting.ket() for r in records])
    counts = np.array([r.count for r in records], dtype=float)
    if np.linalg.matrix_rank(_design_matrix(kets), tol=1e-10) < 16:
        raise NotInformationallyCompleteError("settings do not span the operator space")
    total = counts.sum()
    if total == 0:
        raise NotInformationallyCompleteError("all counts are zero")

    def probs(t: np.ndarray) -> np.ndarray:
        tm = _t_from_params(t)
        w = kets @ tm.T  # row k is T|s_k>, so <s_k|T^dag T|s_k> = |row|^2
        p = np.einsum("ki,ki->k", w, w.conj()).real
        return p / np.sum(t * t)

    # Objective normalized per count so the optimizer's relative ftol means
    # the same parameter resolution at any flux level.
    def neg_profile_loglik(t: np.ndarray) -> float:
        p = np.clip(probs(t), 1e-300, None)
        return -(counts @ np.log(p) / total - math.log(p.sum()))

    t0 = _params_from_t(_cholesky_lower_dag(_linear_inversion(kets, counts)))
    path = [-total * neg_profile_loglik(t0)]
    res = minimize(
        neg_profile_loglik,
        t0,
        method="L-BFGS-B",
        callback=lambda xk: path.append(-total * neg_profile_loglik(xk)),
        options={"maxiter": max_iter, "ftol": tol, "gtol": 1e-12, "maxfun": 10 * max_iter},
    )
    t_best = res.x
    p_best = np.clip(probs(t_best), 1e-300, None)
    means = (total / p_best.sum()) * p_best
    loglik = float(np.sum(counts * np.log(means) - means - gammaln(counts + 1)))
    tm = _t_from_params(t_best)
    return ReconstructionResult(
        rho=DensityMatrix(tm.conj().T @ tm / np.sum(t_best * t_best)),
        log_likelihood=loglik,
        iterations=int(res.nit),
        converged=bool(res.status == 0),
        loglik_path=np.array(path),
    )


@dataclass(frozen=True)
class BootstrapResult:
    """Bootstrap mean and standard deviation of a derived statistic."""

    mean: float
    std: float
    n_failed: int = 0


def bootstrap_uncertainty(records, n_resamples: int, seed: int, statistic: str,
                          target=None) -> BootstrapResult:
    """Parametric bootstrap over Poisson-resampled counts.

    Each resample draws ``count_k* ~ Poisson(count_k)``, re-runs the MLE,
    and evaluates ``statistic``: "discord", "concurrence", or "fidelity"
    (against ``target``). Resample seeds derive deterministically from
    ``seed``. MLE failures are counted in ``n_failed`` and excluded from the
    returned mean and standard deviation.
    """
    if n_resamples < 2:
        raise ValueError(f"n_resamples must be >= 2, got {n_resamples}")
    if statistic == "discord":
        stat = lambda rho: measures.discord(rho).discord
    elif statistic == "concurrence":
        stat = measures.concurrence
    elif statistic == "fidelity":
        if target is None:
            raise ValueError("statistic 'fidelity' needs a target state")
        stat = lambda rho: _fidelity(rho, target)
    else:
        raise ValueError(f"unknown statistic {statistic!r}")

    records = list(records)
    base = np.array([r.count for r in records], dtype=float)
    settings = [r.setting for r in records]
    values = []
    n_failed = 0
    for child in np.random.SeedSequence(seed).spawn(n_resamples):
        rng = np.random.default_rng(child)
        resampled = [
            TomographyRecord(s, int(c))
            for s, c in zip(settings, rng.poisson(base))
        ]
        try:
            rec = mle_reconstruct(resampled)
        except NotInformationallyCompleteError:
            n_failed += 1
            continue
        if not rec.converged:
            n_failed += 1
            continue
        values.append(stat(rec.rho))
    if not values:
        raise RuntimeError("every bootstrap resample failed to reconstruct")
    arr = np.array(values)
    std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return BootstrapResult(mean=float(arr.mean()), std=std, n_failed=n_failed)
