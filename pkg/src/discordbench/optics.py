"""Beamsplitter mode algebra and post-selected two-qubit output states.

The physical setting: two attenuated laser pulses, horizontally polarized in
input mode a and vertically polarized in input mode b, meet at a lossless
symmetric beamsplitter with outputs c and d. Detecting exactly one photon at
each output post-selects a polarization two-qubit state. With a fixed
relative phase between the inputs the post-selected state is a pure product
state; with a uniformly randomized phase it is the discordant mixture that
this package is built to analyze.

Fock states are dictionaries mapping the mode occupation
``(n_cH, n_cV, n_dH, n_dV)`` to a complex amplitude on the *normalized*
number ket. Inputs to the beamsplitter are polynomials in the two creation
operators, given as ``{(m, n): coeff}`` for
``sum coeff * (a_H^dag)^m (b_V^dag)^n |vac>``.

Delay model: a path-length difference ``delta`` between the pulses reduces
their temporal overlap by a Gaussian factor ``gamma(delta)``. The overlap
multiplies single-amplitude interference terms once and intensity-level
(coincidence) interference twice, hence the dip profile uses ``gamma**2``
where the density-matrix coherence uses ``gamma``. The width convention is
the Gaussian-spectrum coherence length ``l_c = (4 ln2 / pi) lambda0^2 /
dlambda``; ``sigma_g`` is fixed so the coincidence-dip FWHM equals ``l_c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix

#: Default Fock truncation. Post-selection only reads the two-photon sector,
#: which is exact at n_max = 2; the higher default leaves headroom for
#: sanity checks on the discarded sectors.
DEFAULT_N_MAX = 4

#: Ideal visibility of the classical (phase-averaged) coincidence dip.
CLASSICAL_HOM_VISIBILITY = 0.5

# (n_cH, n_cV, n_dH, n_dV) configurations that survive one-photon-per-port
# post-selection, in the two-qubit basis order {HH, HV, VH, VV}.
_QUBIT_CONFIGS = ((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))


class TruncationOverflowError(ValueError):
    """Input contains photon-number configurations above the truncation."""


class EmptyPostselectionError(ValueError):
    """No amplitude survives the one-photon-per-port post-selection."""


@dataclass(frozen=True)
class SourceParams:
    """Source and filter parameters of the interfering pulses.

    mu: mean photon number per pulse; phi: relative phase between the inputs
    in radians; lambda0/fwhm_lambda: center wavelength and filter bandwidth
    FWHM in nm.
    """

    mu: float = 0.1
    phi: float = 0.0
    lambda0: float = 785.0
    fwhm_lambda: float = 3.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not self.lambda0 > 0:
            raise ValueError(f"lambda0 must be positive, got {self.lambda0}")
        if not self.fwhm_lambda > 0:
            raise ValueError(f"fwhm_lambda must be positive, got {self.fwhm_lambda}")


def fock_norm(state: dict) -> float:
    """Euclidean norm of a Fock state vector."""
    return math.sqrt(sum(abs(a) ** 2 for a in state.values()))


def normalize_fock(state: dict) -> dict:
    nrm = fock_norm(state)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return {cfg: a / nrm for cfg, a in state.items()}


def number_state_input(m: int, n: int) -> dict:
    """Normalized input ket with m photons in a_H and n in b_V."""
    coeff = 1.0 / math.sqrt(math.factorial(m) * math.factorial(n))
    return {(m, n): coeff}


def coherent_input_poly(params: SourceParams, n_max: int = DEFAULT_N_MAX) -> dict:
    """Truncated two-mode coherent input, renormalized as a ket.

    Monomial coefficients ``e^{-mu} mu^{(m+n)/2} e^{i n phi} / (m! n!)`` on
    ``(a_H^dag)^m (b_V^dag)^n``, kept for ``m + n <= n_max``.
    """
    poly = {}
    norm_sq = 0.0
    for m in range(n_max + 1):
        for n in range(n_max + 1 - m):
            fm, fn = math.factorial(m), math.factorial(n)
            coeff = (
                math.exp(-params.mu)
                * params.mu ** ((m + n) / 2.0)
                * complex(math.cos(n * params.phi), math.sin(n * params.phi))
                / (fm * fn)
            )
            poly[(m, n)] = coeff
            norm_sq += abs(coeff) ** 2 * fm * fn  # ket amplitude = coeff * sqrt(m! n!)
    scale = 1.0 / math.sqrt(norm_sq)
    return {k: v * scale for k, v in poly.items()}


def bs_transform(poly: dict, n_max: int = DEFAULT_N_MAX) -> dict:
    """Send an input polynomial through the symmetric beamsplitter.

    Applies ``a^dag -> (c^dag + i d^dag)/sqrt(2)`` and
    ``b^dag -> (i c^dag + d^dag)/sqrt(2)``, expands binomially, and returns
    the normalized output Fock state over ``(n_cH, n_cV, n_dH, n_dV)``.

    Raises
    ------
    TruncationOverflowError
        If any input monomial has total photon number above ``n_max``.
    """
    out: dict = {}
    for (m, n), coeff in poly.items():
        if m + n > n_max:
            raise TruncationOverflowError(
                f"configuration (m={m}, n={n}) exceeds truncation n_max={n_max}"
            )
        if coeff == 0:
            continue
        scale = coeff / math.sqrt(2.0) ** (m + n)
        # (c_H + i d_H)^m: k photons to c_H, m-k to d_H, factor i^(m-k)
        for k in range(m + 1):
            term_h = math.comb(m, k) * (1j) ** (m - k)
            # (i c_V + d_V)^n: l photons to c_V with factor i^l
            for l in range(n + 1):
                term = scale * term_h * math.comb(n, l) * (1j) ** l
                cfg = (k, l, m - k, n - l)
                # operator monomial -> normalized ket picks up sqrt(n!) factors
                ket_amp = term * math.sqrt(
                    math.factorial(k)
                    * math.factorial(l)
                    * math.factorial(m - k)
                    * math.factorial(n - l)
                )
                out[cfg] = out.get(cfg, 0.0) + ket_amp
    return normalize_fock(out)


def postselect_two_qubit(state: dict) -> tuple[DensityMatrix, float]:
    """Keep exactly one photon per output port and map to a two-qubit state.

    Returns the renormalized polarization state in the {HH, HV, VH, VV}
    basis and the post-selection success probability (kept squared norm).

    Raises
    ------
    EmptyPostselectionError
        If the surviving amplitude norm is below 1e-14.
    """
    amps = np.array([state.get(cfg, 0.0) for cfg in _QUBIT_CONFIGS], dtype=complex)
    kept = float(np.vdot(amps, amps).real)
    if math.sqrt(kept) < 1e-14:
        raise EmptyPostselectionError("no amplitude with one photon at each output port")
    rho = np.outer(amps, amps.conj()) / kept
    return DensityMatrix(rho), kept


def coherent_output(params: SourceParams = SourceParams(),
                    n_max: int = DEFAULT_N_MAX) -> DensityMatrix:
    """Post-selected two-qubit state for mutually coherent inputs.

    Builds the truncated coherent input, applies the beamsplitter, and
    post-selects one photon per port. The two-photon sector is a coherent
    superposition, so the result is the pure state

        (i|HH> + e^{i phi}|HV> - e^{i phi}|VH> + i e^{2 i phi}|VV>) / 2

    independent of ``mu`` and exactly reproduced at any ``n_max >= 2``.
    """
    poly = coherent_input_poly(params, n_max)
    rho, _ = postselect_two_qubit(bs_transform(poly, n_max))
    return rho


def postselection_weights(mu: float) -> tuple[float, float, float]:
    """Normalized mixture weights of the (1,1), (2,0), (0,2) input cases.

    Raw coincidence-conditioned probabilities are ``P(mu,1)^2 / 2`` and
    ``P(mu,2) P(mu,0) / 2`` each for the one-sided cases; Poisson arithmetic
    makes the normalized triple (1/2, 1/4, 1/4) for every ``mu``.
    """
    p1 = math.exp(-mu) * mu
    p2 = math.exp(-mu) * mu * mu / 2.0
    p0 = math.exp(-mu)
    raw = (p1 * p1 / 2.0, p2 * p0 / 2.0, p0 * p2 / 2.0)
    total = sum(raw)
    return tuple(w / total for w in raw)


def incoherent_output(params: SourceParams = SourceParams()) -> DensityMatrix:
    """Post-selected two-qubit state for mutually incoherent inputs.

    With the relative phase uniformly randomized, the photon-number cases
    mix statistically: one photon per input (a Bell-state contribution after
    post-selection) and two photons in a single input (|HH> or |VV>). The
    Poisson-weighted mixture is mu-independent and equals the phase average
    of ``coherent_output``.
    """
    weights = postselection_weights(params.mu)
    cases = ((1, 1), (2, 0), (0, 2))
    mixed = np.zeros((4, 4), dtype=complex)
    for w, (m, n) in zip(weights, cases):
        rho, _ = postselect_two_qubit(bs_transform(number_state_input(m, n)))
        mixed += w * rho.matrix
    return DensityMatrix(mixed)


def coherence_length(lambda0_nm: float, fwhm_nm: float) -> float:
    """Coherence length in um for a Gaussian spectrum.

    ``l_c = (4 ln2 / pi) * lambda0^2 / dlambda`` (FWHM definition).
    """
    return (4.0 * math.log(2.0) / math.pi) * lambda0_nm ** 2 / fwhm_nm / 1000.0


def overlap_sigma(lambda0_nm: float, fwhm_nm: float) -> float:
    """Gaussian width (um) of the amplitude overlap gamma(delta).

    Fixed so the coincidence dip, whose profile is gamma**2, has FWHM equal
    to the coherence length: ``sigma_g = l_c / (2 sqrt(ln2))``.
    """
    return coherence_length(lambda0_nm, fwhm_nm) / (2.0 * math.sqrt(math.log(2.0)))


def gaussian_overlap(delta_um: float, sigma_um: float) -> float:
    """Amplitude overlap ``gamma = exp(-delta^2 / (2 sigma^2))``."""
    return math.exp(-(delta_um ** 2) / (2.0 * sigma_um ** 2))


def delayed_incoherent_output(params: SourceParams, delta_um: float) -> DensityMatrix:
    """Incoherent-input state at path-length difference ``delta_um``.

    Only the (1,1) two-photon interference cross term |HV><VH| carries the
    temporal overlap; the one-sided |HH>, |VV> contributions come from a
    single pulse and are delay-independent. The HV/VH coherences are thus
    scaled by ``gamma(delta)`` while the diagonal stays put: gamma(0) = 1
    reproduces the zero-delay mixture and gamma -> 0 the maximally mixed
    state.
    """
    if delta_um < 0:
        raise ValueError(f"delta_um must be >= 0, got {delta_um}")
    gamma = gaussian_overlap(delta_um, overlap_sigma(params.lambda0, params.fwhm_lambda))
    mat = np.array(incoherent_output(params).matrix)
    mat[1, 2] *= gamma
    mat[2, 1] *= gamma
    return DensityMatrix(mat)


def hom_dip(params: SourceParams, deltas) -> np.ndarray:
    """Normalized coincidence rate versus path-length difference.

    For identically polarized, phase-randomized inputs the coincidence rate
    is ``R(delta) = 1 - V * gamma(delta)^2`` with the classical-limit
    visibility V = 1/2: phase averaging kills first-order fringes but leaves
    the intensity-correlation dip. Returns an array of rows
    ``(delta_um, rate)``.
    """
    sigma = overlap_sigma(params.lambda0, params.fwhm_lambda)
    deltas = np.asarray(deltas, dtype=float)
    gamma_sq = np.exp(-(deltas ** 2) / sigma ** 2)
    rate = 1.0 - CLASSICAL_HOM_VISIBILITY * gamma_sq
    return np.column_stack([deltas, rate])


def hom_dip_fwhm(params: SourceParams) -> float:
    """FWHM (um) of the coincidence dip; equals the coherence length."""
    return coherence_length(params.lambda0, params.fwhm_lambda)
