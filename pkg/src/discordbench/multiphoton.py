"""Multi-photon contamination of the coincidence signal.

Non-photon-number-resolving detectors cannot distinguish a two-photon
coincidence from one caused by three or more photons. With Poissonian pulses
of mean photon number mu on each input, the fraction of coincidences
involving more than two photons is

    E(mu) = sum_{i+j >= 3} p(mu, i, j) / sum_{i+j >= 2} p(mu, i, j)

with ``p(mu, i, j) = P(mu, i) P(mu, j) Q(i + j)``, where Q(n) is the chance
that n photons spread over the two detectors produce a coincidence at all.
Detector efficiency is assumed independent of photon number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Truncation of the double sum over (i, j); the tail above i + j = 100 is
#: negligible for any mu of interest here.
DEFAULT_N_CUT = 100


@dataclass(frozen=True)
class ErrorModelParams:
    """Mean photon number and photon-number truncation of the error model."""

    mu: float
    n_cut: int = DEFAULT_N_CUT

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.n_cut < 3:
            raise ValueError(f"n_cut must be >= 3, got {self.n_cut}")


def poisson_pmf(mu: float, n: int) -> float:
    """P(mu, n) = e^{-mu} mu^n / n!, evaluated in the log domain."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return math.exp(n * math.log(mu) - mu - math.lgamma(n + 1))


def coincidence_involvement(n: int) -> float:
    """Q(n) = 1 - 2^{1-n}: probability that n photons yield a coincidence.

    Each photon independently reaches either detector with probability 1/2;
    a coincidence needs both detectors hit, and Q(1) = 0.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 1.0 - 2.0 ** (1 - n)


def error_fraction(mu, n_cut: int = DEFAULT_N_CUT) -> float:
    """Proportion of coincidence detections involving more than two photons.

    Accepts either a mean photon number or an :class:`ErrorModelParams`.
    Monotone non-decreasing in mu and bounded in [0, 1].
    """
    if isinstance(mu, ErrorModelParams):
        mu, n_cut = mu.mu, mu.n_cut
    params = ErrorModelParams(mu, n_cut)  # validate
    pmf = [poisson_pmf(params.mu, n) for n in range(params.n_cut + 1)]
    multi = 0.0
    total = 0.0
    for i in range(params.n_cut + 1):
        for j in range(params.n_cut + 1 - i):
            s = i + j
            if s < 2:
                continue
            p = pmf[i] * pmf[j] * coincidence_involvement(s)
            total += p
            if s >= 3:
                multi += p
    return multi / total
