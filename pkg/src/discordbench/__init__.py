"""Quantum discord of beamsplitter photon-pair states.

A compact toolkit for a polarization-entangled pair source built from a
single nonlinear crystal and a beamsplitter: exact two-qubit output states,
discord and concurrence, delay and multi-pair device models, and simulated
maximum-likelihood tomography.
"""

__version__ = "0.1.0"

from .kernels import BACKEND
from .linalg import (
    BASIS_2Q,
    DensityMatrix,
    NotHermitianError,
    fidelity,
    partial_trace,
    purity,
)
from .measures import (
    DiscordResult,
    NotBellDiagonalError,
    ProjectorPair,
    concurrence,
    conditional_entropy,
    discord,
    discord_bell_diagonal_oracle,
    mutual_information,
    von_neumann_entropy,
)
from .multiphoton import ErrorModelParams, error_fraction
from .optics import (
    EmptyPostselectionError,
    SourceParams,
    TruncationOverflowError,
    coherence_length,
    coherent_output,
    delayed_incoherent_output,
    hom_dip,
    hom_dip_fwhm,
    incoherent_output,
    postselect_two_qubit,
)
from .tomography import (
    BootstrapResult,
    NotInformationallyCompleteError,
    ProjectorSetting,
    ReconstructionResult,
    TomographyRecord,
    bootstrap_uncertainty,
    mle_reconstruct,
    simulate_counts,
    standard_settings,
)

__all__ = [
    "BACKEND",
    "BASIS_2Q",
    "BootstrapResult",
    "DensityMatrix",
    "DiscordResult",
    "EmptyPostselectionError",
    "ErrorModelParams",
    "NotBellDiagonalError",
    "NotHermitianError",
    "NotInformationallyCompleteError",
    "ProjectorPair",
    "ProjectorSetting",
    "ReconstructionResult",
    "SourceParams",
    "TomographyRecord",
    "TruncationOverflowError",
    "__version__",
    "bootstrap_uncertainty",
    "coherence_length",
    "coherent_output",
    "concurrence",
    "conditional_entropy",
    "delayed_incoherent_output",
    "discord",
    "discord_bell_diagonal_oracle",
    "error_fraction",
    "fidelity",
    "hom_dip",
    "hom_dip_fwhm",
    "incoherent_output",
    "mle_reconstruct",
    "mutual_information",
    "partial_trace",
    "purity",
    "postselect_two_qubit",
    "simulate_counts",
    "standard_settings",
    "von_neumann_entropy",
]
