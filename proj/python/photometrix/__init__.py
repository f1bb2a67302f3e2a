"""Python access to the photometrix numerical core."""

from ._photometrix import (
    Error,
    Infeasible,
    NoCrossing,
    advantage_ratio,
    beamsplitter_prob,
    cfi_nrm,
    cfi_of_L,
    mean_photons,
    optimize_squeezed,
    qfi_fock_pair,
    qfi_noon,
    qfi_noon_poisson,
    qfi_tfs_exact,
    qfi_tfs_poisson,
    switch_time,
    switch_time_formula,
    tfs_precision,
)

__all__ = [
    "Error",
    "Infeasible",
    "NoCrossing",
    "advantage_ratio",
    "beamsplitter_prob",
    "cfi_nrm",
    "cfi_of_L",
    "mean_photons",
    "optimize_squeezed",
    "qfi_fock_pair",
    "qfi_noon",
    "qfi_noon_poisson",
    "qfi_tfs_exact",
    "qfi_tfs_poisson",
    "switch_time",
    "switch_time_formula",
    "tfs_precision",
]
