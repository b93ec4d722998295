"""Relativistic hydrogen spectra from the eta coupling function."""

from ._core import (
    Branch,
    BoundState,
    BracketError,
    ConstantsError,
    DomainError,
    GridTooCoarseError,
    InvalidStateError,
    PhysicalConstants,
    SpinMode,
    SubcriticalError,
    TerminationError,
    Validity,
    dirac_form_energy,
    energy,
    eta,
    length_scale_nm,
    shoot,
    transition,
    verify,
    wavefunction,
)

__all__ = [
    "Branch",
    "BoundState",
    "BracketError",
    "ConstantsError",
    "DomainError",
    "GridTooCoarseError",
    "InvalidStateError",
    "PhysicalConstants",
    "SpinMode",
    "SubcriticalError",
    "TerminationError",
    "Validity",
    "dirac_form_energy",
    "energy",
    "eta",
    "length_scale_nm",
    "shoot",
    "transition",
    "verify",
    "wavefunction",
]
