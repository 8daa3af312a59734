"""Exact q-double, r-spin and mixed Hurwitz numbers, their spectral curves
and quantum curves."""

from .hurwitz import HurwitzParams, HurwitzValue, connected_hurwitz, hurwitz_number
from .quantum import quantum_operator, quantum_operator_raw, verify_annihilation, z_principal
from .spectral import SpectralFamily, verify_spectral_equation, y_series

__version__ = "0.1.0"

__all__ = [
    "HurwitzParams",
    "HurwitzValue",
    "SpectralFamily",
    "connected_hurwitz",
    "hurwitz_number",
    "quantum_operator",
    "quantum_operator_raw",
    "verify_annihilation",
    "verify_spectral_equation",
    "y_series",
    "z_principal",
]
