"""
LPT Box - semiclassical hbar-expansion of bound-state energies in screened Coulomb potentials
"""

__version__ = "0.1.0"
