"""
Oracle - independent Numerov eigenvalues and the exact Hulthen s-wave spectrum
"""

from .hulthen import hulthen_exact_s_wave, hulthen_threshold
from .numerov import EigenResult, RadialGrid, solve

__all__ = ["EigenResult", "RadialGrid", "hulthen_exact_s_wave", "hulthen_threshold", "solve"]
