"""Exact verification of q-supercongruences for finite truncated q-series.

Every check is a finite computation over the rationals: sums of q-Pochhammer
quotients are reduced modulo products of cyclotomic polynomials, and
two-parameter congruences are settled by interpolation past a degree bound.
"""

from .congruence import CongruenceVerdict, Modulus, Status
from .verify import TARGETS, explore_conjecture

__version__ = "0.1.0"

__all__ = ["CongruenceVerdict", "Modulus", "Status", "TARGETS", "explore_conjecture", "__version__"]
