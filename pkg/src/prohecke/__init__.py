"""Exact pro-p Iwahori-Hecke modules for GL2, SL2 and their tori, with spectral-sequence bookkeeping."""
from __future__ import annotations

__version__ = "0.1.0"
