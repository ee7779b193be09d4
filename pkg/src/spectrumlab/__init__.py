"""Finite-systems laboratory: behavioral equivalences, modal distinguishing
formulas, geometric sequent checks, the energy-vector lattice, Lindenbaum
algebras, covering sieves, and free-extension implication."""

__version__ = "0.1.0"

from .lts import FinLTS, Homomorphism, catalog, catalog_names  # noqa: F401
