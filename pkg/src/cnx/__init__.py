"""Tooling for the connexive logics C, CnK, CnCK, and CnCK_R: parsing,
bi-valuational Kripke evaluation, bounded countermodel search, Hilbert proof
checking, modal/conditional translations, and connexivity classification."""

__version__ = "0.1.0"
