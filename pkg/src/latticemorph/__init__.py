"""Phoneme-lattice morphological analysis for agglutinative languages."""

__version__ = "0.1.0"
