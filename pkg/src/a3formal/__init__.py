"""Exact F_p toolkit for Hochschild cohomology, minimal A3-models and Demushkin formality."""
__version__ = "0.1.0"
