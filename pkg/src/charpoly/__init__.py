"""Exact computation of character-weighted increasing-subsequence statistics."""

__version__ = "0.1.0"
ENGINE_VERSION = f"charpoly-{__version__}"
