"""cechmf: exact chain-level Cech/Hochschild engine for matrix factorization scenes."""

__version__ = "0.1.0"
