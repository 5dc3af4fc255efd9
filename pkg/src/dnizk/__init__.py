"""Distributed zero-knowledge proofs for graph properties, with a synchronous network simulator."""

__version__ = "0.1.0"
