"""Universal compiler: random-oracle commitments, equality testing, ideal NIZK backend."""

from .equality import CodeParams, default_t, equality_check, equality_encode, equality_round, exact_acceptance
from .nizk import THREE_COLORABLE, GraphProperty, IdealNizk, NizkBackend
from .oracle import Opening, OracleCollision, RandomOracle, commit, open_verify
from .protocol import (EqualityMsg, ForgedProof, HonestUniversal, InconsistentMatrices, MissingEdge,
                       TamperedOpening, UniversalCert, UniversalProtocol, leaked_edges,
                       simulate_universal_views, universal_prove, verify_view)

__all__ = [
    "CodeParams", "default_t", "equality_check", "equality_encode", "equality_round", "exact_acceptance",
    "THREE_COLORABLE", "GraphProperty", "IdealNizk", "NizkBackend",
    "Opening", "OracleCollision", "RandomOracle", "commit", "open_verify",
    "EqualityMsg", "ForgedProof", "HonestUniversal", "InconsistentMatrices", "MissingEdge",
    "TamperedOpening", "UniversalCert", "UniversalProtocol", "leaked_edges",
    "simulate_universal_views", "universal_prove", "verify_view",
]
