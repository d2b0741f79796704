"""Structure tools for signed graphs with a fixed smallest eigenvalue.

Switching classes and forbidden patterns, positive-clique neighbourhoods,
Hoffman signed graphs and their special matrices, norm-m representations,
integrability certificates and clique-neighbourhood decompositions.
"""

__version__ = "0.1.0"

from .errors import (
    BelowThresholdWarning,
    LemmaViolation,
    NoRepresentationError,
    NotPositiveSemidefiniteError,
    PatternWitnessError,
    SignedGraphError,
)
from .graph import SignedGraph, Sign, build_signed_graph, complete, induced_subgraph, ktilde, star, switch
from .spectra import cholesky_psd, eigenvalues, smallest_eigenvalue, spectrum
from .switching import find_switching_pattern, is_pattern_free, ktilde_family, switching_equivalent
from .cliques import (
    clique_relation,
    m_neighborhoods,
    maximal_positive_cliques,
    plex_degree,
    quasi_positive_clique,
    trichotomy_check,
)
from .hoffman import HoffmanSignedGraph, associated_hoffman_graph, expand, hoffman_eigenvalues, special_matrix
from .lattice import build_representation, lattice_from_hoffman, lattice_minimal_norm, reduce_representation
from .integrability import integrability_search, verify_certificate
from .structure import DecompositionParams, KappaConfig, decompose, sigma_families, verify_decomposition
from .catalog import catalog_f_minus2, classify_small, contains_minimal_forbidden

__all__ = [
    "BelowThresholdWarning", "LemmaViolation", "NoRepresentationError", "NotPositiveSemidefiniteError",
    "PatternWitnessError", "SignedGraphError", "SignedGraph", "Sign", "build_signed_graph", "complete",
    "induced_subgraph", "ktilde", "star", "switch", "cholesky_psd", "eigenvalues", "smallest_eigenvalue",
    "spectrum", "find_switching_pattern", "is_pattern_free", "ktilde_family", "switching_equivalent",
    "clique_relation", "m_neighborhoods", "maximal_positive_cliques", "plex_degree", "quasi_positive_clique",
    "trichotomy_check", "HoffmanSignedGraph", "associated_hoffman_graph", "expand", "hoffman_eigenvalues",
    "special_matrix", "build_representation", "lattice_from_hoffman", "lattice_minimal_norm",
    "reduce_representation", "integrability_search", "verify_certificate", "DecompositionParams",
    "KappaConfig", "decompose", "sigma_families", "verify_decomposition", "catalog_f_minus2",
    "classify_small", "contains_minimal_forbidden",
]
