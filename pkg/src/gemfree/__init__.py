"""Spectral extremal checks for gem-free graphs.

Graphs are immutable bitmask adjacency values on at most 64 vertices.  The
package provides the S_{n,k} and S_{n,2}^{-t} constructions, gem and fan
detection, Perron roots and eigenvector certificates, the rotation and
W-elimination transforms, isomorph-free enumeration, and search drivers that
compare the largest spectral radius among gem-free graphs with m edges
against the parity bound.
"""
from .canon import canonical_form, is_isomorphic
from .enumeration import EnumerationTask, count_graphs, enumerate_graphs
from .errors import (
    CapacityError,
    ConvergenceError,
    GemfreeError,
    ParameterError,
    ParseError,
    StructuralError,
)
from .graph import (
    FamilyParams,
    Graph,
    build_family,
    components,
    fan,
    gem,
    is_connected,
    is_isolated_free,
    join,
    s_minus,
    s_nk,
    union,
)
from .graph6 import from_graph6, to_graph6
from .patterns import PatternSpec, contains_subgraph, is_gem_free, oracle_contains
from .records import RunRecord
from .search import (
    AnnealConfig,
    anneal_max,
    extremal_graph,
    verify_bound_sweep,
    verify_lemma_suite,
)
from .spectral import (
    PerronResult,
    SpectralCertificate,
    bound_odd,
    certificate,
    eta1,
    parity_bound,
    perron,
    rho_star,
    threshold_lower,
)
from .transforms import (
    RotationSpec,
    SurgeryPlan,
    check_rotation_lemma,
    compare_families,
    cross_gap,
    plan_surgery,
    rotate,
    w_eliminate,
)

__all__ = [
    "anneal_max",
    "AnnealConfig",
    "bound_odd",
    "build_family",
    "canonical_form",
    "CapacityError",
    "certificate",
    "check_rotation_lemma",
    "compare_families",
    "components",
    "contains_subgraph",
    "ConvergenceError",
    "count_graphs",
    "cross_gap",
    "enumerate_graphs",
    "EnumerationTask",
    "eta1",
    "extremal_graph",
    "FamilyParams",
    "fan",
    "from_graph6",
    "gem",
    "GemfreeError",
    "Graph",
    "is_connected",
    "is_gem_free",
    "is_isolated_free",
    "is_isomorphic",
    "join",
    "oracle_contains",
    "ParameterError",
    "parity_bound",
    "ParseError",
    "PatternSpec",
    "perron",
    "PerronResult",
    "plan_surgery",
    "rho_star",
    "rotate",
    "RotationSpec",
    "RunRecord",
    "s_minus",
    "s_nk",
    "SpectralCertificate",
    "StructuralError",
    "SurgeryPlan",
    "threshold_lower",
    "to_graph6",
    "union",
    "verify_bound_sweep",
    "verify_lemma_suite",
    "w_eliminate",
]

__version__ = "0.1.0"
