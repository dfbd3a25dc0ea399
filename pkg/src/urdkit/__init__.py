"""urdkit: uniformly resolvable decompositions of complete graphs.

Construct, transform, and verify decompositions of K_v into spanning
parallel classes of matchings, paths, triangles, and cycles, for the
profile families {k2, p3, k3}, {k2, p4, c4}, and {p4, c4}.
"""

from .constructions import (
    CatalogEntry,
    ConstructionError,
    KnownNonexistentError,
    c4_blowup,
    catalog_entries,
    catalog_lookup,
    matching_triangle_system,
    one_factorization,
)
from .gf2 import (
    Gf2Error,
    Gf2Solution,
    Gf2System,
    NormalizationImpossibleError,
    NotASolutionError,
    gf2_solve,
    normalize_to_basic,
)
from .io import UrdDocument, UrdParseError, parse_urd, serialize_urd
from .metamorphosis import (
    ConjectureOutcome,
    MetaInput,
    MetamorphosisError,
    build_system,
    meta_cycles_conjecture,
    meta_matching_c4,
    meta_three_c4,
    meta_two_c4,
    meta_two_k3,
)
from .model import (
    FAMILIES,
    Block,
    Decomposition,
    Edge,
    InvalidOrderError,
    MalformedBlockError,
    ParallelClass,
    Profile,
    UrdError,
    block,
    block_edge_list,
    block_edges,
    canonicalize_block,
    complete_graph_edge_set,
    edge,
    kind_arity,
    kind_edge_count,
)
from .search import SearchBudget, SearchTimeoutError, canonical_factor, find_resolution
from .spectrum import (
    AdmissibleSet,
    ExhaustiveResult,
    InadmissibleProfileError,
    admissible_k2p3k3,
    admissible_k2p4c4,
    admissible_p4c4,
    construct,
    construct_k2p3k3,
    construct_k2p4c4,
    construct_p4c4,
    exhaustive_spectrum,
    split_c4_class,
)
from .verifier import VerificationReport, profile_of, verify, verify_class

__version__ = "0.1.0"
