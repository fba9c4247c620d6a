"""Deep-connectivity parameters of overlay networks.

Computes the edge-removal, path-disjoint, and flow connectivity of an
overlay graph over an underlying graph and routing scheme, constructs
sparse 2-survivable overlays greedily, and generates reduction gadgets as
verifiable test corpora.
"""

from .errors import (
    BudgetExceededError,
    DeepConnError,
    FormatError,
    PreconditionError,
    ValidationError,
)
from .fdc import FlowResult, fdc_all_pairs, fdc_pair, separation_oracle
from .gadgets import (
    GadgetOutput,
    SetSystem,
    build_hamiltonian_reduction,
    build_spddc_reduction,
    encode_set_system,
    random_instance,
    set_packing_brute_force,
)
from .model import (
    Instance,
    build_instance,
    edge_key,
    enumerate_simple_paths,
    image_support,
    is_simple_concatenation,
    parse_instance,
    route_image,
    serialize_instance,
)
from .oracles import (
    CutCertificate,
    PathPacking,
    all_pairs,
    classic_edge_connectivity,
    erdc_pair,
    pddc_pair,
    spddc_pair,
)
from .sparsifier import (
    AugmentationState,
    brute_force_augment,
    check_precondition,
    compute_kappa,
    delta,
    greedy_augment,
    kappa_of,
    sparsify,
    sparsified_instance,
    special_case_construct,
    star_tree,
    tracked_state,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
