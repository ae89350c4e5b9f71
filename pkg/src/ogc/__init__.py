"""Exact-arithmetic toolkit for graph complexes of directed multigraphs
carrying several acyclic orientation colors."""

__version__ = "0.1.0"

from .graphs import (
    CanonicalClass,
    ColoredGraph,
    GroupElement,
    Parity,
    TermVector,
    ZERO,
    act,
    canonicalize,
    from_text,
    is_acyclic_in_color,
    is_connected,
    is_passing,
    is_weakly_passing,
    make_graph,
    to_text,
    valence,
)
from .complexes import (
    BasisSlice,
    Constraint,
    REDUCED_CONSTRAINTS,
    SliceParams,
    contract_edge,
    delete_one_valent,
    differential,
    differential_matrix,
    enumerate_basis,
    homology_dims,
    slice_chain,
)
from .linalg import SparseRationalMatrix, kernel_basis, rank, rank_mod_p
from .skeleton import (
    SkeletonFamily,
    SkeletonGraph,
    canonicalize_skeleton,
    expand_dotted,
    extract_skeleton,
    make_skeleton,
    project_to_simple,
    skeleton_degree_slice,
    skeleton_differential,
    skeleton_homology_dims,
)
from .treemap import (
    induced_matrix,
    spanning_tree_map,
    spanning_trees,
    tree_image,
    verify_chain_map,
    verify_quasi_iso,
)
