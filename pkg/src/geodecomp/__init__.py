"""Certified decompositions of graphs covered by shortest paths or isometric trees."""

from .cover import CoverFamily, decompose_by_cover, theorem_separator, verify_cover, width_bound
from .errors import CapExceeded, CertificateError, CoverError, GeodecompError, GraphError, PathError
from .graph import Graph, build_graph
from .oracle import exact_pathwidth, exact_treewidth
from .skewer import skewer_pathdecomp, skewer_recognize
from .trees import Tree, decompose_two_trees, verify_tree_cover
from .width import PathDecomposition, TreeDecomposition, validate_pathdecomp, validate_treedecomp

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "CertificateError", "CoverError", "CoverFamily", "GeodecompError", "Graph", "GraphError",
    "PathDecomposition", "PathError", "Tree", "TreeDecomposition", "build_graph", "decompose_by_cover",
    "decompose_two_trees", "exact_pathwidth", "exact_treewidth", "skewer_pathdecomp", "skewer_recognize",
    "theorem_separator", "validate_pathdecomp", "validate_treedecomp", "verify_cover", "verify_tree_cover",
    "width_bound",
]
