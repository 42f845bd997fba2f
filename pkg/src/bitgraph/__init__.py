"""bitgraph: space-frugal graph algorithms with a working-memory bit ledger.

Cut vertices (dense and sparse engines), biconnected-component streaming,
and (maximal) outerplanarity recognition over read-only adjacency-array
graphs, built on rank-select vectors, choice dictionaries, and ragged
dictionaries.  Every algorithm can be handed a SpaceLedger that turns the
working-space bounds into runnable assertions.
"""

from .errors import (BitgraphError, CapacityError, DuplicateEdgeError,
                     GraphFormatError, IdOutOfRangeError, LedgerError,
                     MalformedInputError, SelfLoopError)
from .graph import EdgeRef, Graph, graph_from_edges, parse_graph
from .ledger import SpaceLedger
from .succinct import (ChoiceDictionary, RaggedDictionary, RankSelect,
                       StaticAllocationIndex, build_rank_select,
                       build_static_allocation)
from .cutvertex import (assign_hues, cut_vertices, cut_vertices_dense,
                        cut_vertices_sparse, dfs_classify_edges,
                        mark_tree_edges_dense)
from .bicc import BccIndex, bcc_build, bcc_component_of, bcc_enumerate
from .outerplanar import Verdict, check_edge_bound, recognize
from .oracle import (gen_connected, gen_gnm, gen_mop, oracle_bcc,
                     oracle_cut_vertices, oracle_outerplanar)

__version__ = "0.1.0"

__all__ = [
    "BitgraphError", "CapacityError", "DuplicateEdgeError", "GraphFormatError",
    "IdOutOfRangeError", "LedgerError", "MalformedInputError", "SelfLoopError",
    "EdgeRef", "Graph", "graph_from_edges", "parse_graph",
    "SpaceLedger",
    "ChoiceDictionary", "RaggedDictionary", "RankSelect",
    "StaticAllocationIndex", "build_rank_select", "build_static_allocation",
    "assign_hues", "cut_vertices", "cut_vertices_dense", "cut_vertices_sparse",
    "dfs_classify_edges", "mark_tree_edges_dense",
    "BccIndex", "bcc_build", "bcc_component_of", "bcc_enumerate",
    "Verdict", "check_edge_bound", "recognize",
    "gen_connected", "gen_gnm", "gen_mop",
    "oracle_bcc", "oracle_cut_vertices", "oracle_outerplanar",
]
