"""Independence, perfect clique covers and alpha-excellence of k-trees."""

from .construct import (
    ExplorationRecord,
    GenSpec,
    corona,
    embed_excellent,
    enumerate_2trees,
    explore_converse,
    random_certificate,
    random_covered_ktree,
    random_ktree,
    random_tree,
)
from .cover import Cover, count_perfect_covers, cover_consequences, find_perfect_cover, validate_cover
from .family import (
    Certificate,
    LabeledTwoTree,
    O1Step,
    O2Step,
    apply_o1,
    apply_o2,
    base_tree,
    decompose,
    is_in_family_e,
    replay_certificate,
)
from .graph import Graph, GraphError, are_isomorphic, build_graph, delete_vertices, enumerate_triangles
from .ktree import (
    EliminationOrder,
    Simplex,
    chordal_alpha,
    passes_simplex_disjointness,
    recognize_ktree,
    simplexes,
    simplicial_vertices,
)
from .oracle import (
    BudgetExceeded,
    OracleReport,
    alpha_bruteforce,
    classify,
    common_independence,
    fast_excellent_2tree,
    independent_domination,
    is_excellent,
    vertex_in_alpha_set,
)

__version__ = "0.1.0"
