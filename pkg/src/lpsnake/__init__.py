"""Snake-graph expansion engine for graph LP algebras on trees.

Build a cluster context from a tree and a maximal nested collection,
construct the hypergraph snake graph of a weakly rooted vertex subset,
enumerate its admissible matchings, and expand the corresponding set
variable as an exact Laurent expression -- with an independent
mutation-formula oracle, a determinantal matching counter, hyper T-path
conversion, and the classical polygon subsystem for cross-validation.
"""

from .trees import (ClusterContext, Tree, validate_nested_collection,
                    IN_COLLECTION, ROOTED, WEAKLY_ROOTED, NOT_WEAKLY_ROOTED)
from .snakegraph import (build_component, build_singleton, build_snake_graph,
                         classify_edge, glue, positivity_in_cluster, trim)
from .matchings import chi, enumerate_admissible, is_admissible, weight
from .oracle import OracleCache
from .counting import (count_matchings, count_matrix, f_value, negative_cf,
                       polygon_matching_counts)
from .tpath import matching_to_tpath, validate_tpath
from .symbolic import Monomial, Poly, RationalExpr, rf_equal, yvar, xvar

__all__ = [
    'ClusterContext', 'Tree', 'validate_nested_collection',
    'IN_COLLECTION', 'ROOTED', 'WEAKLY_ROOTED', 'NOT_WEAKLY_ROOTED',
    'build_component', 'build_singleton', 'build_snake_graph',
    'classify_edge', 'glue', 'positivity_in_cluster', 'trim',
    'chi', 'enumerate_admissible', 'is_admissible', 'weight',
    'OracleCache',
    'count_matchings', 'count_matrix', 'f_value', 'negative_cf',
    'polygon_matching_counts',
    'matching_to_tpath', 'validate_tpath',
    'Monomial', 'Poly', 'RationalExpr', 'rf_equal', 'yvar', 'xvar',
]

__version__ = '0.1.0'
