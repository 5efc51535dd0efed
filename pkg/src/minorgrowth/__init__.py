"""Growth of minor-closed graph classes: classification, exact counting,
generating functions and growth-constant diagnostics."""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    GraphError,
    DslError,
    DfsForest,
    make_graph,
    generate,
    parse_graph,
    parse_graph_list,
    graph_from_dsl,
    graph_to_dsl,
    expr_to_dsl,
    delete_vertex,
    contract_edge,
    components,
    disjoint_union,
    induced_subgraph,
    is_connected,
    is_two_connected,
    dfs_forest,
    canonical_code,
    canonical_form,
)
from .minors import (
    MinorModel,
    find_minor_model,
    is_minor,
    minor_of_copies,
    is_path_forest,
    is_star_forest,
    is_matching_graph,
    is_star_plus_isolated,
    has_at_most_one_edge,
    is_caterpillar_forest,
    is_apex_path_forest,
)
from .classify import (
    Category,
    ClassSpec,
    GrowthCategory,
    BinomialPolynomial,
    SemifactorialExponent,
    CategoryError,
    classify,
    semifactorial_k,
    polynomial_of,
    exists_growth_constant,
    gamma_one_test,
    minimize_obstructions,
)
from .counting import (
    CountTable,
    EnumerationCapError,
    count_members,
    count_prefix,
    enumerate_members,
    apex_count,
    is_member,
    bell,
    double_factorial,
    matchings_count,
    path_forest_count,
    star_forest_count,
    star_class_count,
    forest_count,
    brute_count_table,
    spec_identity,
)
from .series import (
    Series,
    SeriesError,
    Interval,
    RootResult,
    BracketError,
    exp_series,
    compose,
    quasi_inverse,
    egf_count,
    bounded_height_series,
    bounded_height_value,
    rooted_tree_series,
    smallest_positive_root,
    xi_constant,
    nu_constant,
    rho_sequence,
    e_squared_enclosure,
)
from .growth import (
    GammaEstimate,
    GammaPoint,
    gamma_sequence,
    apex_sandwich_check,
    supermultiplicative_check,
    bound_audit,
)
