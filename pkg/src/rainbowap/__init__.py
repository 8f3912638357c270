"""Rainbow-progression colorings of large subsets of [n] and induced-matching
graph decompositions, with independent brute-force verifiers."""

from ._kernels import BACKEND
from .conflict import (
    ClassGraph,
    build_class_graph,
    conflict_pair,
    degree_log_bound,
    greedy_color,
    pair_distance_bound,
)
from .errors import (
    ClosureError,
    FormatError,
    ParamError,
    PointError,
    RainbowError,
    ResourceError,
)
from .grid import (
    midpoint,
    point_to_value,
    rational_combination,
    reflect,
    squared_norm,
    value_to_point,
)
from .labels import (
    AuxColor,
    aux_label,
    closure_violation,
    ensure_closed,
    label3,
    label_general,
    label_key,
    log_label_count,
)
from .matchings import (
    MatchingDecomposition,
    build_matchings,
    class_count_bound,
    edge_count_bound,
    verify_induced,
)
from .params import Params, parse_epsilon
from .rainbow import (
    ColoredSet,
    VerifyReport,
    build,
    full_range_greedy_colors,
    full_range_lower_bound,
    verify_rainbow,
)
from .shell import MembershipSet, build_members, in_shell, shell_window, shortfall_bound

__version__ = "0.1.0"

__all__ = [
    "AuxColor",
    "BACKEND",
    "ClassGraph",
    "ClosureError",
    "ColoredSet",
    "FormatError",
    "MatchingDecomposition",
    "MembershipSet",
    "ParamError",
    "Params",
    "PointError",
    "RainbowError",
    "ResourceError",
    "VerifyReport",
    "aux_label",
    "build",
    "build_class_graph",
    "build_matchings",
    "build_members",
    "class_count_bound",
    "closure_violation",
    "conflict_pair",
    "degree_log_bound",
    "edge_count_bound",
    "ensure_closed",
    "full_range_greedy_colors",
    "full_range_lower_bound",
    "greedy_color",
    "in_shell",
    "label3",
    "label_general",
    "label_key",
    "log_label_count",
    "midpoint",
    "pair_distance_bound",
    "parse_epsilon",
    "point_to_value",
    "rational_combination",
    "reflect",
    "shell_window",
    "shortfall_bound",
    "squared_norm",
    "value_to_point",
    "verify_induced",
    "verify_rainbow",
]
