"""Recursive labelings on downward lattice graphs, regressive regularity
search, and the structured subset-sum instances built from regular cubes."""

__version__ = "0.1.0"

from .lattice import (Cube, Domain, cap_restrict, enumerate_order_types, is_capped_by,
                      order_equivalent, rank_vector, set_max, surjection_count)
from .graph import DownwardGraph, build_induced, layers, terminal_vertices
from .labelers import Labeling, h_rho, s_hat, t_hat
from .regularity import (check_regularity, find_regular_cube, jump_free_check,
                         partition_blocks, regressive_values)
from .subsetsum import (InstanceSet, build_instances, design_t_log_rho, is_t_log_bounded,
                        solve_oracle, solve_structured)
