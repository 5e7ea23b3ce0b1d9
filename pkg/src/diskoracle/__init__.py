"""Exact distance oracle for weighted unit-disk graphs.

Public surface: instance generation and IO, the spatial cell index, the
growing-box query schedule, exact point-to-point queries with Dijkstra/A*
baselines, and the channel / directed-grid percolation machinery used to
verify the probabilistic guarantees empirically.
"""

from .cells import Box, CellIndex, build_edges, build_index, collect_vertices, cover_box
from .channel import (ChannelOccupancy, ChannelSpec, box_of_point, can_jump,
                      channel_path_exists, is_reachable_box, length_certificate,
                      max_h, occupancy, to_grid)
from .geometry import (DegenerateFrameError, Instance, LocalFrame, build_frame,
                       euclid_dist, gen_instance, generator, load_instance,
                       save_instance, to_local)
from .oracle import (Oracle, QueryResult, QueryStats, a_star, bounded_dijkstra,
                     full_dijkstra, query)
from .percolation import (GridInstance, PercEstimate, antipath_exists,
                          exact_no_path_prob, grid_reachable, no_path_bound,
                          no_path_bound_simple, sample_no_path_prob)
from .schedule import (OracleParams, QuerySchedule, bounding_box, c_prime,
                       channel_discretization, make_schedule, w_ub)

__version__ = "0.1.0"
