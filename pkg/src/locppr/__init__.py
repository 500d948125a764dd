"""Local personalized PageRank via evolving-set solvers with acceleration."""

from .errors import (ArgumentError, ConvergenceError, DegenerateGraphError,
                     EmptyInputError, InputError, LocpprError, NumericalError,
                     ParseError)
from .sparsevec import SparseVector
from .graph import (Graph, RawEdges, load_edge_list, load_graph, preprocess,
                    read_cache, validate, volume, write_cache,
                    write_edge_list)
from .generators import (barabasi_albert, complete_graph, grid_graph,
                         path_graph, random_connected_graph)
from .local_solver import (InnerStats, ShiftedProblem, SweepRecord,
                           compute_gradient, epsilon_inner, loc_appr, loc_gd,
                           optimal_step, scaled_grad_l1)
from .oracle import (OracleResult, dense_solve_ppr, error_inf_deg,
                     fixed_point_ppr, solve_ppr)
from .aesp import (AespConfig, OuterSchedule, adaptive_epsilon, aesp,
                   aesp_ppr, early_stop_check, maintain_f_gradient,
                   momentum_coefficient, outer_schedule)
from .trace import (CSV_HEADER, InnerRecord, OuterTraceRecord, RunTrace,
                    aggregate, check_trace_invariants, constant_R, read_csv,
                    summary_dict, write_csv, write_summary_json)
from .bench import (METHODS, BenchPlan, parse_epsilon, run_bench, run_method,
                    select_sources)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError", "ConvergenceError", "DegenerateGraphError",
    "EmptyInputError", "InputError", "LocpprError", "NumericalError",
    "ParseError",
    "SparseVector",
    "Graph", "RawEdges", "load_edge_list", "load_graph", "preprocess",
    "read_cache", "validate", "volume", "write_cache", "write_edge_list",
    "barabasi_albert", "complete_graph", "grid_graph", "path_graph",
    "random_connected_graph",
    "InnerStats", "ShiftedProblem", "SweepRecord", "compute_gradient",
    "epsilon_inner", "loc_appr", "loc_gd", "optimal_step", "scaled_grad_l1",
    "OracleResult", "dense_solve_ppr", "error_inf_deg", "fixed_point_ppr",
    "solve_ppr",
    "AespConfig", "OuterSchedule", "adaptive_epsilon", "aesp", "aesp_ppr",
    "early_stop_check", "maintain_f_gradient", "momentum_coefficient",
    "outer_schedule",
    "CSV_HEADER", "InnerRecord", "OuterTraceRecord", "RunTrace", "aggregate",
    "check_trace_invariants", "constant_R", "read_csv", "summary_dict",
    "write_csv", "write_summary_json",
    "METHODS", "BenchPlan", "parse_epsilon", "run_bench", "run_method",
    "select_sources",
    "__version__",
]
