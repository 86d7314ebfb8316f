"""Chip-firing toppling games on graphs.

Submodules: :mod:`graph_core` (graphs, G(n, p)), :mod:`chipfire`
(stabilization and volatility), :mod:`game` (grid model, strategies,
minimax), :mod:`fractional`, :mod:`ode_bounds` and :mod:`experiments`.
"""

from .chipfire import (
    ChipConfig,
    ChipEngine,
    Outcome,
    StabilizeOutcome,
    dominates,
    fire,
    format_snapshot,
    is_volatile_complete,
    parse_snapshot,
    stabilize_or_detect,
)
from .fractional import (
    CoupledResult,
    FracConfig,
    coupled_replay,
    frac_grid_play,
    frac_minimax,
    frac_stabilize_or_detect,
    parse_rational,
)
from .game import (
    ROW,
    SQUARE,
    TRIANGLE,
    GameRecord,
    GridView,
    Player,
    StateSpaceError,
    get_strategy,
    grid_fire,
    minimax_toppling,
    play_game,
    play_grid,
    row_move,
    square_move,
    triangle_move,
    write_trace_csv,
)
from .graph_core import (
    ExpansionReport,
    Graph,
    complete_graph,
    expansion_report,
    from_edge_list,
    read_edge_list,
    sample_gnp,
    write_edge_list,
)
from .ode_bounds import BoundResult, OdeSystem2D, StopEvent, compute_constants, integrate_to_event

__version__ = "0.1.0"

__all__ = [
    "ChipConfig",
    "ChipEngine",
    "Outcome",
    "StabilizeOutcome",
    "dominates",
    "fire",
    "format_snapshot",
    "is_volatile_complete",
    "parse_snapshot",
    "stabilize_or_detect",
    "CoupledResult",
    "FracConfig",
    "coupled_replay",
    "frac_grid_play",
    "frac_minimax",
    "frac_stabilize_or_detect",
    "parse_rational",
    "ROW",
    "SQUARE",
    "TRIANGLE",
    "GameRecord",
    "GridView",
    "Player",
    "StateSpaceError",
    "get_strategy",
    "grid_fire",
    "minimax_toppling",
    "play_game",
    "play_grid",
    "row_move",
    "square_move",
    "triangle_move",
    "write_trace_csv",
    "ExpansionReport",
    "Graph",
    "complete_graph",
    "expansion_report",
    "from_edge_list",
    "read_edge_list",
    "sample_gnp",
    "write_edge_list",
    "BoundResult",
    "OdeSystem2D",
    "StopEvent",
    "compute_constants",
    "integrate_to_event",
]
