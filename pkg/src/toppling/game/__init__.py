"""The two-player toppling game: grid model, strategies, game loop, minimax."""

from .grid import GridView, grid_fire
from .minimax import StateSpaceError, minimax_toppling, solve_game
from .play import GameRecord, TurnRecord, play_game, play_grid, write_trace_csv
from .strategies import (
    ROW,
    SQUARE,
    TRIANGLE,
    FunctionStrategy,
    GameOverError,
    GridStrategy,
    Player,
    RandomStrategy,
    Strategy,
    get_strategy,
    grid_of,
    row_move,
    square_move,
    square_side,
    triangle_move,
)

__all__ = [
    "GridView",
    "grid_fire",
    "StateSpaceError",
    "minimax_toppling",
    "solve_game",
    "GameRecord",
    "TurnRecord",
    "play_game",
    "play_grid",
    "write_trace_csv",
    "ROW",
    "SQUARE",
    "TRIANGLE",
    "FunctionStrategy",
    "GameOverError",
    "GridStrategy",
    "Player",
    "RandomStrategy",
    "Strategy",
    "get_strategy",
    "grid_of",
    "row_move",
    "square_move",
    "square_side",
    "triangle_move",
]
