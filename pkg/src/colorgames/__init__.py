"""On-line graph coloring games, game graphs, and geometric models.

The package is organized around the correspondence between adversary
strategies in on-line coloring games and the chromatic behaviour of
geometric intersection/overlap graphs:

- :mod:`colorgames.graphs` — graphs, colorings, forests, exact oracles;
- :mod:`colorgames.engine` — generic game machinery (playouts, strategy
  trees, game-graph extraction/coloring, bounded minimax values);
- :mod:`colorgames.games` — the concrete game rule sets;
- :mod:`colorgames.strategies` — presenter and algorithm strategies;
- :mod:`colorgames.pipeline` — off-line coloring pipelines built from
  clique-levelling and clean reductions;
- :mod:`colorgames.geometry` — exact rational geometric models and the
  synthesizers between models and game graphs;
- :mod:`colorgames.cli` — the ``colorgames`` command-line interface.
"""

from .errors import (
    ColorgamesError,
    ProtocolViolation,
    ResourceBudgetError,
    ValidationError,
)
from .engine import (
    GameGraph,
    GameRules,
    Scenario,
    adversarial_max_colors,
    color_game_graph,
    extract_game_graph,
    game_graph_from_json,
    game_graph_to_json,
    game_value_bounded,
    run_game,
    scenario_along_path,
    validate_game_graph,
)
from .games import (
    gamma_ABS,
    gamma_COCO,
    gamma_IFIL,
    gamma_INT,
    gamma_IOV,
    gamma_IOV3,
    make_rules,
    with_blocks,
)
from .geometry import (
    FilamentModel,
    IntervalModel,
    RectangleModel,
    SubtreeModel,
    coco_certificate_from_filaments,
    filaments_from_coco_game_graph,
    filaments_from_path_subtrees,
    is_clean,
    model_from_json_dict,
    model_graph,
    model_to_json_dict,
    rectangles_from_int_game_graph,
    subtrees_from_abs_game_graph,
    svg_export,
)
from .graphs import (
    Coloring,
    Graph,
    HeavyLight,
    RootedForest,
    chromatic_number,
    clique_number,
    dfs_times,
    find_coloring,
    greedy_coloring,
    heavy_light,
    is_valid_coloring,
    kfree_chromatic_number,
    max_clique,
)

__all__ = [
    "ColorgamesError",
    "ProtocolViolation",
    "ResourceBudgetError",
    "ValidationError",
    "Coloring",
    "Graph",
    "HeavyLight",
    "RootedForest",
    "chromatic_number",
    "clique_number",
    "dfs_times",
    "find_coloring",
    "greedy_coloring",
    "heavy_light",
    "is_valid_coloring",
    "kfree_chromatic_number",
    "max_clique",
    "GameGraph",
    "GameRules",
    "Scenario",
    "adversarial_max_colors",
    "color_game_graph",
    "extract_game_graph",
    "game_graph_from_json",
    "game_graph_to_json",
    "game_value_bounded",
    "run_game",
    "scenario_along_path",
    "validate_game_graph",
    "gamma_ABS",
    "gamma_COCO",
    "gamma_IFIL",
    "gamma_INT",
    "gamma_IOV",
    "gamma_IOV3",
    "make_rules",
    "with_blocks",
    "FilamentModel",
    "IntervalModel",
    "RectangleModel",
    "SubtreeModel",
    "coco_certificate_from_filaments",
    "filaments_from_coco_game_graph",
    "filaments_from_path_subtrees",
    "is_clean",
    "model_from_json_dict",
    "model_graph",
    "model_to_json_dict",
    "rectangles_from_int_game_graph",
    "subtrees_from_abs_game_graph",
    "svg_export",
]

__version__ = "0.1.0"
