"""Concurrent graph games with per-player reach costs: equilibria,
Pareto frontiers, punishment values, stability metrics, and generators."""

from .coalition import (
    PunishmentTable,
    ValueMap,
    best_response_cost,
    coalition_values,
    punishing_strategy,
)
from .costs import INF, CostVector
from .equilibrium import (
    FrontierEntry,
    Lasso,
    NEVerdict,
    ThresholdResult,
    analyze,
    check_ne,
    compute_ne_po,
    ne_exists,
    ne_po_joint_uniform,
    outcome_cost,
    pareto_filter,
    threshold_ne,
)
from .errors import CapExceeded, FragmentError, LassoError, ParseError, QRGamesError
from .expansion import ExpandedGame, ExpandedState, expand, safe_restrict
from .game import Game, Rule, Transition, outcome_cost_base, successor
from .generators import (
    gen_3sat,
    gen_exp_ne,
    gen_hampath,
    gen_infinite_ne,
    gen_partition,
    gen_pos,
    gen_xor,
)
from .metrics import MetricsReport, pos_poa, social_optimum
from .oracle import oracle_coalition_values, oracle_decision, oracle_ne_po
from .parser import parse_game, serialize_game

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CostVector",
    "ExpandedGame",
    "ExpandedState",
    "FragmentError",
    "FrontierEntry",
    "Game",
    "INF",
    "Lasso",
    "LassoError",
    "MetricsReport",
    "NEVerdict",
    "ParseError",
    "PunishmentTable",
    "QRGamesError",
    "Rule",
    "ThresholdResult",
    "Transition",
    "ValueMap",
    "analyze",
    "best_response_cost",
    "check_ne",
    "coalition_values",
    "compute_ne_po",
    "expand",
    "gen_3sat",
    "gen_exp_ne",
    "gen_hampath",
    "gen_infinite_ne",
    "gen_partition",
    "gen_pos",
    "gen_xor",
    "ne_exists",
    "ne_po_joint_uniform",
    "oracle_coalition_values",
    "oracle_decision",
    "oracle_ne_po",
    "outcome_cost",
    "outcome_cost_base",
    "pareto_filter",
    "parse_game",
    "pos_poa",
    "punishing_strategy",
    "safe_restrict",
    "serialize_game",
    "social_optimum",
    "successor",
    "threshold_ne",
]
