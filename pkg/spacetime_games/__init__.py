"""Spacetime games with perfect information.

Decision points live in Minkowski spacetime; their causal order, together
with contingency coordinates, determines the histories, strategic forms and
extensive forms of the game.
"""

from .config import config
from .core import (
    ConsistencyReport,
    DecisionPoint,
    DecisionPointId,
    PrecedenceRelation,
    RawAssignment,
    SpacetimeGame,
    actually_precedes,
    build_precedence,
    check_consistency,
    is_restriction,
    prune_unreachable,
    transitive_closure,
    transitive_reduction,
    union,
)
from .document import load, parse_efg, parse_game, serialize_efg, serialize_game
from .dot_export import export_dot
from .errors import SpacetimeGameError
from .extensive import (
    ExtensiveFormGame,
    InformationSet,
    InterpretVerdict,
    Linearization,
    Verdict,
    enumerate_linearizations,
    from_perfect_information,
    has_perfect_recall,
    is_spacetime_interpretable,
    linearize,
    prefix_histories,
    strategic_form_efg,
    to_extensive,
    validate_efg,
)
from .geometry import (
    CausalClass,
    ConeRegion,
    Event,
    Metric,
    classify,
    interval,
    light_cone_membership,
)
from .histories import (
    check_payoff_table,
    enumerate_complete_histories,
    is_complete,
    is_history,
)
from .solve import SolutionSet, backward_induction, iterated_strict_dominance, maximin, pure_nash
from .strategic import (
    NormalFormGame,
    Strategy,
    from_normal_form,
    reduce_strategy,
    reduced_strategic_form,
    resolve,
    resolve_reduced,
    strategic_form,
    strategy_space,
)

__version__ = "0.1.0"

__all__ = [
    "CausalClass",
    "ConeRegion",
    "ConsistencyReport",
    "DecisionPoint",
    "DecisionPointId",
    "Event",
    "ExtensiveFormGame",
    "InformationSet",
    "InterpretVerdict",
    "Linearization",
    "Metric",
    "NormalFormGame",
    "PrecedenceRelation",
    "RawAssignment",
    "SolutionSet",
    "SpacetimeGame",
    "SpacetimeGameError",
    "Strategy",
    "Verdict",
    "actually_precedes",
    "backward_induction",
    "build_precedence",
    "check_consistency",
    "check_payoff_table",
    "classify",
    "config",
    "enumerate_complete_histories",
    "enumerate_linearizations",
    "export_dot",
    "from_normal_form",
    "from_perfect_information",
    "has_perfect_recall",
    "interval",
    "is_complete",
    "is_history",
    "is_restriction",
    "is_spacetime_interpretable",
    "iterated_strict_dominance",
    "light_cone_membership",
    "linearize",
    "load",
    "maximin",
    "parse_efg",
    "parse_game",
    "prefix_histories",
    "prune_unreachable",
    "pure_nash",
    "reduce_strategy",
    "reduced_strategic_form",
    "resolve",
    "resolve_reduced",
    "serialize_efg",
    "serialize_game",
    "strategic_form",
    "strategic_form_efg",
    "strategy_space",
    "to_extensive",
    "transitive_closure",
    "transitive_reduction",
    "union",
    "validate_efg",
]
