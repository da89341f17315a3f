"""Histories of a spacetime game.

A history is a :class:`RawAssignment` that extends the contingency
coordinates of every point it binds. It is complete when no further point
can be bound.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from .core import RawAssignment, SpacetimeGame

logger = logging.getLogger(__name__)


def is_history(g: SpacetimeGame, a: RawAssignment) -> bool:
    """Whether ``a`` could be the record of a play so far.

    Args:
        g: The game.
        a: Assignment to check.

    Returns:
        True when every bound point exists, its action is available, and its
        contingency coordinates are a restriction of ``a``. Unknown points
        give False rather than an error.
    """
    for point, action in a.items():
        try:
            decision = g.point(point)
        except ValueError:
            return False
        if action not in decision.actions:
            return False
        if not g.contingency[decision.id].is_restriction(a):
            return False
    return True


def is_complete(g: SpacetimeGame, h: RawAssignment) -> bool:
    """True iff ``h`` is a history that no extra binding keeps a history.

    Checking single-binding extensions is enough since reachability only
    grows with the assignment.

    Args:
        g: The game.
        h: Assignment to check.

    Returns:
        True for complete histories.
    """
    if not is_history(g, h):
        return False
    for point in g.points:
        if point.id in h:
            continue
        for action in point.actions:
            if is_history(g, h.bind(point.id, action)):
                return False
    return True


def enumerate_complete_histories(g: SpacetimeGame) -> List[RawAssignment]:
    """All complete histories, in lexicographic order along ``g.order``.

    Walks the history order with an explicit stack: a point whose
    contingency coordinates hold branches over its actions, any other point
    stays unbound.
    """
    order = g.order
    histories: List[RawAssignment] = []
    stack: List[Tuple[int, RawAssignment]] = [(0, RawAssignment())]
    while stack:
        depth, assignment = stack.pop()
        if depth == len(order):
            histories.append(assignment)
            continue
        point = g.point(order[depth])
        if g.contingency[point.id].is_restriction(assignment):
            for action in reversed(point.actions):
                stack.append((depth + 1, assignment.bind(point.id, action)))
        else:
            stack.append((depth + 1, assignment))
    logger.debug("Enumerated %d complete histories", len(histories))
    return histories


@dataclass(frozen=True)
class PayoffTableReport:
    missing: Tuple[str, ...] = ()
    extra: Tuple[str, ...] = ()

    @property
    def is_clean(self) -> bool:
        return not (self.missing or self.extra)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "success" if self.is_clean else "error",
            "missing": list(self.missing),
            "extra": list(self.extra),
        }


def check_payoff_table(g: SpacetimeGame) -> PayoffTableReport:
    """Compare the payoff keys with the complete histories.

    Args:
        g: The game.

    Returns:
        Report of complete histories without a payoff (``missing``) and payoff
        keys that are not complete histories (``extra``), both rendered along
        ``g.order``.
    """
    complete = enumerate_complete_histories(g)
    expected = set(complete)
    missing = tuple(g.format_assignment(h) for h in complete if h not in g.payoffs)
    extra = tuple(g.format_assignment(h) for h in g.payoffs if h not in expected)
    return PayoffTableReport(missing, extra)
