"""Strategies, profile resolution and (reduced) strategic forms."""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import config
from .core import UNBOUND, AgentId, DecisionPoint, DecisionPointId, RawAssignment, SpacetimeGame
from .errors import GameStructureError, TensorTooLargeError, UnknownSymbolError
from .geometry import Event

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Strategy:
    """An agent's plan: actions at its decision points.

    Full strategies bind every point of the agent; reduced strategies leave
    non-actual points unbound.
    """

    agent: AgentId
    assignment: RawAssignment


def strategy_label(g: SpacetimeGame, agent: AgentId, assignment: RawAssignment) -> str:
    """Actions over the agent's points in index order, ``-`` where unbound."""
    return ",".join(assignment.get(p.id, UNBOUND) for p in g.points_of(agent))


def strategy_space(g: SpacetimeGame, i: AgentId) -> List[Strategy]:
    """Every full strategy of agent ``i``.

    Args:
        g: The game.
        i: Agent symbol.

    Returns:
        One strategy per combination of actions at the agent's points, in
        product order over the points in index order.

    Raises:
        UnknownSymbolError: If ``i`` is not an agent of ``g``.
    """
    points = g.points_of(i)
    return [
        Strategy(i, RawAssignment(zip((p.id for p in points), choice)))
        for choice in itertools.product(*(p.actions for p in points))
    ]


def resolve(g: SpacetimeGame, p: RawAssignment) -> RawAssignment:
    """The unique complete history that is a restriction of a full profile.

    Args:
        g: The game.
        p: Full profile binding every decision point.

    Returns:
        The complete history played out along ``g.order``.

    Raises:
        GameStructureError: If ``p`` leaves a point unbound.
    """
    history = RawAssignment()
    for point in g.order:
        if point not in p:
            raise GameStructureError(f"Strategy profile leaves {point} unbound")
        if g.contingency[point].is_restriction(history):
            history = history.bind(point, p[point])
    assert history.is_restriction(p)
    return history


def reduce_strategy(g: SpacetimeGame, s: Strategy) -> Strategy:
    """Unbind own points whose coordinates conflict with the strategy elsewhere."""
    own = {p.id for p in g.points_of(s.agent)}
    keep = []
    for point in own:
        conflict = any(
            other in own and other != point and s.assignment.get(other) not in (None, action)
            for other, action in g.contingency[point].items()
        )
        if not conflict:
            keep.append(point)
    return Strategy(s.agent, s.assignment.restrict(keep))


def reduced_strategy_space(g: SpacetimeGame, i: AgentId) -> List[Strategy]:
    """Distinct reductions of the agent's full strategies, first occurrence first."""
    reduced = (reduce_strategy(g, s) for s in strategy_space(g, i))
    return list(dict.fromkeys(reduced))


def resolve_reduced(g: SpacetimeGame, rp: RawAssignment) -> RawAssignment:
    """The unique complete history that is a restriction of a reduced profile.

    Args:
        g: The game.
        rp: Union of one reduced strategy per agent.

    Returns:
        The complete history; it agrees with :func:`resolve` on any full
        profile extending ``rp``.

    Raises:
        GameStructureError: If ``rp`` leaves a reachable point unbound.
    """
    history = RawAssignment()
    for point in g.order:
        if not g.contingency[point].is_restriction(history):
            continue
        if point not in rp:
            raise GameStructureError(f"Reduced profile leaves reachable point {point} unbound")
        history = history.bind(point, rp[point])
    assert history.is_restriction(rp)
    filled = RawAssignment({p.id: rp[p.id] if p.id in rp else p.actions[0] for p in g.points})
    assert resolve(g, filled) == history
    return history


@dataclass
class NormalFormGame:
    """Payoff tensor over strategy labels.

    ``payoff_tensor`` has shape ``(*sizes, len(agents))``; the last axis
    indexes the agents. ``history_annotation`` maps each label tuple to the
    complete history (or outcome) it resolves to.
    """

    agents: Tuple[AgentId, ...]
    strategy_labels: Tuple[Tuple[str, ...], ...]
    payoff_tensor: np.ndarray
    history_annotation: Dict[Tuple[str, ...], str] = field(default_factory=dict)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(labels) for labels in self.strategy_labels)

    @property
    def cells(self) -> int:
        return math.prod(self.shape)

    def agent_index(self, agent: AgentId) -> int:
        try:
            return self.agents.index(agent)
        except ValueError:
            raise UnknownSymbolError("agent", agent) from None

    def index_of(self, labels: Sequence[str]) -> Tuple[int, ...]:
        try:
            return tuple(self.strategy_labels[i].index(label) for i, label in enumerate(labels))
        except ValueError:
            raise UnknownSymbolError("strategy profile", "(" + ";".join(labels) + ")") from None

    def payoff(self, labels: Sequence[str]) -> Tuple[float, ...]:
        return tuple(float(v) for v in self.payoff_tensor[self.index_of(labels)])

    def profiles(self) -> Iterator[Tuple[str, ...]]:
        return itertools.product(*self.strategy_labels)

    def same_tensor(self, other: "NormalFormGame") -> bool:
        return (
            self.agents == other.agents
            and self.strategy_labels == other.strategy_labels
            and np.array_equal(self.payoff_tensor, other.payoff_tensor)
        )


def check_tensor_size(sizes: Sequence[int], max_cells: Optional[int] = None) -> None:
    """Raise ``TensorTooLargeError`` when the strategy counts multiply past the limit."""
    limit = config.max_tensor_cells if max_cells is None else max_cells
    cells = math.prod(sizes)
    if cells > limit:
        raise TensorTooLargeError(cells, limit)


def _normal_form(
    g: SpacetimeGame,
    spaces: Sequence[Sequence[Strategy]],
    resolver: Callable[[SpacetimeGame, RawAssignment], RawAssignment],
    max_cells: Optional[int],
) -> NormalFormGame:
    sizes = [len(space) for space in spaces]
    check_tensor_size(sizes, max_cells)
    labels = tuple(
        tuple(strategy_label(g, s.agent, s.assignment) for s in space) for space in spaces
    )
    tensor = np.zeros((*sizes, len(g.agents)), dtype=float)
    annotation: Dict[Tuple[str, ...], str] = {}
    for index in itertools.product(*(range(n) for n in sizes)):
        profile = RawAssignment()
        for space, k in zip(spaces, index):
            profile = profile.union(space[k].assignment)
        history = resolver(g, profile)
        tensor[index] = g.payoff(history)
        annotation[tuple(labels[i][k] for i, k in enumerate(index))] = g.format_assignment(history)
    logger.debug("Filled strategic form of shape %s", tuple(sizes))
    return NormalFormGame(g.agents, labels, tensor, annotation)


def strategic_form(g: SpacetimeGame, max_cells: Optional[int] = None) -> NormalFormGame:
    """Payoff tensor over full strategies.

    Args:
        g: Game with a total payoff table.
        max_cells: Cell limit; defaults to ``config.max_tensor_cells``.

    Returns:
        The strategic form, each cell annotated with its resolved history.

    Raises:
        TensorTooLargeError: If the tensor would exceed the limit.
        PayoffTableError: If a resolved history has no payoff.
    """
    spaces = [strategy_space(g, agent) for agent in g.agents]
    return _normal_form(g, spaces, resolve, max_cells)


def reduced_strategic_form(g: SpacetimeGame, max_cells: Optional[int] = None) -> NormalFormGame:
    """Like :func:`strategic_form` over reduced strategies; labels show ``-`` where unbound."""
    spaces = [reduced_strategy_space(g, agent) for agent in g.agents]
    return _normal_form(g, spaces, resolve_reduced, max_cells)


def from_normal_form(nf: NormalFormGame) -> SpacetimeGame:
    """Embed a strategic form as a game of simultaneous moves.

    Each agent decides once, at ``Agent.1``, choosing among its strategy
    labels. The points sit at time 0 on distinct positions of one spatial
    axis, so every pair is spacelike-separated and no coordinates are bound.

    Args:
        nf: Strategic form to embed.

    Returns:
        A located game whose strategic form equals ``nf`` up to agent order.

    Raises:
        GameStructureError: If a strategy label is empty or repeated.
    """
    points = [
        DecisionPoint(DecisionPointId(agent, 1), labels, Event((float(k), 0.0)))
        for k, (agent, labels) in enumerate(zip(nf.agents, nf.strategy_labels))
    ]
    payoffs = {
        RawAssignment({p.id: label for p, label in zip(points, labels)}): dict(
            zip(nf.agents, nf.payoff(labels))
        )
        for labels in nf.profiles()
    }
    logger.debug("Embedded a strategic form of shape %s", nf.shape)
    return SpacetimeGame.build(points, payoffs=payoffs, agents=nf.agents)
