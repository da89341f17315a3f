"""Decision points, timelike precedence, raw assignments and the game aggregate.

A game is built in one of two modes:

* located: every decision point carries an :class:`Event` and precedence is
  derived pairwise through :func:`geometry.classify`;
* declared: no point carries a location and precedence is given as a list of
  pairs, closed transitively.

Both modes produce the same :class:`SpacetimeGame` and behave identically
downstream.
"""

import itertools
import logging
import re
import sys
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import config
from .errors import (
    AssignmentConflictError,
    CycleError,
    DuplicatePointError,
    GameStructureError,
    InconsistentContingencyError,
    PayoffTableError,
    SpacelikeAgentError,
    UnknownSymbolError,
)
from .geometry import CausalClass, Event, Metric, check_same_dimension, classify

logger = logging.getLogger(__name__)

AgentId = str
ActionId = str

# Rendering of an unbound decision point in history strings.
UNBOUND = "-"

# Point index: ASCII decimal, no leading zeros.
_INDEX = re.compile(r"[1-9][0-9]*")


@dataclass(frozen=True, order=True)
class DecisionPointId:
    agent: AgentId
    index: int

    def __post_init__(self):
        if not isinstance(self.agent, str) or not self.agent:
            raise GameStructureError(f"Agent symbol must be a non-empty string, got {self.agent!r}")
        if isinstance(self.index, bool) or not isinstance(self.index, int) or self.index < 1:
            raise GameStructureError(
                f"Decision index must be a positive integer, got {self.index!r}"
            )
        object.__setattr__(self, "agent", sys.intern(self.agent))

    @classmethod
    def parse(cls, text: str) -> "DecisionPointId":
        """Parse the ``Agent.j`` notation.

        Args:
            text: Agent symbol, a dot, and a positive index without leading zeros.

        Returns:
            The parsed id.

        Raises:
            GameStructureError: If ``text`` is not of that form.
        """
        agent, sep, index = str(text).rpartition(".")
        if not sep or not agent or not _INDEX.fullmatch(index):
            raise GameStructureError(f"Malformed decision point id '{text}', expected 'Agent.j'")
        return cls(agent, int(index))

    def __str__(self) -> str:
        return f"{self.agent}.{self.index}"


PointRef = Union[DecisionPointId, str]


def as_point_id(ref: PointRef) -> DecisionPointId:
    return ref if isinstance(ref, DecisionPointId) else DecisionPointId.parse(ref)


@dataclass(frozen=True)
class DecisionPoint:
    id: DecisionPointId
    actions: Tuple[ActionId, ...]
    location: Optional[Event] = None

    def __post_init__(self):
        object.__setattr__(self, "id", as_point_id(self.id))
        actions = tuple(sys.intern(str(a)) for a in self.actions)
        if not actions:
            raise GameStructureError(f"Decision point {self.id} has no actions")
        if any(not a for a in actions):
            raise GameStructureError(f"Decision point {self.id} has an empty action symbol")
        if len(set(actions)) != len(actions):
            raise GameStructureError(f"Decision point {self.id} repeats an action: {actions}")
        object.__setattr__(self, "actions", actions)
        if self.location is not None and not isinstance(self.location, Event):
            object.__setattr__(self, "location", Event(tuple(self.location)))

    @property
    def agent(self) -> AgentId:
        return self.id.agent


class RawAssignment(Mapping):
    """Immutable partial map from decision points to actions.

    Histories, strategies, profiles and contingency coordinates all use this
    one representation. Iteration follows decision point order.
    """

    __slots__ = ("_bindings", "_hash")

    def __init__(self, bindings: Optional[Union[Mapping, Iterable[Tuple[PointRef, str]]]] = None):
        items = bindings.items() if isinstance(bindings, Mapping) else (bindings or ())
        self._bindings: Dict[DecisionPointId, ActionId] = dict(
            sorted((as_point_id(p), sys.intern(str(a))) for p, a in items)
        )
        self._hash: Optional[int] = None

    def __getitem__(self, point: PointRef) -> ActionId:
        return self._bindings[as_point_id(point)]

    def __contains__(self, point: object) -> bool:
        if isinstance(point, str):
            point = DecisionPointId.parse(point)
        return point in self._bindings

    def __iter__(self) -> Iterator[DecisionPointId]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._bindings.items()))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RawAssignment):
            return self._bindings == other._bindings
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}->{a}" for p, a in self._bindings.items())
        return "{" + inner + "}"

    def is_restriction(self, other: "RawAssignment") -> bool:
        """True iff every binding of ``self`` appears identically in ``other``."""
        return all(other._bindings.get(p) == a for p, a in self._bindings.items())

    def conflict(self, other: "RawAssignment") -> Optional[Tuple[DecisionPointId, str, str]]:
        for p, a in self._bindings.items():
            b = other._bindings.get(p)
            if b is not None and b != a:
                return p, a, b
        return None

    def compatible(self, other: "RawAssignment") -> bool:
        return self.conflict(other) is None

    def union(self, other: "RawAssignment") -> "RawAssignment":
        clash = self.conflict(other)
        if clash is not None:
            point, left, right = clash
            raise AssignmentConflictError(str(point), left, right)
        return RawAssignment({**self._bindings, **other._bindings})

    def bind(self, point: PointRef, action: ActionId) -> "RawAssignment":
        return RawAssignment({**self._bindings, as_point_id(point): action})

    def restrict(self, points: Iterable[PointRef]) -> "RawAssignment":
        keep = {as_point_id(p) for p in points}
        return RawAssignment({p: a for p, a in self._bindings.items() if p in keep})

    def to_string(self, order: Sequence[DecisionPointId]) -> str:
        return ",".join(self._bindings.get(p, UNBOUND) for p in order)

    @classmethod
    def from_string(cls, order: Sequence[DecisionPointId], text: str) -> "RawAssignment":
        symbols = [s.strip() for s in text.split(",")] if text else []
        if len(symbols) != len(order):
            raise GameStructureError(
                f"History '{text}' has {len(symbols)} entries, expected {len(order)}"
            )
        return cls({p: s for p, s in zip(order, symbols) if s != UNBOUND})


def is_restriction(a: RawAssignment, b: RawAssignment) -> bool:
    """True iff every binding of ``a`` appears identically in ``b``."""
    return a.is_restriction(b)


def union(a: RawAssignment, b: RawAssignment) -> RawAssignment:
    """Merge two compatible assignments.

    Args:
        a: First assignment.
        b: Second assignment.

    Returns:
        The assignment binding everything ``a`` or ``b`` binds.

    Raises:
        AssignmentConflictError: If ``a`` and ``b`` bind one point to different actions.
    """
    return a.union(b)


@dataclass(frozen=True)
class PrecedenceRelation:
    """Set of ordered pairs (p, q) meaning p timelike-precedes q."""

    pairs: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", frozenset((as_point_id(p), as_point_id(q)) for p, q in self.pairs)
        )

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __iter__(self) -> Iterator[Tuple[DecisionPointId, DecisionPointId]]:
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def precedes(self, p: DecisionPointId, q: DecisionPointId) -> bool:
        return (p, q) in self.pairs

    def to_graph(self, nodes: Iterable[DecisionPointId] = ()) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(set(nodes) | {p for pair in self.pairs for p in pair}))
        graph.add_edges_from(sorted(self.pairs))
        return graph


def _check_acyclic(graph: nx.DiGraph) -> None:
    if nx.is_directed_acyclic_graph(graph):
        return
    cycle = nx.find_cycle(graph)
    raise CycleError([str(u) for u, _ in cycle])


def transitive_closure(r: PrecedenceRelation) -> PrecedenceRelation:
    """Smallest transitive relation containing ``r``.

    Raises:
        CycleError: If ``r`` contains a cycle.
    """
    graph = r.to_graph()
    _check_acyclic(graph)
    return PrecedenceRelation(frozenset(nx.transitive_closure_dag(graph).edges()))


def transitive_reduction(r: PrecedenceRelation) -> PrecedenceRelation:
    """Minimal relation with the same transitive closure.

    Used to draw precedence DAGs; an empty relation reduces to itself.

    Raises:
        CycleError: If ``r`` contains a cycle.
    """
    graph = r.to_graph()
    _check_acyclic(graph)
    return PrecedenceRelation(frozenset(nx.transitive_reduction(graph).edges()))


def build_precedence(
    points: Iterable[DecisionPoint], m: Optional[Metric] = None
) -> PrecedenceRelation:
    """Derive the full precedence relation from point locations.

    Args:
        points: Located decision points.
        m: Metric; defaults to one matching the event dimension with the
            configured light speed.

    Returns:
        Every pair (p, q) with p's event timelike-before q's. The relation is
        transitive by construction.

    Raises:
        DuplicatePointError: If an id appears twice.
        GameStructureError: If a point has no location.
        DimensionMismatchError: If the events differ in dimension.
    """
    points = list(points)
    seen = set()
    for point in points:
        if point.id in seen:
            raise DuplicatePointError(str(point.id))
        seen.add(point.id)
        if point.location is None:
            raise GameStructureError(f"Decision point {point.id} has no location")
    dimension = check_same_dimension([p.location for p in points])
    if m is None:
        m = Metric.for_dimension(max(dimension, 2))
    pairs = set()
    for a, b in itertools.combinations(points, 2):
        relation = classify(a.location, b.location, m)
        if relation is CausalClass.TIMELIKE_BEFORE:
            pairs.add((a.id, b.id))
        elif relation is CausalClass.TIMELIKE_AFTER:
            pairs.add((b.id, a.id))
    logger.debug("Derived %d precedence pairs over %d points", len(pairs), len(points))
    return PrecedenceRelation(frozenset(pairs))


def canonical_linearization(
    prec: PrecedenceRelation, points: Iterable[DecisionPointId]
) -> Tuple[DecisionPointId, ...]:
    """Topological order breaking ties by (agent, index)."""
    graph = prec.to_graph(points)
    _check_acyclic(graph)
    return tuple(nx.lexicographical_topological_sort(graph, key=lambda p: (p.agent, p.index)))


def is_linearization(prec: PrecedenceRelation, order: Sequence[DecisionPointId], points) -> bool:
    if len(order) != len(set(order)) or set(order) != set(points):
        return False
    position = {p: i for i, p in enumerate(order)}
    return all(position[p] < position[q] for p, q in prec.pairs)


PayoffInput = Union[Mapping[AgentId, float], Sequence[float]]


@dataclass(frozen=True)
class SpacetimeGame:
    """A validated spacetime game with perfect information.

    ``prec`` holds the full (transitively closed) relation. ``order`` is the
    history order: the declared point order when it linearizes ``prec``,
    otherwise the canonical linearization. Payoff vectors are indexed by
    ``agents``.
    """

    agents: Tuple[AgentId, ...]
    actions: Tuple[ActionId, ...]
    points: Tuple[DecisionPoint, ...]
    prec: PrecedenceRelation
    contingency: Mapping
    payoffs: Mapping
    order: Tuple[DecisionPointId, ...]
    metric: Optional[Metric] = None
    allow_spacelike_agent: bool = field(default=False, compare=False)

    @classmethod
    def build(
        cls,
        points: Iterable[DecisionPoint],
        *,
        precedence: Optional[Iterable[Tuple[PointRef, PointRef]]] = None,
        contingency: Optional[Mapping[PointRef, Any]] = None,
        payoffs: Optional[Mapping[RawAssignment, PayoffInput]] = None,
        metric: Optional[Metric] = None,
        order: Optional[Sequence[PointRef]] = None,
        agents: Optional[Iterable[AgentId]] = None,
        actions: Optional[Iterable[ActionId]] = None,
        allow_spacelike_agent: Optional[bool] = None,
    ) -> "SpacetimeGame":
        """Validate the components and assemble a game.

        Contingency coordinates are accepted as given; use
        :func:`check_consistency` or :func:`prune_unreachable` to inspect or
        repair them.

        Args:
            points: Decision points, either all located or none.
            precedence: Declared (p, q) pairs for unlocated points; closed
                transitively.
            contingency: Point to its bindings; missing points bind nothing.
            payoffs: Complete history to a payoff vector or an agent map.
            metric: Metric for located points.
            order: Preferred history order, used when it linearizes precedence.
            agents: Agent set; may add agents without decision points.
            actions: Action set; must cover every point's actions.
            allow_spacelike_agent: Accept one agent at two incomparable points
                of one history. Defaults to ``config.allow_spacelike_agent``.

        Returns:
            The assembled game.

        Raises:
            DuplicatePointError: If a point id repeats.
            GameStructureError: If locations are mixed or declared for a located game.
            CycleError: If the declared precedence has a cycle.
            UnknownSymbolError: If a pair, binding, agent or action names nothing known.
            SpacelikeAgentError: If an agent decides twice at incomparable points.
        """
        points = list(points)
        by_id: Dict[DecisionPointId, DecisionPoint] = {}
        for point in points:
            if point.id in by_id:
                raise DuplicatePointError(str(point.id))
            by_id[point.id] = point
        ids = sorted(by_id)

        located = [p for p in points if p.location is not None]
        if located and len(located) != len(points):
            raise GameStructureError("Either every decision point has a location or none has")
        if located:
            if precedence is not None:
                raise GameStructureError("Located games derive precedence; do not declare it")
            dimension = check_same_dimension([p.location for p in points])
            if metric is None:
                metric = Metric.for_dimension(dimension)
            prec = build_precedence(points, metric)
        else:
            metric = None
            pairs = set()
            for p, q in precedence or ():
                p, q = as_point_id(p), as_point_id(q)
                for ref in (p, q):
                    if ref not in by_id:
                        raise UnknownSymbolError("decision point", str(ref), "precedence")
                if p == q:
                    raise CycleError([str(p)])
                pairs.add((p, q))
            prec = transitive_closure(PrecedenceRelation(frozenset(pairs)))

        gamma: Dict[DecisionPointId, RawAssignment] = {p: RawAssignment() for p in ids}
        for ref, bindings in (contingency or {}).items():
            pid = as_point_id(ref)
            if pid not in by_id:
                raise UnknownSymbolError("decision point", str(pid), "contingency")
            assignment = RawAssignment(bindings)
            for bound in assignment:
                if bound not in by_id:
                    raise UnknownSymbolError("decision point", str(bound), f"contingency of {pid}")
            gamma[pid] = assignment

        point_agents = sorted({p.agent for p in points})
        if agents is None:
            agent_list = point_agents
        else:
            agent_list = sorted({sys.intern(a) for a in agents})
            for agent in point_agents:
                if agent not in agent_list:
                    raise UnknownSymbolError("agent", agent, "decision points")

        point_actions = list(dict.fromkeys(a for p in points for a in p.actions))
        if actions is None:
            action_list = point_actions
        else:
            action_list = list(dict.fromkeys(sys.intern(a) for a in actions))
            for action in point_actions:
                if action not in action_list:
                    raise UnknownSymbolError("action", action, "decision points")

        if order is not None:
            declared = tuple(as_point_id(p) for p in order)
            if is_linearization(prec, declared, ids):
                history_order = declared
            else:
                logger.debug("Declared point order is not a linearization; using canonical order")
                history_order = canonical_linearization(prec, ids)
        else:
            history_order = canonical_linearization(prec, ids)

        if allow_spacelike_agent is None:
            allow_spacelike_agent = config.allow_spacelike_agent
        if not allow_spacelike_agent:
            _check_spacelike_agents(ids, prec, gamma)

        table: Dict[RawAssignment, Tuple[float, ...]] = {}
        for history, values in (payoffs or {}).items():
            if not isinstance(history, RawAssignment):
                history = RawAssignment(history)
            table[history] = _payoff_vector(values, agent_list, history, history_order)

        return cls(
            agents=tuple(agent_list),
            actions=tuple(action_list),
            points=tuple(by_id[p] for p in ids),
            prec=prec,
            contingency=gamma,
            payoffs=table,
            order=history_order,
            metric=metric,
            allow_spacelike_agent=allow_spacelike_agent,
        )

    def rebuild(self, **overrides: Any) -> "SpacetimeGame":
        """Build a new game from this one's components with some replaced."""
        located = self.metric is not None
        components: Dict[str, Any] = {
            "points": self.points,
            "precedence": None if located else sorted(self.prec.pairs),
            "contingency": self.contingency,
            "payoffs": self.payoffs,
            "metric": self.metric,
            "order": self.order,
            "agents": self.agents,
            "actions": self.actions,
            "allow_spacelike_agent": self.allow_spacelike_agent,
        }
        components.update(overrides)
        return SpacetimeGame.build(components.pop("points"), **components)

    @cached_property
    def _by_id(self) -> Dict[DecisionPointId, DecisionPoint]:
        return {p.id: p for p in self.points}

    @property
    def point_ids(self) -> Tuple[DecisionPointId, ...]:
        return tuple(p.id for p in self.points)

    @property
    def located(self) -> bool:
        return self.metric is not None

    def point(self, ref: PointRef) -> DecisionPoint:
        pid = as_point_id(ref)
        try:
            return self._by_id[pid]
        except KeyError:
            raise UnknownSymbolError("decision point", str(pid)) from None

    def gamma(self, ref: PointRef) -> RawAssignment:
        return self.contingency[self.point(ref).id]

    def points_of(self, agent: AgentId) -> Tuple[DecisionPoint, ...]:
        if agent not in self.agents:
            raise UnknownSymbolError("agent", agent)
        return tuple(p for p in self.points if p.agent == agent)

    def agent_index(self, agent: AgentId) -> int:
        try:
            return self.agents.index(agent)
        except ValueError:
            raise UnknownSymbolError("agent", agent) from None

    @cached_property
    def actual_precedence(self) -> PrecedenceRelation:
        pairs = frozenset(
            (p, q)
            for p, q in self.prec.pairs
            if self.contingency[p].is_restriction(self.contingency[q])
        )
        return PrecedenceRelation(pairs)

    def format_assignment(self, assignment: RawAssignment) -> str:
        return assignment.to_string(self.order)

    def parse_assignment(self, text: str) -> RawAssignment:
        return RawAssignment.from_string(self.order, text)

    def payoff(self, history: RawAssignment) -> Tuple[float, ...]:
        try:
            return self.payoffs[history]
        except KeyError:
            raise PayoffTableError(missing=[self.format_assignment(history)]) from None


def _payoff_vector(
    values: PayoffInput,
    agents: Sequence[AgentId],
    history: RawAssignment,
    order: Sequence[DecisionPointId],
) -> Tuple[float, ...]:
    where = history.to_string(order)
    if isinstance(values, Mapping):
        unknown = sorted(set(values) - set(agents))
        if unknown:
            raise UnknownSymbolError("agent", unknown[0], f"payoffs of {where}")
        missing = [a for a in agents if a not in values]
        if missing:
            raise PayoffTableError(message=f"Payoffs of {where} lack agents {missing}")
        return tuple(float(values[a]) for a in agents)
    vector = tuple(float(v) for v in values)
    if len(vector) != len(agents):
        raise PayoffTableError(
            message=f"Payoffs of {where} have {len(vector)} entries for {len(agents)} agents"
        )
    return vector


def _check_spacelike_agents(
    ids: Sequence[DecisionPointId],
    prec: PrecedenceRelation,
    gamma: Mapping[DecisionPointId, RawAssignment],
) -> None:
    for p, q in itertools.combinations(ids, 2):
        if p.agent != q.agent or prec.precedes(p, q) or prec.precedes(q, p):
            continue
        if gamma[p].compatible(gamma[q]):
            raise SpacelikeAgentError(p.agent, str(p), str(q))


def actually_precedes(g: SpacetimeGame, p: PointRef, q: PointRef) -> bool:
    """p ≺ q and the contingency coordinates of p restrict those of q.

    Args:
        g: The game.
        p: Candidate predecessor.
        q: Candidate successor.

    Returns:
        True when ``p`` actually precedes ``q``.

    Raises:
        UnknownSymbolError: If either point is not in ``g``.
    """
    p, q = g.point(p).id, g.point(q).id
    return g.prec.precedes(p, q) and g.contingency[p].is_restriction(g.contingency[q])


@dataclass(frozen=True)
class ConsistencyReport:
    """Violations of "γ_q binds p iff p actually precedes q".

    Entries are (q, p): the point whose coordinates are at fault first.
    """

    over_binding: Tuple[Tuple[DecisionPointId, DecisionPointId], ...] = ()
    under_binding: Tuple[Tuple[DecisionPointId, DecisionPointId], ...] = ()
    invalid_actions: Tuple[Tuple[DecisionPointId, DecisionPointId, ActionId], ...] = ()

    @property
    def is_clean(self) -> bool:
        return not (self.over_binding or self.under_binding or self.invalid_actions)

    def summary(self) -> str:
        parts = []
        if self.over_binding:
            parts.append("over-binding " + ", ".join(f"({q},{p})" for q, p in self.over_binding))
        if self.under_binding:
            parts.append("under-binding " + ", ".join(f"({q},{p})" for q, p in self.under_binding))
        if self.invalid_actions:
            parts.append(
                "invalid actions "
                + ", ".join(f"({q},{p}->{a})" for q, p, a in self.invalid_actions)
            )
        return "; ".join(parts) or "consistent"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "success" if self.is_clean else "error",
            "over_binding": [[str(q), str(p)] for q, p in self.over_binding],
            "under_binding": [[str(q), str(p)] for q, p in self.under_binding],
            "invalid_actions": [[str(q), str(p), a] for q, p, a in self.invalid_actions],
        }


def check_consistency(g: SpacetimeGame) -> ConsistencyReport:
    """Check that each point binds exactly the points that actually precede it.

    Args:
        g: The game.

    Returns:
        Report listing over-binding, under-binding and bindings to actions
        the bound point does not offer. Clean when all three are empty.
    """
    over: List[Tuple[DecisionPointId, DecisionPointId]] = []
    under: List[Tuple[DecisionPointId, DecisionPointId]] = []
    invalid: List[Tuple[DecisionPointId, DecisionPointId, ActionId]] = []
    actual = g.actual_precedence
    for q in g.point_ids:
        gamma_q = g.contingency[q]
        for p, action in gamma_q.items():
            if action not in g.point(p).actions:
                invalid.append((q, p, action))
        for p in g.point_ids:
            bound = p in gamma_q
            precedes = actual.precedes(p, q)
            if bound and not precedes:
                over.append((q, p))
            elif precedes and not bound:
                under.append((q, p))
    report = ConsistencyReport(tuple(over), tuple(under), tuple(invalid))
    logger.debug("Consistency check: %s", report.summary())
    return report


def _unreachable_points(
    remaining: Dict[DecisionPointId, DecisionPoint],
    prec: PrecedenceRelation,
    gamma: Mapping[DecisionPointId, RawAssignment],
) -> List[DecisionPointId]:
    doomed = []
    for q in sorted(remaining):
        for p, action in gamma[q].items():
            if p not in remaining or action not in remaining[p].actions:
                doomed.append(q)
                break
            if not (prec.precedes(p, q) and gamma[p].is_restriction(gamma[q])):
                doomed.append(q)
                break
    return doomed


def prune_unreachable(g: SpacetimeGame) -> SpacetimeGame:
    """Remove decision points whose contingency coordinates can never hold.

    A point goes when its coordinates bind a point that does not actually
    precede it, a removed point, or an action outside the bound point's set.
    Removal repeats until nothing changes. Payoff rows are restricted to the
    surviving points.

    Args:
        g: Game whose contingency coordinates may over-bind.

    Returns:
        ``g`` itself when nothing is removed, otherwise the pruned game. The
        result always passes :func:`check_consistency`.

    Raises:
        InconsistentContingencyError: If a surviving point leaves an actual
            predecessor unbound.
    """
    remaining = {p.id: p for p in g.points}
    iteration = 0
    while True:
        doomed = _unreachable_points(remaining, g.prec, g.contingency)
        if not doomed:
            break
        iteration += 1
        logger.info("Prune pass %d removes %s", iteration, ", ".join(map(str, doomed)))
        for pid in doomed:
            del remaining[pid]
    pruned = g if iteration == 0 else _rebuild_without(g, remaining)
    report = check_consistency(pruned)
    if not report.is_clean:
        raise InconsistentContingencyError(report)
    return pruned


def _rebuild_without(
    g: SpacetimeGame, remaining: Dict[DecisionPointId, DecisionPoint]
) -> SpacetimeGame:
    kept = sorted(remaining)
    agents = sorted({p.agent for p in remaining.values()})
    payoffs: Dict[RawAssignment, Dict[AgentId, float]] = {}
    for history, vector in g.payoffs.items():
        restricted = history.restrict(kept)
        values = dict(zip(g.agents, vector))
        payoffs.setdefault(restricted, {a: values[a] for a in agents})
    return SpacetimeGame.build(
        [remaining[p] for p in kept],
        precedence=(
            None
            if g.located
            else [(p, q) for p, q in g.prec if p in remaining and q in remaining]
        ),
        contingency={p: g.contingency[p] for p in kept},
        payoffs=payoffs,
        metric=g.metric,
        order=[p for p in g.order if p in remaining],
        actions=[a for a in g.actions if any(a in p.actions for p in remaining.values())],
        allow_spacelike_agent=g.allow_spacelike_agent,
    )
