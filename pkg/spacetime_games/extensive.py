"""Extensive-form games and their link to spacetime games.

A spacetime game becomes a tree by fixing a linearization of its decision
points. Every node is an incomplete history; its children bind the next
reachable point in the linearization, and nodes waiting on the same point
form one information set, named after that point.

The converse question, whether a given tree is the image of some spacetime
game, is answered by :func:`is_spacetime_interpretable` with a verdict that
is only ``NO`` when a checkable certificate exists.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from .config import config
from .core import (
    UNBOUND,
    AgentId,
    DecisionPoint,
    DecisionPointId,
    RawAssignment,
    SpacetimeGame,
    canonical_linearization,
    is_linearization,
)
from .errors import (
    GameStructureError,
    NotPerfectInformationError,
    SpacetimeGameError,
    UnknownSymbolError,
)
from .geometry import Event
from .strategic import NormalFormGame, check_tensor_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Linearization:
    """A total order of all decision points extending precedence."""

    order: Tuple[DecisionPointId, ...]

    def __iter__(self) -> Iterator[DecisionPointId]:
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def __getitem__(self, k: int) -> DecisionPointId:
        return self.order[k]

    def __str__(self) -> str:
        return " ".join(str(p) for p in self.order)


@dataclass(frozen=True)
class Linearizations:
    orders: Tuple[Linearization, ...]
    truncated: bool = False

    def __iter__(self) -> Iterator[Linearization]:
        return iter(self.orders)

    def __len__(self) -> int:
        return len(self.orders)

    def __getitem__(self, k: int) -> Linearization:
        return self.orders[k]


def linearize(g: SpacetimeGame) -> Linearization:
    """Topological order of the decision points, ties broken by (agent, index)."""
    return Linearization(canonical_linearization(g.prec, g.point_ids))


def enumerate_linearizations(g: SpacetimeGame, cap: Optional[int] = None) -> Linearizations:
    """Linear extensions of the precedence relation, at most ``cap`` of them.

    Args:
        g: The game.
        cap: Upper bound; defaults to ``config.linearization_cap``.

    Returns:
        The linearizations in networkx enumeration order, with ``truncated``
        set when more exist.
    """
    cap = config.linearization_cap if cap is None else cap
    graph = g.prec.to_graph(g.point_ids)
    found = [
        Linearization(tuple(order))
        for order in itertools.islice(nx.all_topological_sorts(graph), cap + 1)
    ]
    truncated = len(found) > cap
    if truncated:
        logger.warning("Stopped enumerating linearizations at the cap of %d", cap)
    return Linearizations(tuple(found[:cap]), truncated)


def _check_linearization(g: SpacetimeGame, lin: Linearization) -> None:
    if not is_linearization(g.prec, lin.order, g.point_ids):
        raise GameStructureError(f"'{lin}' is not a linearization of the precedence relation")


def _expand(
    g: SpacetimeGame, lin: Linearization
) -> Tuple[List[Tuple[RawAssignment, DecisionPoint]], List[RawAssignment]]:
    """Pre-order walk of the tree: (node assignment, next point) pairs and leaves."""
    nodes: List[Tuple[RawAssignment, DecisionPoint]] = []
    leaves: List[RawAssignment] = []
    stack: List[Tuple[int, RawAssignment]] = [(0, RawAssignment())]
    while stack:
        depth, assignment = stack.pop()
        while depth < len(lin) and not g.contingency[lin[depth]].is_restriction(assignment):
            depth += 1
        if depth == len(lin):
            leaves.append(assignment)
            continue
        point = g.point(lin[depth])
        nodes.append((assignment, point))
        for action in reversed(point.actions):
            stack.append((depth + 1, assignment.bind(point.id, action)))
    return nodes, leaves


def prefix_histories(g: SpacetimeGame, lin: Optional[Linearization] = None) -> List[RawAssignment]:
    """Incomplete prefixes of complete histories along ``lin``, root first.

    Args:
        g: The game.
        lin: Linearization to follow; defaults to :func:`linearize`.

    Returns:
        One assignment per choice node of the tree, in pre-order.

    Raises:
        GameStructureError: If ``lin`` does not linearize ``g``'s precedence.
    """
    lin = linearize(g) if lin is None else lin
    _check_linearization(g, lin)
    nodes, _ = _expand(g, lin)
    return [assignment for assignment, _ in nodes]


@dataclass(frozen=True)
class InformationSet:
    id: str
    player: AgentId
    nodes: Tuple[str, ...]


@dataclass
class ExtensiveFormGame:
    """Game tree with imperfect information.

    ``choices`` is the action function, ``players`` the player function and
    ``successors`` maps (node, action) to a node or an outcome. Utility
    vectors are indexed by ``agents``.
    """

    agents: Tuple[AgentId, ...]
    actions: Tuple[str, ...]
    nodes: Tuple[str, ...]
    outcomes: Tuple[str, ...]
    choices: Dict[str, Tuple[str, ...]]
    players: Dict[str, AgentId]
    successors: Dict[Tuple[str, str], str]
    utilities: Dict[str, Tuple[float, ...]]
    information_sets: Tuple[InformationSet, ...] = field(default_factory=tuple)

    @cached_property
    def root(self) -> str:
        targets = set(self.successors.values())
        roots = [h for h in (*self.nodes, *self.outcomes) if h not in targets]
        if len(roots) != 1:
            raise GameStructureError(f"Expected a single root, found {roots}")
        return roots[0]

    @cached_property
    def information_set_of(self) -> Dict[str, InformationSet]:
        return {h: iset for iset in self.information_sets for h in iset.nodes}

    def information_set(self, iset_id: str) -> InformationSet:
        for iset in self.information_sets:
            if iset.id == iset_id:
                return iset
        raise UnknownSymbolError("information set", iset_id)

    def information_sets_of(self, agent: AgentId) -> List[InformationSet]:
        return sorted(
            (iset for iset in self.information_sets if iset.player == agent), key=_iset_key
        )

    def is_outcome(self, h: str) -> bool:
        return h in self.utilities and h not in self.players

    def children(self, h: str) -> List[Tuple[str, str]]:
        return [(a, self.successors[(h, a)]) for a in self.choices.get(h, ())]

    def walk(self) -> Iterator[Tuple[str, Tuple[Tuple[str, str], ...]]]:
        """Pre-order (element, path) pairs; the path lists (node, action) from the root."""
        stack: List[Tuple[str, Tuple[Tuple[str, str], ...]]] = [(self.root, ())]
        while stack:
            h, path = stack.pop()
            yield h, path
            for action, child in reversed(self.children(h)):
                stack.append((child, path + ((h, action),)))

    def play(self, choices: Mapping[str, str]) -> str:
        """Follow ``choices`` (information set id to action) from the root to an outcome."""
        h = self.root
        while h in self.players:
            h = self.successors[(h, choices[self.information_set_of[h].id])]
        return h


def _iset_key(iset: InformationSet) -> Tuple[Any, ...]:
    try:
        pid = DecisionPointId.parse(iset.id)
    except GameStructureError:
        return (iset.player, 1, 0, iset.id)
    if pid.agent != iset.player:
        return (iset.player, 1, 0, iset.id)
    return (iset.player, 0, pid.index, iset.id)


def to_extensive(g: SpacetimeGame, lin: Optional[Linearization] = None) -> ExtensiveFormGame:
    """Tree of prefix histories along ``lin`` with one information set per point.

    Nodes and outcomes are named by their history strings along ``g.order``;
    information sets are named after their decision points.

    Args:
        g: Game with a total payoff table.
        lin: Linearization to follow; defaults to :func:`linearize`.

    Returns:
        The extensive form.

    Raises:
        GameStructureError: If ``lin`` does not linearize ``g``'s precedence.
        PayoffTableError: If a complete history has no payoff.
    """
    lin = linearize(g) if lin is None else lin
    _check_linearization(g, lin)
    nodes, leaves = _expand(g, lin)
    choices: Dict[str, Tuple[str, ...]] = {}
    players: Dict[str, AgentId] = {}
    successors: Dict[Tuple[str, str], str] = {}
    members: Dict[DecisionPointId, List[str]] = {}
    for assignment, point in nodes:
        node = g.format_assignment(assignment)
        choices[node] = point.actions
        players[node] = point.agent
        members.setdefault(point.id, []).append(node)
        for action in point.actions:
            successors[(node, action)] = g.format_assignment(assignment.bind(point.id, action))
    utilities = {g.format_assignment(leaf): g.payoff(leaf) for leaf in leaves}
    information_sets = tuple(
        InformationSet(str(pid), pid.agent, tuple(members[pid])) for pid in sorted(members)
    )
    logger.debug(
        "Built extensive form: %d nodes, %d outcomes, %d information sets",
        len(nodes),
        len(leaves),
        len(information_sets),
    )
    return ExtensiveFormGame(
        agents=g.agents,
        actions=g.actions,
        nodes=tuple(choices),
        outcomes=tuple(utilities),
        choices=choices,
        players=players,
        successors=successors,
        utilities=utilities,
        information_sets=information_sets,
    )


@dataclass(frozen=True)
class ExtensiveFormReport:
    violations: Tuple[str, ...] = ()

    @property
    def is_clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "success" if self.is_clean else "error",
            "violations": list(self.violations),
        }


def validate_efg(e: ExtensiveFormGame) -> ExtensiveFormReport:
    """Check the tree and information-partition constraints.

    Args:
        e: Extensive form to check.

    Returns:
        Report with one readable violation per broken constraint; clean when
        ``e`` is a well-formed game tree with a valid information partition.
    """
    problems: List[str] = []
    nodes, outcomes = set(e.nodes), set(e.outcomes)
    for h in sorted(nodes & outcomes):
        problems.append(f"'{h}' is both a choice node and an outcome")

    for h in e.nodes:
        if not e.choices.get(h):
            problems.append(f"action function: node '{h}' has no actions")
        for action in e.choices.get(h, ()):
            if action not in e.actions:
                problems.append(f"action function: node '{h}' offers unknown action '{action}'")
            if (h, action) not in e.successors:
                problems.append(f"successor function: missing successor of '{h}' under '{action}'")
        if e.players.get(h) not in e.agents:
            problems.append(f"player function: node '{h}' has unknown player '{e.players.get(h)}'")

    for (h, action), target in e.successors.items():
        if h not in nodes:
            problems.append(f"successor function: defined at '{h}', which is not a choice node")
        elif action not in e.choices.get(h, ()):
            problems.append(f"successor function: action '{action}' is not available at '{h}'")
        if target not in nodes and target not in outcomes:
            problems.append(f"successor function: unknown target '{target}'")

    targets: Dict[str, int] = {}
    for target in e.successors.values():
        targets[target] = targets.get(target, 0) + 1
    for target in sorted(t for t, n in targets.items() if n > 1):
        problems.append(f"successor function is not injective: '{target}' is reached twice")

    graph = nx.DiGraph()
    graph.add_nodes_from([*e.nodes, *e.outcomes])
    graph.add_edges_from(
        (h, t) for (h, _), t in e.successors.items() if h in graph and t in graph
    )
    roots = sorted(h for h in graph if graph.in_degree(h) == 0)
    if len(roots) != 1:
        problems.append(
            "choice nodes and outcomes must form a single connected component "
            f"with one root, found roots {roots}"
        )
    elif not nx.is_arborescence(graph):
        problems.append("choice nodes and outcomes must form a single connected component tree")

    for z in e.outcomes:
        values = e.utilities.get(z)
        if values is None or len(values) != len(e.agents):
            problems.append(f"utility function: outcome '{z}' lacks a payoff per agent")

    membership: Dict[str, List[str]] = {}
    for iset in e.information_sets:
        for h in iset.nodes:
            membership.setdefault(h, []).append(iset.id)
            if h not in nodes:
                problems.append(
                    f"information set {iset.id} holds '{h}', which is not a choice node"
                )
        players = sorted({e.players.get(h, "?") for h in iset.nodes} | {iset.player})
        if len(players) > 1:
            problems.append(f"information set {iset.id} violates the player function: {players}")
        action_sets = {tuple(sorted(e.choices.get(h, ()))) for h in iset.nodes}
        if len(action_sets) > 1:
            problems.append(
                f"information set {iset.id} violates the action function: {sorted(action_sets)}"
            )
    for h in e.nodes:
        owners = membership.get(h, [])
        if len(owners) != 1:
            problems.append(f"information partition: node '{h}' belongs to {len(owners)} sets")

    return ExtensiveFormReport(tuple(problems))


def _own_sequences(e: ExtensiveFormGame) -> Dict[str, Tuple[Tuple[str, str], ...]]:
    sequences = {}
    for h, path in e.walk():
        if h not in e.players:
            continue
        player = e.players[h]
        sequences[h] = tuple(
            (e.information_set_of[n].id, a) for n, a in path if e.players[n] == player
        )
    return sequences


def has_perfect_recall(e: ExtensiveFormGame) -> bool:
    """Nodes of one information set share their player's own move sequence."""
    sequences = _own_sequences(e)
    for iset in e.information_sets:
        if len({sequences[h] for h in iset.nodes}) > 1:
            return False
    return True


def strategy_labels_for_choices(
    e: ExtensiveFormGame, choices: Mapping[str, str]
) -> Tuple[str, ...]:
    """Per-agent labels: actions over the agent's information sets, ``-`` where unset."""
    return tuple(
        ",".join(choices.get(iset.id, UNBOUND) for iset in e.information_sets_of(agent))
        for agent in e.agents
    )


def strategic_form_efg(e: ExtensiveFormGame, max_cells: Optional[int] = None) -> NormalFormGame:
    """Payoff tensor over plans that fix one action per information set.

    Args:
        e: Valid extensive form.
        max_cells: Cell limit; defaults to ``config.max_tensor_cells``.

    Returns:
        The strategic form; each cell is annotated with the outcome reached.

    Raises:
        TensorTooLargeError: If the tensor would exceed the limit.
    """
    sets = [e.information_sets_of(agent) for agent in e.agents]
    spaces = [
        list(itertools.product(*(e.choices[iset.nodes[0]] for iset in agent_sets)))
        for agent_sets in sets
    ]
    sizes = [len(space) for space in spaces]
    check_tensor_size(sizes, max_cells)
    labels = tuple(tuple(",".join(plan) for plan in space) for space in spaces)
    tensor = np.zeros((*sizes, len(e.agents)), dtype=float)
    annotation: Dict[Tuple[str, ...], str] = {}
    for index in itertools.product(*(range(n) for n in sizes)):
        choices = {
            iset.id: action
            for agent_sets, space, k in zip(sets, spaces, index)
            for iset, action in zip(agent_sets, space[k])
        }
        outcome = e.play(choices)
        tensor[index] = e.utilities[outcome]
        annotation[tuple(labels[i][k] for i, k in enumerate(index))] = outcome
    return NormalFormGame(e.agents, labels, tensor, annotation)


class Verdict(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass
class InterpretVerdict:
    verdict: Verdict
    reason: str
    information_sets: Tuple[str, ...] = ()
    witness: Optional[SpacetimeGame] = None
    linearization: Optional[Linearization] = None
    mapping: Dict[str, str] = field(default_factory=dict)

    def __str__(self) -> str:
        return f"{self.verdict.value}: {self.reason}"

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "status": "success",
            "verdict": self.verdict.value,
            "reason": self.reason,
        }
        if self.information_sets:
            result["information_sets"] = list(self.information_sets)
        if self.linearization is not None:
            result["linearization"] = [str(p) for p in self.linearization]
        if self.mapping:
            result["mapping"] = dict(self.mapping)
        return result


def _passes(e: ExtensiveFormGame) -> Dict[str, Dict[str, str]]:
    """For each choice node, the information sets on its root path and the actions taken."""
    return {
        h: {e.information_set_of[n].id: a for n, a in path}
        for h, path in e.walk()
        if h in e.players
    }


def _knowledge_relation(
    e: ExtensiveFormGame, isets: Sequence[InformationSet], passes: Dict[str, Dict[str, str]]
) -> Set[Tuple[str, str]]:
    """(P, Q) when Q's nodes that follow P all agree on the action taken at P."""
    known = set()
    for p in isets:
        if len(e.choices[p.nodes[0]]) < 2:
            continue
        for q in isets:
            if q.id == p.id:
                continue
            seen = {passes[h][p.id] for h in q.nodes if p.id in passes[h]}
            if len(seen) == 1:
                known.add((p.id, q.id))
    return known


def _candidate_ids(isets: Sequence[InformationSet]) -> Dict[str, DecisionPointId]:
    ids: Dict[str, DecisionPointId] = {}
    used: Set[DecisionPointId] = set()
    pending = []
    for iset in isets:
        try:
            pid = DecisionPointId.parse(iset.id)
        except GameStructureError:
            pid = None
        if pid is None or pid.agent != iset.player or pid in used:
            pending.append(iset)
            continue
        ids[iset.id] = pid
        used.add(pid)
    for iset in pending:
        index = 1 + max((p.index for p in used if p.agent == iset.player), default=0)
        pid = DecisionPointId(iset.player, index)
        ids[iset.id] = pid
        used.add(pid)
    return ids


def _match_trees(
    e: ExtensiveFormGame, other: ExtensiveFormGame, rename: Mapping[str, DecisionPointId]
) -> Optional[Dict[str, str]]:
    """Node bijection following equal action labels, or None."""
    mapping: Dict[str, str] = {}
    stack = [(e.root, other.root)]
    while stack:
        a, b = stack.pop()
        mapping[a] = b
        if (a in e.players) != (b in other.players):
            return None
        if a not in e.players:
            if tuple(e.utilities[a]) != tuple(other.utilities[b]):
                return None
            continue
        if str(rename[e.information_set_of[a].id]) != other.information_set_of[b].id:
            return None
        if e.players[a] != other.players[b] or set(e.choices[a]) != set(other.choices[b]):
            return None
        for action in e.choices[a]:
            stack.append((e.successors[(a, action)], other.successors[(b, action)]))
    return mapping


def is_spacetime_interpretable(
    e: ExtensiveFormGame, bound: Optional[int] = None
) -> InterpretVerdict:
    """Decide whether ``e`` is the extensive form of some spacetime game.

    Necessary conditions are checked first: a valid tree, perfect recall,
    and transitivity of the knowledge relation. The search then derives
    precedence and contingency coordinates from the information sets every
    node of a set is guaranteed to follow, and tries linear extensions of
    the observed play order until one reproduces ``e``.

    Args:
        e: Extensive form to test.
        bound: Linearizations to try; defaults to ``config.interpret_budget``.

    Returns:
        ``YES`` with a witness game, its linearization and the node mapping;
        ``NO`` with the reason and the information sets involved; or
        ``UNKNOWN`` once the budget is spent.
    """
    budget = config.interpret_budget if bound is None else bound
    report = validate_efg(e)
    if not report.is_clean:
        return InterpretVerdict(Verdict.NO, f"not a valid extensive form: {report.violations[0]}")
    if not has_perfect_recall(e):
        return InterpretVerdict(Verdict.NO, "perfect recall violated")

    isets = sorted(e.information_sets, key=_iset_key)
    passes = _passes(e)

    known = _knowledge_relation(e, isets, passes)
    for p in isets:
        for q in isets:
            if (p.id, q.id) not in known:
                continue
            for r in isets:
                if r.id != p.id and (q.id, r.id) in known and (p.id, r.id) not in known:
                    return InterpretVerdict(
                        Verdict.NO,
                        f"knowledge transitivity violated ({r.player}/{q.player}/{p.player})",
                        (p.id, q.id, r.id),
                    )

    for p in isets:
        for q in isets:
            if (p.id, q.id) in known and any(p.id not in passes[h] for h in q.nodes):
                return InterpretVerdict(
                    Verdict.NO,
                    f"information set {q.id} knows the action at {p.id} on only some of its nodes",
                    (p.id, q.id),
                )

    derived: Dict[Tuple[str, str], str] = {}
    for p in isets:
        for q in isets:
            if p.id == q.id:
                continue
            seen = {passes[h].get(p.id) for h in q.nodes}
            if len(seen) == 1 and None not in seen:
                derived[(p.id, q.id)] = seen.pop()

    pids = _candidate_ids(isets)
    observed = nx.DiGraph()
    observed.add_nodes_from(sorted(pids.values()))
    for h, followed in passes.items():
        q = e.information_set_of[h].id
        observed.add_edges_from((pids[p], pids[q]) for p in followed)
    if not nx.is_directed_acyclic_graph(observed):
        cycle = [str(u) for u, _ in nx.find_cycle(observed)]
        return InterpretVerdict(
            Verdict.NO,
            "information sets are visited in conflicting orders: " + " -> ".join(cycle),
            tuple(cycle),
        )

    contingency: Dict[DecisionPointId, Dict[DecisionPointId, str]] = {pids[i.id]: {} for i in isets}
    for (p, q), action in derived.items():
        contingency[pids[q]][pids[p]] = action
    payoffs = {}
    for h, path in e.walk():
        if h in e.players:
            continue
        history = RawAssignment({pids[e.information_set_of[n].id]: a for n, a in path})
        payoffs[history] = e.utilities[h]
    try:
        candidate = SpacetimeGame.build(
            [DecisionPoint(pids[i.id], e.choices[i.nodes[0]]) for i in isets],
            precedence=[(pids[p], pids[q]) for p, q in derived],
            contingency=contingency,
            payoffs=payoffs,
            agents=e.agents,
            actions=e.actions,
            allow_spacelike_agent=True,
        )
    except SpacetimeGameError as exc:
        return InterpretVerdict(Verdict.NO, f"derived structure is not a spacetime game: {exc}")

    tried = 0
    for order in nx.all_topological_sorts(observed):
        if tried >= budget:
            logger.warning("Interpretability search stopped after %d linearizations", tried)
            return InterpretVerdict(
                Verdict.UNKNOWN, f"search budget of {budget} linearizations exhausted"
            )
        tried += 1
        lin = Linearization(tuple(order))
        try:
            tree = to_extensive(candidate, lin)
        except SpacetimeGameError as exc:
            logger.debug("Linearization %s rejected: %s", lin, exc)
            continue
        mapping = _match_trees(e, tree, pids)
        if mapping is not None:
            logger.debug("Witness found after %d linearizations", tried)
            return InterpretVerdict(
                Verdict.YES,
                f"witness with linearization {lin}",
                witness=candidate,
                linearization=lin,
                mapping=mapping,
            )
    return InterpretVerdict(
        Verdict.NO, f"none of {tried} linearizations of the derived precedence reproduces the tree"
    )


def from_perfect_information(e: ExtensiveFormGame) -> SpacetimeGame:
    """Lay a perfect-information tree out as one timelike chain.

    Choice nodes become decision points on the time axis in pre-order, so
    every pair is timelike, and each point's contingency coordinates are the
    moves on its root path. Points keep the ``Agent.j`` information-set
    names where the tree uses them.

    Args:
        e: Valid tree whose information sets are singletons.

    Returns:
        A consistent located game whose extensive form along the canonical
        linearization matches ``e`` up to node names.

    Raises:
        GameStructureError: If ``e`` is not a valid extensive form.
        NotPerfectInformationError: If an information set holds several nodes.
    """
    report = validate_efg(e)
    if not report.is_clean:
        raise GameStructureError(f"Not a valid extensive form: {report.violations[0]}")
    for iset in e.information_sets:
        if len(iset.nodes) != 1:
            raise NotPerfectInformationError(iset.id, len(iset.nodes))

    pids = _candidate_ids(sorted(e.information_sets, key=_iset_key))
    points: List[DecisionPoint] = []
    contingency: Dict[DecisionPointId, Dict[DecisionPointId, str]] = {}
    payoffs: Dict[RawAssignment, Dict[AgentId, float]] = {}
    for h, path in e.walk():
        moves = {pids[e.information_set_of[n].id]: a for n, a in path}
        if h in e.players:
            pid = pids[e.information_set_of[h].id]
            points.append(DecisionPoint(pid, e.choices[h], Event((0.0, float(len(points))))))
            contingency[pid] = moves
        else:
            payoffs[RawAssignment(moves)] = dict(zip(e.agents, e.utilities[h]))
    logger.debug("Laid out %d choice nodes as a timelike chain", len(points))
    return SpacetimeGame.build(
        points, contingency=contingency, payoffs=payoffs, agents=e.agents, actions=e.actions
    )
