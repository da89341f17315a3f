"""Shared fixtures, hypothesis strategies and brute-force oracles."""

import itertools
from typing import Dict, List, Set, Tuple

import pytest
from hypothesis import strategies as st

from spacetime_games.core import DecisionPoint, DecisionPointId, RawAssignment, SpacetimeGame
from spacetime_games.extensive import ExtensiveFormGame, InformationSet
from spacetime_games.fixtures import (
    absent_minded_efg,
    counter_efg,
    epr_game,
    pd_game,
    promise_game,
    running_game,
)
from spacetime_games.histories import enumerate_complete_histories

AGENTS = ("A", "B", "C")
ACTIONS = ("x", "y", "z")


@pytest.fixture
def pd():
    return pd_game()


@pytest.fixture
def promise():
    return promise_game()


@pytest.fixture
def running():
    return running_game()


@pytest.fixture
def epr():
    return epr_game()


@pytest.fixture
def counter():
    return counter_efg()


@pytest.fixture
def absent_minded():
    return absent_minded_efg()


@pytest.fixture(params=["pd", "promise", "running", "epr"])
def any_game(request):
    return {
        "pd": pd_game,
        "promise": promise_game,
        "running": running_game,
        "epr": epr_game,
    }[request.param]()


@st.composite
def dag_games(draw, max_points: int = 6, chain_agents: bool = False) -> SpacetimeGame:
    """Random consistent games in declared-precedence mode.

    Points are generated in a topological order. Each point's contingency
    coordinates bind exactly its actual predecessors, so the game is
    consistent by construction. With ``chain_agents`` the points of one agent
    form a chain, which keeps the spacelike-agent guard satisfied.
    """
    n = draw(st.integers(min_value=1, max_value=max_points))
    counters: Dict[str, int] = {}
    ids: List[DecisionPointId] = []
    for _ in range(n):
        agent = draw(st.sampled_from(AGENTS))
        counters[agent] = counters.get(agent, 0) + 1
        ids.append(DecisionPointId(agent, counters[agent]))
    actions = [ACTIONS[: draw(st.integers(min_value=2, max_value=3))] for _ in range(n)]

    edges = set()
    for i, j in itertools.combinations(range(n), 2):
        if draw(st.booleans()):
            edges.add((i, j))
    if chain_agents:
        last: Dict[str, int] = {}
        for j, pid in enumerate(ids):
            if pid.agent in last:
                edges.add((last[pid.agent], j))
            last[pid.agent] = j

    preds: List[Set[int]] = []
    for j in range(n):
        below = set()
        for i, k in edges:
            if k == j:
                below |= {i} | preds[i]
        preds.append(below)

    gamma: List[Dict[DecisionPointId, str]] = []
    for q in range(n):
        bindings: Dict[DecisionPointId, str] = {}
        for p in sorted(preds[q]):
            if all(bindings.get(r) == a for r, a in gamma[p].items()):
                bindings[ids[p]] = draw(st.sampled_from(actions[p]))
        gamma.append(bindings)

    game = SpacetimeGame.build(
        [DecisionPoint(ids[k], actions[k]) for k in range(n)],
        precedence=[(ids[i], ids[j]) for i, j in sorted(edges)],
        contingency={ids[k]: gamma[k] for k in range(n)},
        allow_spacelike_agent=True,
    )
    rnd = draw(st.randoms(use_true_random=False))
    payoffs = {
        h: tuple(rnd.randint(0, 3) for _ in game.agents)
        for h in enumerate_complete_histories(game)
    }
    return game.rebuild(payoffs=payoffs)


@st.composite
def raw_games(draw, max_points: int = 5) -> SpacetimeGame:
    """Random declared-precedence games whose coordinates may be inconsistent.

    Any point may bind any other point, and bindings may name an action the
    bound point does not offer.
    """
    n = draw(st.integers(min_value=1, max_value=max_points))
    counters: Dict[str, int] = {}
    points = []
    for _ in range(n):
        agent = draw(st.sampled_from(AGENTS))
        counters[agent] = counters.get(agent, 0) + 1
        size = draw(st.integers(min_value=1, max_value=2))
        points.append(DecisionPoint(DecisionPointId(agent, counters[agent]), ACTIONS[:size]))
    edges = [
        (points[i].id, points[j].id)
        for i, j in itertools.combinations(range(n), 2)
        if draw(st.booleans())
    ]
    gamma = {}
    for q in points:
        gamma[q.id] = {
            p.id: draw(st.sampled_from(ACTIONS))
            for p in points
            if p.id != q.id and draw(st.integers(min_value=0, max_value=2)) == 0
        }
    return SpacetimeGame.build(
        points, precedence=edges, contingency=gamma, allow_spacelike_agent=True
    )


@st.composite
def perfect_information_trees(draw, max_depth: int = 3) -> ExtensiveFormGame:
    """Random binary trees with one node per information set.

    Nodes are named by their action path from ``r``; information sets are
    named ``Agent.j`` in pre-order.
    """
    agents = ("A", "B")
    counters: Dict[str, int] = {}
    choices: Dict[str, Tuple[str, ...]] = {}
    players: Dict[str, str] = {}
    successors: Dict[Tuple[str, str], str] = {}
    utilities: Dict[str, Tuple[float, ...]] = {}
    isets = []
    outcomes = []
    stack = [("r", 0)]
    while stack:
        h, depth = stack.pop()
        if depth == max_depth or (depth > 0 and draw(st.booleans())):
            outcomes.append(h)
            utilities[h] = tuple(float(draw(st.integers(0, 3))) for _ in agents)
            continue
        player = draw(st.sampled_from(agents))
        counters[player] = counters.get(player, 0) + 1
        isets.append(InformationSet(f"{player}.{counters[player]}", player, (h,)))
        players[h] = player
        choices[h] = ("x", "y")
        for action in reversed(choices[h]):
            successors[(h, action)] = h + action
            stack.append((h + action, depth + 1))
    return ExtensiveFormGame(
        agents=agents,
        actions=("x", "y"),
        nodes=tuple(players),
        outcomes=tuple(outcomes),
        choices=choices,
        players=players,
        successors=successors,
        utilities=utilities,
        information_sets=tuple(isets),
    )


def brute_force_histories(g: SpacetimeGame) -> Set[RawAssignment]:
    """Complete histories by filtering every partial assignment."""
    choices = [(None, *p.actions) for p in g.points]
    found = set()
    for combo in itertools.product(*choices):
        a = RawAssignment({p.id: c for p, c in zip(g.points, combo) if c is not None})
        bound_ok = all(g.contingency[p].is_restriction(a) for p in a)
        closed = all(
            not g.contingency[p.id].is_restriction(a) for p in g.points if p.id not in a
        )
        if bound_ok and closed:
            found.add(a)
    return found
