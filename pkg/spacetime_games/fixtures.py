"""Bundled example games.

* ``pd``: prisoner's dilemma, two spacelike-separated decisions.
* ``promise``: Alice decides, then Bob decides only if Alice picked ``c``.
* ``running``: four agents and six decision points in 1+1 dimensions.
* ``epr``: two laboratories, each with an experimenter and an outcome agent.
* ``counter``: an extensive form that is not the image of any spacetime game.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Sequence, Tuple, Union

from .core import DecisionPoint, DecisionPointId, RawAssignment, SpacetimeGame
from .document import serialize_efg, serialize_game
from .extensive import ExtensiveFormGame, InformationSet
from .geometry import Event

logger = logging.getLogger(__name__)


def _point(ref: str, actions: str, *coords: float) -> DecisionPoint:
    return DecisionPoint(DecisionPointId.parse(ref), tuple(actions.split(",")), Event(coords))


def _game(
    points: Sequence[DecisionPoint],
    contingency: Mapping[str, Mapping[str, str]],
    table: Mapping[str, Tuple[float, ...]],
) -> SpacetimeGame:
    order = [p.id for p in points]
    payoffs = {RawAssignment.from_string(order, h): v for h, v in table.items()}
    return SpacetimeGame.build(points, contingency=contingency, payoffs=payoffs, order=order)


def pd_game() -> SpacetimeGame:
    points = [_point("A.1", "c,d", 0, 0), _point("B.1", "c,d", 10, 0)]
    table = {
        "c,c": (3, 3),
        "c,d": (0, 5),
        "d,c": (5, 0),
        "d,d": (1, 1),
    }
    return _game(points, {}, table)


def promise_game() -> SpacetimeGame:
    points = [_point("A.1", "c,d", 0, 0), _point("B.1", "c,d", 0, 1)]
    table = {
        "c,c": (3, 1),
        "c,d": (0, 3),
        "d,-": (2, 2),
    }
    return _game(points, {"B.1": {"A.1": "c"}}, table)


def running_game() -> SpacetimeGame:
    points = [
        _point("A.1", "a,b", 0, 0),
        _point("B.1", "c,d", -1, 2),
        _point("B.2", "e,f", 1, 2),
        _point("J.1", "g,h", 10, 0),
        _point("H.1", "i,j", 10, 1),
        _point("A.2", "k,l,m", 5, 12),
    ]
    contingency = {
        "B.1": {"A.1": "a"},
        "B.2": {"A.1": "b"},
        "H.1": {"J.1": "g"},
        "A.2": {"A.1": "b", "B.2": "e", "J.1": "g", "H.1": "j"},
    }
    # Agents in payoff vectors: A, B, H, J.
    table = {
        "a,c,-,g,i,-": (3, 1, 2, 0),
        "a,c,-,g,j,-": (1, 2, 0, 3),
        "a,c,-,h,-,-": (2, 0, 1, 1),
        "a,d,-,g,i,-": (0, 3, 1, 2),
        "a,d,-,g,j,-": (2, 2, 3, 1),
        "a,d,-,h,-,-": (1, 1, 0, 2),
        "b,-,e,g,i,-": (4, 0, 2, 1),
        "b,-,e,g,j,k": (5, 1, 1, 0),
        "b,-,e,g,j,l": (0, 2, 2, 3),
        "b,-,e,g,j,m": (3, 3, 0, 1),
        "b,-,e,h,-,-": (2, 1, 1, 2),
        "b,-,f,g,i,-": (1, 0, 3, 0),
        "b,-,f,g,j,-": (0, 1, 2, 2),
        "b,-,f,h,-,-": (3, 2, 0, 1),
    }
    return _game(points, contingency, table)


def epr_game() -> SpacetimeGame:
    points = [
        _point("A.1", "c,f", 0, 0),
        _point("U.1", "g,b", -0.5, 1),
        _point("U.2", "r,s", 0.5, 1),
        _point("B.1", "c,f", 100, 0),
        _point("V.1", "g,b", 99.5, 1),
        _point("V.2", "r,s", 100.5, 1),
    ]
    contingency = {
        "U.1": {"A.1": "c"},
        "U.2": {"A.1": "f"},
        "V.1": {"B.1": "c"},
        "V.2": {"B.1": "f"},
    }
    # Agents in payoff vectors: A, B, U, V.
    table = {
        "c,g,-,c,g,-": (13, 2, 9, 1),
        "c,g,-,c,b,-": (10, 15, 10, 12),
        "c,b,-,c,g,-": (14, 16, 11, 3),
        "c,b,-,c,b,-": (16, 9, 8, 2),
        "c,g,-,f,-,r": (15, 3, 6, 13),
        "c,g,-,f,-,s": (11, 6, 3, 4),
        "c,b,-,f,-,r": (6, 1, 16, 5),
        "c,b,-,f,-,s": (12, 7, 7, 6),
        "f,-,r,c,b,-": (1, 13, 15, 7),
        "f,-,r,c,g,-": (9, 4, 1, 14),
        "f,-,s,c,b,-": (5, 11, 4, 15),
        "f,-,s,c,g,-": (2, 8, 12, 12),
        "f,-,r,f,-,r": (8, 14, 14, 11),
        "f,-,r,f,-,s": (4, 5, 5, 10),
        "f,-,s,f,-,r": (3, 12, 13, 8),
        "f,-,s,f,-,s": (7, 10, 2, 9),
    }
    return _game(points, contingency, table)


def _tree(
    agents: Sequence[str],
    nodes: Mapping[str, Tuple[str, Tuple[str, ...]]],
    outcomes: Mapping[str, Tuple[float, ...]],
    successors: Mapping[Tuple[str, str], str],
    information_sets: Mapping[str, Sequence[str]],
) -> ExtensiveFormGame:
    return ExtensiveFormGame(
        agents=tuple(agents),
        actions=tuple(dict.fromkeys(a for _, actions in nodes.values() for a in actions)),
        nodes=tuple(nodes),
        outcomes=tuple(outcomes),
        choices={h: actions for h, (_, actions) in nodes.items()},
        players={h: player for h, (player, _) in nodes.items()},
        successors=dict(successors),
        utilities={z: tuple(float(v) for v in values) for z, values in outcomes.items()},
        information_sets=tuple(
            InformationSet(iset_id, nodes[members[0]][0], tuple(members))
            for iset_id, members in information_sets.items()
        ),
    )


def counter_efg() -> ExtensiveFormGame:
    """B sees A's move and C sees B's move, but C does not see A's move."""
    nodes = {
        "root": ("A", ("a", "b")),
        "a": ("B", ("c", "d")),
        "b": ("B", ("c", "d")),
        "ac": ("C", ("e", "f")),
        "ad": ("C", ("e", "f")),
        "bc": ("C", ("e", "f")),
        "bd": ("C", ("e", "f")),
    }
    outcomes = {
        "ace": (3, 1, 2),
        "acf": (0, 2, 1),
        "ade": (1, 0, 3),
        "adf": (2, 3, 0),
        "bce": (2, 2, 2),
        "bcf": (1, 1, 0),
        "bde": (0, 3, 1),
        "bdf": (3, 0, 2),
    }
    successors = {}
    for h, (_, actions) in nodes.items():
        for action in actions:
            successors[(h, action)] = action if h == "root" else h + action
    information_sets = {
        "A.1": ["root"],
        "B.1": ["a"],
        "B.2": ["b"],
        "C.1": ["ac", "bc"],
        "C.2": ["ad", "bd"],
    }
    return _tree(["A", "B", "C"], nodes, outcomes, successors, information_sets)


def absent_minded_efg() -> ExtensiveFormGame:
    """One player who cannot tell the root from its own follow-up node."""
    nodes = {"root": ("D", ("e", "x")), "x": ("D", ("e", "x"))}
    outcomes = {"e": (0,), "xe": (4,), "xx": (1,)}
    successors = {
        ("root", "e"): "e",
        ("root", "x"): "x",
        ("x", "e"): "xe",
        ("x", "x"): "xx",
    }
    return _tree(["D"], nodes, outcomes, successors, {"D.1": ["root", "x"]})


FIXTURES: Dict[str, Tuple[str, Callable[[], Union[SpacetimeGame, ExtensiveFormGame]]]] = {
    "pd": ("pd.game", pd_game),
    "promise": ("promise.game", promise_game),
    "running": ("running.game", running_game),
    "epr": ("epr.game", epr_game),
    "counter": ("counter.efg", counter_efg),
}


def write_examples(output_dir: Union[str, Path]) -> List[Path]:
    """Write every bundled fixture in canonical form; returns the written paths."""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, (filename, builder) in FIXTURES.items():
        target = builder()
        if isinstance(target, ExtensiveFormGame):
            text = serialize_efg(target)
        else:
            text = serialize_game(target)
        path = output_dir / filename
        path.write_text(text, encoding="utf-8")
        logger.info("Wrote %s fixture to %s", name, path)
        written.append(path)
    return written
