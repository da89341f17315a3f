"""Pure-strategy solution concepts.

Payoffs are read ordinally: solvers only compare values, never average
them, and ties are reported rather than broken.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from .errors import NotPerfectInformationError
from .extensive import ExtensiveFormGame, strategy_labels_for_choices
from .strategic import NormalFormGame

logger = logging.getLogger(__name__)


@dataclass
class SolutionSet:
    """Result of a solver.

    ``profiles`` holds strategy label tuples (one label per agent).
    Dominance fills ``surviving``; backward induction fills ``values``,
    ``choices`` (node to action, one dict per solution) and ``ties``.
    """

    concept: str
    agents: Tuple[str, ...]
    profiles: List[Tuple[str, ...]] = field(default_factory=list)
    surviving: Tuple[Tuple[str, ...], ...] = ()
    values: List[Tuple[float, ...]] = field(default_factory=list)
    choices: List[Dict[str, str]] = field(default_factory=list)
    ties: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "status": "success",
            "concept": self.concept,
            "agents": list(self.agents),
            "profiles": [list(p) for p in self.profiles],
        }
        if self.surviving:
            result["surviving"] = {a: list(s) for a, s in zip(self.agents, self.surviving)}
        if self.values:
            result["values"] = [list(v) for v in self.values]
        if self.ties:
            result["ties"] = list(self.ties)
        return result


def _labels(nf: NormalFormGame, index) -> Tuple[str, ...]:
    return tuple(nf.strategy_labels[k][int(j)] for k, j in enumerate(index))


def pure_nash(nf: NormalFormGame) -> SolutionSet:
    """Profiles where no agent has a strictly improving unilateral deviation.

    Args:
        nf: Strategic form.

    Returns:
        Every pure equilibrium in index order; empty when there is none.
    """
    tensor = nf.payoff_tensor
    stable = np.ones(nf.shape, dtype=bool)
    for i in range(len(nf.agents)):
        own = tensor[..., i]
        stable &= own >= own.max(axis=i, keepdims=True)
    profiles = [_labels(nf, index) for index in np.argwhere(stable)]
    logger.debug("Found %d pure Nash equilibria", len(profiles))
    return SolutionSet("nash", nf.agents, profiles)


def iterated_strict_dominance(nf: NormalFormGame) -> SolutionSet:
    """Remove strategies strictly dominated by another pure strategy until none is."""
    surviving = [list(range(n)) for n in nf.shape]
    changed = True
    while changed:
        changed = False
        for i in range(len(nf.agents)):
            sub = nf.payoff_tensor[np.ix_(*surviving)][..., i]
            own = np.moveaxis(sub, i, 0).reshape(len(surviving[i]), -1)
            dominated = {
                k
                for k in range(len(own))
                if any(np.all(own[t] > own[k]) for t in range(len(own)) if t != k)
            }
            if dominated:
                logger.debug(
                    "Agent %s loses %s",
                    nf.agents[i],
                    [nf.strategy_labels[i][surviving[i][k]] for k in sorted(dominated)],
                )
                surviving[i] = [s for k, s in enumerate(surviving[i]) if k not in dominated]
                changed = True
    labels = tuple(
        tuple(nf.strategy_labels[i][s] for s in kept) for i, kept in enumerate(surviving)
    )
    return SolutionSet("dominance", nf.agents, list(itertools.product(*labels)), surviving=labels)


def maximin(nf: NormalFormGame, i: str) -> Tuple[float, List[str]]:
    """Security value of agent ``i`` and every strategy attaining it.

    Args:
        nf: Strategic form.
        i: Agent symbol.

    Returns:
        The best worst-case payoff and the strategy labels achieving it.

    Raises:
        UnknownSymbolError: If ``i`` is not an agent of ``nf``.
    """
    k = nf.agent_index(i)
    own = np.moveaxis(nf.payoff_tensor[..., k], k, 0).reshape(nf.shape[k], -1)
    worst = own.min(axis=1)
    value = float(worst.max())
    return value, [nf.strategy_labels[k][s] for s in np.flatnonzero(worst == value)]


def backward_induction(e: ExtensiveFormGame) -> SolutionSet:
    """All subgame-perfect plans of a perfect-information tree.

    Each node combines every solution of its subtrees and keeps the mover's
    best actions; a tie yields one solution per maximizing action.

    Args:
        e: Extensive form whose information sets are singletons.

    Returns:
        Solutions with their profiles, node choices and outcome values, plus
        the nodes where a tie occurred.

    Raises:
        NotPerfectInformationError: If an information set holds several nodes.
    """
    for iset in e.information_sets:
        if len(iset.nodes) != 1:
            raise NotPerfectInformationError(iset.id, len(iset.nodes))

    solutions: Dict[str, List[Tuple[Dict[str, str], Tuple[float, ...]]]] = {}
    ties = set()
    for h in reversed([h for h, _ in e.walk()]):
        if h not in e.players:
            solutions[h] = [({}, tuple(e.utilities[h]))]
            continue
        mover = e.agents.index(e.players[h])
        children = e.children(h)
        found = []
        for combo in itertools.product(*(solutions[child] for _, child in children)):
            best = max(value[mover] for _, value in combo)
            winners = [k for k, (_, value) in enumerate(combo) if value[mover] == best]
            if len(winners) > 1:
                ties.add(h)
            merged: Dict[str, str] = {}
            for plan, _ in combo:
                merged.update(plan)
            for k in winners:
                found.append(({**merged, h: children[k][0]}, combo[k][1]))
        solutions[h] = found

    results = solutions[e.root]
    profiles = [
        strategy_labels_for_choices(
            e, {e.information_set_of[h].id: action for h, action in plan.items()}
        )
        for plan, _ in results
    ]
    logger.debug("Backward induction found %d solutions", len(results))
    return SolutionSet(
        "spe",
        e.agents,
        profiles,
        values=[value for _, value in results],
        choices=[dict(sorted(plan.items())) for plan, _ in results],
        ties=tuple(sorted(ties)),
    )
