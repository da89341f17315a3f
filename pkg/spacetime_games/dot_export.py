"""Graphviz DOT rendering of precedence graphs and game trees.

Output is plain text and byte-stable: nodes and edges are emitted in sorted
or pre-order sequence, never in hash order. Render with, for example::

    dot -Tpng -O running.gv
"""

import json
import logging
from typing import Callable, Dict, Union

from .core import PrecedenceRelation, SpacetimeGame, transitive_reduction
from .errors import UnknownSymbolError
from .extensive import ExtensiveFormGame

logger = logging.getLogger(__name__)


def _quote(text: str) -> str:
    return json.dumps(text)


def _format_value(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _relation_dot(name: str, g: SpacetimeGame, relation: PrecedenceRelation) -> str:
    lines = [f"digraph {name} {{", "\trankdir=BT;"]
    for point in g.points:
        lines.append(f"\t{_quote(str(point.id))};")
    for p, q in transitive_reduction(relation):
        lines.append(f"\t{_quote(str(p))} -> {_quote(str(q))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dag_dot(g: SpacetimeGame) -> str:
    return _relation_dot("precedence", g, g.prec)


def _actual_dag_dot(g: SpacetimeGame) -> str:
    return _relation_dot("actual_precedence", g, g.actual_precedence)


def _tree_dot(e: ExtensiveFormGame) -> str:
    lines = ["digraph tree {", "\tnode [shape=circle];"]
    order = [h for h, _ in e.walk()]
    for h in order:
        if h in e.players:
            lines.append(f"\t{_quote(h)} [label={_quote(e.players[h])}];")
        else:
            payoff = "(" + ", ".join(_format_value(v) for v in e.utilities[h]) + ")"
            lines.append(f"\t{_quote(h)} [label={_quote(payoff)}, shape=box];")
    for h in order:
        for action, child in e.children(h):
            lines.append(f"\t{_quote(h)} -> {_quote(child)} [label={_quote(action)}];")
    for iset in e.information_sets:
        if len(iset.nodes) < 2:
            continue
        lines.append(f"\tsubgraph {_quote('cluster_' + iset.id)} {{")
        lines.append("\t\trank=same;")
        lines.append("\t\tstyle=dashed;")
        lines.append(f"\t\tlabel={_quote(iset.id)};")
        for h in iset.nodes:
            lines.append(f"\t\t{_quote(h)};")
        lines.append("\t}")
    lines.append("}")
    return "\n".join(lines) + "\n"


DOT_RENDERERS: Dict[str, Callable] = {
    "dag": _dag_dot,
    "actual-dag": _actual_dag_dot,
    "tree": _tree_dot,
}


def export_dot(kind: str, target: Union[SpacetimeGame, ExtensiveFormGame]) -> str:
    """Render ``target`` as Graphviz DOT text.

    Args:
        kind: ``dag`` (reduced precedence), ``actual-dag`` (reduced actual
            precedence) or ``tree``.
        target: A game for the DAG kinds, an extensive form for ``tree``.

    Returns:
        DOT source; identical inputs give identical text.

    Raises:
        UnknownSymbolError: If ``kind`` is not a known renderer.
    """
    try:
        renderer = DOT_RENDERERS[kind]
    except KeyError:
        raise UnknownSymbolError("DOT kind", kind) from None
    logger.debug("Rendering %s as DOT", kind)
    return renderer(target)
