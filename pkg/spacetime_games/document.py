"""JSON game documents.

Two document kinds share one file syntax:

* spacetime games (``*.game``), described by :class:`GameDocument`;
* extensive-form games (``*.efg``), described by :class:`ExtensiveFormDocument`
  and marked with ``"kind": "extensive"``.

Parsing validates the schema with pydantic and then runs every library
check, so a parsed game is always consistent and carries a total payoff
table. Serialization is canonical: serializing a parsed canonical document
gives back the same bytes.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from .core import (
    DecisionPoint,
    DecisionPointId,
    RawAssignment,
    SpacetimeGame,
    check_consistency,
    transitive_reduction,
)
from .errors import DocumentError, InconsistentContingencyError, PayoffTableError
from .extensive import ExtensiveFormGame, InformationSet
from .geometry import Event, Metric
from .histories import check_payoff_table, enumerate_complete_histories

logger = logging.getLogger(__name__)

FORMAT_VERSION = "1"


class PointSpec(BaseModel):
    id: str = Field(..., description="Decision point id in 'Agent.j' notation")
    actions: List[str] = Field(..., min_length=1, description="Choosable actions, in order")
    location: Optional[List[float]] = Field(
        None, description="Spacetime coordinates, time last"
    )


class MetricSpec(BaseModel):
    c: float = Field(1.0, gt=0, description="Light speed")


class PayoffRow(BaseModel):
    history: Dict[str, str] = Field(
        ..., description="Complete history; unbound points are omitted"
    )
    values: Dict[str, float] = Field(..., description="Payoff per agent")


class GameDocument(BaseModel):
    format_version: Literal["1"] = FORMAT_VERSION
    agents: List[str] = Field(default_factory=list)
    actions: List[str] = Field(default_factory=list)
    points: List[PointSpec]
    precedence: Optional[List[Tuple[str, str]]] = Field(
        None, description="Declared precedence pairs; only for games without locations"
    )
    contingency: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    payoffs: List[PayoffRow] = Field(default_factory=list)
    metric: Optional[MetricSpec] = None

    @model_validator(mode="after")
    def _one_precedence_source(self) -> "GameDocument":
        located = [p.location is not None for p in self.points]
        if any(located) and not all(located):
            raise ValueError("either every point has a location or none has")
        if all(located) and self.points and self.precedence is not None:
            raise ValueError("located games must not declare precedence")
        if not any(located) and self.precedence is None:
            raise ValueError("games without locations must declare precedence")
        return self


class NodeSpec(BaseModel):
    id: str
    player: str
    actions: List[str] = Field(..., min_length=1)


class OutcomeSpec(BaseModel):
    id: str
    values: Dict[str, float]


class SuccessorSpec(BaseModel):
    node: str
    action: str
    target: str


class InformationSetSpec(BaseModel):
    id: str = Field(..., description="Information set id in 'Agent.j' notation")
    nodes: List[str] = Field(..., min_length=1)


class ExtensiveFormDocument(BaseModel):
    format_version: Literal["1"] = FORMAT_VERSION
    kind: Literal["extensive"] = "extensive"
    agents: List[str]
    actions: List[str]
    nodes: List[NodeSpec]
    outcomes: List[OutcomeSpec]
    successors: List[SuccessorSpec]
    information_sets: List[InformationSetSpec]


def _load_json(text: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def _validate(model, data: object):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        path = ".".join(str(part) for part in first["loc"]) or "document"
        raise DocumentError(first["msg"], path) from None


def _dump(model: BaseModel) -> str:
    return json.dumps(model.model_dump(exclude_none=True), indent=2) + "\n"


def _point_id(text: str, path: str) -> DecisionPointId:
    try:
        return DecisionPointId.parse(text)
    except ValueError as exc:
        raise DocumentError(str(exc), path) from None


def game_from_document(doc: GameDocument, check: bool = True) -> SpacetimeGame:
    """Build a game from a parsed document.

    With ``check`` the contingency coordinates must be consistent and the
    payoff table total; otherwise only construction rules apply.
    """
    points = [
        DecisionPoint(
            _point_id(spec.id, f"points.{k}.id"),
            tuple(spec.actions),
            Event(tuple(spec.location)) if spec.location is not None else None,
        )
        for k, spec in enumerate(doc.points)
    ]
    located = bool(points) and points[0].location is not None
    metric = None
    if located:
        c = doc.metric.c if doc.metric is not None else None
        metric = Metric.for_dimension(points[0].location.dimension, c)

    payoffs: Dict[RawAssignment, Dict[str, float]] = {}
    for k, row in enumerate(doc.payoffs):
        history = RawAssignment(
            {_point_id(p, f"payoffs.{k}.history"): a for p, a in row.history.items()}
        )
        if history in payoffs:
            raise DocumentError("duplicate payoff row", f"payoffs.{k}.history")
        payoffs[history] = row.values

    game = SpacetimeGame.build(
        points,
        precedence=None if located else doc.precedence,
        contingency={
            _point_id(q, f"contingency.{q}"): {
                _point_id(p, f"contingency.{q}.{p}"): a for p, a in bindings.items()
            }
            for q, bindings in doc.contingency.items()
        },
        payoffs=payoffs,
        metric=metric,
        order=[p.id for p in points],
        agents=doc.agents or None,
        actions=doc.actions or None,
    )

    if not check:
        return game
    report = check_consistency(game)
    if not report.is_clean:
        raise InconsistentContingencyError(report)
    table = check_payoff_table(game)
    if not table.is_clean:
        raise PayoffTableError(table.missing, table.extra)
    logger.debug("Parsed game with %d points and %d payoff rows", len(points), len(payoffs))
    return game


def game_to_document(g: SpacetimeGame) -> GameDocument:
    by_id = {p.id: p for p in g.points}
    points = [
        PointSpec(
            id=str(pid),
            actions=list(by_id[pid].actions),
            location=list(by_id[pid].location.coords) if g.located else None,
        )
        for pid in g.order
    ]
    precedence = None
    if not g.located:
        precedence = [(str(p), str(q)) for p, q in transitive_reduction(g.prec)]
    contingency = {
        str(q): {str(p): g.contingency[q][p] for p in g.order if p in g.contingency[q]}
        for q in g.order
        if g.contingency[q]
    }
    payoffs = [
        PayoffRow(
            history={str(p): h[p] for p in g.order if p in h},
            values=dict(zip(g.agents, g.payoffs[h])),
        )
        for h in enumerate_complete_histories(g)
        if h in g.payoffs
    ]
    return GameDocument(
        agents=list(g.agents),
        actions=list(g.actions),
        points=points,
        precedence=precedence,
        contingency=contingency,
        payoffs=payoffs,
        metric=MetricSpec(c=g.metric.c) if g.located else None,
    )


def efg_from_document(doc: ExtensiveFormDocument) -> ExtensiveFormGame:
    """Build an extensive-form game; structural checks are left to ``validate_efg``."""
    players = {}
    for node in doc.nodes:
        players[node.id] = node.player
    utilities = {}
    for k, outcome in enumerate(doc.outcomes):
        missing = [a for a in doc.agents if a not in outcome.values]
        if missing:
            raise DocumentError(f"no value for agents {missing}", f"outcomes.{k}.values")
        utilities[outcome.id] = tuple(outcome.values[a] for a in doc.agents)
    information_sets = tuple(
        InformationSet(
            spec.id,
            players.get(spec.nodes[0], spec.id.rpartition(".")[0]),
            tuple(spec.nodes),
        )
        for spec in doc.information_sets
    )
    return ExtensiveFormGame(
        agents=tuple(doc.agents),
        actions=tuple(doc.actions),
        nodes=tuple(node.id for node in doc.nodes),
        outcomes=tuple(outcome.id for outcome in doc.outcomes),
        choices={node.id: tuple(node.actions) for node in doc.nodes},
        players=players,
        successors={(s.node, s.action): s.target for s in doc.successors},
        utilities=utilities,
        information_sets=information_sets,
    )


def efg_to_document(e: ExtensiveFormGame) -> ExtensiveFormDocument:
    return ExtensiveFormDocument(
        agents=list(e.agents),
        actions=list(e.actions),
        nodes=[NodeSpec(id=h, player=e.players[h], actions=list(e.choices[h])) for h in e.nodes],
        outcomes=[
            OutcomeSpec(id=z, values=dict(zip(e.agents, e.utilities[z]))) for z in e.outcomes
        ],
        successors=[
            SuccessorSpec(node=h, action=a, target=t) for (h, a), t in e.successors.items()
        ],
        information_sets=[
            InformationSetSpec(id=iset.id, nodes=list(iset.nodes)) for iset in e.information_sets
        ],
    )


def parse_game(text: str) -> SpacetimeGame:
    """Parse and check a game document.

    Args:
        text: JSON text of a game document.

    Returns:
        The game, consistent and with a total payoff table.

    Raises:
        DocumentError: If the text is not JSON or fails the schema; the error
            carries the dotted field path.
        InconsistentContingencyError: If a point over- or under-binds.
        PayoffTableError: If payoff rows are missing or extra.
    """
    return game_from_document(_validate(GameDocument, _load_json(text)))


def serialize_game(g: SpacetimeGame) -> str:
    """Canonical JSON text of ``g``; parsing it back yields an equal game."""
    return _dump(game_to_document(g))


def parse_efg(text: str) -> ExtensiveFormGame:
    return efg_from_document(_validate(ExtensiveFormDocument, _load_json(text)))


def serialize_efg(e: ExtensiveFormGame) -> str:
    return _dump(efg_to_document(e))


def parse_document(text: str) -> Union[GameDocument, ExtensiveFormDocument]:
    """Schema-validate either document kind, dispatching on the ``kind`` field."""
    data = _load_json(text)
    if isinstance(data, dict) and data.get("kind") == "extensive":
        return _validate(ExtensiveFormDocument, data)
    return _validate(GameDocument, data)


def parse_any(text: str) -> Union[SpacetimeGame, ExtensiveFormGame]:
    doc = parse_document(text)
    if isinstance(doc, ExtensiveFormDocument):
        return efg_from_document(doc)
    return game_from_document(doc)


def read_text(path: Union[str, Path]) -> str:
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(exc.strerror or str(exc), str(path)) from None
    except UnicodeDecodeError as exc:
        raise DocumentError(f"not valid UTF-8 at byte {exc.start}", str(path)) from None


def load(path: Union[str, Path]) -> Union[SpacetimeGame, ExtensiveFormGame]:
    """Read a game or extensive-form document from disk.

    Args:
        path: File to read, UTF-8 encoded.

    Returns:
        A :class:`SpacetimeGame` or an :class:`ExtensiveFormGame`, depending on
        the document's ``kind``.

    Raises:
        DocumentError: If the file cannot be read or decoded, or fails the schema.
    """
    logger.debug("Loading %s", path)
    return parse_any(read_text(path))
