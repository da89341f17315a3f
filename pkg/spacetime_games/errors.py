"""Error types raised by the spacetime game library.

Every error carries structured attributes and renders to the same status
dictionary the command line prints, so callers can either catch the typed
exception or forward ``to_dict()`` unchanged.
"""

from typing import Any, Dict, Optional, Sequence


class SpacetimeGameError(ValueError):
    """Base class for all library errors."""

    def details(self) -> Dict[str, Any]:
        return {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": "error",
            "error_type": type(self).__name__,
            "error_message": str(self),
            **self.details(),
        }


class DimensionMismatchError(SpacetimeGameError):
    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"Dimension mismatch: {left} vs {right}")

    def details(self) -> Dict[str, Any]:
        return {"left_dimension": self.left, "right_dimension": self.right}


class DuplicatePointError(SpacetimeGameError):
    def __init__(self, point: str):
        self.point = point
        super().__init__(f"Decision point '{point}' is declared more than once")

    def details(self) -> Dict[str, Any]:
        return {"point": self.point}


class UnknownSymbolError(SpacetimeGameError):
    def __init__(self, kind: str, symbol: str, where: Optional[str] = None):
        self.kind = kind
        self.symbol = symbol
        self.where = where
        message = f"Unknown {kind} '{symbol}'"
        if where:
            message += f" in {where}"
        super().__init__(message)

    def details(self) -> Dict[str, Any]:
        return {"kind": self.kind, "symbol": self.symbol}


class GameStructureError(SpacetimeGameError):
    """A game or extensive form violates a structural rule."""


class SpacelikeAgentError(GameStructureError):
    def __init__(self, agent: str, first: str, second: str):
        self.agent = agent
        self.first = first
        self.second = second
        super().__init__(
            f"Agent '{agent}' decides at spacelike-separated points {first} and {second} "
            "that can occur in the same history"
        )

    def details(self) -> Dict[str, Any]:
        return {"agent": self.agent, "points": [self.first, self.second]}


class AssignmentConflictError(SpacetimeGameError):
    def __init__(self, point: str, left: str, right: str):
        self.point = point
        self.left = left
        self.right = right
        super().__init__(f"Conflicting actions at {point}: '{left}' vs '{right}'")

    def details(self) -> Dict[str, Any]:
        return {"point": self.point, "actions": [self.left, self.right]}


class CycleError(SpacetimeGameError):
    def __init__(self, cycle: Sequence[str]):
        self.cycle = list(cycle)
        super().__init__("Precedence contains a cycle: " + " -> ".join(self.cycle + self.cycle[:1]))

    def details(self) -> Dict[str, Any]:
        return {"cycle": self.cycle}


class InconsistentContingencyError(SpacetimeGameError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"Contingency coordinates are inconsistent: {report.summary()}")

    def details(self) -> Dict[str, Any]:
        return {"report": self.report.to_dict()}


class PayoffTableError(SpacetimeGameError):
    def __init__(self, missing: Sequence[str] = (), extra: Sequence[str] = (), message: str = ""):
        self.missing = list(missing)
        self.extra = list(extra)
        if not message:
            parts = []
            if self.missing:
                parts.append("missing payoffs for " + "; ".join(self.missing))
            if self.extra:
                parts.append("payoffs for non-complete histories " + "; ".join(self.extra))
            message = "Payoff table is not total: " + ", ".join(parts)
        super().__init__(message)

    def details(self) -> Dict[str, Any]:
        return {"missing": self.missing, "extra": self.extra}


class TensorTooLargeError(SpacetimeGameError):
    def __init__(self, cells: int, limit: int):
        self.cells = cells
        self.limit = limit
        super().__init__(f"Strategic form needs {cells} cells, above the limit of {limit}")

    def details(self) -> Dict[str, Any]:
        return {"cells": self.cells, "limit": self.limit}


class NotPerfectInformationError(SpacetimeGameError):
    def __init__(self, information_set: str, size: int):
        self.information_set = information_set
        self.size = size
        super().__init__(
            f"Information set {information_set} holds {size} nodes; "
            "backward induction needs perfect information"
        )

    def details(self) -> Dict[str, Any]:
        return {"information_set": self.information_set}


class DocumentError(SpacetimeGameError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)

    def details(self) -> Dict[str, Any]:
        return {"path": self.path}
