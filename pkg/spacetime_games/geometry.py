"""Minkowski spacetime events and causal classification.

Intervals use the space-positive sign convention: s² = Σ(Δx)² − c²(Δt)², so
spacelike pairs have s² > 0 and timelike pairs s² < 0. Two conventions apply
to the boundary cases:

* distinct events at zero interval (light-speed signalling) are timelike and
  ordered by their time coordinate;
* identical events are spacelike.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import config
from .errors import DimensionMismatchError, GameStructureError

logger = logging.getLogger(__name__)

# Relative tolerance for deciding that an interval is exactly zero.
ZERO_TOLERANCE = 1e-12


class CausalClass(str, Enum):
    SPACELIKE = "spacelike"
    TIMELIKE_BEFORE = "timelike-before"
    TIMELIKE_AFTER = "timelike-after"


class ConeRegion(str, Enum):
    PAST = "past"
    FUTURE = "future"
    ELSEWHERE = "elsewhere"


@dataclass(frozen=True)
class Event:
    """A point in spacetime; the last coordinate is time."""

    coords: Tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(x) for x in self.coords)
        if len(coords) < 2:
            raise GameStructureError(
                f"An event needs at least one space and one time coordinate, got {len(coords)}"
            )
        if not np.all(np.isfinite(coords)):
            raise GameStructureError(f"Event coordinates must be finite: {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def space(self) -> Tuple[float, ...]:
        return self.coords[:-1]

    @property
    def time(self) -> float:
        return self.coords[-1]


@dataclass(frozen=True)
class Metric:
    spatial_dims: int
    c: float = 1.0

    def __post_init__(self):
        if self.spatial_dims < 1:
            raise GameStructureError("A metric needs at least one spatial dimension")
        if not self.c > 0:
            raise GameStructureError(f"Light speed must be positive, got {self.c}")

    @classmethod
    def for_dimension(cls, dimension: int, c: Optional[float] = None) -> "Metric":
        """Metric for events with ``dimension`` coordinates (time included)."""
        return cls(spatial_dims=dimension - 1, c=config.light_speed if c is None else c)

    @property
    def dimension(self) -> int:
        return self.spatial_dims + 1


def _check_dimensions(a: Event, b: Event, m: Metric) -> None:
    if a.dimension != b.dimension:
        raise DimensionMismatchError(a.dimension, b.dimension)
    if a.dimension != m.dimension:
        raise DimensionMismatchError(a.dimension, m.dimension)


def _interval_terms(a: Event, b: Event, m: Metric) -> Tuple[np.ndarray, float]:
    delta = np.subtract(b.coords, a.coords)
    return np.square(delta[:-1]), float((m.c * delta[-1]) ** 2)


def interval(a: Event, b: Event, m: Metric) -> float:
    """Squared spacetime interval between two events.

    Args:
        a: First event.
        b: Second event.
        m: Metric supplying the light speed.

    Returns:
        s² with spacelike pairs positive and timelike pairs negative.

    Raises:
        DimensionMismatchError: If the events and the metric disagree on dimension.
    """
    _check_dimensions(a, b, m)
    spatial, temporal = _interval_terms(a, b, m)
    return float(spatial.sum() - temporal)


def _sign(a: Event, b: Event, m: Metric) -> int:
    spatial, temporal = _interval_terms(a, b, m)
    s2 = float(spatial.sum() - temporal)
    scale = max(float(spatial.max(initial=0.0)), temporal)
    if abs(s2) <= ZERO_TOLERANCE * scale:
        return 0
    return 1 if s2 > 0 else -1


def classify(a: Event, b: Event, m: Metric) -> CausalClass:
    """Causal relation of ``a`` with respect to ``b``.

    An interval within ``ZERO_TOLERANCE`` of the larger term counts as zero.

    Args:
        a: Reference event.
        b: Other event.
        m: Metric supplying the light speed.

    Returns:
        ``TIMELIKE_BEFORE`` when ``a`` can signal ``b``, ``TIMELIKE_AFTER``
        for the reverse, otherwise ``SPACELIKE``.

    Raises:
        DimensionMismatchError: If the events and the metric disagree on dimension.
    """
    _check_dimensions(a, b, m)
    if a.coords == b.coords:
        return CausalClass.SPACELIKE
    if _sign(a, b, m) > 0:
        return CausalClass.SPACELIKE
    dt = b.time - a.time
    if dt > 0:
        return CausalClass.TIMELIKE_BEFORE
    if dt < 0:
        return CausalClass.TIMELIKE_AFTER
    return CausalClass.SPACELIKE


def light_cone_membership(e: Event, x: Event, m: Metric) -> ConeRegion:
    """Where ``x`` lies relative to the light cone of ``e``.

    Args:
        e: Apex of the cone.
        x: Event to locate.
        m: Metric supplying the light speed.

    Returns:
        ``FUTURE``, ``PAST`` or ``ELSEWHERE``; the boundary belongs to the cone.
    """
    relation = classify(e, x, m)
    if relation is CausalClass.TIMELIKE_BEFORE:
        return ConeRegion.FUTURE
    if relation is CausalClass.TIMELIKE_AFTER:
        return ConeRegion.PAST
    return ConeRegion.ELSEWHERE


def check_same_dimension(events: Sequence[Event]) -> int:
    """Return the shared dimension of ``events`` or raise on the first mismatch."""
    if not events:
        return 0
    dimension = events[0].dimension
    for event in events[1:]:
        if event.dimension != dimension:
            raise DimensionMismatchError(dimension, event.dimension)
    return dimension
