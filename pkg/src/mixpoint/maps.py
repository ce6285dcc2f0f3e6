"""Set-valued maps ``F``, single-valued maps ``J`` and point classification.

All "J-" notions reduce to the plain ones when ``J`` is the identity, so
every function here takes an optional ``J`` defaulting to the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from mixpoint.core import InputError, Space, check_subset, fmt_rational


@dataclass(frozen=True)
class MultiMap:
    """Total map ``x -> Fx`` with every image a nonempty set of indices."""

    images: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(frozenset(img) for img in self.images))
        for x, img in enumerate(self.images):
            if not img:
                raise InputError(f"F({x}) is empty; images must be nonempty")

    @classmethod
    def from_lists(cls, images: Sequence[Iterable[int]]) -> MultiMap:
        return cls(tuple(frozenset(img) for img in images))

    def __call__(self, x: int) -> frozenset[int]:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def check(self, space: Space) -> None:
        if len(self.images) != space.n:
            raise InputError(f"F is defined on {len(self.images)} points, space has {space.n}")
        for img in self.images:
            check_subset(space, img)


@dataclass(frozen=True)
class SelfMap:
    """Total single-valued map ``x -> Jx``."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(self.image))

    @classmethod
    def identity(cls, n: int) -> SelfMap:
        return cls(tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __len__(self) -> int:
        return len(self.image)

    @property
    def is_identity(self) -> bool:
        return all(x == jx for x, jx in enumerate(self.image))

    def check(self, space: Space) -> None:
        if len(self.image) != space.n:
            raise InputError(f"J is defined on {len(self.image)} points, space has {space.n}")
        for x, jx in enumerate(self.image):
            if not isinstance(jx, int) or not 0 <= jx < space.n:
                raise InputError(f"J({x}) = {jx!r} is not a point of the space")


def _resolve(space: Space, F: MultiMap, J: SelfMap | None) -> SelfMap:
    F.check(space)
    if J is None:
        return SelfMap.identity(space.n)
    J.check(space)
    return J


@dataclass(frozen=True)
class PointRecord:
    start_value: Fraction  # H({Jx}, Fx)
    end_value: Fraction  # H(Fx, {Jx})
    is_fixed: bool  # Jx in Fx

    @property
    def is_start(self) -> bool:
        return self.start_value == 0

    @property
    def is_end(self) -> bool:
        return self.end_value == 0


@dataclass(frozen=True)
class Classification:
    records: tuple[PointRecord, ...]

    @property
    def startpoints(self) -> frozenset[int]:
        return frozenset(x for x, r in enumerate(self.records) if r.is_start)

    @property
    def endpoints(self) -> frozenset[int]:
        return frozenset(x for x, r in enumerate(self.records) if r.is_end)

    @property
    def fixed_points(self) -> frozenset[int]:
        return frozenset(x for x, r in enumerate(self.records) if r.is_fixed)

    @property
    def combined(self) -> frozenset[int]:
        """Points that are simultaneously start- and endpoints."""
        return self.startpoints & self.endpoints


def start_value(space: Space, F: MultiMap, J: SelfMap, x: int) -> Fraction:
    # H({Jx}, Fx) collapses to max_{y in Fx} d(Jx, y): the other half is a min
    # that is bounded by this max.
    row = space.dist[J.image[x]]
    return max(row[y] for y in F.images[x])


def end_value(space: Space, F: MultiMap, J: SelfMap, x: int) -> Fraction:
    jx = J.image[x]
    d = space.dist
    return max(d[y][jx] for y in F.images[x])


def mix_value_at(space: Space, F: MultiMap, J: SelfMap, x: int) -> Fraction:
    """``max_{y in Fx} d^s(Jx, y)``."""
    jx = J.image[x]
    return max(space.ds(jx, y) for y in F.images[x])


def classify(space: Space, F: MultiMap, J: SelfMap | None = None) -> Classification:
    J = _resolve(space, F, J)
    records = tuple(
        PointRecord(
            start_value(space, F, J, x),
            end_value(space, F, J, x),
            J.image[x] in F.images[x],
        )
        for x in space.points
    )
    return Classification(records)


Side = Literal["start", "end"]


def eps_points(
    space: Space,
    F: MultiMap,
    J: SelfMap | None = None,
    eps: Fraction = Fraction(1, 2),
    side: Side = "start",
) -> frozenset[int]:
    """Points whose start (or end) value is strictly below ``eps``, ``0 < eps < 1``."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise InputError(f"eps must lie in (0, 1), got {fmt_rational(eps)}")
    if side not in ("start", "end"):
        raise InputError(f"side must be 'start' or 'end', got {side!r}")
    J = _resolve(space, F, J)
    value = start_value if side == "start" else end_value
    return frozenset(x for x in space.points if value(space, F, J, x) < eps)


@dataclass(frozen=True)
class ApproxValues:
    """inf-sup values of the approximate start/end/mix-point properties.

    Each property holds exactly when its value is zero.  The ``*_argmin``
    fields hold every point at which the minimum is attained.
    """

    start: Fraction
    end: Fraction
    mix: Fraction
    start_argmin: frozenset[int]
    end_argmin: frozenset[int]
    mix_argmin: frozenset[int]

    @property
    def has_start_property(self) -> bool:
        return self.start == 0

    @property
    def has_end_property(self) -> bool:
        return self.end == 0

    @property
    def has_mix_property(self) -> bool:
        return self.mix == 0


def _argmin(values: list[Fraction]) -> tuple[Fraction, frozenset[int]]:
    best = min(values)
    return best, frozenset(i for i, v in enumerate(values) if v == best)


def approx_values(space: Space, F: MultiMap, J: SelfMap | None = None) -> ApproxValues:
    J = _resolve(space, F, J)
    starts = [start_value(space, F, J, x) for x in space.points]
    ends = [end_value(space, F, J, x) for x in space.points]
    mixes = [mix_value_at(space, F, J, x) for x in space.points]
    s, s_arg = _argmin(starts)
    e, e_arg = _argmin(ends)
    m, m_arg = _argmin(mixes)
    return ApproxValues(s, e, m, s_arg, e_arg, m_arg)
