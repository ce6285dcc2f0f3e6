"""Finite quasi-pseudometric spaces with exact rational distances.

A space is a labelled point set with an ``n x n`` matrix of nonnegative
:class:`~fractions.Fraction` distances and a relaxation coefficient ``b >= 1``.
With ``b = 1`` the triangle inequality is the ordinary one; ``b > 1`` gives a
quasi-pseudometric *type* space where ``d(x, z) <= b * (d(x, y) + d(y, z))``.

Symmetry is never assumed.  Separation (the T0 condition) is computed and
reported but is not a validity requirement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


class InputError(ValueError):
    """Malformed input: wrong shape, negative distance, bad constant, ..."""


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``value`` exactly.

    Accepts ints, Fractions and strings such as ``"3"``, ``"1/3"``,
    ``"0.25"`` or ``"1e-2"``.  Binary floats are refused because they are
    rarely the number the user meant.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational (use a string like '1/3'): {value!r}")


def fmt_rational(q: Fraction) -> str:
    """``"p/q"``, or ``"k"`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


Matrix = tuple[tuple[Fraction, ...], ...]


def _as_matrix(matrix: Sequence[Sequence[RationalLike]]) -> Matrix:
    rows = [tuple(parse_rational(v) for v in row) for row in matrix]
    n = len(rows)
    if n == 0:
        raise InputError("distance matrix must have at least one point")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"distance matrix is not square (row {i} has {len(row)} entries, expected {n})")
        for j, v in enumerate(row):
            if v < 0:
                raise InputError(f"negative distance d[{i}][{j}] = {fmt_rational(v)}")
    return tuple(rows)


@dataclass(frozen=True)
class Space:
    """Immutable finite space.

    ``dist[i][j]`` is the (forward) distance from point ``i`` to point ``j``.
    The constructor checks shape and sign only; use :func:`validate` for the
    axioms.
    """

    dist: Matrix
    b: Fraction = ONE
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        dist = _as_matrix(self.dist)
        b = parse_rational(self.b)
        if b < 1:
            raise InputError(f"relaxation coefficient b must be >= 1, got {fmt_rational(b)}")
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(str(i) for i in range(len(dist)))
        if len(labels) != len(dist):
            raise InputError(f"{len(labels)} labels for {len(dist)} points")
        if len(set(labels)) != len(labels):
            raise InputError("point labels must be distinct")
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_matrix(
        cls,
        matrix: Sequence[Sequence[RationalLike]],
        b: RationalLike = 1,
        labels: Iterable[str] | None = None,
    ) -> Space:
        return cls(dist=matrix, b=b, labels=tuple(labels) if labels is not None else ())

    @property
    def n(self) -> int:
        return len(self.dist)

    @property
    def points(self) -> range:
        return range(len(self.dist))

    def d(self, x: int, y: int) -> Fraction:
        return self.dist[x][y]

    def ds(self, x: int, y: int) -> Fraction:
        """Symmetrized distance ``max(d(x, y), d(y, x))``."""
        return max(self.dist[x][y], self.dist[y][x])

    @cached_property
    def t0(self) -> bool:
        return is_t0(self.dist)

    @property
    def bicomplete(self) -> bool:
        # A finite metric space is complete; the flag only documents that.
        return True

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InputError(f"unknown point label {label!r}") from None


def is_t0(dist: Matrix) -> bool:
    n = len(dist)
    return not any(dist[i][j] == 0 and dist[j][i] == 0 for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class Violation:
    axiom: str  # "zero_diagonal" or "triangle"
    witness: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    t0: bool = True
    t0_witnesses: tuple[tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(matrix: Space | Sequence[Sequence[RationalLike]], b: RationalLike | None = None) -> ValidationReport:
    """Check zero diagonal and the ``b``-relaxed triangle inequality.

    Every violated instance is reported.  T0 status is reported separately
    and never counts as a violation.  Raises :class:`InputError` for a
    non-square matrix, a negative entry or ``b < 1``.
    """
    if isinstance(matrix, Space):
        space = matrix if b is None else Space(matrix.dist, b, matrix.labels)
    else:
        space = Space(dist=matrix, b=ONE if b is None else b)
    d, bb, n = space.dist, space.b, space.n

    violations: list[Violation] = []
    for i in range(n):
        if d[i][i] != 0:
            violations.append(Violation("zero_diagonal", (i,), d[i][i], ZERO))
    for i in range(n):
        di = d[i]
        for j in range(n):
            dij = di[j]
            dj = d[j]
            for k in range(n):
                rhs = bb * (dij + dj[k])
                if di[k] > rhs:
                    violations.append(Violation("triangle", (i, j, k), di[k], rhs))

    t0_pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n) if d[i][j] == 0 and d[j][i] == 0)
    return ValidationReport(tuple(violations), not t0_pairs, t0_pairs)


def conjugate(space: Space) -> Space:
    """The conjugate distance ``d^-1(x, y) = d(y, x)``."""
    n = space.n
    dist = tuple(tuple(space.dist[j][i] for j in range(n)) for i in range(n))
    return Space(dist, space.b, space.labels)


def symmetrize(space: Space) -> Space:
    """Entry-wise ``max(d, d^-1)``; a metric exactly when ``space`` is T0 (and ``b = 1``)."""
    n = space.n
    dist = tuple(tuple(space.ds(i, j) for j in range(n)) for i in range(n))
    return Space(dist, space.b, space.labels)


def check_subset(space: Space, subset: Iterable[int]) -> frozenset[int]:
    members = frozenset(subset)
    if not members:
        raise InputError("subset must be nonempty")
    for x in members:
        if not isinstance(x, int) or not 0 <= x < space.n:
            raise InputError(f"point index {x!r} out of range for a space with {space.n} points")
    return members


def diameter(space: Space, subset: Iterable[int]) -> Fraction:
    """Largest symmetrized distance between two members of ``subset``."""
    members = sorted(check_subset(space, subset))
    return max((space.ds(x, y) for x in members for y in members), default=ZERO)

