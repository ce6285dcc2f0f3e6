"""Point-to-set distances and the Hausdorff quasi-pseudometric.

On a finite space every nonempty subset is closed and bounded, infima are
minima and suprema are maxima, so ``H`` never takes the value infinity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from mixpoint.core import Space, check_subset


def point_to_set(space: Space, x: int, subset: Iterable[int]) -> Fraction:
    """``d(x, A) = min over a in A of d(x, a)``."""
    row = space.dist[x]
    return min(row[a] for a in check_subset(space, subset))


def set_to_point(space: Space, subset: Iterable[int], x: int) -> Fraction:
    """``d(A, x) = min over a in A of d(a, x)``."""
    d = space.dist
    return min(d[a][x] for a in check_subset(space, subset))


def hausdorff(space: Space, a: Iterable[int], b: Iterable[int]) -> Fraction:
    """``H(A, B) = max(max_{a in A} d(a, B), max_{b in B} d(A, b))``.

    Asymmetric in general: ``H(A, B)`` and ``H(B, A)`` differ whenever ``d``
    does.

    >>> s = Space.from_matrix([["0", "0"], ["1", "0"]])
    >>> hausdorff(s, {1}, {0, 1}), hausdorff(s, {0, 1}, {1})
    (Fraction(1, 1), Fraction(0, 1))
    """
    aa = check_subset(space, a)
    bb = check_subset(space, b)
    return _hausdorff(space.dist, aa, bb)


def _hausdorff(d, aa, bb) -> Fraction:
    # Unchecked fast path for callers that already hold validated index sets.
    forward = max(min(d[x][y] for y in bb) for x in aa)
    backward = max(min(d[x][y] for x in aa) for y in bb)
    return forward if forward >= backward else backward
