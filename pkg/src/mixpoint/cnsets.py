"""The sets C_eps = {x : max_{y in Fx} d^s(Jx, y) <= eps} and their diameter bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from mixpoint.contraction import Condition, TheoremVerdict, theorem_verdict
from mixpoint.core import InputError, Space, diameter, fmt_rational
from mixpoint.maps import MultiMap, SelfMap, _resolve, mix_value_at

LEMMAS = ("res1", "res2", "resf1", "resf2", "resf3", "resf4")

DEFAULT_GRID = tuple(Fraction(1, n) for n in range(1, 17))


class LemmaError(InputError):
    """A diameter-bound formula is undefined for the given constants."""


def c_epsilon(space: Space, F: MultiMap, J: Optional[SelfMap], eps: Fraction) -> frozenset[int]:
    """Members of C_eps (non-strict inequality). May be empty."""
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError(f"eps must be positive, got {fmt_rational(eps)}")
    J = _resolve(space, F, J)
    return frozenset(x for x in space.points if mix_value_at(space, F, J, x) <= eps)


def lemma_bound(
    lemma: str,
    b: Fraction,
    r: Fraction,
    alpha: Fraction,
    L: Fraction = Fraction(0),
    eps: Fraction = Fraction(1),
) -> Fraction:
    """Upper bound on the diameter of C_eps for the named lemma.

    ``res1``  2 eps / (r (1 - alpha))
    ``res2``  eps (2 + 2 alpha) / r
    ``resf1`` b eps (1 + b) / (r (1 - alpha^2 b))
    ``resf2`` (b eps / r) (1 + b + 2 alpha b)
    ``resf3`` b eps (1 + b + 2 alpha b) / (r (1 - 2 b^2 alpha))
    ``resf4`` b eps (1 + b + L b^2) / (r (1 - b^2 (alpha + b L)))

    The two ``res`` formulas ignore ``b``.  Raises :class:`LemmaError` when a
    denominator is not positive.
    """
    b, r, alpha, L, eps = (Fraction(v) for v in (b, r, alpha, L, eps))
    if lemma not in LEMMAS:
        raise InputError(f"unknown lemma {lemma!r}; expected one of {', '.join(LEMMAS)}")
    if r <= 0:
        raise LemmaError("r > 0 required")
    if b < 1:
        raise LemmaError("b >= 1 required")
    if eps <= 0:
        raise LemmaError("eps > 0 required")

    def positive(value: Fraction, what: str) -> Fraction:
        if value <= 0:
            raise LemmaError(f"{what} > 0 required, got {fmt_rational(value)}")
        return value

    if lemma == "res1":
        return 2 * eps / (r * positive(1 - alpha, "1 - alpha"))
    if lemma == "res2":
        return eps * (2 + 2 * alpha) / r
    if lemma == "resf1":
        return b * eps * (1 + b) / (r * positive(1 - alpha * alpha * b, "1 - alpha^2*b"))
    if lemma == "resf2":
        return b * eps / r * (1 + b + 2 * alpha * b)
    if lemma == "resf3":
        return b * eps * (1 + b + 2 * alpha * b) / (r * positive(1 - 2 * b * b * alpha, "1 - 2*b^2*alpha"))
    return b * eps * (1 + b + L * b * b) / (r * positive(1 - b * b * (alpha + b * L), "1 - b^2*(alpha + b*L)"))


def matching_lemma(kind: str, b: Fraction) -> Optional[str]:
    if kind == "linear_j":
        return "res1" if b == 1 else "resf1"
    if kind == "kannan_j":
        return "res2" if b == 1 else "resf2"
    if kind == "chatterjea_j":
        return "resf3"
    if kind == "almost_j":
        return "resf4"
    return None


@dataclass(frozen=True)
class CEpsilonProfile:
    eps: Fraction
    members: frozenset[int]
    diameter: Optional[Fraction]  # None when members is empty
    bound: Optional[Fraction] = None
    ok: Optional[bool] = None  # None when there is no bound to compare against

    @property
    def margin(self) -> Optional[Fraction]:
        if self.bound is None or self.diameter is None:
            return None
        return self.bound - self.diameter


def profile(
    space: Space,
    F: MultiMap,
    J: Optional[SelfMap],
    eps_grid: Iterable[Fraction] = DEFAULT_GRID,
) -> list[CEpsilonProfile]:
    """C_eps members and diameters over ``eps_grid``, ordered by eps descending."""
    J = _resolve(space, F, J)
    values = [mix_value_at(space, F, J, x) for x in space.points]
    out = []
    for eps in sorted({Fraction(e) for e in eps_grid}, reverse=True):
        if eps <= 0:
            raise InputError(f"eps must be positive, got {fmt_rational(eps)}")
        members = frozenset(x for x, v in enumerate(values) if v <= eps)
        out.append(CEpsilonProfile(eps, members, diameter(space, members) if members else None))
    return out


def nested(profiles: Sequence[CEpsilonProfile]) -> bool:
    """True when members shrink (weakly) as eps decreases."""
    ordered = sorted(profiles, key=lambda p: p.eps, reverse=True)
    return all(small.members <= big.members for big, small in zip(ordered, ordered[1:]))


@dataclass(frozen=True)
class BoundsReport:
    lemma: Optional[str]
    verdict: TheoremVerdict
    profiles: tuple[CEpsilonProfile, ...]
    nesting_ok: bool
    bound_error: Optional[str]  # formula undefined for the constants in use

    @property
    def hypotheses(self) -> bool:
        return self.verdict.hypotheses

    @property
    def violations(self) -> list[CEpsilonProfile]:
        return [p for p in self.profiles if p.ok is False]

    @property
    def ok(self) -> bool:
        """Nesting holds, and under the hypotheses every bound is defined and met."""
        if not self.nesting_ok:
            return False
        if not self.hypotheses:
            return True
        return self.bound_error is None and not self.violations


def verify_bounds(
    space: Space,
    F: MultiMap,
    J: Optional[SelfMap],
    cond: Condition,
    eps_grid: Iterable[Fraction] = DEFAULT_GRID,
    lemma: Optional[str] = None,
) -> BoundsReport:
    """Compare the diameter of every nonempty C_eps with the matching lemma bound.

    Hypothesis failures are reported through ``verdict``, never raised.
    """
    J = _resolve(space, F, J)
    verdict = theorem_verdict(space, F, J, cond)
    lemma = lemma or matching_lemma(cond.kind, space.b)
    profiles = profile(space, F, J, eps_grid)
    bound_error = None
    checked = []
    for p in profiles:
        bound = None
        if lemma is not None and bound_error is None:
            try:
                bound = lemma_bound(lemma, space.b, cond.r, cond.alpha, cond.L or Fraction(0), p.eps)
            except LemmaError as exc:
                bound_error = str(exc)
        ok = None
        if bound is not None and p.diameter is not None:
            ok = p.diameter <= bound
        checked.append(CEpsilonProfile(p.eps, p.members, p.diameter, bound, ok))
    return BoundsReport(lemma, verdict, tuple(checked), nested(profiles), bound_error)
