"""Contractive conditions on ``(F, J)``: checkers, constant fitting, verdicts.

Five condition families are supported, each quantified over all ordered
pairs ``(x, y)`` (the diagonal is harmless: both sides vanish or the left
side does):

``linear_j``      H(Fx, Fy) <= alpha * d(Jx, Jy)
``kannan_j``      H(Fx, Fy) <= alpha * (d(Jx, Fx) + d(Jy, Fy))
``chatterjea_j``  H(Fx, Fy) <= alpha * (d(Jx, Fy) + d(Fx, Jy))
``almost_j``      H(Fx, Fy) <= alpha * d(Jx, Jy) + L * d(Fx, Jy)
``psi_j``         H(Fx, Fy) <= psi(d(Jx, Jy)),  psi(t) < t for t > 0

The first four additionally require the expansion bound
``r * d(x, y) <= d(Jx, Jy)`` and a range on the constants that depends on
the relaxation coefficient ``b`` of the space (ranges for ``b = 1`` are the
special case).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from mixpoint.core import InputError, Space, fmt_rational, parse_rational
from mixpoint.hausdorff import _hausdorff
from mixpoint.maps import MultiMap, SelfMap, _resolve, approx_values, classify

KINDS = ("linear_j", "kannan_j", "chatterjea_j", "almost_j", "psi_j")
EXPANSION_KINDS = ("linear_j", "kannan_j", "chatterjea_j", "almost_j")

HALF = Fraction(1, 2)

# Hypotheses that have no meaning on finite data; carried along in verdicts.
ASSUMED = {
    "psi_j": ("J continuous", "psi upper semicontinuous", "liminf_{t->inf} (t - psi(t)) > 0"),
}
ASSUMED_DEFAULT = ("J continuous",)


@dataclass(frozen=True)
class PsiSpec:
    """Piecewise-linear comparison function through ``breakpoints``.

    The first breakpoint must sit at ``t = 0``; beyond the last one the
    function continues linearly with ``tail_slope``.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    tail_slope: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        pts = tuple((parse_rational(t), parse_rational(v)) for t, v in self.breakpoints)
        slope = parse_rational(self.tail_slope)
        if not pts:
            raise InputError("psi needs at least one breakpoint")
        if pts[0][0] != 0:
            raise InputError("the first psi breakpoint must be at t = 0")
        for (t0, _), (t1, _) in zip(pts, pts[1:]):
            if t1 <= t0:
                raise InputError("psi breakpoints must be strictly increasing in t")
        if any(v < 0 for _, v in pts):
            raise InputError("psi must be nonnegative")
        if slope < 0:
            raise InputError("psi tail_slope must be nonnegative")
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "tail_slope", slope)

    @classmethod
    def linear(cls, k: Fraction) -> PsiSpec:
        k = Fraction(k)
        return cls(((Fraction(0), Fraction(0)),), k)

    def __call__(self, t: Fraction) -> Fraction:
        if t < 0:
            raise InputError("psi is defined on [0, inf)")
        pts = self.breakpoints
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        t_last, v_last = pts[-1]
        return v_last + self.tail_slope * (t - t_last)


@dataclass(frozen=True)
class Condition:
    kind: str
    alpha: Optional[Fraction] = None
    r: Optional[Fraction] = None
    L: Optional[Fraction] = None
    psi: Optional[PsiSpec] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"unknown condition kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        for name in ("alpha", "r", "L"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, parse_rational(v))
        if self.kind == "psi_j":
            if self.psi is None:
                raise InputError("psi_j needs a psi specification")
        else:
            if self.alpha is None:
                raise InputError(f"{self.kind} needs alpha")
            if self.r is None:
                raise InputError(f"{self.kind} needs the expansion constant r")
        if self.kind == "almost_j" and self.L is None:
            object.__setattr__(self, "L", Fraction(0))


def range_violations(cond: Condition, b: Fraction = Fraction(1), *, weak: bool = False) -> list[str]:
    """Human-readable list of violated constant ranges (empty when all hold).

    ``weak=True`` drops the product constraints involving ``r`` for the
    linear and Chatterjea families, keeping only ``alpha`` and ``r > 0``.
    """
    a, r, L = cond.alpha, cond.r, cond.L
    out: list[str] = []
    if cond.kind == "psi_j":
        return out
    if r <= 0:
        out.append("r > 0")
    if cond.kind == "linear_j":
        if not 0 < a < 1:
            out.append("0 < alpha < 1")
        if not weak and not r * a * b * b < 1:
            out.append("r*alpha*b^2 < 1")
    elif cond.kind == "kannan_j":
        if not 0 < a < HALF:
            out.append("0 < alpha < 1/2")
    elif cond.kind == "chatterjea_j":
        if not 0 < a < HALF:
            out.append("0 < alpha < 1/2")
        if not weak and not 2 * b * b * r * a < 1:
            out.append("2*b^2*r*alpha < 1")
    elif cond.kind == "almost_j":
        if not a > 0:
            out.append("alpha > 0")
        if not L >= 0:
            out.append("L >= 0")
        if not r * b * b * (a + b * L) < 1:
            out.append("r*b^2*(alpha + b*L) < 1")
    return out


@dataclass(frozen=True)
class Witness:
    x: int
    y: int
    lhs: Fraction
    rhs: Fraction

    @property
    def excess(self) -> Fraction:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    worst: Optional[Witness]  # pair maximizing lhs - rhs; ties -> lowest (x, y)


def _worst(witnesses) -> CheckResult:
    worst: Optional[Witness] = None
    holds = True
    for w in witnesses:
        if w.lhs > w.rhs:
            holds = False
        if worst is None or w.excess > worst.excess:
            worst = w
    return CheckResult(holds, worst)


@dataclass(frozen=True)
class PairTerm:
    x: int
    y: int
    lhs: Fraction  # H(Fx, Fy)
    a: Fraction  # coefficient of alpha (or psi argument)
    l: Fraction  # coefficient of L (almost_j only)


def pair_terms(space: Space, F: MultiMap, J: SelfMap, kind: str) -> list[PairTerm]:
    """Both sides of the ``kind`` inequality for every ordered pair, unscaled."""
    d = space.dist
    imgs = F.images
    jm = J.image
    n = space.n
    # point-to-set and set-to-point distances between Jx and Fy
    j_to_f = [[min(d[jm[x]][v] for v in imgs[y]) for y in range(n)] for x in range(n)]
    f_to_j = [[min(d[v][jm[y]] for v in imgs[x]) for y in range(n)] for x in range(n)]
    terms = []
    for x in range(n):
        for y in range(n):
            lhs = _hausdorff(d, imgs[x], imgs[y])
            if kind in ("linear_j", "psi_j"):
                a, l = d[jm[x]][jm[y]], Fraction(0)
            elif kind == "kannan_j":
                a, l = j_to_f[x][x] + j_to_f[y][y], Fraction(0)
            elif kind == "chatterjea_j":
                a, l = j_to_f[x][y] + f_to_j[x][y], Fraction(0)
            elif kind == "almost_j":
                a, l = d[jm[x]][jm[y]], f_to_j[x][y]
            else:
                raise InputError(f"unknown condition kind {kind!r}")
            terms.append(PairTerm(x, y, lhs, a, l))
    return terms


def _condition_result(terms: Sequence[PairTerm], cond: Condition) -> CheckResult:
    if cond.kind == "psi_j":
        psi = cond.psi
        return _worst(Witness(t.x, t.y, t.lhs, psi(t.a)) for t in terms)
    a = cond.alpha
    L = cond.L or Fraction(0)
    return _worst(Witness(t.x, t.y, t.lhs, a * t.a + L * t.l) for t in terms)


def check_condition(space: Space, F: MultiMap, J: Optional[SelfMap], cond: Condition) -> CheckResult:
    """Exhaustively check the contractive inequality of ``cond``.

    Raises :class:`InputError` if the constants are outside the range the
    corresponding theorem allows (for the space's ``b``).
    """
    bad = range_violations(cond, space.b)
    if bad:
        raise InputError("constants out of range: " + "; ".join(bad))
    J = _resolve(space, F, J)
    return _condition_result(pair_terms(space, F, J, cond.kind), cond)


def check_expansion(space: Space, J: SelfMap, r: Fraction) -> CheckResult:
    """``r * d(x, y) <= d(Jx, Jy)`` over all ordered pairs."""
    r = parse_rational(r)
    if r <= 0:
        raise InputError(f"r must be positive, got {fmt_rational(r)}")
    J.check(space)
    d = space.dist
    jm = J.image
    return _worst(
        Witness(x, y, r * d[x][y], d[jm[x]][jm[y]]) for x in space.points for y in space.points
    )


@dataclass(frozen=True)
class PsiCheck:
    holds: bool
    contraction: CheckResult
    strict: bool  # psi(t) < t at every realized t = d(Jx, Jy) > 0
    strict_witness: Optional[tuple[Fraction, Fraction]]  # (t, psi(t)) with psi(t) >= t
    assumed: tuple[str, ...] = ASSUMED["psi_j"]


def check_psi(space: Space, F: MultiMap, J: Optional[SelfMap], psi: PsiSpec) -> PsiCheck:
    """Check ``H(Fx, Fy) <= psi(d(Jx, Jy))`` and ``psi(t) < t`` at realized ``t``.

    psi is only ever evaluated at the finitely many values ``d(Jx, Jy)``.
    """
    J = _resolve(space, F, J)
    terms = pair_terms(space, F, J, "psi_j")
    contraction = _condition_result(terms, Condition("psi_j", psi=psi))
    witness = None
    for t in sorted({term.a for term in terms if term.a > 0}):
        if psi(t) >= t:
            witness = (t, psi(t))
            break
    strict = witness is None
    return PsiCheck(contraction.holds and strict, contraction, strict, witness)


@dataclass(frozen=True)
class Fit:
    """Tightest constants for one condition family.

    ``alpha`` is ``None`` when no constant makes the inequality hold.
    ``r_max`` is the largest admissible expansion constant, ``None`` when no
    pair has positive distance (any ``r`` works) and ``0`` when none does.
    """

    kind: str
    alpha: Optional[Fraction]
    L: Optional[Fraction]
    r_max: Optional[Fraction]

    @property
    def feasible(self) -> bool:
        return self.alpha is not None

    @property
    def r_unbounded(self) -> bool:
        return self.r_max is None

    @property
    def expansion_feasible(self) -> bool:
        return self.r_max is None or self.r_max > 0


def fit_r(space: Space, J: SelfMap) -> Optional[Fraction]:
    d = space.dist
    jm = J.image
    ratios = [d[jm[x]][jm[y]] / d[x][y] for x in space.points for y in space.points if d[x][y] > 0]
    return min(ratios) if ratios else None


def _fit_alpha(terms: Sequence[PairTerm]) -> Optional[Fraction]:
    alpha = Fraction(0)
    for t in terms:
        if t.lhs == 0:
            continue
        if t.a == 0:
            return None
        alpha = max(alpha, t.lhs / t.a)
    return alpha


def _fit_almost(terms: Sequence[PairTerm], b: Fraction) -> tuple[Optional[Fraction], Optional[Fraction]]:
    # Minimize alpha + b*L subject to lhs <= alpha*a + L*l for every pair.
    # For fixed alpha the least L is max(0, max_p (c_p - s_p*alpha)) with
    # c = lhs/l, s = a/l over pairs with l > 0; the objective is convex and
    # piecewise linear in alpha, so its minimum sits at a breakpoint.
    alpha_floor = Fraction(0)
    lines: set[tuple[Fraction, Fraction]] = set()
    for t in terms:
        if t.lhs == 0:
            continue
        if t.l == 0:
            if t.a == 0:
                return None, None
            alpha_floor = max(alpha_floor, t.lhs / t.a)
        else:
            lines.add((t.lhs / t.l, t.a / t.l))

    def least_L(alpha: Fraction) -> Fraction:
        return max([Fraction(0)] + [c - s * alpha for c, s in lines])

    candidates = {alpha_floor}
    line_list = sorted(lines)
    for i, (c1, s1) in enumerate(line_list):
        if s1 > 0:
            candidates.add(c1 / s1)
        for c2, s2 in line_list[i + 1:]:
            if s1 != s2:
                candidates.add((c1 - c2) / (s1 - s2))
    best = None
    for alpha in sorted(c for c in candidates if c >= alpha_floor):
        L = least_L(alpha)
        score = alpha + b * L
        if best is None or score < best[0]:
            best = (score, alpha, L)
    return best[1], best[2]


def fit_constants(space: Space, F: MultiMap, J: Optional[SelfMap], kind: str) -> Fit:
    """Tightest ``alpha`` (and ``L``) making the ``kind`` inequality hold, plus ``r_max``.

    For ``almost_j`` the pair ``(alpha, L)`` minimizes ``alpha + b*L``, the
    quantity the theorem's range constraint depends on.
    """
    if kind not in EXPANSION_KINDS:
        raise InputError(f"cannot fit constants for {kind!r}; expected one of {', '.join(EXPANSION_KINDS)}")
    J = _resolve(space, F, J)
    terms = pair_terms(space, F, J, kind)
    r_max = fit_r(space, J)
    if kind == "almost_j":
        alpha, L = _fit_almost(terms, space.b)
        return Fit(kind, alpha, L, r_max)
    return Fit(kind, _fit_alpha(terms), None, r_max)


@dataclass(frozen=True)
class TheoremVerdict:
    kind: str
    b: Fraction
    t0: bool
    range_violations: tuple[str, ...]
    condition: CheckResult
    expansion: Optional[CheckResult]
    psi_strict: Optional[bool]
    hypotheses: bool
    weak_hypotheses: bool
    mix_value: Fraction
    combined: frozenset[int]
    j_fixed: frozenset[int]
    unique_iff_ok: bool
    corollary_ok: bool
    consistent: bool
    weak_consistent: bool
    assumed: tuple[str, ...] = field(default=ASSUMED_DEFAULT)

    @property
    def range_oddity(self) -> bool:
        """Weaker ranges hold while a stated product constraint fails."""
        return self.weak_hypotheses and not self.hypotheses

    @property
    def failed_hypotheses(self) -> list[str]:
        out = list(self.range_violations)
        if not self.t0:
            out.append("T0")
        if not self.condition.holds:
            out.append("contractive condition")
        if self.expansion is not None and not self.expansion.holds:
            out.append("expansion r*d(x,y) <= d(Jx,Jy)")
        if self.psi_strict is False:
            out.append("psi(t) < t")
        return out


def theorem_verdict(space: Space, F: MultiMap, J: Optional[SelfMap], cond: Condition) -> TheoremVerdict:
    """Check the hypotheses of the matching theorem and test its conclusion.

    The conclusion on a finite space: exactly one point is both a start- and
    an endpoint of ``(J, F)`` iff the mix value is zero; and when it is zero
    on a T0 space, some ``x`` has ``Jx in Fx``.  Never raises for
    out-of-range constants; they are reported as failed hypotheses.
    """
    J = _resolve(space, F, J)
    b = space.b
    terms = pair_terms(space, F, J, cond.kind)
    condition = _condition_result(terms, cond)

    bad = tuple(range_violations(cond, b))
    weak_bad = range_violations(cond, b, weak=True)
    expansion = None
    psi_strict = None
    if cond.kind == "psi_j":
        check = check_psi(space, F, J, cond.psi)
        psi_strict = check.strict
        core_ok = condition.holds and check.strict
        assumed = ASSUMED["psi_j"]
    else:
        expansion = check_expansion(space, J, cond.r) if cond.r > 0 else CheckResult(False, None)
        core_ok = condition.holds and expansion.holds
        assumed = ASSUMED_DEFAULT
    core_ok = core_ok and space.t0
    hypotheses = core_ok and not bad
    weak_hypotheses = core_ok and not weak_bad

    mix = approx_values(space, F, J).mix
    cls = classify(space, F, J)
    combined = cls.combined
    j_fixed = cls.fixed_points
    unique_iff_ok = (len(combined) == 1) == (mix == 0)
    corollary_ok = not (mix == 0 and space.t0) or bool(j_fixed)
    conclusion = unique_iff_ok and corollary_ok
    return TheoremVerdict(
        kind=cond.kind,
        b=b,
        t0=space.t0,
        range_violations=bad,
        condition=condition,
        expansion=expansion,
        psi_strict=psi_strict,
        hypotheses=hypotheses,
        weak_hypotheses=weak_hypotheses,
        mix_value=mix,
        combined=combined,
        j_fixed=j_fixed,
        unique_iff_ok=unique_iff_ok,
        corollary_ok=corollary_ok,
        consistent=not hypotheses or conclusion,
        weak_consistent=not weak_hypotheses or conclusion,
        assumed=assumed,
    )
