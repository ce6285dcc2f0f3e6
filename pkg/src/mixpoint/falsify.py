"""Randomized search for counterexamples to the theorems and diameter lemmas.

Each trial draws a T0 instance ``(space, F, J)``, fits the tightest
constants for the theorem's condition family, keeps the instance only if
every hypothesis then holds, and checks the conclusion (``verdict``) and/or
the C_eps diameter bound (``bounds``).  Trials are independent and seeded
by index, so any failure can be replayed from its bundle alone.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from mixpoint.cnsets import DEFAULT_GRID, verify_bounds
from mixpoint.contraction import Condition, PsiSpec, fit_constants, theorem_verdict
from mixpoint.core import InputError, fmt_rational
from mixpoint.gen import GenConfig, gen_instance
from mixpoint.serialize import condition_to_json, maps_to_json, space_to_json

ONE = Fraction(1)
B_TYPE = (Fraction(3, 2), Fraction(2))

# Stand-in for alpha when the tightest fitted value is 0 but the theorem
# wants alpha > 0; any larger alpha keeps the condition true.
ALPHA_FLOOR = Fraction(1, 1024)


@dataclass(frozen=True)
class TheoremSpec:
    kind: str
    bs: tuple[Fraction, ...]
    verdict: bool = True
    bounds: bool = True
    j_mode: Optional[str] = None  # override of the generator's J mode


def _table() -> dict[str, TheoremSpec]:
    table = {}
    kinds = {"1": "linear_j", "2": "kannan_j", "3": "chatterjea_j", "4": "almost_j"}
    for i, kind in kinds.items():
        table[f"res{i}"] = TheoremSpec(kind, (ONE,))
        table[f"resf{i}"] = TheoremSpec(kind, B_TYPE)
        table[f"res{i}_lemma"] = TheoremSpec(kind, (ONE,), verdict=False)
        table[f"resf{i}_lemma"] = TheoremSpec(kind, B_TYPE, verdict=False)
    # psi-contractions with psi(t) = k t: with a general J, and J = identity
    table["res"] = TheoremSpec("psi_j", (ONE,), bounds=False, j_mode="mixed")
    table["thm1"] = TheoremSpec("psi_j", (ONE,), bounds=False, j_mode="identity")
    return table


THEOREMS = _table()
ACCEPTANCE_THEOREMS = ("res1", "res2", "res3", "res4", "resf1", "resf2", "resf3", "resf4")


@dataclass(frozen=True)
class HarnessConfig:
    """Shape of the random instances; per-trial seeds derive from ``seed``."""

    n_min: int = 2
    n_max: int = 5
    q: int = 6
    m: int = 6
    zero_density: float = 0.15
    cap: int = 2
    plant: float = 0.5
    j_mode: str = "bijective"
    pools: tuple[Optional[int], ...] = (None, 1, 2, 3)  # per-trial choice of GenConfig.pool
    b: Optional[Fraction] = None  # overrides the theorem's b choices
    eps_grid: tuple[Fraction, ...] = DEFAULT_GRID

    def __post_init__(self) -> None:
        if not 1 <= self.n_min <= self.n_max:
            raise InputError("need 1 <= n_min <= n_max")


def trial_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def constants_for(space, F, J, spec: TheoremSpec) -> Optional[Condition]:
    """Tightest constants for ``spec``'s family, or None if no constants exist."""
    if spec.kind == "psi_j":
        fit = fit_constants(space, F, J, "linear_j")
        if not fit.feasible:
            return None
        return Condition("psi_j", psi=PsiSpec.linear(fit.alpha))
    fit = fit_constants(space, F, J, spec.kind)
    if not fit.feasible or not fit.expansion_feasible:
        return None
    alpha = fit.alpha if fit.alpha > 0 else ALPHA_FLOOR
    r = ONE if fit.r_unbounded else fit.r_max
    return Condition(spec.kind, alpha=alpha, r=r, L=fit.L)


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    seed: int
    survived: bool
    consistent: Optional[bool] = None
    bounds_ok: Optional[bool] = None
    range_oddity: bool = False
    bundle: Optional[dict] = None

    @property
    def failed(self) -> bool:
        return self.consistent is False or self.bounds_ok is False


VerdictFn = Callable[..., object]


def run_trial(theorem: str, index: int, seed: int, hcfg: HarnessConfig, verdict_fn: VerdictFn = theorem_verdict) -> TrialOutcome:
    spec = THEOREMS[theorem]
    tseed = trial_seed(seed, index)
    shape = random.Random(f"{tseed}/shape")
    n = shape.randint(hcfg.n_min, hcfg.n_max)
    b = hcfg.b if hcfg.b is not None else shape.choice(spec.bs)
    pool = shape.choice(hcfg.pools)
    cfg = GenConfig(
        n=n,
        b=b,
        q=hcfg.q,
        m=hcfg.m,
        zero_density=hcfg.zero_density,
        seed=tseed,
        cap=hcfg.cap,
        require_t0=True,
        j_mode=spec.j_mode or hcfg.j_mode,
        plant=hcfg.plant,
        pool=pool,
    )
    space, F, J = gen_instance(cfg)
    cond = constants_for(space, F, J, spec)
    if cond is None:
        return TrialOutcome(index, tseed, False)
    verdict = verdict_fn(space, F, J, cond)
    if not verdict.hypotheses:
        return TrialOutcome(index, tseed, False, range_oddity=verdict.range_oddity)

    consistent = verdict.consistent if spec.verdict else None
    bounds_ok = None
    reasons = []
    if consistent is False:
        reasons.append("conclusion fails: " + ("not (unique combined point <=> mix = 0)" if not verdict.unique_iff_ok else "no J-fixed point although mix = 0"))
    if spec.bounds:
        rep = verify_bounds(space, F, J, cond, hcfg.eps_grid)
        bounds_ok = rep.ok
        if not rep.nesting_ok:
            reasons.append("C_eps not nested")
        if rep.bound_error:
            reasons.append(f"{rep.lemma} bound undefined: {rep.bound_error}")
        for p in rep.violations:
            reasons.append(
                f"{rep.lemma}: diam C_{fmt_rational(p.eps)} = {fmt_rational(p.diameter)} > bound {fmt_rational(p.bound)}"
            )
    bundle = None
    if reasons:
        bundle = {
            "theorem": theorem,
            "trial": index,
            "seed": tseed,
            "config": {"n": n, "b": fmt_rational(b), "q": hcfg.q, "m": hcfg.m, "cap": hcfg.cap, "pool": pool},
            "space": space_to_json(space),
            "map": maps_to_json(space, F, J),
            "condition": condition_to_json(cond),
            "mix_value": fmt_rational(verdict.mix_value),
            "combined": sorted(space.labels[x] for x in verdict.combined),
            "reasons": reasons,
        }
    return TrialOutcome(
        index,
        tseed,
        True,
        consistent,
        bounds_ok,
        bundle=bundle,
    )


@dataclass
class FalsifySummary:
    theorem: str
    trials: int
    seed: int
    survivors: int = 0
    inconsistent: int = 0
    bound_failures: int = 0
    range_oddities: int = 0
    first_failure: Optional[int] = None
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.inconsistent == 0 and self.bound_failures == 0

    def to_json(self, max_bundles: int = 20) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "seed": self.seed,
            "survivors": self.survivors,
            "inconsistent": self.inconsistent,
            "bound_failures": self.bound_failures,
            "range_oddities": self.range_oddities,
            "first_failure": self.first_failure,
            "ok": self.ok,
            "counterexamples_shown": min(len(self.counterexamples), max_bundles),
            "counterexamples": self.counterexamples[:max_bundles],
        }


def _chunk(args) -> list[TrialOutcome]:
    theorem, indices, seed, hcfg = args
    return [run_trial(theorem, i, seed, hcfg) for i in indices]


def falsify(
    theorem: str,
    trials: int,
    seed: int = 0,
    hcfg: Optional[HarnessConfig] = None,
    stop_on_first: bool = False,
    workers: int = 1,
    verdict_fn: VerdictFn = theorem_verdict,
) -> FalsifySummary:
    """Run ``trials`` independent trials; results are merged in trial order."""
    if theorem not in THEOREMS:
        raise InputError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    if trials < 1:
        raise InputError("trials must be >= 1")
    hcfg = hcfg or HarnessConfig()
    summary = FalsifySummary(theorem, trials, seed)

    if workers > 1 and not stop_on_first and verdict_fn is theorem_verdict:
        size = -(-trials // (workers * 4))
        chunks = [(theorem, range(s, min(s + size, trials)), seed, hcfg) for s in range(0, trials, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = [o for part in pool.map(_chunk, chunks) for o in part]
    else:
        outcomes = []
        for i in range(trials):
            o = run_trial(theorem, i, seed, hcfg, verdict_fn)
            outcomes.append(o)
            if stop_on_first and o.failed:
                summary.trials = i + 1
                break

    for o in outcomes:
        summary.survivors += o.survived
        summary.range_oddities += o.range_oddity
        if o.consistent is False:
            summary.inconsistent += 1
        if o.bounds_ok is False:
            summary.bound_failures += 1
        if o.failed:
            if summary.first_failure is None:
                summary.first_failure = o.index
            summary.counterexamples.append(o.bundle)
    return summary

