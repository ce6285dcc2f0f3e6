"""JSON formats for spaces, maps, conditions and reports.

Numbers are always carried as strings (``"1/3"``, ``"0.25"``, ``"2"``) so
nothing round-trips through binary floats.  JSON numeric literals in input
files are accepted and parsed exactly from their source text.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from mixpoint.cnsets import BoundsReport, CEpsilonProfile
from mixpoint.contraction import CheckResult, Condition, Fit, PsiSpec, TheoremVerdict, Witness
from mixpoint.core import InputError, Space, ValidationReport, fmt_rational, parse_rational
from mixpoint.maps import ApproxValues, Classification, MultiMap, SelfMap


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=str, parse_int=str)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def load(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _q(v: Optional[Fraction]) -> Optional[str]:
    return None if v is None else fmt_rational(v)


def _require(obj: Any, key: str, what: str) -> Any:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be a JSON object")
    if key not in obj:
        raise InputError(f"{what} is missing {key!r}")
    return obj[key]


# -- spaces ---------------------------------------------------------------


def space_from_json(obj: Any) -> Space:
    rows = _require(obj, "d", "space")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("space 'd' must be a list of rows")
    labels = obj.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise InputError("space 'labels' must be a list")
    return Space.from_matrix(rows, obj.get("b", "1"), labels)


def space_to_json(space: Space) -> dict:
    return {
        "labels": list(space.labels),
        "d": [[fmt_rational(v) for v in row] for row in space.dist],
        "b": fmt_rational(space.b),
    }


# -- maps -------------------------------------------------------------------


def maps_from_json(obj: Any, space: Space) -> tuple[MultiMap, SelfMap]:
    f_obj = _require(obj, "F", "map")
    if not isinstance(f_obj, dict):
        raise InputError("map 'F' must be an object keyed by point label")
    images: list[Optional[frozenset[int]]] = [None] * space.n
    for label, members in f_obj.items():
        if not isinstance(members, list):
            raise InputError(f"F[{label!r}] must be a list of labels")
        images[space.index(label)] = frozenset(space.index(m) for m in members)
    missing = [space.labels[i] for i, img in enumerate(images) if img is None]
    if missing:
        raise InputError(f"F is not total; missing {', '.join(missing)}")
    F = MultiMap(tuple(images))

    j_obj = obj.get("J")
    if j_obj is None:
        J = SelfMap.identity(space.n)
    else:
        if not isinstance(j_obj, dict):
            raise InputError("map 'J' must be an object keyed by point label")
        image: list[Optional[int]] = [None] * space.n
        for label, target in j_obj.items():
            image[space.index(label)] = space.index(target)
        missing = [space.labels[i] for i, t in enumerate(image) if t is None]
        if missing:
            raise InputError(f"J is not total; missing {', '.join(missing)}")
        J = SelfMap(tuple(image))
    F.check(space)
    J.check(space)
    return F, J


def maps_to_json(space: Space, F: MultiMap, J: Optional[SelfMap] = None) -> dict:
    lab = space.labels
    out = {"F": {lab[x]: _labels(space, img) for x, img in enumerate(F.images)}}
    if J is not None:
        out["J"] = {lab[x]: lab[jx] for x, jx in enumerate(J.image)}
    return out


def _labels(space: Space, members) -> list[str]:
    return [space.labels[i] for i in sorted(members)]


# -- conditions -------------------------------------------------------------


def psi_from_json(obj: Any) -> PsiSpec:
    bps = _require(obj, "breakpoints", "psi")
    if not isinstance(bps, list) or not all(isinstance(p, list) and len(p) == 2 for p in bps):
        raise InputError("psi 'breakpoints' must be a list of [t, psi(t)] pairs")
    return PsiSpec(tuple((t, v) for t, v in bps), obj.get("tail_slope", "0"))


def psi_to_json(psi: PsiSpec) -> dict:
    return {
        "breakpoints": [[fmt_rational(t), fmt_rational(v)] for t, v in psi.breakpoints],
        "tail_slope": fmt_rational(psi.tail_slope),
    }


def condition_from_json(obj: Any) -> Condition:
    kind = _require(obj, "kind", "condition")
    psi = None
    if kind == "psi_j":
        psi_obj = obj.get("psi")
        if psi_obj is None:
            # the bare PsiSpec layout is accepted inline as well
            psi_obj = obj
        psi = psi_from_json(psi_obj)
    return Condition(
        kind,
        alpha=obj.get("alpha"),
        r=obj.get("r"),
        L=obj.get("L"),
        psi=psi,
    )


def condition_to_json(cond: Condition) -> dict:
    out: dict[str, Any] = {"kind": cond.kind}
    for name in ("alpha", "r", "L"):
        v = getattr(cond, name)
        if v is not None:
            out[name] = fmt_rational(v)
    if cond.psi is not None:
        out["psi"] = psi_to_json(cond.psi)
    return out


def parse_grid(text: str) -> list[Fraction]:
    """Comma-separated rationals, e.g. ``"1,1/2,1/4"``."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise InputError("empty eps grid")
    return [parse_rational(p) for p in parts]


# -- reports ----------------------------------------------------------------


def validation_to_json(space: Space, report: ValidationReport) -> dict:
    lab = space.labels
    return {
        "ok": report.ok,
        "t0": report.t0,
        "t0_witnesses": [[lab[i], lab[j]] for i, j in report.t0_witnesses],
        "violations": [
            {
                "axiom": v.axiom,
                "witness": [lab[i] for i in v.witness],
                "lhs": fmt_rational(v.lhs),
                "rhs": fmt_rational(v.rhs),
            }
            for v in report.violations
        ],
    }


def space_summary(space: Space) -> dict:
    return {"n": space.n, "b": fmt_rational(space.b), "t0": space.t0, "bicomplete": space.bicomplete}


def classification_to_json(space: Space, cls: Classification) -> dict:
    lab = space.labels
    return {
        "table": [
            {
                "point": lab[x],
                "start_value": fmt_rational(r.start_value),
                "end_value": fmt_rational(r.end_value),
                "start": r.is_start,
                "end": r.is_end,
                "fixed": r.is_fixed,
            }
            for x, r in enumerate(cls.records)
        ],
        "startpoints": _labels(space, cls.startpoints),
        "endpoints": _labels(space, cls.endpoints),
        "fixed": _labels(space, cls.fixed_points),
        "combined": _labels(space, cls.combined),
    }


def approx_to_json(space: Space, av: ApproxValues) -> dict:
    return {
        "start": {"value": fmt_rational(av.start), "holds": av.has_start_property, "argmin": _labels(space, av.start_argmin)},
        "end": {"value": fmt_rational(av.end), "holds": av.has_end_property, "argmin": _labels(space, av.end_argmin)},
        "mix": {"value": fmt_rational(av.mix), "holds": av.has_mix_property, "argmin": _labels(space, av.mix_argmin)},
    }


def witness_to_json(space: Space, w: Optional[Witness]) -> Optional[dict]:
    if w is None:
        return None
    return {"x": space.labels[w.x], "y": space.labels[w.y], "lhs": fmt_rational(w.lhs), "rhs": fmt_rational(w.rhs)}


def check_to_json(space: Space, c: Optional[CheckResult]) -> Optional[dict]:
    if c is None:
        return None
    return {"holds": c.holds, "worst": witness_to_json(space, c.worst)}


def verdict_to_json(space: Space, v: TheoremVerdict) -> dict:
    return {
        "kind": v.kind,
        "b": fmt_rational(v.b),
        "t0": v.t0,
        "range_violations": list(v.range_violations),
        "condition": check_to_json(space, v.condition),
        "expansion": check_to_json(space, v.expansion),
        "psi_strict": v.psi_strict,
        "hypotheses": v.hypotheses,
        "failed_hypotheses": v.failed_hypotheses,
        "weak_hypotheses": v.weak_hypotheses,
        "range_oddity": v.range_oddity,
        "mix_value": fmt_rational(v.mix_value),
        "combined": _labels(space, v.combined),
        "j_fixed": _labels(space, v.j_fixed),
        "unique_iff_ok": v.unique_iff_ok,
        "corollary_ok": v.corollary_ok,
        "consistent": v.consistent,
        "weak_consistent": v.weak_consistent,
        "assumed": list(v.assumed),
    }


def fit_to_json(fit: Fit) -> dict:
    return {
        "kind": fit.kind,
        "feasible": fit.feasible,
        "alpha": _q(fit.alpha),
        "L": _q(fit.L),
        "r_max": "unbounded" if fit.r_unbounded else fmt_rational(fit.r_max),
        "expansion_feasible": fit.expansion_feasible,
    }


def profile_to_json(space: Space, p: CEpsilonProfile) -> dict:
    return {
        "eps": fmt_rational(p.eps),
        "members": _labels(space, p.members),
        "diameter": _q(p.diameter),
        "bound": _q(p.bound),
        "ok": p.ok,
    }


def bounds_to_json(space: Space, rep: BoundsReport) -> dict:
    return {
        "lemma": rep.lemma,
        "hypotheses": rep.hypotheses,
        "nesting_ok": rep.nesting_ok,
        "bound_error": rep.bound_error,
        "ok": rep.ok,
        "profile": [profile_to_json(space, p) for p in rep.profiles],
    }
