"""``mixpoint`` command line.

Exit codes: 0 pass/consistent, 1 domain-level failure (invalid space,
inconsistent verdict, counterexample found), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from mixpoint import serialize as ser
from mixpoint.cnsets import DEFAULT_GRID, profile, verify_bounds
from mixpoint.contraction import EXPANSION_KINDS, fit_constants, theorem_verdict
from mixpoint.core import InputError, fmt_rational, parse_rational, validate
from mixpoint.falsify import THEOREMS, HarnessConfig, falsify
from mixpoint.gen import J_MODES, GenConfig, gen_instance
from mixpoint.maps import approx_values, classify
from mixpoint.presets import PRESETS, preset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(obj: dict, json_out: Optional[str]) -> None:
    text = ser.dumps(obj)
    if json_out:
        Path(json_out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _raw_inputs(args) -> tuple[dict, Optional[dict], Optional[dict]]:
    if args.preset:
        p = preset(args.preset)
        space_obj, map_obj, cond_obj = p["space"], p["map"], p["condition"]
    else:
        if not args.space:
            raise InputError("--space or --preset is required")
        space_obj = ser.load(args.space)
        map_obj = cond_obj = None
    if getattr(args, "map", None):
        map_obj = ser.load(args.map)
    if getattr(args, "condition", None):
        cond_obj = ser.load(args.condition)
    return space_obj, map_obj, cond_obj


def _negative_entries(space_obj) -> list[dict]:
    # The library refuses negative distances outright; `check` lists them.
    out = []
    rows = space_obj.get("d") if isinstance(space_obj, dict) else None
    if not isinstance(rows, list):
        return out
    labels = space_obj.get("labels") or [str(i) for i in range(len(rows))]
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            continue
        for j, v in enumerate(row):
            try:
                q = parse_rational(v)
            except InputError:
                continue
            if q < 0 and i < len(labels) and j < len(labels):
                out.append({"axiom": "nonnegative", "witness": [labels[i], labels[j]], "lhs": fmt_rational(q), "rhs": "0"})
    return out


def cmd_check(args) -> int:
    space_obj, _, _ = _raw_inputs(args)
    negatives = _negative_entries(space_obj)
    if negatives:
        _emit({"ok": False, "violations": negatives}, args.json_out)
        return EXIT_FAIL
    space = ser.space_from_json(space_obj)
    report = validate(space)
    out = ser.validation_to_json(space, report)
    out["space"] = ser.space_summary(space)
    _emit(out, args.json_out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _load_instance(args):
    space_obj, map_obj, cond_obj = _raw_inputs(args)
    space = ser.space_from_json(space_obj)
    if map_obj is None:
        raise InputError("--map or --preset is required")
    F, J = ser.maps_from_json(map_obj, space)
    cond = ser.condition_from_json(cond_obj) if cond_obj is not None else None
    return space, F, J, cond


def _grid(args) -> Sequence[Fraction]:
    return ser.parse_grid(args.eps_grid) if args.eps_grid else DEFAULT_GRID


def cmd_analyze(args) -> int:
    space, F, J, cond = _load_instance(args)
    validation = validate(space)
    report = {
        "space": ser.space_summary(space),
        "validation": ser.validation_to_json(space, validation),
        "classification": ser.classification_to_json(space, classify(space, F, J)),
        "approx": ser.approx_to_json(space, approx_values(space, F, J)),
        "j_identity": J.is_identity,
    }
    status = EXIT_OK if validation.ok else EXIT_FAIL
    grid = _grid(args)
    if cond is not None:
        verdict = theorem_verdict(space, F, J, cond)
        report["condition"] = ser.condition_to_json(cond)
        report["verdict"] = ser.verdict_to_json(space, verdict)
        if cond.kind != "psi_j":
            report["ceps"] = ser.bounds_to_json(space, verify_bounds(space, F, J, cond, grid))
        else:
            report["ceps"] = {"profile": [ser.profile_to_json(space, p) for p in profile(space, F, J, grid)]}
        if not verdict.consistent:
            status = EXIT_FAIL
    else:
        report["ceps"] = {"profile": [ser.profile_to_json(space, p) for p in profile(space, F, J, grid)]}
    _emit(report, args.json_out)
    return status


def cmd_fit(args) -> int:
    space, F, J, _ = _load_instance(args)
    kinds = [args.kind] if args.kind else list(EXPANSION_KINDS)
    _emit({"fits": [ser.fit_to_json(fit_constants(space, F, J, k)) for k in kinds]}, args.json_out)
    return EXIT_OK


def cmd_ceps(args) -> int:
    space, F, J, cond = _load_instance(args)
    grid = _grid(args)
    if cond is not None and cond.kind != "psi_j":
        rep = verify_bounds(space, F, J, cond, grid, args.lemma)
        _emit(ser.bounds_to_json(space, rep), args.json_out)
        return EXIT_OK if rep.ok else EXIT_FAIL
    _emit({"profile": [ser.profile_to_json(space, p) for p in profile(space, F, J, grid)]}, args.json_out)
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = GenConfig(
        n=args.n,
        b=parse_rational(args.b),
        q=args.q,
        m=args.m,
        zero_density=args.zero_density,
        seed=args.seed,
        cap=args.cap,
        require_t0=args.t0,
        force_asymmetric_zero=args.asym_zero,
        j_mode=args.j_mode,
        plant=args.plant,
        pool=args.pool,
    )
    space, F, J = gen_instance(cfg)
    space_obj = ser.space_to_json(space)
    map_obj = ser.maps_to_json(space, F, J)
    if args.space_out or args.map_out:
        if args.space_out:
            Path(args.space_out).write_text(ser.dumps(space_obj), encoding="utf-8")
        if args.map_out:
            Path(args.map_out).write_text(ser.dumps(map_obj), encoding="utf-8")
    else:
        _emit({"space": space_obj, "map": map_obj}, args.json_out)
    return EXIT_OK


def cmd_falsify(args) -> int:
    hcfg = HarnessConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        b=parse_rational(args.b) if args.b else None,
        eps_grid=tuple(_grid(args)),
    )
    summary = falsify(
        args.theorem,
        args.trials,
        seed=args.seed,
        hcfg=hcfg,
        stop_on_first=args.stop_on_first,
        workers=args.workers,
    )
    if args.dump_dir:
        dump = Path(args.dump_dir)
        dump.mkdir(parents=True, exist_ok=True)
        for bundle in summary.counterexamples:
            (dump / f"{args.theorem}-trial{bundle['trial']:06d}.json").write_text(ser.dumps(bundle), encoding="utf-8")
    _emit(summary.to_json(), args.json_out)
    return EXIT_OK if summary.ok else EXIT_FAIL


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixpoint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p, with_map=True, with_cond=True):
        p.add_argument("--space", help="space JSON file")
        p.add_argument("--preset", choices=sorted(PRESETS), help="bundled instance instead of files")
        if with_map:
            p.add_argument("--map", help="map JSON file (F and optional J)")
        if with_cond:
            p.add_argument("--condition", help="condition JSON file")
        p.add_argument("--json-out", help="write the JSON report here instead of stdout")

    p = sub.add_parser("check", help="validate a space")
    inputs(p, with_map=False, with_cond=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", help="classification, approximate values, verdict, C_eps profile")
    inputs(p)
    p.add_argument("--eps-grid", help="comma-separated eps values (default 1/n, n = 1..16)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fit", help="tightest constants for each condition family")
    inputs(p, with_cond=False)
    p.add_argument("--kind", choices=EXPANSION_KINDS)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("ceps", help="C_eps profile, with diameter bounds when a condition is given")
    inputs(p)
    p.add_argument("--eps-grid")
    p.add_argument("--lemma", choices=("res1", "res2", "resf1", "resf2", "resf3", "resf4"))
    p.set_defaults(func=cmd_ceps)

    p = sub.add_parser("gen", help="emit a random space and maps")
    p.add_argument("--n", type=_positive_int, default=4)
    p.add_argument("--b", default="1")
    p.add_argument("--q", type=_positive_int, default=6)
    p.add_argument("--m", type=_positive_int, default=6)
    p.add_argument("--zero-density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=_positive_int)
    p.add_argument("--pool", type=_positive_int)
    p.add_argument("--plant", type=float, default=0.0)
    p.add_argument("--j-mode", choices=J_MODES, default="uniform")
    p.add_argument("--t0", action="store_true", help="redraw until the space is T0")
    p.add_argument("--asym-zero", action="store_true", help="force a pair with d(x,y) = 0 < d(y,x)")
    p.add_argument("--space-out")
    p.add_argument("--map-out")
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("falsify", help="randomized counterexample search")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--b", help="fix b instead of the theorem's default choices")
    p.add_argument("--n-min", type=_positive_int, default=2)
    p.add_argument("--n-max", type=_positive_int, default=5)
    p.add_argument("--eps-grid")
    p.add_argument("--stop-on-first", action="store_true")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--dump-dir", help="write one JSON bundle per counterexample here")
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_falsify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"mixpoint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
