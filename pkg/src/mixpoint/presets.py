"""Bundled instances: the classic two- and three-point examples, plus two
small counterexamples found with this package."""

from __future__ import annotations

from typing import Optional

from mixpoint.core import InputError

TWO_POINT = {"labels": ["0", "1"], "d": [["0", "0"], ["1", "0"]], "b": "1"}

PRESETS: dict[str, dict[str, Optional[dict]]] = {
    # fixed point that is not a startpoint
    "remark22": {
        "space": TWO_POINT,
        "map": {"F": {"0": ["0", "1"], "1": ["0", "1"]}},
        "condition": None,
    },
    # Fa = X \ {a}: unique startpoint 0, no endpoint, no fixed point
    "example-3pt": {
        "space": {
            "labels": ["0", "1", "2"],
            "d": [["0", "0", "0"], ["1", "0", "1"], ["2", "2", "0"]],
            "b": "1",
        },
        "map": {"F": {"0": ["1", "2"], "1": ["0", "2"], "2": ["0", "1"]}},
        "condition": None,
    },
    # Fx = {0}, Jx = x^2
    "res1-example": {
        "space": TWO_POINT,
        "map": {"F": {"0": ["0"], "1": ["0"]}, "J": {"0": "0", "1": "1"}},
        "condition": {"kind": "linear_j", "alpha": "1/3", "r": "1/2"},
    },
    # Fx = {0}, Jx = x^3, Kannan-type condition
    "res2-example": {
        "space": TWO_POINT,
        "map": {"F": {"0": ["0"], "1": ["0"]}, "J": {"0": "0", "1": "1"}},
        "condition": {"kind": "kannan_j", "alpha": "1/3", "r": "1/2"},
    },
    # All hypotheses of the almost-contraction theorem hold (r is small enough
    # that r*(alpha + L) < 1) yet every point is a start- and endpoint.
    "res4-cx": {
        "space": {"labels": ["0", "1"], "d": [["0", "1"], ["1", "0"]], "b": "1"},
        "map": {"F": {"0": ["0"], "1": ["1"]}},
        "condition": {"kind": "almost_j", "alpha": "1/2", "L": "1/2", "r": "1/2"},
    },
    # b = 2, alpha = 1/5, r = 1: diam C_1 = 34/5 exceeds the stated bound 150/23.
    "resf1-lemma-cx": {
        "space": {
            "labels": ["0", "1", "2", "3"],
            "d": [
                ["0", "34/5", "1", "12/5"],
                ["34/5", "0", "12/5", "1"],
                ["1", "12/5", "0", "1/5"],
                ["12/5", "1", "1/5", "0"],
            ],
            "b": "2",
        },
        "map": {"F": {"0": ["2"], "1": ["3"], "2": ["2"], "3": ["2"]}},
        "condition": {"kind": "linear_j", "alpha": "1/5", "r": "1"},
    },
}


def preset(name: str) -> dict[str, Optional[dict]]:
    try:
        return PRESETS[name]
    except KeyError:
        raise InputError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}") from None
