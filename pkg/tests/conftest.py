from fractions import Fraction

import pytest

from mixpoint import serialize as ser
from mixpoint.gen import GenConfig, gen_instance
from mixpoint.presets import preset


def load_preset(name):
    p = preset(name)
    space = ser.space_from_json(p["space"])
    F, J = ser.maps_from_json(p["map"], space)
    cond = ser.condition_from_json(p["condition"]) if p["condition"] else None
    return space, F, J, cond


def random_instances(count, *, seed=0, n_max=6, bs=(Fraction(1),), t0=False, j_mode="uniform", cap=None, pool_cycle=(None,)):
    """Deterministic stream of generated (space, F, J) triples."""
    for i in range(count):
        cfg = GenConfig(
            n=1 + (i * 7 + seed) % n_max,
            b=bs[i % len(bs)],
            seed=seed * 100_000 + i,
            require_t0=t0,
            j_mode=j_mode,
            cap=cap,
            pool=pool_cycle[i % len(pool_cycle)],
            plant=0.3,
            zero_density=0.3 if not t0 else 0.15,
        )
        yield gen_instance(cfg)


@pytest.fixture
def remark22():
    return load_preset("remark22")


@pytest.fixture
def example3():
    return load_preset("example-3pt")


@pytest.fixture
def res1_example():
    return load_preset("res1-example")


@pytest.fixture
def res2_example():
    return load_preset("res2-example")


# criterion id -> list of (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def record(criterion, passed, detail):
    ACCEPTANCE.setdefault(criterion, []).append((bool(passed), detail))
    print(f"criterion {criterion}: {'PASS' if passed else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[criterion]
        ok = all(p for p, _ in rows)
        details = "; ".join(d for _, d in rows)
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {details}")
