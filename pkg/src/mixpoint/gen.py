"""Seeded random spaces and maps.

Distances are drawn from the grid ``{0, 1/q, ..., m/q}`` and then repaired
into a valid (``b``-relaxed) quasi-pseudometric by iterated relaxation

    d[i][k] <- min(d[i][k], b * (d[i][j] + d[j][k]))

until nothing changes.  For ``b = 1`` this is Floyd-Warshall; for ``b > 1``
the loop still terminates because every update lowers an entry to one of
finitely many values below the current maximum.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Optional

from mixpoint.core import InputError, Space, is_t0
from mixpoint.maps import MultiMap, SelfMap

J_MODES = ("uniform", "permutation", "identity", "bijective", "mixed")

MAX_REDRAWS = 10_000


@dataclass(frozen=True)
class GenConfig:
    n: int = 4
    b: Fraction = Fraction(1)
    q: int = 6  # grid denominator
    m: int = 6  # largest grid numerator
    zero_density: float = 0.3
    seed: int = 0
    cap: Optional[int] = None  # max |Fx|; None means n
    require_t0: bool = False
    force_asymmetric_zero: bool = False
    j_mode: str = "uniform"
    plant: float = 0.0  # probability that one random point gets Fx = {Jx}
    pool: Optional[int] = None  # draw every Fx from this many shared random images
    overrides: tuple[tuple[int, int, Fraction], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError("n must be >= 1")
        if self.q < 1 or self.m < 1:
            raise InputError("q and m must be positive")
        if Fraction(self.b) < 1:
            raise InputError("b must be >= 1")
        if self.j_mode not in J_MODES:
            raise InputError(f"j_mode must be one of {', '.join(J_MODES)}")
        if self.cap is not None and self.cap < 1:
            raise InputError("cap must be >= 1")
        if self.pool is not None and self.pool < 1:
            raise InputError("pool must be >= 1")
        object.__setattr__(self, "b", Fraction(self.b))

    def with_seed(self, seed: int) -> GenConfig:
        return replace(self, seed=seed)


def _rng(cfg: GenConfig, tag: str) -> random.Random:
    return random.Random(f"{cfg.seed}/{tag}")


def relax(dist: list[list[Fraction]], b: Fraction) -> list[list[Fraction]]:
    """Close ``dist`` under the ``b``-triangle inequality, in place; returns it."""
    n = len(dist)
    changed = True
    while changed:
        changed = False
        for j in range(n):
            dj = dist[j]
            for i in range(n):
                di = dist[i]
                dij = di[j]
                for k in range(n):
                    v = b * (dij + dj[k])
                    if v < di[k]:
                        di[k] = v
                        changed = True
    return dist


def _draw_matrix(cfg: GenConfig, rng: random.Random) -> list[list[Fraction]]:
    n = cfg.n
    dist = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rng.random() < cfg.zero_density:
                continue
            dist[i][j] = Fraction(rng.randint(1, cfg.m), cfg.q)
    if cfg.force_asymmetric_zero and n >= 2:
        i, j = rng.sample(range(n), 2)
        dist[i][j] = Fraction(0)
        if dist[j][i] == 0:
            dist[j][i] = Fraction(rng.randint(1, cfg.m), cfg.q)
    for i, j, v in cfg.overrides:
        dist[i][j] = Fraction(v)
    return dist


def _has_asymmetric_zero(dist) -> bool:
    n = len(dist)
    return any(dist[i][j] == 0 and dist[j][i] > 0 for i in range(n) for j in range(n))


def gen_space(cfg: GenConfig) -> Space:
    """Random valid space; redraws until the T0 / asymmetric-zero requests are met."""
    rng = _rng(cfg, "space")
    for _ in range(MAX_REDRAWS):
        dist = relax(_draw_matrix(cfg, rng), cfg.b)
        if cfg.require_t0 and not is_t0(dist):
            continue
        if cfg.force_asymmetric_zero and cfg.n >= 2 and not _has_asymmetric_zero(dist):
            continue
        return Space(tuple(tuple(row) for row in dist), cfg.b)
    raise InputError("could not satisfy the generator constraints; lower zero_density")


def gen_selfmap(cfg: GenConfig, space: Space) -> SelfMap:
    rng = _rng(cfg, "selfmap")
    n = space.n
    mode = cfg.j_mode
    if mode == "mixed":
        mode = rng.choice(("uniform", "permutation", "identity"))
    elif mode == "bijective":
        mode = rng.choice(("permutation", "identity"))
    if mode == "identity":
        return SelfMap.identity(n)
    if mode == "permutation":
        perm = list(range(n))
        rng.shuffle(perm)
        return SelfMap(tuple(perm))
    return SelfMap(tuple(rng.randrange(n) for _ in range(n)))


def gen_multimap(cfg: GenConfig, space: Space, J: Optional[SelfMap] = None) -> MultiMap:
    """Each ``Fx`` uniform over nonempty subsets of size at most ``cap``.

    With ``pool`` set, a few such subsets are drawn first and every ``Fx``
    picks one of them, so many pairs have ``H(Fx, Fy) = 0`` and contractive
    instances become common.  With ``plant > 0`` and a ``J`` given, one random
    ``Fx`` is then replaced by ``{Jx}`` with that probability, which makes a
    zero mix value common.
    """
    rng = _rng(cfg, "multimap")
    n = space.n
    cap = min(cfg.cap or n, n)
    sizes = list(range(1, cap + 1))
    weights = [comb(n, k) for k in sizes]

    def draw() -> frozenset[int]:
        return frozenset(rng.sample(range(n), rng.choices(sizes, weights)[0]))

    shared = [draw() for _ in range(cfg.pool)] if cfg.pool else None
    images = []
    for x in range(n):
        images.append(rng.choice(shared) if shared else draw())
    if J is not None and cfg.plant and rng.random() < cfg.plant:
        x = rng.randrange(n)
        images[x] = frozenset({J.image[x]})
    return MultiMap(tuple(images))


def gen_instance(cfg: GenConfig) -> tuple[Space, MultiMap, SelfMap]:
    space = gen_space(cfg)
    J = gen_selfmap(cfg, space)
    F = gen_multimap(cfg, space, J)
    return space, F, J
