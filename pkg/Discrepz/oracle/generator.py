from __future__ import annotations

import logging
from dataclasses import dataclass, asdict

import numpy as np
from networkx.algorithms import bipartite

from Discrepz.setsystem import SetSystem
from Discrepz.utilities.errors import InstanceError

logger = logging.getLogger(__name__)

GENERATOR_KINDS = ('random-bounded-degree', 'near-regular', 'tight-sets')


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Parameters of a reproducible random instance. Every generated system has maximum
    degree exactly ``d``. The stream is numpy's ``PCG64`` seeded with ``seed``.
    """
    kind: str
    n: int
    num_sets: int
    d: int
    seed: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def _check(spec: GeneratorSpec):
    if spec.kind not in GENERATOR_KINDS:
        raise InstanceError(f"Unknown generator kind {spec.kind!r}, expected one of {GENERATOR_KINDS}")
    for name in ('n', 'num_sets', 'd'):
        if getattr(spec, name) < 1:
            raise InstanceError(f"{name} must be positive, got {getattr(spec, name)}")
    if not 0 <= spec.seed < 2 ** 64:
        raise InstanceError(f"seed must fit in 64 bits, got {spec.seed}")
    if spec.d > spec.num_sets:
        raise InstanceError(f"Degree {spec.d} needs at least {spec.d} sets, got {spec.num_sets}")
    if spec.kind == 'tight-sets' and (spec.num_sets > spec.n or spec.d > spec.n):
        raise InstanceError(f"tight-sets needs num_sets <= n and d <= n, got n={spec.n}, "
                            f"num_sets={spec.num_sets}, d={spec.d}")


def _random_bounded_degree(spec: GeneratorSpec, rng: np.random.Generator) -> list[list[int]]:
    sets = [[] for _ in range(spec.num_sets)]
    for x in range(spec.n):
        k = spec.d if x == 0 else int(rng.integers(1, spec.d + 1))
        for s in rng.choice(spec.num_sets, size=k, replace=False):
            sets[int(s)].append(x)
    return sets


def _near_regular(spec: GeneratorSpec, rng: np.random.Generator) -> list[list[int]]:
    # every element gets d stubs; set sizes differ by at most one
    stubs = spec.n * spec.d
    q, r = divmod(stubs, spec.num_sets)
    sizes = [q + 1 if j < r else q for j in range(spec.num_sets)]
    graph = bipartite.configuration_model([spec.d] * spec.n, sizes, seed=int(rng.integers(2 ** 32)))
    sets = [sorted(graph.neighbors(spec.n + j)) for j in range(spec.num_sets)]
    degrees = [0] * spec.n
    for s in sets:
        for x in s:
            degrees[x] += 1
    if max(degrees) < spec.d:
        # parallel edges collapsed every element below d; restore one element to full degree
        missing = [j for j in range(spec.num_sets) if 0 not in sets[j]]
        for j in rng.choice(missing, size=spec.d - degrees[0], replace=False):
            sets[int(j)] = sorted(sets[int(j)] + [0])
    return sets


def _tight_sets(spec: GeneratorSpec, rng: np.random.Generator) -> list[list[int]]:
    # the d elements with most spare capacity, random among ties, keep usage balanced
    capacity = np.full(spec.n, spec.d, dtype=np.int64)
    sets = []
    for _ in range(spec.num_sets):
        order = np.lexsort((rng.random(spec.n), -capacity))
        chosen = [int(x) for x in order[:spec.d] if capacity[x] > 0]
        capacity[chosen] -= 1
        sets.append(sorted(chosen))
    if capacity.min() > 0:
        # fewer than n sets: swap element 0 into sets until it has degree d, sizes unchanged
        used = spec.d - int(capacity[0])
        free = [j for j, s in enumerate(sets) if 0 not in s]
        for j in rng.choice(free, size=spec.d - used, replace=False):
            s = sets[int(j)]
            s[int(rng.integers(len(s)))] = 0
            sets[int(j)] = sorted(s)
    return sets


_BUILDERS = {'random-bounded-degree': _random_bounded_degree,
             'near-regular': _near_regular,
             'tight-sets': _tight_sets}


def generate(spec: GeneratorSpec) -> SetSystem:
    """
    A pseudo-random set system for ``spec``.

    ``random-bounded-degree`` puts each element into 1..d distinct random sets.
    ``near-regular`` draws a bipartite configuration model with every element of degree d.
    ``tight-sets`` emits sets of exactly d elements while capacity lasts.
    """
    _check(spec)
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    sys = SetSystem(spec.n, _BUILDERS[spec.kind](spec, rng))
    logger.debug("generated %r from %s", sys, spec)
    return sys
