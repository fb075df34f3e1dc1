from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from Discrepz.setsystem import SetSystem
from Discrepz.utilities.errors import OracleCapError

logger = logging.getLogger(__name__)

DEFAULT_CAP = 24
CHUNK_BITS = 14


def _chunk_minimum(incidence, n: int, start: int, stop: int) -> tuple[int, int]:
    """Minimum of ``max_S |chi(S)|`` over codes ``start..stop-1`` and the first code reaching it."""
    codes = np.arange(start, stop, dtype=np.int64)
    # bit k of the code colors element k + 1; element 0 is fixed to +1
    bits = (codes[:, None] >> np.arange(n - 1, dtype=np.int64)) & 1
    colors = np.ones((len(codes), n), dtype=np.int64)
    colors[:, 1:] = 1 - 2 * bits
    worst = np.abs(incidence @ colors.T).max(axis=0)
    k = int(np.argmin(worst))
    return int(worst[k]), start + k


def _decode(code: int, n: int) -> list[int]:
    return [1] + [-1 if (code >> k) & 1 else 1 for k in range(n - 1)]


def _search(sys: SetSystem, cap: int, workers: int) -> tuple[int, list[int]]:
    if sys.n > cap:
        raise OracleCapError(f"Brute force over 2^{sys.n} colorings exceeds the cap n <= {cap}", n=sys.n, cap=cap)
    if sys.n == 0:
        return 0, []
    incidence = sys.incidence().astype(np.int64)
    total = 1 << (sys.n - 1)
    step = 1 << CHUNK_BITS
    ranges = [(start, min(start + step, total)) for start in range(0, total, step)]
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda r: _chunk_minimum(incidence, sys.n, *r), ranges))
    else:
        results = [_chunk_minimum(incidence, sys.n, *r) for r in ranges]
    # ties resolve to the smallest code whatever the worker count
    best, code = min(results)
    logger.debug("brute force over %d colorings: discrepancy %d", total, best)
    return best, _decode(code, sys.n)


def brute_force_discrepancy(sys: SetSystem, cap: int = DEFAULT_CAP, workers: int = 1) -> int:
    """
    Exact ``disc F`` by enumerating every coloring with element 0 fixed to +1.

    Parameters
    ==========

    sys : SetSystem

    cap : int
        Largest ground-set size accepted.

    workers : int
        Threads sharing the enumeration. The result does not depend on it.

    """
    return _search(sys, cap, workers)[0]


def brute_force_coloring(sys: SetSystem, cap: int = DEFAULT_CAP, workers: int = 1) -> tuple[int, list[int]]:
    """The exact discrepancy together with a minimising coloring."""
    return _search(sys, cap, workers)
