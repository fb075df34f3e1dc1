import logging
import time
from functools import wraps

logger = logging.getLogger(__name__)


def count_time(func):
    """
    Log the wall time of a solver call. A result carrying ``stats`` also gets it in
    ``stats.elapsed``.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        tic = time.perf_counter()
        result = func(*args, **kwargs)
        elapsed = time.perf_counter() - tic
        stats = getattr(result, 'stats', None)
        if stats is not None:
            stats.elapsed = elapsed
            logger.info("%s: %s in %.3fs", func.__name__, stats, elapsed)
        else:
            logger.debug("%s took %.6fs", func.__name__, elapsed)
        return result
    return wrapper
