"""
Utility functions and decorators for qdual.
Contains the parallel case runner, a timing decorator factory and small parsing helpers.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from fractions import Fraction
from functools import wraps
from typing import Callable, Dict, Iterable, List, TypeVar

from config import VARIABLES

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_parallel(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    Apply ``fn`` to every item, optionally on a thread pool.

    Args:
        fn (Callable): A pure function of one case.
        items (Iterable): The cases, in report order.
        threads (int): Worker threads; 1 or less runs serially.

    Returns:
        list: Results in the order of ``items`` regardless of the schedule.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug("running %d cases on %d threads", len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def timed(label: str):
    """
    Decorator factory to measure the wall time of a call.
    The wrapped function returns ``(result, milliseconds)`` and logs the
    elapsed time at DEBUG under ``label``.

    Usage
    -----
        @timed("grid comparison")
        def compare(lhs, rhs):
            ...

        verdict, ms = compare(lhs, rhs)
    """

    def decorator(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            result = fn(*args, **kwargs)
            ms = (time.perf_counter() - start) * 1000.0
            logger.debug("%s took %.3f ms", label, ms)
            return result, ms

        return wrapper

    return decorator


class SuiteName(Enum):
    """
    The named verification suites the command line can run.
    """
    S41 = "s41"
    S42 = "s42"
    S43 = "s43"
    S44 = "s44"
    SECTION2 = "section2"
    SECTION3 = "section3"
    CLASSICAL = "classical"

    def __str__(self):
        return self.value


def parse_point(text: str) -> Dict[str, Fraction]:
    """
    Parse "q=2,B=3/5" into an evaluation point.

    Raises:
        ValueError: If an entry is malformed or names an unknown variable.
    """
    point = {}
    for entry in filter(None, (part.strip() for part in text.split(","))):
        name, sep, value = entry.partition("=")
        name = name.strip()
        if not sep or name not in VARIABLES:
            raise ValueError(f"Invalid point entry: {entry!r}")
        point[name] = Fraction(value.strip())
    return point


def parse_ints(text: str) -> List[int]:
    """Parse "1,2,3" (commas or spaces) into integers."""
    return [int(part) for part in text.replace(",", " ").split()]
