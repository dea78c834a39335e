import logging
import os
from multiprocessing import Pool
from typing import Callable, Iterable, List, Optional, TypeVar

_DEFAULT_JOBS = "1"

T = TypeVar("T")
R = TypeVar("R")

Progress = Callable[[int, int], None]


def get_default_jobs() -> int:
    return max(1, int(os.environ.get("LEFSCHETZ_JOBS", _DEFAULT_JOBS)))


def _resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None:
        return get_default_jobs()
    if jobs < 1:
        raise ValueError(f"--jobs must be at least 1, got {jobs}.")
    return jobs


def ordered_map(
    func: Callable[[T], R],
    items: Iterable[T],
    jobs: Optional[int] = None,
    progress: Optional[Progress] = None,
) -> List[R]:
    """
    Applies `func` to every item, in a process pool when jobs > 1.

    Results come back in input order regardless of completion order. `func`
    must be a module-level function so it can be pickled. `progress`, if
    given, is called as progress(done, total) after each result arrives.
    """
    items = list(items)
    jobs = _resolve_jobs(jobs)
    total = len(items)
    results: List[R] = []

    if jobs == 1 or total < 2:
        for item in items:
            results.append(func(item))
            if progress:
                progress(len(results), total)
        return results

    workers = min(jobs, total)
    logging.info(f"Dispatching {total} tasks to {workers} worker processes")
    with Pool(processes=workers) as pool:
        for value in pool.imap(func, items):
            results.append(value)
            if progress:
                progress(len(results), total)
    return results
