# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
from multiprocessing import get_context
from typing import Callable, Iterable, List, TypeVar

from anchorsim import logger

log = logger.get_logger(__name__)

P = TypeVar("P")
R = TypeVar("R")


def run_trials(task: Callable[[P], R], payloads: Iterable[P], workers: int = 1) -> List[R]:
    """
    Apply ``task`` to every payload and return the results in payload order.

    ``task`` must be a module-level function and the payloads picklable when
    ``workers > 1``. The result list does not depend on the worker count.
    """
    if workers < 1:
        raise ValueError("Worker count must be >= 1, got {}".format(workers))
    payloads = list(payloads)
    if workers == 1 or len(payloads) <= 1:
        return [task(payload) for payload in payloads]

    workers = min(workers, len(payloads))
    chunksize = max(1, len(payloads) // (4 * workers))
    log.debug(f"Running {len(payloads)} tasks on {workers} workers (chunksize {chunksize})")
    with get_context("spawn").Pool(processes=workers) as pool:
        return list(pool.imap(task, payloads, chunksize=chunksize))
