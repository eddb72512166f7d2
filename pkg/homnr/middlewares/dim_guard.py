"""
Dimension guard.

Rejects a job once its inputs are loaded but before the handler builds any
cochain space: every recorded dimension must stay within HOMNR_MAX_DIM and
the requested degree within HOMNR_MAX_DEGREE.
"""
from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Optional

from config import HOMNR_MAX_DEGREE, HOMNR_MAX_DIM
from homnr.errors import InputError
from homnr.handlers.router import JobSpec, Outcome

logger = logging.getLogger(__name__)


class DimGuardMiddleware:
    def __init__(self, max_dim: Optional[int] = None, max_degree: Optional[int] = None) -> None:
        self.max_dim    = HOMNR_MAX_DIM if max_dim is None else max_dim
        self.max_degree = HOMNR_MAX_DEGREE if max_degree is None else max_degree

    def __call__(
        self,
        handler: Callable[[JobSpec, Dict[str, Any]], Outcome],
        job: JobSpec,
        data: Dict[str, Any],
    ) -> Outcome:
        for field, dim in data.get("dims", {}).items():
            if dim > self.max_dim:
                logger.warning("refusing %s: %s has dim %d > %d", job.command, field, dim, self.max_dim)
                raise InputError(f"dimension {dim} exceeds HOMNR_MAX_DIM={self.max_dim}", field=field)

        degree = job.options.get("max_degree")
        if degree is not None:
            if degree < 1:
                raise InputError("must be at least 1", field="max_degree")
            if degree > self.max_degree:
                logger.warning("refusing %s: degree %d > %d", job.command, degree, self.max_degree)
                raise InputError(f"degree {degree} exceeds HOMNR_MAX_DEGREE={self.max_degree}",
                                 field="max_degree")

        return handler(job, data)
