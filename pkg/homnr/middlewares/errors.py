"""
Error boundary.

Outermost wrapper of every command: turns the outcome or the exception into
a ``Report`` and the process exit code (0 ok, 2 input error, 3 failed
mathematical check). A failing job still produces a report.
"""
from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Tuple

from homnr.codec.io import serialize_verification
from homnr.errors import InputError, VerificationFailure
from homnr.handlers.router import JobSpec, Outcome, Report
from homnr.services.structures import VerificationReport

logger = logging.getLogger(__name__)

EXIT_OK           = 0
EXIT_INPUT        = 2
EXIT_VERIFICATION = 3


class ErrorBoundaryMiddleware:
    def __call__(
        self,
        handler: Callable[[JobSpec, Dict[str, Any]], Outcome],
        job: JobSpec,
        data: Dict[str, Any],
    ) -> Tuple[Report, int]:
        try:
            outcome = handler(job, data)
        except InputError as exc:
            logger.warning("%s: input error: %s", job.command, exc)
            payload = {"error": exc.message, "field": exc.field}
            return Report(job.command, "fail", payload), EXIT_INPUT
        except VerificationFailure as exc:
            logger.warning("%s: verification failed: %s", job.command, exc)
            payload: Dict[str, Any] = {"error": str(exc)}
            if isinstance(exc.report, VerificationReport):
                payload["verification"] = serialize_verification(exc.report, data.get("labels", ()))
            return Report(job.command, "fail", payload), EXIT_VERIFICATION

        if not outcome.ok:
            logger.warning("%s: check did not hold", job.command)
            return Report(job.command, "fail", outcome.payload), EXIT_VERIFICATION
        return Report(job.command, "ok", outcome.payload), EXIT_OK
