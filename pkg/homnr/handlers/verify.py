"""
`verify` – decide whether an algebra file satisfies its declared kind.

Without a declared kind (file kind "plain" and no --kind) every kind the
algebra satisfies is reported and the job succeeds.
"""
from __future__ import annotations

import logging

from homnr.codec.io import parse_algebra, serialize_verification
from homnr.handlers.router import Data, JobSpec, Outcome, Router, arg
from homnr.services.structures import (
    PLAIN, STRUCTURE_KINDS, detect_kinds, verify_identity_direct, verify_structure,
)

logger = logging.getLogger(__name__)
router = Router(name="verify")


def load(job: JobSpec) -> Data:
    algebra = parse_algebra(job.inputs["algebra"], "algebra", job.option("kind"))
    return {"algebra": algebra, "labels": algebra.space.labels, "dims": {"algebra": algebra.dim}}


@router.command(
    "verify",
    help="check the structure axioms of an algebra",
    load=load,
    arguments=(
        arg("--algebra", "--file", dest="algebra", required=True, help="algebra JSON file"),
        arg("--kind", choices=STRUCTURE_KINDS, help="override the kind declared in the file"),
    ),
    inputs=("algebra",),
)
def handle_verify(job: JobSpec, data: Data) -> Outcome:
    a = data["algebra"]
    labels = a.space.labels
    payload = {
        "algebra": a.name,
        "dim": a.dim,
        "kind": a.kind,
        "detected_kinds": detect_kinds(a),
    }
    if a.kind == PLAIN:
        payload["holds"] = True
        return Outcome(payload)

    report = verify_structure(a)
    direct = verify_identity_direct(a)
    payload["holds"] = report.holds
    payload["checks_agree"] = report.holds == direct.holds
    payload["multiplicative"] = bool(report.multiplicative)
    payload["bracket"] = serialize_verification(report, labels)
    payload["identity"] = serialize_verification(direct, labels)
    logger.info("verify %s as %s: holds=%s", a.name or "algebra", a.kind, report.holds)
    return Outcome(payload, ok=report.holds)
