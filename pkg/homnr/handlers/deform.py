"""
`deform` – obstruction report for a truncated formal deformation, its
order-by-order extension and, when the file carries a "compare" block,
equivalence with a second deformation.
"""
from __future__ import annotations

import logging
from typing import Any, Dict

from homnr.codec.io import parse_compare, parse_deformation, serialize_cochain, serialize_matrix
from homnr.handlers.router import Data, JobSpec, Outcome, Router, arg
from homnr.services import deformations as dfm

logger = logging.getLogger(__name__)
router = Router(name="deform")


def load(job: JobSpec) -> Data:
    d, compare_doc = parse_deformation(job.inputs["file"], "deformation")
    data: Data = {"deformation": d, "labels": d.base.space.labels, "dims": {"deformation.base": d.base.dim}}
    if compare_doc is not None:
        data["compare"] = parse_compare(compare_doc, d.base, "deformation.compare")
    return data


def _equivalence(d: dfm.FormalDeformation, other: dfm.FormalDeformation, phi) -> Dict[str, Any]:
    if phi is None:
        generator = dfm.order_one_equivalence(d, other)
        out: Dict[str, Any] = {"method": "order-one", "equivalent": generator is not None}
        if generator is not None:
            out["phi"] = serialize_matrix(generator)
        return out
    report = dfm.check_equivalence(d, other, dfm.FormalAutomorphism(phi, d.order))
    return {
        "method": "given-phi",
        "equivalent": report.holds,
        "beta_commutes": report.beta_commutes,
        "failing_orders": list(report.failing_orders),
    }


@router.command(
    "deform",
    help="obstructions and extension of a formal deformation",
    load=load,
    arguments=(
        arg("--file", dest="file", required=True, help="deformation JSON file"),
        arg("--mode", choices=dfm.MODES, default=dfm.TRUNCATED, help="which defects must vanish"),
        arg("--extend", action="store_true", help="try to solve for the next coefficient"),
    ),
    inputs=("file",),
)
def handle_deform(job: JobSpec, data: Data) -> Outcome:
    d = data["deformation"]
    mode = job.option("mode", dfm.TRUNCATED)
    report = dfm.obstruction_report(d, mode)

    payload: Dict[str, Any] = {
        "base": d.base.name,
        "order": d.order,
        "mode": mode,
        "is_deformation": report.is_deformation,
        "defects": [
            {"order": s, "zero": a.is_zero(), **({} if a.is_zero() else {"cochain": serialize_cochain(a)})}
            for s, a in enumerate(report.defects)
        ],
        "obstructions": [
            {
                "order": ob.order,
                "cocycle": ob.is_cocycle,
                "coboundary": ob.is_coboundary,
                "cochain": serialize_cochain(ob.cochain),
            }
            for ob in report.obstructions
        ],
        "notes": [],
    }

    if d.order >= 1:
        cls = dfm.infinitesimal_class(d)
        payload["infinitesimal"] = {"cocycle": cls.is_cocycle, "trivial": cls.is_trivial}
        if cls.potential is not None:
            payload["infinitesimal"]["potential"] = serialize_matrix(cls.potential)

    if job.option("extend", False):
        if dfm.is_deformation(d, dfm.TRUNCATED):
            d_next, (r, r_aug) = dfm.extend_order(d)
            payload["extension"] = {"extends": d_next is not None, "rank": r, "augmented_rank": r_aug}
            if d_next is not None:
                payload["extension"]["next"] = serialize_cochain(d_next)
        else:
            payload["notes"].append("not a truncated deformation; extension skipped")

    if "compare" in data:
        other, phi = data["compare"]
        payload["equivalence"] = _equivalence(d, other, phi)

    logger.info("deform %s order %d (%s): deformation=%s", d.base.name or "base", d.order, mode,
                report.is_deformation)
    return Outcome(payload, ok=report.is_deformation)
