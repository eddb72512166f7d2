"""
`cohomology` – dimensions of Z^k, B^k and H^k for an adjoint or a
representation complex, optionally with the explicit-formula comparison.
"""
from __future__ import annotations

import logging

from homnr.codec.io import parse_algebra, parse_representation, serialize_cochain
from homnr.errors import InputError
from homnr.handlers.router import Data, JobSpec, Outcome, Router, arg
from homnr.services import cohomology as coh
from homnr.services.representations import RepresentationData
from homnr.services.structures import STRUCTURE_KINDS

logger = logging.getLogger(__name__)
router = Router(name="cohomology")

ADJOINT_FLAVORS = tuple(f for f in coh.FLAVORS if f != coh.REPRESENTATION)


def load(job: JobSpec) -> Data:
    algebra_ref, rep_ref = job.inputs.get("algebra"), job.inputs.get("rep")
    if (algebra_ref is None) == (rep_ref is None):
        raise InputError("give exactly one of --algebra and --rep", field="algebra")
    kind = job.option("kind")
    if algebra_ref is not None:
        a = parse_algebra(algebra_ref, "algebra", kind)
        return {"source": a, "labels": a.space.labels, "dims": {"algebra": a.dim}}
    rep, _, _ = parse_representation(rep_ref, "rep", kind)
    return {
        "source": rep,
        "labels": rep.space.labels,
        "dims": {"rep.L": rep.L.dim, "rep.V": rep.V.dim, "rep": rep.space.dim},
    }


@router.command(
    "cohomology",
    help="cohomology dimensions of an adjoint or representation complex",
    load=load,
    arguments=(
        arg("--algebra", dest="algebra", help="algebra JSON file (adjoint complex)"),
        arg("--rep", dest="rep", help="representation JSON file"),
        arg("--kind", choices=STRUCTURE_KINDS, help="override the declared kind"),
        arg("--flavor", choices=ADJOINT_FLAVORS, help="adjoint flavor (default: from the kind)"),
        arg("--max-degree", dest="max_degree", type=int, default=2, help="top degree K"),
        arg("--compare", action="store_true", help="compare D with the explicit formulas"),
        arg("--degree-zero", dest="degree_zero", action="store_true",
            help="include degree 0 for a representation complex"),
        arg("--r", dest="r", type=int, default=1, help="twist power of the degree-0 operator"),
        arg("--classes", action="store_true", help="emit cocycles representing a basis of each H^k"),
    ),
    inputs=("algebra", "rep"),
)
def handle_cohomology(job: JobSpec, data: Data) -> Outcome:
    source = data["source"]
    k_max = job.option("max_degree", 2)
    is_rep = isinstance(source, RepresentationData)
    flavor = None if is_rep else job.option("flavor")
    if job.option("r", 1) < 1:
        raise InputError("must be at least 1", field="r")

    c = coh.complex_build(source, k_max, flavor, with_degree_zero=job.option("degree_zero", False),
                          r=job.option("r", 1))
    report = coh.cohomology_dims(c)
    notes = list(report.notes)
    if job.option("degree_zero", False) and not is_rep:
        notes.append("degree 0 applies to representation complexes only")

    payload = {
        "source": getattr(source, "name", "") or ("representation" if is_rep else ""),
        "flavor": report.flavor,
        "max_degree": k_max,
        "dims": {
            str(k): {"C": d.cochains, "Z": d.cocycles, "B": d.coboundaries, "H": d.cohomology}
            for k, d in report.dims.items()
        },
        "notes": notes,
    }

    if job.option("compare", False):
        if is_rep:
            notes.append("explicit-formula comparison applies to adjoint complexes only")
        else:
            payload["oracle"] = [
                {"degree": o.degree, "mode": o.mode, "status": o.status, "checked": o.checked}
                for o in coh.compare_with_oracle(source, k_max, report.flavor)
            ]

    if job.option("classes", False):
        payload["classes"] = {
            str(k): [serialize_cochain(f) for f in coh.class_representatives(c, k)]
            for k in report.dims if k >= 1
        }

    logger.info("cohomology %s up to %d: %s", report.flavor, k_max,
                {k: d.cohomology for k, d in report.dims.items()})
    return Outcome(payload)
