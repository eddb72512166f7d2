"""
Extension commands.

  extend     build M = L ⊕ V from a representation and a 2-cocycle θ
             (or a Hom-Lie semidirect sum from action matrices)
  classify   trivial / central / abelian / semidirect flags and H² data
  decompose  read δ, λ_l, λ_r, μ, θ off an extension through a section
  equiv      search an equivalence of two abelian extensions
"""
from __future__ import annotations

import logging
from typing import Any, Dict, Optional

from homnr.codec.io import (
    load_document, parse_decomposition, parse_maps, parse_matrix, parse_representation, parse_theta,
    serialize_algebra, serialize_matrix, serialize_representation, serialize_v_map,
    serialize_verification,
)
from homnr.errors import InputError, VerificationFailure
from homnr.handlers.router import Data, JobSpec, Outcome, Router, arg
from homnr.services import cohomology as coh
from homnr.services import extensions as ext_
from homnr.services.representations import (
    RepresentationData, printed_axioms, six_conditions, symmetric_conditions, verify_representation,
)
from homnr.services.structures import STRUCTURE_KINDS, SYMMETRIC_LEIBNIZ

logger = logging.getLogger(__name__)
router = Router(name="extension")


def _rep_dims(prefix: str, rep: RepresentationData) -> Dict[str, int]:
    return {f"{prefix}.L": rep.L.dim, f"{prefix}.V": rep.V.dim, prefix: rep.space.dim}


def _matrix_file(ref: Any, key: str, field: str):
    doc = load_document(ref, field)
    if key not in doc:
        raise InputError(f"missing key {key!r}", field=field)
    return parse_matrix(doc[key], f"{field}.{key}")


def _build(rep: RepresentationData, theta, actions, k: int) -> ext_.ExtensionAlgebra:
    if actions is not None:
        if theta is not None and not theta.is_zero():
            raise InputError("a semidirect sum carries no cocycle", field="theta")
        return ext_.semidirect_lie(rep.L, rep.V, actions, k)
    return ext_.build_extension(rep, theta)


def _extension_payload(e: ext_.ExtensionAlgebra) -> Dict[str, Any]:
    return {
        "extension": serialize_representation(e.rep, e.theta),
        "total": serialize_algebra(e.total),
        "inclusion": serialize_matrix(e.inclusion),
        "projection": serialize_matrix(e.projection),
    }


def _conditions(rep: RepresentationData, theta) -> Dict[str, Any]:
    labels = rep.space.labels
    out = {name: serialize_verification(r, labels) for name, r in six_conditions(rep, theta).items()}
    if rep.kind == SYMMETRIC_LEIBNIZ:
        out.update({name: serialize_verification(r, labels) for name, r in symmetric_conditions(rep).items()})
    out["printed"] = serialize_verification(printed_axioms(rep, theta), labels)
    return out


# ─── extend ──────────────────────────────────────────────────────────────────

def load_extend(job: JobSpec) -> Data:
    rep, theta, actions = parse_representation(job.inputs["rep"], "rep", job.option("kind"))
    if job.inputs.get("theta") is not None:
        theta = parse_theta(job.inputs["theta"], rep, "theta")
    data: Data = {"rep": rep, "theta": theta, "actions": actions,
                  "labels": rep.space.labels, "dims": _rep_dims("rep", rep)}
    if job.inputs.get("perturb") is not None:
        data["h"] = _matrix_file(job.inputs["perturb"], "h", "perturb")
    return data


@router.command(
    "extend",
    help="build an extension from a representation and a 2-cocycle",
    load=load_extend,
    arguments=(
        arg("--rep", dest="rep", required=True, help="representation JSON file"),
        arg("--theta", dest="theta", help="2-cocycle JSON file (overrides the one in --rep)"),
        arg("--kind", choices=STRUCTURE_KINDS, help="override the declared kind"),
        arg("--check-only", dest="check_only", action="store_true",
            help="report the representation and cocycle conditions without building"),
        arg("--perturb", dest="perturb", help="JSON with \"h\": a V×L matrix; perturb θ by D(h)"),
        arg("--k", dest="k", type=int, default=1, help="twist power of the quasiderivation test"),
    ),
    inputs=("rep", "theta", "perturb"),
)
def handle_extend(job: JobSpec, data: Data) -> Outcome:
    rep, theta, actions = data["rep"], data["theta"], data["actions"]
    k = job.option("k", 1)
    if k < 0:
        raise InputError("must be non-negative", field="k")

    if job.option("check_only", False):
        th = rep.lift_theta(theta) if theta is not None else rep.zero_cochain()
        conditions = _conditions(rep, th)
        cocycle = ext_.verify_cocycle(rep, th)
        representation = verify_representation(rep)
        payload = {
            "conditions": conditions,
            "representation": serialize_verification(representation, rep.space.labels),
            "cocycle": serialize_verification(cocycle, rep.space.labels),
        }
        return Outcome(payload, ok=representation.holds and cocycle.holds)

    e = _build(rep, theta, actions, k)
    payload = _extension_payload(e)
    payload["kind"] = e.kind
    if "h" in data:
        p = ext_.coboundary_perturb(e, data["h"])
        payload["perturbation"] = {
            "h": serialize_v_map(rep, data["h"]),
            "isomorphism": serialize_matrix(p.isomorphism),
            "holds": p.holds,
            "extension": serialize_representation(p.extension.rep, p.extension.theta),
            "failing_pairs": [[i + 1, j + 1] for i, j in p.witnesses],
        }
        logger.info("perturbation by h: isomorphism holds=%s", p.holds)
        return Outcome(payload, ok=p.holds)
    return Outcome(payload)


# ─── classify ────────────────────────────────────────────────────────────────

def load_extension(job: JobSpec, key: str = "extension") -> Data:
    rep, theta, actions = parse_representation(job.inputs[key], key, job.option("kind"))
    return {"rep": rep, "theta": theta, "actions": actions,
            "labels": rep.space.labels, "dims": _rep_dims(key, rep)}


def _h2(e: ext_.ExtensionAlgebra) -> Optional[Dict[str, Any]]:
    """Z², B², H² of the representation complex and whether θ's class vanishes."""
    try:
        c = coh.complex_build(e.rep, 2)
    except (InputError, VerificationFailure) as exc:
        logger.info("no H² data: %s", exc)
        return None
    z, b, h = coh.cohomology_dims(c).triple(2)
    # None when θ lies outside the cochain subspace of this flavor
    trivial_class = None if c.setting.violation(e.theta) else coh.is_coboundary(c, e.theta)
    return {"Z": z, "B": b, "H": h, "theta_is_coboundary": trivial_class}


@router.command(
    "classify",
    help="classify an extension",
    load=load_extension,
    arguments=(
        arg("--extension", dest="extension", required=True, help="extension JSON file"),
        arg("--kind", choices=STRUCTURE_KINDS, help="override the declared kind"),
        arg("--k", dest="k", type=int, default=1, help="twist power for a semidirect sum"),
    ),
    inputs=("extension",),
)
def handle_classify(job: JobSpec, data: Data) -> Outcome:
    e = _build(data["rep"], data["theta"], data["actions"], job.option("k", 1))
    c = ext_.classify(e)
    payload: Dict[str, Any] = {
        "flags": c.flags(),
        "trivial_by_ideal": c.trivial_ideal,
        "trivial_forms_agree": c.trivial_agree,
        "central_by_annihilator": c.central_direct,
    }
    h2 = _h2(e)
    if h2 is not None:
        payload["h2"] = h2
    return Outcome(payload)


# ─── decompose ───────────────────────────────────────────────────────────────

def load_decompose(job: JobSpec) -> Data:
    total, inclusion, projection, section = parse_decomposition(job.inputs["extension"], "extension")
    if job.inputs.get("section") is not None:
        section = _matrix_file(job.inputs["section"], "section", "section")
    return {"total": total, "inclusion": inclusion, "projection": projection, "section": section,
            "labels": total.space.labels, "dims": {"extension.total": total.dim}}


@router.command(
    "decompose",
    help="split an extension into its components",
    load=load_decompose,
    arguments=(
        arg("--extension", dest="extension", required=True,
            help="JSON with \"total\", \"inclusion\", \"projection\""),
        arg("--section", dest="section", help="JSON with \"section\" (searched for when absent)"),
    ),
    inputs=("extension", "section"),
)
def handle_decompose(job: JobSpec, data: Data) -> Outcome:
    parts = ext_.decompose(data["total"], data["inclusion"], data["projection"], data["section"])
    return Outcome({
        "extension": serialize_representation(parts.rep, parts.theta),
        "section": serialize_matrix(parts.section),
        "retraction": serialize_matrix(parts.retraction),
        "isomorphism": serialize_matrix(parts.isomorphism),
    })


# ─── equiv ───────────────────────────────────────────────────────────────────

def load_equiv(job: JobSpec) -> Data:
    first, second = load_extension(job, "e1"), load_extension(job, "e2")
    data: Data = {"e1": first, "e2": second, "labels": first["labels"],
                  "dims": {**first["dims"], **second["dims"]}}
    if job.inputs.get("maps") is not None:
        data["psi"], data["phi"] = parse_maps(job.inputs["maps"])
    return data


@router.command(
    "equiv",
    help="decide whether two abelian extensions are equivalent",
    load=load_equiv,
    arguments=(
        arg("--e1", dest="e1", required=True, help="first extension JSON file"),
        arg("--e2", dest="e2", required=True, help="second extension JSON file"),
        arg("--maps", dest="maps", help="JSON with \"psi\" (on L) and \"phi\" (on V); identity by default"),
        arg("--kind", choices=STRUCTURE_KINDS, help="override the declared kind"),
    ),
    inputs=("e1", "e2", "maps"),
)
def handle_equiv(job: JobSpec, data: Data) -> Outcome:
    first, second = data["e1"], data["e2"]
    e1 = _build(first["rep"], first["theta"], first["actions"], 1)
    e2 = _build(second["rep"], second["theta"], second["actions"], 1)
    h = ext_.equivalent_abelian(e1, e2, data.get("psi"), data.get("phi"))
    payload: Dict[str, Any] = {"equivalent": h is not None}
    if h is not None:
        payload["h"] = serialize_v_map(e2.rep, h)
    return Outcome(payload)
