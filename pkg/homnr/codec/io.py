"""Reading and writing the JSON documents described in ``homnr.codec.models``."""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from homnr.codec.models import (
    ALGEBRA_KEYS, DECOMPOSITION_KEYS, DEFORMATION_KEYS, MAPS_KEYS, REPRESENTATION_KEYS,
)
from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services.cochains import BasedSpace, Cochain, TwistMap
from homnr.services.deformations import FormalDeformation
from homnr.services.linear import Matrix
from homnr.services.representations import PATTERNS, L_BLOCK, RepresentationData, SplitLayout
from homnr.services.structures import PLAIN, HomAlgebra, VerificationReport, check_kind
from homnr.utils.helpers import format_rational, format_vector, parse_rational

logger = logging.getLogger(__name__)

Document = Dict[str, Any]
Ref = Union[str, Path, Document]


# ─── Files ───────────────────────────────────────────────────────────────────

def load_document(ref: Ref, field: str = "file", base: Optional[Path] = None) -> Document:
    """A dict is returned as is; a path is read and parsed as JSON."""
    if isinstance(ref, dict):
        return ref
    if not isinstance(ref, (str, Path)):
        raise InputError(f"expected an inline object or a file path, got {type(ref).__name__}", field=field)
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}", field=field) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}", field=field) from None
    if not isinstance(doc, dict):
        raise InputError(f"{path} must hold a JSON object", field=field)
    logger.debug("loaded %s", path)
    return doc


def _base_of(ref: Ref) -> Optional[Path]:
    return Path(ref).parent if isinstance(ref, (str, Path)) else None


def _require(doc: Document, key: str, field: str) -> Any:
    if key not in doc:
        raise InputError(f"missing key {key!r}", field=field)
    return doc[key]


def _note_unknown(doc: Document, known: Sequence[str], field: str) -> None:
    extra = sorted(set(doc) - set(known))
    if extra:
        logger.warning("%s: ignoring unknown keys %s", field, ", ".join(extra))


# ─── Matrices ────────────────────────────────────────────────────────────────

def parse_matrix(rows: Any, field: str, shape: Optional[Tuple[int, int]] = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputError("matrix must be a list of rows", field=field)
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise InputError("matrix rows have different lengths", field=field)
    grid = [[parse_rational(x, f"{field}[{i + 1}][{j + 1}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    m = Matrix.from_rows(grid, width)
    if shape is not None and (m.rows, m.cols) != shape:
        raise InputError(f"expected a {shape[0]}x{shape[1]} matrix, got {m.rows}x{m.cols}", field=field)
    return m


def serialize_matrix(m: Matrix) -> List[List[str]]:
    return [format_vector(r) for r in m.entries]


# ─── Cochains ────────────────────────────────────────────────────────────────

def _parse_out(out: Any, codomain: BasedSpace, field: str) -> List[Fraction]:
    if not isinstance(out, dict):
        raise InputError("\"out\" must map labels to rationals", field=field)
    value = [la.ZERO] * codomain.dim
    for label, c in out.items():
        try:
            o = codomain.index(label)
        except InputError:
            raise InputError(f"unknown output label {label!r}", field=field) from None
        value[o] += parse_rational(c, f"{field}.out.{label}")
    return value


def parse_entries(entries: Any, domains: Sequence[BasedSpace], codomain: BasedSpace,
                  field: str) -> Dict[Tuple[int, ...], List[Fraction]]:
    """{"in": [...], "out": {...}} rows against per-slot domains; indices 1-based."""
    if not isinstance(entries, list):
        raise InputError("entries must be a list", field=field)
    arity = len(domains)
    coeffs: Dict[Tuple[int, ...], List[Fraction]] = {}
    for n, entry in enumerate(entries):
        where = f"{field}[{n + 1}]"
        if not isinstance(entry, dict):
            raise InputError("entry must be an object", field=where)
        idx = _require(entry, "in", where)
        if not isinstance(idx, list) or len(idx) != arity or any(isinstance(i, bool) or not isinstance(i, int) for i in idx):
            raise InputError(f"\"in\" must list {arity} integer indices", field=where)
        key = []
        for slot, i in enumerate(idx):
            if not 1 <= i <= domains[slot].dim:
                raise InputError(f"index {i} out of range 1..{domains[slot].dim}", field=f"{where}.in")
            key.append(i - 1)
        value = _parse_out(_require(entry, "out", where), codomain, where)
        key_t = tuple(key)
        coeffs[key_t] = la.add_vectors(coeffs[key_t], value) if key_t in coeffs else value
    return coeffs


def parse_cochain(doc: Any, space: BasedSpace, field: str, arity: Optional[int] = None) -> Cochain:
    """A list of entries (arity given) or {"arity": k, "entries": [...]}."""
    if isinstance(doc, dict):
        k = _require(doc, "arity", field)
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise InputError("arity must be a positive integer", field=f"{field}.arity")
        if arity is not None and k != arity:
            raise InputError(f"expected arity {arity}, got {k}", field=f"{field}.arity")
        entries = doc.get("entries", [])
    else:
        if arity is None:
            raise InputError("a bare entry list needs a known arity; use {\"arity\", \"entries\"}", field=field)
        k, entries = arity, doc
    coeffs = parse_entries(entries, [space] * k, space, field)
    return Cochain(space, space, k, coeffs)


def serialize_entries(c: Cochain, key_map=None, out_space: Optional[BasedSpace] = None,
                      out_map=None) -> List[Dict]:
    out_space = out_space or c.codomain
    rows = []
    for key, value in c.coeffs.items():
        k = key_map(key) if key_map else key
        v = out_map(value) if out_map else value
        out = {out_space.labels[o]: format_rational(y) for o, y in enumerate(v) if y}
        if out:
            rows.append({"in": [i + 1 for i in k], "out": out})
    return rows


def serialize_cochain(c: Cochain) -> Dict:
    return {"arity": c.arity, "entries": serialize_entries(c)}


# ─── Algebras ────────────────────────────────────────────────────────────────

def parse_algebra(ref: Ref, field: str = "algebra", kind: Optional[str] = None) -> HomAlgebra:
    doc = load_document(ref, field)
    _note_unknown(doc, ALGEBRA_KEYS, field)
    dim = _require(doc, "dim", field)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InputError("dim must be a positive integer", field=f"{field}.dim")
    labels = doc.get("labels") or [f"e{i + 1}" for i in range(dim)]
    if not isinstance(labels, list) or any(not isinstance(x, str) for x in labels):
        raise InputError("labels must be a list of strings", field=f"{field}.labels")
    try:
        space = BasedSpace(dim, tuple(labels))
    except InputError as exc:
        raise InputError(exc.message, field=f"{field}.labels") from None
    chosen = kind or doc.get("kind", PLAIN)
    try:
        check_kind(chosen)
    except InputError as exc:
        raise InputError(exc.message, field=f"{field}.kind") from None
    beta = parse_matrix(doc["beta"], f"{field}.beta", (dim, dim)) if "beta" in doc else Matrix.identity(dim)
    coeffs = parse_entries(doc.get("product", []), [space, space], space, f"{field}.product")
    product = Cochain(space, space, 2, coeffs)
    return HomAlgebra(space, product, TwistMap(beta), chosen, name=str(doc.get("name", "")))


def serialize_algebra(a: HomAlgebra) -> Document:
    return {
        "name": a.name,
        "dim": a.dim,
        "labels": list(a.space.labels),
        "kind": a.kind,
        "beta": serialize_matrix(a.twist.matrix),
        "product": serialize_entries(a.product),
    }


# ─── Representations ─────────────────────────────────────────────────────────

def _mixed(layout: SplitLayout, pattern: str, entries: Any, field: str) -> Cochain:
    slots, out = PATTERNS[pattern]
    domains = [layout.L if b == L_BLOCK else layout.V for b in slots]
    coeffs = parse_entries(entries, domains, layout.V, field)
    ambient = layout.ambient
    lifted = {
        tuple(layout.to_ambient(b, i) for b, i in zip(slots, key)): layout.embed(out, value)
        for key, value in coeffs.items()
    }
    return Cochain(ambient, ambient, 2, lifted)


def serialize_mixed(layout: SplitLayout, pattern: str, c: Cochain) -> List[Dict]:
    slots, _ = PATTERNS[pattern]
    offsets = [0 if b == L_BLOCK else layout.n_l for b in slots]
    return serialize_entries(
        c,
        key_map=lambda key: tuple(i - off for i, off in zip(key, offsets)),
        out_space=layout.V,
        out_map=lambda value: tuple(value[i] for i in layout.v_indices),
    )


def parse_representation(ref: Ref, field: str = "rep",
                         kind: Optional[str] = None) -> Tuple[RepresentationData, Optional[Cochain], Optional[List[Matrix]]]:
    """Representation, optional θ and optional per-basis action matrices."""
    doc = load_document(ref, field)
    _note_unknown(doc, REPRESENTATION_KEYS, field)
    base = _base_of(ref)
    L = parse_algebra(load_document(_require(doc, "L", field), f"{field}.L", base), f"{field}.L", kind)
    V = parse_algebra(load_document(_require(doc, "V", field), f"{field}.V", base), f"{field}.V", kind or L.kind)
    layout = SplitLayout(L.space, V.space)
    actions = None
    if "action" in doc:
        raw = doc["action"]
        if not isinstance(raw, list) or len(raw) != L.dim:
            raise InputError(f"action must list {L.dim} matrices", field=f"{field}.action")
        actions = [parse_matrix(m, f"{field}.action[{i + 1}]", (V.dim, V.dim)) for i, m in enumerate(raw)]
    lam_l = _mixed(layout, "lambda_l", doc.get("lambda_l", []), f"{field}.lambda_l")
    lam_r = _mixed(layout, "lambda_r", doc.get("lambda_r", []), f"{field}.lambda_r")
    theta = _mixed(layout, "theta", doc["theta"], f"{field}.theta") if "theta" in doc else None
    return RepresentationData(L, V, lam_l, lam_r), theta, actions


def serialize_representation(rep: RepresentationData, theta: Optional[Cochain] = None) -> Document:
    layout = rep.layout
    doc = {
        "L": serialize_algebra(rep.L),
        "V": serialize_algebra(rep.V),
        "lambda_l": serialize_mixed(layout, "lambda_l", rep.lambda_l),
        "lambda_r": serialize_mixed(layout, "lambda_r", rep.lambda_r),
    }
    if theta is not None:
        doc["theta"] = serialize_mixed(layout, "theta", theta)
    return doc


def parse_theta(ref: Ref, rep: RepresentationData, field: str = "theta") -> Cochain:
    """θ from a document {"theta": entries} or a bare entry list."""
    doc = ref if isinstance(ref, list) else load_document(ref, field)
    entries = doc if isinstance(doc, list) else _require(doc, "theta", field)
    return _mixed(rep.layout, "theta", entries, field)


def serialize_v_map(rep: RepresentationData, h: Matrix) -> List[Dict]:
    """A linear map L → V as labelled columns."""
    rows = []
    for x in range(h.cols):
        out = {rep.V.space.labels[o]: format_rational(y) for o, y in enumerate(h.column(x)) if y}
        if out:
            rows.append({"in": [x + 1], "out": out})
    return rows


# ─── Deformations and decompositions ─────────────────────────────────────────

def parse_deformation(ref: Ref, field: str = "deformation") -> Tuple[FormalDeformation, Optional[Document]]:
    doc = load_document(ref, field)
    _note_unknown(doc, DEFORMATION_KEYS, field)
    base = parse_algebra(load_document(_require(doc, "base", field), f"{field}.base", _base_of(ref)), f"{field}.base")
    raw = doc.get("coeffs", [])
    if not isinstance(raw, list):
        raise InputError("coeffs must be a list", field=f"{field}.coeffs")
    coeffs = tuple(parse_cochain(c, base.space, f"{field}.coeffs[{i + 1}]", 2) for i, c in enumerate(raw))
    return FormalDeformation(base, coeffs), doc.get("compare")


def parse_compare(doc: Document, base: HomAlgebra, field: str = "compare") -> Tuple[FormalDeformation, Optional[Matrix]]:
    if not isinstance(doc, dict):
        raise InputError("compare must be an object", field=field)
    raw = doc.get("coeffs", [])
    coeffs = tuple(parse_cochain(c, base.space, f"{field}.coeffs[{i + 1}]", 2) for i, c in enumerate(raw))
    phi = parse_matrix(doc["phi"], f"{field}.phi", (base.dim, base.dim)) if "phi" in doc else None
    return FormalDeformation(base, coeffs), phi


def parse_decomposition(ref: Ref, field: str = "extension") -> Tuple[HomAlgebra, Matrix, Matrix, Optional[Matrix]]:
    doc = load_document(ref, field)
    _note_unknown(doc, DECOMPOSITION_KEYS, field)
    total = parse_algebra(load_document(_require(doc, "total", field), f"{field}.total", _base_of(ref)), f"{field}.total")
    inclusion = parse_matrix(_require(doc, "inclusion", field), f"{field}.inclusion")
    projection = parse_matrix(_require(doc, "projection", field), f"{field}.projection")
    section = parse_matrix(doc["section"], f"{field}.section") if "section" in doc else None
    return total, inclusion, projection, section


def parse_maps(ref: Ref, field: str = "maps") -> Tuple[Optional[Matrix], Optional[Matrix]]:
    """ψ on L and φ on V for `equiv`; a missing one means the identity."""
    doc = load_document(ref, field)
    _note_unknown(doc, MAPS_KEYS, field)
    psi = parse_matrix(doc["psi"], f"{field}.psi") if "psi" in doc else None
    phi = parse_matrix(doc["phi"], f"{field}.phi") if "phi" in doc else None
    return psi, phi


# ─── Reports ─────────────────────────────────────────────────────────────────

def _label_args(args: Any, labels: Sequence[str]) -> Any:
    if isinstance(args, tuple) and all(isinstance(i, int) for i in args):
        if all(0 <= i < len(labels) for i in args):
            return [labels[i] for i in args]
        return [i + 1 for i in args]
    return repr(args)


def serialize_verification(report: VerificationReport, labels: Sequence[str], limit: int = 20) -> Document:
    witnesses = [
        {"condition": w.condition, "args": _label_args(w.args, labels), "defect": format_vector(w.defect)}
        for w in report.failing_witnesses[:limit]
    ]
    doc: Document = {"holds": report.holds, "check": report.check,
                     "failing": len(report.failing_witnesses), "witnesses": witnesses}
    if report.multiplicative is not None:
        doc["multiplicative"] = report.multiplicative
    return doc
