"""`bracket` – evaluate [f, g] (or f∘g) for two cochain files and a twist."""
from __future__ import annotations

from homnr.codec.io import load_document, parse_cochain, parse_matrix, serialize_cochain
from homnr.errors import InputError
from homnr.handlers.router import Data, JobSpec, Outcome, Router, arg
from homnr.services import nr_bracket as nr
from homnr.services.cochains import BasedSpace, TwistMap

router = Router(name="bracket")


def load(job: JobSpec) -> Data:
    twist_doc = load_document(job.inputs["beta"], "beta")
    if "beta" not in twist_doc:
        raise InputError("missing key 'beta'", field="beta")
    beta = parse_matrix(twist_doc["beta"], "beta.beta")
    if not beta.is_square() or beta.rows == 0:
        raise InputError("twist must be a non-empty square matrix", field="beta.beta")
    n = beta.rows
    labels = twist_doc.get("labels") or [f"e{i + 1}" for i in range(n)]
    if not isinstance(labels, list) or len(labels) != n or any(not isinstance(x, str) for x in labels):
        raise InputError(f"expected {n} string labels", field="beta.labels")
    space = BasedSpace(n, tuple(labels))
    f = parse_cochain(load_document(job.inputs["f"], "f"), space, "f")
    g = parse_cochain(load_document(job.inputs["g"], "g"), space, "g")
    return {"space": space, "twist": TwistMap(beta), "f": f, "g": g,
            "labels": space.labels, "dims": {"beta": n}}


@router.command(
    "bracket",
    help="evaluate the bracket of two cochains",
    load=load,
    arguments=(
        arg("--kind", choices=nr.KINDS, default=nr.LEFT, help="bracket family"),
        arg("--f", dest="f", required=True, help="cochain JSON {\"arity\", \"entries\"}"),
        arg("--g", dest="g", required=True, help="cochain JSON {\"arity\", \"entries\"}"),
        arg("--beta", dest="beta", required=True, help="JSON with \"beta\" (an algebra file works)"),
        arg("--circle", action="store_true", help="emit the circle product f∘g instead"),
    ),
    inputs=("f", "g", "beta"),
)
def handle_bracket(job: JobSpec, data: Data) -> Outcome:
    f, g, beta = data["f"], data["g"], data["twist"]
    kind = job.option("kind", nr.LEFT)
    if job.option("circle", False):
        result = nr.circle(f, g, beta, kind)
        operation = "circle"
    else:
        result = nr.bracket(f, g, beta, kind)
        operation = "bracket"
    return Outcome({
        "kind": kind,
        "operation": operation,
        "arity": result.arity,
        "result": serialize_cochain(result),
        "zero": result.is_zero(),
    })
