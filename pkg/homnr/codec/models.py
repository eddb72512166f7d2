"""JSON document layouts and the built-in fixture algebras (no I/O here)."""
from __future__ import annotations

from typing import Dict, List

# Algebra document
#   {"name": str, "dim": int, "labels": [str], "kind": str,
#    "beta": [[rational]] (rows; default identity),
#    "product": [{"in": [i, j], "out": {label: rational}}]}   indices 1-based
ALGEBRA_KEYS = ("name", "dim", "labels", "kind", "beta", "product")

# Representation / extension document
#   {"L": algebra, "V": algebra, "lambda_l": entries, "lambda_r": entries,
#    "theta": entries (optional), "action": [matrix] (optional, Hom-Lie semidirect)}
#   lambda_l reads (L, V), lambda_r reads (V, L), theta reads (L, L); outputs are V labels
REPRESENTATION_KEYS = ("L", "V", "lambda_l", "lambda_r", "theta", "action")

# Deformation document
#   {"base": algebra, "coeffs": [entries], "compare": {"coeffs": [entries], "phi": matrix}}
DEFORMATION_KEYS = ("base", "coeffs", "compare")

# Decomposition document
#   {"total": algebra, "inclusion": matrix, "projection": matrix, "section": matrix (optional)}
DECOMPOSITION_KEYS = ("total", "inclusion", "projection", "section")

# Maps document for `equiv`
#   {"psi": matrix, "phi": matrix}
MAPS_KEYS = ("psi", "phi")


def _entry(i: int, j: int, out: Dict[str, str]) -> Dict:
    return {"in": [i, j], "out": out}


FIXTURES: Dict[str, Dict] = {
    "FIX-ABELIAN2": {
        "name": "FIX-ABELIAN2", "dim": 2, "labels": ["e1", "e2"], "kind": "left-leibniz",
        "beta": [["1", "0"], ["0", "1"]],
        "product": [],
    },
    "FIX-LZ2": {
        "name": "FIX-LZ2", "dim": 2, "labels": ["e1", "e2"], "kind": "left-leibniz",
        "beta": [["1", "0"], ["0", "1"]],
        "product": [_entry(2, 2, {"e1": "1"})],
    },
    "FIX-NONLEIB1": {
        "name": "FIX-NONLEIB1", "dim": 1, "labels": ["e1"], "kind": "left-leibniz",
        "beta": [["1"]],
        "product": [_entry(1, 1, {"e1": "1"})],
    },
    "FIX-HEIS": {
        "name": "FIX-HEIS", "dim": 3, "labels": ["e1", "e2", "e3"], "kind": "hom-lie",
        "beta": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        "product": [_entry(1, 2, {"e3": "1"}), _entry(2, 1, {"e3": "-1"})],
    },
    "FIX-HEIS-BETA": {
        "name": "FIX-HEIS-BETA", "dim": 3, "labels": ["e1", "e2", "e3"], "kind": "hom-lie",
        "beta": [["2", "0", "0"], ["0", "3", "0"], ["0", "0", "6"]],
        "product": [_entry(1, 2, {"e3": "1"}), _entry(2, 1, {"e3": "-1"})],
    },
    "FIX-DIAG-BETA": {
        "name": "FIX-DIAG-BETA", "dim": 2, "labels": ["e1", "e2"], "kind": "left-leibniz",
        "beta": [["1", "0"], ["0", "2"]],
        "product": [],
    },
    "FIX-SL2": {
        "name": "FIX-SL2", "dim": 3, "labels": ["e", "f", "h"], "kind": "hom-lie",
        "beta": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        "product": [
            _entry(1, 2, {"h": "1"}), _entry(2, 1, {"h": "-1"}),
            _entry(3, 1, {"e": "2"}), _entry(1, 3, {"e": "-2"}),
            _entry(3, 2, {"f": "-2"}), _entry(2, 3, {"f": "2"}),
        ],
    },
}


def fixture_names() -> List[str]:
    return sorted(FIXTURES)


def fixture_filename(name: str) -> str:
    return f"{name}.json"
