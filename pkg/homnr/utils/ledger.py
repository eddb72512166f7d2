"""
Convention ledger.

Every place where the computed conventions differ from the formulas as
they are usually printed. ``location`` names the definition or statement
that carries the printed formula. The ledger is emitted verbatim in every
report.
"""
from __future__ import annotations

from typing import Dict, List

LEDGER: List[Dict[str, str]] = [
    {
        "id": "right-product-sign",
        "location": "cohomology of right Hom-Leibniz algebras: definition of the right circle product ∘_r",
        "printed": "sign (-1)^i for g inserted at slot i",
        "adopted": "sign (-1)^(i-1)·ε(σ), so that slot 1 carries no extra sign and ½[d,d]_r is the right identity",
    },
    {
        "id": "lie-product-leading-minus",
        "location": "cohomology of Hom-Lie algebras: definition of the Lie circle product ∘_L on alternating cochains",
        "printed": "leading minus in front of the shuffle sum, stated to agree with ∘_l on alternating cochains",
        "adopted": "∘_L is ∘_l restricted to alternating cochains with g in slot 1, no leading minus; [f,g]_L = [f,g]_l there",
    },
    {
        "id": "left-coboundary-signs",
        "location": "β-Nijenhuis-Richardson brackets: expanded left coboundary D_k = [d, ·]_l",
        "printed": "(-1)^s on d(β^(k-1)a_s, f(…â_s…)) and + on f(…d(a_s,a_t)…)",
        "adopted": "(-1)^(k-s) and (-1)^(k+s+1), i.e. D(f) = [d, f] with the left bracket",
    },
    {
        "id": "symmetric-coboundary-pattern",
        "location": "cohomology of symmetric Hom-Leibniz algebras: expanded operator D'_k",
        "printed": "sum over s ≤ k+1 of (-1)^(k-s) d(β^(k-1)a_s, f(…)) with unsigned insertions, last term oriented as d(a_s, ·)",
        "adopted": "the left coboundary restricted to Alt'; the last term reads d(f(a_1..a_k), β^(k-1)a_(k+1))",
    },
    {
        "id": "lie-coboundary-global-sign",
        "location": "cohomology of Hom-Lie algebras: expanded operator D^L_k",
        "printed": "(-1)^(s+1) d(β^(k-1)a_s, f(…)) + (-1)^(s+t) f(d(a_s,a_t), …)",
        "adopted": "the printed operator times (-1)^(k+1)",
    },
    {
        "id": "representation-twist-power",
        "location": "representation and cohomology of Hom-algebras: coboundary D^k with values in V",
        "printed": "α applied once to the acting argument",
        "adopted": "α^(k-1) on the acting argument, the power that makes D∘D = 0",
    },
    {
        "id": "degree-zero-operator",
        "location": "preliminaries: representations of right Hom-Leibniz algebras, the k = 0 operator δ⁰_r",
        "printed": "δ⁰(v)(x) = λ_l(α^(r-1)x, v) for the right kind",
        "adopted": "right and Lie kinds as printed; left and symmetric kinds use x ↦ -λ_r(v, α^(r-1)x); block kept only if D¹∘D⁰ = 0",
    },
    {
        "id": "deformation-equivalence-sign",
        "location": "deformations of Hom-algebras: equivalent deformations, first-order term",
        "printed": "d'₁ = d₁ + [d₀, φ₁]",
        "adopted": "d'₁ = d₁ - D₁(φ₁), from φ_t∘d_t = d'_t⋆φ_t",
    },
    {
        "id": "perturbation-sign",
        "location": "equivalence of extensions of Hom-algebras: perturbation d' = d + [d, h]",
        "printed": "θ' = θ + D¹(h) with h(e₁) = -1 trivialising θ(e₂,e₂) = 1",
        "adopted": "d' = d + [d, h]; the same θ is trivialised by h(e₁) = +1",
    },
]


def ledger_entries() -> List[Dict[str, str]]:
    return [dict(entry) for entry in LEDGER]
