"""Relative cohomology dimensions, Poincare tables and Ext groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cochain import RelativeComplex, complex_for
from .liesuper import LieSuperalgebra, SubalgebraSpec, derived_subalgebra_in
from .ratlin import SparseMatrix, kernel_basis, rank, subquotient_dim, Span
from .smodule import SuperModule, dual, tensor, trivial


@dataclass
class PoincareTable:
    pair: str
    coeff: str
    p_max: int
    dims: List[int]
    cochain_dims: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": "1", "pair": self.pair, "coeff": self.coeff, "p_max": self.p_max, "dims": list(self.dims)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_csv(self) -> str:
        lines = ["p,dim"] + [f"{p},{d}" for p, d in enumerate(self.dims)]
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        head = "| p | " + " | ".join(str(p) for p in range(len(self.dims))) + " |"
        sep = "|---|" + "---|" * len(self.dims)
        row = "| dim H^p | " + " | ".join(str(d) for d in self.dims) + " |"
        return f"H^p({self.pair}; {self.coeff})\n\n{head}\n{sep}\n{row}\n"


def _name(g, t, M, pair, coeff):
    return pair or f"{g.name},{t.name or 't'}", coeff or (M.name or "M")


def cohomology_dims(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, p_max: int,
                    pair: str = "", coeff: str = "") -> PoincareTable:
    """dims[p] = dim ker d^p - rank d^(p-1) for p = 0..p_max."""
    if p_max < 0:
        raise ValueError("p_max must be >= 0")
    cx = complex_for(g, t, M)
    dims, cdims = [], []
    prev = SparseMatrix.zeros(cx.space(0).dim, 0)
    for p in range(p_max + 1):
        d = cx.differential(p)
        dims.append(subquotient_dim(prev, d))
        cdims.append(cx.space(p).dim)
        prev = d
    pair, coeff = _name(g, t, M, pair, coeff)
    return PoincareTable(pair, coeff, p_max, dims, cdims)


def ext_dims(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, N: SuperModule, p_max: int,
             pair: str = "") -> PoincareTable:
    """Ext^p_{(g,t)}(M, N) computed as H^p(g, t; M* (x) N)."""
    coeffs = tensor(dual(M), N)
    return cohomology_dims(g, t, coeffs, p_max, pair=pair, coeff=f"Hom({M.name},{N.name})")


def euler_defect(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, p_max: int) -> Tuple[int, int]:
    """(sum_p (-1)^p (dim C^p - dim H^p), (-1)^P rank d^P) over p <= P; the two agree for any complex."""
    tab = cohomology_dims(g, t, M, p_max)
    lhs = sum((-1) ** p * (c - h) for p, (c, h) in enumerate(zip(tab.cochain_dims, tab.dims)))
    rhs = (-1) ** p_max * rank(complex_for(g, t, M).differential(p_max))
    return lhs, rhs


@dataclass
class DerivedVanishingVerdict:
    derived_in_t: bool
    differentials_zero: bool
    p_max: int
    witness: Optional[dict] = None

    @property
    def agree(self) -> bool:
        return self.derived_in_t == self.differentials_zero

    def to_json(self) -> dict:
        return {"derived_in_t": self.derived_in_t, "differentials_zero": self.differentials_zero,
                "p_max": self.p_max, "agree": self.agree, "witness": self.witness}


def check_derived_vanishing(g: LieSuperalgebra, t: SubalgebraSpec, p_max: int = 4) -> DerivedVanishingVerdict:
    """Compare [g, g] in t against vanishing of all differentials of C(g, t; C) up to p_max."""
    derived = derived_subalgebra_in(g, t)
    cx = complex_for(g, t, trivial(g))
    witness = None
    for p in range(p_max + 1):
        d = cx.differential(p)
        if not d.is_zero():
            (r, c), v = min(d.entries.items())
            src = cx.space(p)
            dst = cx.space(p + 1)
            witness = {
                "degree": p,
                "entry": [r, c],
                "value": f"{v.numerator}/{v.denominator}",
                "source_support": [[cx.q.labels[a] for a in src.coords[k][0]] for k in sorted(src.basis[c])][:4],
                "target_support": [[cx.q.labels[a] for a in dst.coords[k][0]] for k in sorted(dst.basis[r])][:4],
            }
            break
    return DerivedVanishingVerdict(derived, witness is None, p_max, witness)


def representatives(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, p: int) -> List[Dict[str, Fraction]]:
    """Cocycles spanning a complement of the coboundaries in degree p.

    Each cocycle is returned as {"x_a^x_b...|m": value} on canonical words.
    """
    cx = complex_for(g, t, M)
    sp = cx.space(p)
    d = cx.differential(p)
    Z = kernel_basis(d)
    B = cx.differential(p - 1).columns() if p > 0 else []
    span = Span([v for v in B if v])
    base = span.dim
    out = []
    for z in Z:
        trial = Span(span.vectors + [z])
        if trial.dim > base:
            span = trial
            base = trial.dim
            vec: Dict[int, Fraction] = {}
            for a, c in z.items():
                for k, x in sp.basis[a].items():
                    vec[k] = vec.get(k, 0) + c * x
            named = {}
            for k, v in sorted(vec.items()):
                if v:
                    w, m = sp.coords[k]
                    named["^".join(cx.q.labels[a] for a in w) + f"|{m}"] = v
            out.append(named)
    return out
