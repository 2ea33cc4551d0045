"""Rank varieties of modules over a detecting subalgebra, and support descriptors.

For an odd x, U(<x>) is spanned by powers of x with x^2 = [x, x]/2 central.
On a module with X = rho(x) and C = X^2 the generalised 0-eigenspace V0 of C
is X-stable; off V0 the square of X is invertible and the module is free
there.  When [x, x] acts semisimply (true whenever e_0 does, which covers
every module built here) X^2 = 0 on V0, and M is projective over U(<x>) iff
X restricted to V0 has rank dim V0 / 2.  No eigenvalues are needed, only the
kernel of a power of C.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence

from .ratlin import SparseMatrix, kernel_basis, rank_of_vectors
from .smodule import SuperModule
from .superspace import ODD
from .weights import NotDominant, _q, is_atypical_Sbar, is_dominant


class RelationViolated(ValueError):
    pass


class Unsupported(ValueError):
    pass


ZERO_POINT = "ZeroPoint"
FULL_AFFINE = "FullAffine"
SAMPLED = "SampledSubset"


@dataclass
class RankPointVerdict:
    point: List[Fraction]
    projective: bool
    witness: Dict[str, int] = field(default_factory=dict)

    @property
    def in_variety(self) -> bool:
        return not self.projective or not any(self.point)

    def to_json(self) -> dict:
        return {"coords": [str(c) for c in self.point], "projective": self.projective}


@dataclass
class VarietyDescriptor:
    kind: str
    ambient_dim: int
    dim: Optional[int] = None
    points: List[RankPointVerdict] = field(default_factory=list)

    def __post_init__(self):
        if self.kind == FULL_AFFINE and (self.dim is None or self.dim > self.ambient_dim):
            raise ValueError("FullAffine needs dim <= ambient_dim")
        if self.kind == ZERO_POINT:
            self.dim = 0

    def to_json(self) -> dict:
        out = {"schema": "1", "kind": self.kind, "ambient_dim": self.ambient_dim}
        if self.kind == FULL_AFFINE:
            out["dim"] = self.dim
        if self.kind == SAMPLED:
            out["points"] = [p.to_json() for p in self.points]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def consistent_with(self, kind: str) -> bool:
        """Do the sampled verdicts fit a {0} or a full-space variety?"""
        nonzero = [p for p in self.points if any(p.point)]
        if kind == ZERO_POINT:
            return all(p.projective for p in nonzero)
        if kind == FULL_AFFINE:
            return not any(p.projective for p in nonzero)
        raise ValueError(kind)


def odd_basis(M: SuperModule) -> List[int]:
    return [k for k, p in enumerate(M.algebra.parities) if p == ODD]


def _element(M: SuperModule, x: Sequence) -> Dict[int, Fraction]:
    odd = odd_basis(M)
    if len(x) != len(odd):
        raise ValueError(f"point needs {len(odd)} coordinates")
    return {k: Fraction(c) for k, c in zip(odd, x) if c}


def rank_point_test(M: SuperModule, x: Sequence) -> RankPointVerdict:
    """Is M projective as a U(<x>)-module?  ``x`` holds coordinates over the odd basis."""
    point = [Fraction(c) for c in x]
    xe = _element(M, point)
    X = M.act(xe)
    C = M.act(M.algebra.bracket(xe, xe)).scale(Fraction(1, 2))
    if X @ X != C:
        raise RelationViolated("X^2 != [x, x]/2 on M")
    n = M.dim
    P = C
    k = 1
    while k < n:
        P = P @ P
        k *= 2
    V0 = kernel_basis(P) if n else []
    if any(C.apply(v) for v in V0):
        # [x, x] not semisimple: the half-rank criterion does not apply
        raise Unsupported("[x, x] acts non-semisimply on the generalised 0-eigenspace")
    images = [X.apply(v) for v in V0]
    r = rank_of_vectors(images, n)
    d0 = len(V0)
    return RankPointVerdict(point, 2 * r == d0, {"dim_V0": d0, "rank_X_on_V0": r, "dim": n})


def random_points(count: int, dim: int, seed: int, bound: int = 3) -> List[List[Fraction]]:
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        v = [Fraction(rng.randint(-bound, bound)) for _ in range(dim)]
        if any(v):
            pts.append(v)
    return pts


def rank_variety_sample(M: SuperModule, points: Optional[Sequence[Sequence]] = None,
                        count: int = 50, seed: int = 0) -> VarietyDescriptor:
    dim = len(odd_basis(M))
    if points is None:
        points = random_points(count, dim, seed)
    verdicts = [RankPointVerdict([Fraction(0)] * dim, False, {"origin": 1})]
    verdicts += [rank_point_test(M, x) for x in points if any(x)]
    return VarietyDescriptor(SAMPLED, dim, points=verdicts)


def support_simple(family: str, n: int, lam: Sequence) -> VarietyDescriptor:
    """{0} for typical lam, otherwise the support of the trivial module (dimension n - 2)."""
    _check(family, n, lam)
    if is_atypical_Sbar(lam):
        return VarietyDescriptor(FULL_AFFINE, n - 2, n - 2)
    return VarietyDescriptor(ZERO_POINT, n - 2)


def support_kac(family: str, n: int, lam: Sequence) -> VarietyDescriptor:
    _check(family, n, lam)
    return VarietyDescriptor(ZERO_POINT, n - 2)


def _check(family: str, n: int, lam: Sequence) -> None:
    if family.lower() != "sbar":
        raise Unsupported(f"support theorems are for Sbar(n), got {family}")
    if len(lam) != n:
        raise ValueError(f"weight needs {n} entries")
    if not is_dominant(lam):
        raise NotDominant(f"{[str(x) for x in _q(lam)]} is not dominant integral")


def quotient_descriptor(v: VarietyDescriptor, group: str) -> VarietyDescriptor:
    """Image under the quotient by T (drops the scaling direction) or Sym(n-2) (finite)."""
    if v.kind == SAMPLED:
        raise Unsupported("quotients of sampled subsets are not computed")
    if v.kind == ZERO_POINT:
        return VarietyDescriptor(ZERO_POINT, max(v.ambient_dim - (group == "T"), 0))
    if group == "T":
        return VarietyDescriptor(FULL_AFFINE, v.ambient_dim - 1, max(v.dim - 1, 0))
    if group in ("Sym", "TSym"):
        drop = 1 if group == "TSym" else 0
        return VarietyDescriptor(FULL_AFFINE, v.ambient_dim - drop, v.dim - drop)
    raise ValueError(f"unknown group {group!r}")
