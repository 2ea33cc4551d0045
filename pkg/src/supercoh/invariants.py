"""Invariant rings on the polynomial side.

``invariant_dim_bruteforce`` works directly with polynomials in the dual
of g_{-1} + g_1 and the derivation action of g_0, sharing no code with the
cochain complex.  The torus / symmetric group side handles the ring
C[Z_k d_1*]^{Sym} and its Hilbert series.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .liesuper import LieSuperalgebra, cartan_subalgebra, construct_Sbar, detecting_subalgebra_sbar
from .ratlin import Echelon


@dataclass
class HilbertSeries:
    coefficients: List[int]

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)

    def to_json(self) -> dict:
        return {"schema": "1", "coefficients": list(self.coefficients)}


@dataclass
class MultigradedRing:
    """Polynomial ring with graded, torus-weighted variables and a permutation group."""

    variables: List[str]
    degrees: List[int]
    weights: List[Tuple[Fraction, ...]]
    group: List[Tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self):
        for perm in self.group:
            for i, j in enumerate(perm):
                if self.degrees[i] != self.degrees[j] or self.weights[i] != self.weights[j]:
                    raise ValueError("group must permute variables of equal degree and weight")


# ---------------------------------------------------------------------------
# brute force S^p(g_{-1}* + g_1*)^{g_0}


def _g0_on_dual(g: LieSuperalgebra, degrees=(-1, 1)):
    """Variables = dual basis of the given graded pieces; g_0 acts by -transpose of ad."""
    var = [k for k, d in enumerate(g.degrees) if d in degrees]
    pos = {k: i for i, k in enumerate(var)}
    g0 = [k for k, d in enumerate(g.degrees) if d == 0]
    mats = []
    for y in g0:
        # (y.f)(v) = -f([y, v]) for the dual basis f = v_j*:  y.v_j* = -sum_i c_ij v_i*  where [y, v_i] = sum_j c_ij v_j
        act: Dict[int, Dict[int, Fraction]] = {}
        for i, k in enumerate(var):
            for k2, c in g.bracket_basis(y, k).items():
                j = pos[k2]
                act.setdefault(j, {})[i] = act.setdefault(j, {}).get(i, 0) - c
        mats.append(act)
    return var, g0, mats


def _monomial_weight(mono, wt):
    s = [0] * len(wt[0]) if wt else []
    for v in mono:
        s = [a + b for a, b in zip(s, wt[v])]
    return tuple(s)


def invariant_dim_bruteforce(g: LieSuperalgebra, p: int) -> int:
    """dim S^p(g_{-1}* + g_1*)^{g_0}, by kernel of the derivation action on monomials.

    Only monomials of torus weight zero can be invariant; the diagonal part
    of g_0 is read off its action, every other g_0 basis vector is imposed.
    """
    if p < 0:
        return 0
    var, g0, mats = _g0_on_dual(g)
    nv = len(var)
    diag = [i for i, m in enumerate(mats) if all(set(row) <= {j} for j, row in m.items())]
    wt = [tuple(mats[i].get(v, {}).get(v, 0) for i in diag) for v in range(nv)]
    monos = [m for m in combinations_with_replacement(range(nv), p)
             if all(x == 0 for x in _monomial_weight(m, wt))]
    col = {m: i for i, m in enumerate(monos)}
    ech = Echelon(len(monos))
    for i, act in enumerate(mats):
        if i in diag:
            continue
        rows: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
        for c, mono in enumerate(monos):
            for s, v in enumerate(mono):
                if s > 0 and mono[s - 1] == v:
                    # derivation on v^k: the k equal positions give k times one term
                    continue
                mult = mono.count(v)
                rest = mono[:s] + mono[s + mult:]
                for u, coef in act.get(v, {}).items():
                    new = tuple(sorted(rest + (u,) + (v,) * (mult - 1)))
                    r = rows.setdefault(new, {})
                    r[c] = r.get(c, 0) + mult * coef
        for r in rows.values():
            r = {k: x for k, x in r.items() if x}
            if r:
                ech.insert(r)
    return len(monos) - ech.rank


# ---------------------------------------------------------------------------
# torus invariants of S(a_1*)


def a1_torus_weights(n: int) -> Tuple[List[str], List[Tuple[Fraction, ...]]]:
    """Weights of the dual basis {d_1*, Z_3, ..., Z_n} of a_1 under the diagonal torus.

    Computed from the adjoint action on d_1 and xi_1 h_{2k}; dual weights are negated.
    """
    g = construct_Sbar(n)
    h = cartan_subalgebra(g)
    _, a = detecting_subalgebra_sbar(n)
    odd = a.odd_members()
    names = ["d1*"] + [f"Z{k}" for k in range(3, n + 1)]
    weights = []
    for v in odd:
        w = []
        for y in h.members:
            br = g.bracket(y, v)
            lam = Fraction(0)
            if br:
                k = next(iter(v))
                lam = br[k] / v[k]
                if {kk: lam * c for kk, c in v.items()} != br:
                    raise AssertionError("a_1 basis vector is not a torus weight vector")
            w.append(-lam)
        weights.append(tuple(w))
    return names, weights


def torus_invariants(weights: Sequence[Tuple[Fraction, ...]], cap: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of all weight-zero monomials of total degree <= cap."""
    nv = len(weights)
    out = []
    for d in range(cap + 1):
        for mono in combinations_with_replacement(range(nv), d):
            s = _monomial_weight(mono, list(weights)) if nv else ()
            if all(x == 0 for x in s):
                e = [0] * nv
                for v in mono:
                    e[v] += 1
                out.append(tuple(e))
    return out


def format_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, nm in zip(exps, names):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# symmetric group invariants


def _series_from_degrees(degs: Sequence[int], cap: int) -> List[int]:
    """Coefficients of prod 1/(1 - t^d) up to t^cap."""
    c = [1] + [0] * cap
    for d in degs:
        for k in range(d, cap + 1):
            c[k] += c[k - d]
    return c


@dataclass
class SymmetricInvariants:
    generator_degrees: List[int]
    series: HilbertSeries

    def to_json(self) -> dict:
        return {"schema": "1", "generator_degrees": list(self.generator_degrees),
                "series": list(self.series.coefficients)}


def generator_degrees_from_series(c: Sequence[int]) -> List[int]:
    """Degrees d_i with sum c_k t^k = prod 1/(1 - t^{d_i}) up to the length of ``c``."""
    if not c or c[0] != 1:
        raise ValueError("series must start with 1")
    cap = len(c) - 1
    degs: List[int] = []
    cur = _series_from_degrees(degs, cap)
    for d in range(1, cap + 1):
        extra = c[d] - cur[d]
        if extra < 0:
            raise ValueError(f"not the series of a polynomial ring (degree {d})")
        degs += [d] * extra
        cur = _series_from_degrees(degs, cap)
    return degs


def symmetric_invariants(n: int, cap: int = 6) -> SymmetricInvariants:
    """C[u_3, ..., u_n]^{Sym(n-2)} where the u_k = Z_k d_1* generate the torus invariants of S(a_1*).

    The u's are read off the weight-zero monomials of degree 2, the series
    counts Sym(n-2)-orbits of monomials, and the generator degrees are peeled
    off the series (the invariants form a polynomial ring).
    """
    if n < 3:
        raise ValueError("n >= 3")
    names, weights = a1_torus_weights(n)
    quad = [e for e in torus_invariants(weights, 2) if sum(e) == 2]
    if len(quad) != n - 2 or any(e[0] != 1 for e in quad):
        raise AssertionError("torus invariants are not generated by Z_k d_1*")
    m = len(quad)
    full = max(cap, 2 * m)
    series = orbit_count_series(m, 2, full)
    degs = generator_degrees_from_series(series)
    return SymmetricInvariants(degs, HilbertSeries(series[:cap + 1]))


def orbit_count_series(m: int, var_degree: int, cap: int) -> List[int]:
    """Monomial orbits of Sym(m) on C[u_1..u_m] per degree: partitions into at most m parts."""
    out = []
    for d in range(cap + 1):
        if d % var_degree:
            out.append(0)
            continue
        k = d // var_degree
        out.append(sum(1 for mono in combinations_with_replacement(range(m), k)
                       if _is_partition_rep(mono, m)) if m else int(k == 0))
    return out


def _is_partition_rep(mono, m) -> bool:
    exps = [mono.count(i) for i in range(m)]
    return all(exps[i] >= exps[i + 1] for i in range(m - 1))


# ---------------------------------------------------------------------------
# triple agreement


@dataclass
class CrosscheckReport:
    n: int
    p_max: int
    cohomology: List[int]
    bruteforce: List[int]
    hilbert: List[int]

    @property
    def agree(self) -> bool:
        return self.cohomology == self.bruteforce == self.hilbert

    def mismatches(self) -> List[Tuple[int, int, int, int]]:
        return [(p, a, b, c) for p, (a, b, c) in enumerate(zip(self.cohomology, self.bruteforce, self.hilbert))
                if not a == b == c]

    def to_json(self) -> dict:
        return {"schema": "1", "n": self.n, "p_max": self.p_max, "agree": self.agree,
                "cohomology": self.cohomology, "bruteforce": self.bruteforce, "hilbert": self.hilbert,
                "mismatches": [list(m) for m in self.mismatches()]}


def crosscheck_iso(n: int, p_max: int) -> CrosscheckReport:
    """H^p(Sbar(n), g_0; C) vs dim S^p(g_{-1}* + g_1*)^{g_0} vs the Hilbert series of C[Z_k d_1*]^{Sym}."""
    from .cohomology import cohomology_dims
    from .liesuper import degree_zero_subalgebra
    from .smodule import trivial

    g = construct_Sbar(n)
    coh = cohomology_dims(g, degree_zero_subalgebra(g), trivial(g), p_max).dims
    brute = [invariant_dim_bruteforce(g, p) for p in range(p_max + 1)]
    hil = symmetric_invariants(n, p_max).series.coefficients
    return CrosscheckReport(n, p_max, coh, brute, hil)
