"""Relative cochains C^p(g, t; M) = Hom_t(Lambda_s^p(g/t), M) and their differential.

A cochain is stored by its values on canonical words of letters from the
complement of t: coordinate ``(w, m)`` is the m-th component of phi(x_w).
Invariance under t is Lie-algebra invariance.  Members of t that act
diagonally on both g/t and M only contribute a weight condition, so we
enumerate just the weight-zero coordinates; the remaining members are
thinned to a set that together with the diagonal ones generates t, and
their invariance conditions are solved as a kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .liesuper import (
    LieSuperalgebra,
    NotASubalgebra,
    Quotient,
    SubalgebraSpec,
    ValidationReport,
    _fast,
)
from .ratlin import Echelon, SparseMatrix, Span, Vector, add_into
from .smodule import AlgebraMismatch, SuperModule
from .superspace import EVEN, normalize_word, wedge_dim


class ComplexBroken(RuntimeError):
    """d o d != 0 or d leaves the invariant cochains: a sign bug, never a valid state."""


Word = Tuple[int, ...]
Coord = Tuple[Word, int]


@dataclass
class CochainSpace:
    p: int
    ambient_dim: int
    coords: List[Coord]
    basis: List[Vector]
    free: List[int]
    index: Dict[Coord, int] = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Mapping[int, object]) -> Vector:
        """Coefficients of an invariant cochain (over ``coords``) in ``basis``."""
        out = {a: Fraction(v[f]) for a, f in enumerate(self.free) if v.get(f)}
        back: Dict[int, object] = {}
        for a, c in out.items():
            add_into(back, c, self.basis[a])
        diff = dict(v)
        add_into(diff, -1, back)
        if any(diff.values()):
            raise ComplexBroken(f"degree {self.p}: vector is not an invariant cochain")
        return out


def _weight_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _weight_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _lie_generating_subset(g: LieSuperalgebra, fixed: List[Vector], cands: List[int],
                           members: List[Vector], target: int) -> List[int]:
    """Greedily pick candidates so that fixed + picked Lie-generate a space of dim ``target``."""
    chosen: List[int] = []

    def closure(gens: List[Vector]) -> Span:
        vecs = list(gens)
        span = Span(vecs)
        frontier = list(range(len(vecs)))
        while frontier:
            new = []
            for i in frontier:
                for x in gens:
                    w = g.bracket(x, vecs[i])
                    if w and w not in span:
                        vecs.append(w)
                        span = Span(vecs)
                        new.append(len(vecs) - 1)
            frontier = new
        return span

    span = closure(fixed)
    for c in cands:
        if span.dim >= target:
            break
        if members[c] in span and span.dim > 0:
            continue
        chosen.append(c)
        span = closure(fixed + [members[k] for k in chosen])
    if span.dim < target:
        raise NotASubalgebra("t is not closed under the bracket")
    return chosen


class RelativeComplex:
    """The complex C^*(g, t; M), computed degree by degree on demand."""

    def __init__(self, g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, fault: Optional[int] = None):
        if t.parent is not g:
            raise ValueError("subalgebra belongs to another algebra")
        if M.algebra is not g and M.algebra.dumps() != g.dumps():
            raise AlgebraMismatch(f"module over {M.algebra.name}, algebra {g.name}")
        if any(p != EVEN for p in t.parities()):
            raise ValueError("relative cochains need an even subalgebra t")
        if not t.is_closed():
            raise NotASubalgebra("[t, t] not inside t")
        self.g, self.t, self.M = g, t, M
        self.fault = fault
        q = self.q = Quotient(t)
        self.N = q.dim
        self.par = q.parities
        self.mpar = M.parities
        # projected brackets between letters
        self.br = [[{c: _fast(v) for c, v in comb.items()} for comb in row] for row in q.bracket_table()]
        # module action of each letter, row-wise: rows[a][m] = {m'': c} with (x_a . e_m'')_m = c
        self.mrows = []
        for k in q.comp:
            A = M.actions[k]
            self.mrows.append([{j: _fast(v) for j, v in A.row(i).items()} for i in range(M.dim)])
        # t action on letters and on M
        diag, other = [], []
        self.t_letter: List[SparseMatrix] = []
        self.t_module: List[SparseMatrix] = []
        for i, y in enumerate(t.members):
            A = q.action(y)
            Y = M.act(y)
            self.t_letter.append(A)
            self.t_module.append(Y)
            (diag if A.is_diagonal() and Y.is_diagonal() else other).append(i)
        self.diag = diag
        self.gens = _lie_generating_subset(g, [t.members[i] for i in diag], other, t.members, t.dim) \
            if other else []
        self.lw = [tuple(_fast(self.t_letter[i][a, a]) for i in diag) for a in range(self.N)]
        self.mw = [tuple(_fast(self.t_module[i][m, m]) for i in diag) for m in range(M.dim)]
        self.order = sorted(range(self.N), key=lambda a: (self.par[a], a))
        self._reach: List[List[set]] = []
        self._spaces: Dict[int, CochainSpace] = {}
        self._diffs: Dict[int, SparseMatrix] = {}
        self._norm: Dict[Word, Tuple[int, Word]] = {}

    # -- words -------------------------------------------------------------
    def normalize(self, w: Word) -> Tuple[int, Word]:
        r = self._norm.get(w)
        if r is None:
            r = normalize_word(w, self.par)
            self._norm[w] = r
        return r

    def _reachable(self, pmax: int) -> List[List[set]]:
        """R[k][r]: weight sums of r letters taken canonically from order[k:]."""
        have = len(self._reach[0]) - 1 if self._reach else -1
        if have >= pmax:
            return self._reach
        L = len(self.order)
        zero = tuple(0 for _ in self.diag)
        R = [[set() for _ in range(pmax + 1)] for _ in range(L + 1)]
        for k in range(L + 1):
            R[k][0].add(zero)
        for k in range(L - 1, -1, -1):
            a = self.order[k]
            w = self.lw[a]
            nxt = k + 1 if self.par[a] == EVEN else k
            for r in range(1, pmax + 1):
                s = set(R[k + 1][r])
                s.update(_weight_add(w, x) for x in R[nxt][r - 1])
                R[k][r] = s
        self._reach = R
        return R

    def words_with_weights(self, p: int, targets) -> List[Word]:
        R = self._reachable(p)
        order, par, lw = self.order, self.par, self.lw
        targets = set(targets)
        L = len(order)
        out: List[Word] = []

        def rec(k: int, r: int, s, prefix: Word):
            if r == 0:
                if s in targets:
                    out.append(prefix)
                return
            for j in range(k, L):
                a = order[j]
                s2 = _weight_add(s, lw[a])
                nxt = j + 1 if par[a] == EVEN else j
                reach = R[nxt][r - 1]
                if any(_weight_sub(t, s2) in reach for t in targets):
                    rec(nxt, r - 1, s2, prefix + (a,))

        rec(0, p, tuple(0 for _ in self.diag), ())
        return out

    # -- cochain spaces ------------------------------------------------------
    def ambient_dim(self, p: int) -> int:
        ne = sum(1 for x in self.par if x == EVEN)
        return wedge_dim(ne, self.N - ne, p) * self.M.dim

    def space(self, p: int) -> CochainSpace:
        if p in self._spaces:
            return self._spaces[p]
        if p < 0:
            sp = CochainSpace(p, 0, [], [], [])
            self._spaces[p] = sp
            return sp
        by_weight: Dict[tuple, List[int]] = {}
        for m, w in enumerate(self.mw):
            by_weight.setdefault(w, []).append(m)
        coords: List[Coord] = []
        for w in self.words_with_weights(p, by_weight):
            s = tuple(0 for _ in self.diag)
            for a in w:
                s = _weight_add(s, self.lw[a])
            for m in by_weight.get(s, []):
                coords.append((w, m))
        index = {c: i for i, c in enumerate(coords)}
        if not self.gens:
            basis = [{i: Fraction(1)} for i in range(len(coords))]
            free = list(range(len(coords)))
        else:
            ech = Echelon(len(coords))
            for y in self.gens:
                for row in self._invariance_rows(y, coords, index):
                    ech.insert(row)
            basis = ech.kernel()
            free = [f for f in range(len(coords)) if f not in ech._order]
        sp = CochainSpace(p, self.ambient_dim(p), coords, basis, free, index)
        self._spaces[p] = sp
        return sp

    def _invariance_rows(self, y: int, coords: List[Coord], index: Dict[Coord, int]):
        """Rows of phi -> y.phi restricted to the given coordinates.

        (y.phi)(w') = y.phi(w') - phi(y.w') with y.w' = sum_i (..., [y, x_i], ...).
        """
        A = self.t_letter[y]
        Y = self.t_module[y]
        acol = {a: {b: _fast(v) for b, v in A.columns()[a].items()} for a in range(self.N)} \
            if self.N else {}
        arow = [{b: _fast(v) for b, v in A.row(a).items()} for a in range(self.N)]
        ycols = [{i: _fast(v) for i, v in col.items()} for col in Y.columns()]
        mdim = self.M.dim
        words = {w for w, _ in coords}
        cand = set(words)
        for w in words:
            for i, a in enumerate(w):
                # letters b with y.x_b having an x_a component
                for b in arow[a]:
                    s, w2 = self.normalize(w[:i] + (b,) + w[i + 1:])
                    if s:
                        cand.add(w2)
        for w2 in sorted(cand):
            yw: Dict[Word, object] = {}
            for i, b in enumerate(w2):
                for a, c in acol[b].items():
                    s, w3 = self.normalize(w2[:i] + (a,) + w2[i + 1:])
                    if s:
                        yw[w3] = yw.get(w3, 0) + s * c
            for m2 in range(mdim):
                row: Dict[int, object] = {}
                for w3, c in yw.items():
                    if c:
                        k = index.get((w3, m2))
                        if k is not None:
                            row[k] = row.get(k, 0) - c
                for m, col in enumerate(ycols):
                    c = col.get(m2)
                    if c:
                        k = index.get((w2, m))
                        if k is not None:
                            row[k] = row.get(k, 0) + c
                row = {k: v for k, v in row.items() if v}
                if row:
                    yield row

    # -- differential --------------------------------------------------------
    def _d_row(self, w: Word, m: int, src: Dict[Coord, int]) -> Dict[int, object]:
        """(d phi)(x_w)_m as a linear form in the degree-p coordinates."""
        par, br, mpar = self.par, self.br, self.mpar
        n = len(w)
        row: Dict[int, object] = {}
        pre = [0] * (n + 1)
        for s in range(n):
            pre[s + 1] = pre[s] + par[w[s]]
        for i in range(n):
            xi = w[i]
            ki = pre[i]
            for j in range(i + 1, n):
                comb = br[xi][w[j]]
                if not comb:
                    continue
                xj = w[j]
                kij = pre[j] - pre[i + 1]
                e = (i + 1) + (j + 1) + (par[xi] + par[xj]) * ki + par[xj] * kij
                sign = -1 if e % 2 else 1
                if self.fault is not None and n - 1 == self.fault and i == 0 and j == 1:
                    sign = -sign
                rest = w[:i] + w[i + 1:j] + w[j + 1:]
                for c, gam in comb.items():
                    s, w2 = self.normalize((c,) + rest)
                    if s:
                        k = src.get((w2, m))
                        if k is not None:
                            row[k] = row.get(k, 0) + sign * s * gam
            rest = w[:i] + w[i + 1:]
            restpar = pre[n] - par[xi]
            for m2, c in self.mrows[xi][m].items():
                phibar = (mpar[m2] + restpar) % 2
                e = (i + 1) + 1 + par[xi] * (ki + phibar)
                k = src.get((rest, m2))
                if k is not None:
                    row[k] = row.get(k, 0) + (-c if e % 2 else c)
        return {k: v for k, v in row.items() if v}

    def differential(self, p: int) -> SparseMatrix:
        """Matrix of d^p: C^p -> C^(p+1) in the invariant bases."""
        if p in self._diffs:
            return self._diffs[p]
        A = self.space(p)
        B = self.space(p + 1)
        if A.dim == 0 or B.dim == 0:
            mat = SparseMatrix.zeros(B.dim, A.dim)
            self._diffs[p] = mat
            return mat
        # image of each basis cochain, evaluated on every degree p+1 coordinate
        images: List[Dict[int, object]] = [dict() for _ in range(A.dim)]
        # column-major kernel basis for fast dot products
        by_coord: Dict[int, List[Tuple[int, object]]] = {}
        for j, v in enumerate(A.basis):
            for k, c in v.items():
                by_coord.setdefault(k, []).append((j, _fast(c)))
        for r, (w, m) in enumerate(B.coords):
            row = self._d_row(w, m, A.index)
            if not row:
                continue
            acc: Dict[int, object] = {}
            for k, c in row.items():
                for j, x in by_coord.get(k, ()):
                    acc[j] = acc.get(j, 0) + c * x
            for j, v in acc.items():
                if v:
                    images[j][r] = v
        cols = [B.coordinates(img) for img in images]
        mat = SparseMatrix.from_columns(B.dim, cols)
        self._diffs[p] = mat
        return mat


_CACHE: Dict[Tuple[int, int, int], RelativeComplex] = {}


def complex_for(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule) -> RelativeComplex:
    key = (id(g), id(t), id(M))
    cx = _CACHE.get(key)
    if cx is None or cx.g is not g or cx.t is not t or cx.M is not M:
        if len(_CACHE) > 32:
            _CACHE.clear()
        cx = RelativeComplex(g, t, M)
        _CACHE[key] = cx
    return cx


def invariant_cochains(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, p: int) -> CochainSpace:
    return complex_for(g, t, M).space(p)


def differential(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, p: int) -> SparseMatrix:
    return complex_for(g, t, M).differential(p)


def verify_dd_zero(g: LieSuperalgebra, t: SubalgebraSpec, M: SuperModule, p_max: int,
                   fault: Optional[int] = None) -> ValidationReport:
    """Check d^(p+1) d^p = 0 for p + 1 <= p_max (``fault`` flips one sign in degree ``fault``)."""
    cx = complex_for(g, t, M) if fault is None else RelativeComplex(g, t, M, fault=fault)
    viol = []
    checked = 0
    for p in range(0, p_max):
        try:
            d0 = cx.differential(p)
            d1 = cx.differential(p + 1)
        except ComplexBroken as exc:
            viol.append(f"degree {p}: {exc}")
            continue
        checked += 1
        if not (d1 @ d0).is_zero():
            viol.append(f"degree {p}: d^{p + 1} d^{p} != 0")
    return ValidationReport(not viol, {"degrees": checked}, viol)
