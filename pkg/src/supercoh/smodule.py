"""Finite-dimensional supermodules given by action matrices.

A module stores one matrix per basis vector of its algebra.  Module bases
are kept even-first, so a module is pinned down by its (even|odd) dims and
the matrices.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .liesuper import (
    LieSuperalgebra,
    SubalgebraSpec,
    ValidationReport,
    construct_Sbar,
    restrict,
)
from .ratlin import SparseMatrix, Span, Vector, add_into, kernel_basis
from .superspace import EVEN, ODD, BasisLabel, SuperSpace


class AlgebraMismatch(ValueError):
    pass


class RelationUnsatisfiable(RuntimeError):
    pass


class SuperModule:
    def __init__(self, algebra: LieSuperalgebra, space: SuperSpace, actions: Sequence[SparseMatrix],
                 name: str = ""):
        if len(actions) != algebra.dim:
            raise ValueError(f"need {algebra.dim} action matrices, got {len(actions)}")
        d = space.dim
        for a in actions:
            if a.shape != (d, d):
                raise ValueError(f"action matrix of shape {a.shape}, expected {(d, d)}")
        self.algebra = algebra
        self.space = space
        self.actions = list(actions)
        self.name = name

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def parities(self) -> Tuple[int, ...]:
        return self.space.parities

    @property
    def dims(self) -> Tuple[int, int]:
        return self.space.dims

    def act(self, x: Mapping[int, object]) -> SparseMatrix:
        """Action matrix of an arbitrary algebra element."""
        out = SparseMatrix.zeros(self.dim, self.dim)
        for k, c in x.items():
            if c:
                out = out + self.actions[k].scale(c)
        return out

    def __repr__(self):
        e, o = self.dims
        return f"SuperModule({self.name or '?'} over {self.algebra.name}, ({e}|{o}))"

    def to_json(self, algebra_ref: str = "") -> dict:
        e, o = self.dims
        if self.parities != tuple([EVEN] * e + [ODD] * o):
            raise ValueError("module basis must be even-first for interchange")
        return {
            "algebra_ref": algebra_ref or self.algebra.name,
            "dims": {"even": e, "odd": o},
            "actions": [[k, a.to_json()] for k, a in enumerate(self.actions) if not a.is_zero()],
        }

    def dumps(self, algebra_ref: str = "") -> str:
        return json.dumps(self.to_json(algebra_ref), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Mapping, algebra: LieSuperalgebra, name: str = "") -> "SuperModule":
        e, o = data["dims"]["even"], data["dims"]["odd"]
        space = even_first_space(e, o)
        acts = [SparseMatrix.zeros(e + o, e + o) for _ in range(algebra.dim)]
        for k, m in data["actions"]:
            acts[k] = SparseMatrix.from_json(m)
        return cls(algebra, space, acts, name=name)


def even_first_space(e: int, o: int, prefix: str = "m") -> SuperSpace:
    return SuperSpace(tuple(BasisLabel(f"{prefix}{i}", None, EVEN if i < e else ODD) for i in range(e + o)))


def _reorder_even_first(space: SuperSpace, actions: Sequence[SparseMatrix]) -> Tuple[SuperSpace, List[SparseMatrix]]:
    par = space.parities
    order = sorted(range(space.dim), key=lambda i: (par[i], i))
    if order == list(range(space.dim)):
        return space, list(actions)
    pos = {old: new for new, old in enumerate(order)}
    new_space = SuperSpace(tuple(space.basis[i] for i in order))
    new_actions = [SparseMatrix(a.nrows, a.ncols, {(pos[i], pos[j]): v for (i, j), v in a.entries.items()})
                   for a in actions]
    return new_space, new_actions


def validate_module(m: SuperModule, max_violations: int = 10) -> ValidationReport:
    """Parity compatibility of every action matrix and
    rho([x, y]) = rho(x) rho(y) - (-1)^(|x||y|) rho(y) rho(x) on all basis pairs."""
    g = m.algebra
    par = m.parities
    gp = g.parities
    viol: List[str] = []
    for k, a in enumerate(m.actions):
        for (i, j), v in a.entries.items():
            if par[i] != (par[j] + gp[k]) % 2:
                viol.append(f"parity: {g.labels[k]} sends basis {j} to basis {i}")
                break
    pairs = 0
    for i in range(g.dim):
        ai = m.actions[i]
        for j in range(i, g.dim):
            pairs += 1
            aj = m.actions[j]
            s = -1 if gp[i] and gp[j] else 1
            lhs = m.act(g.bracket_basis(i, j))
            rhs = ai @ aj - (aj @ ai).scale(s)
            if lhs != rhs:
                viol.append(f"bracket: ({g.labels[i]}, {g.labels[j]})")
                if len(viol) >= max_violations:
                    return ValidationReport(False, {"pairs": pairs}, viol)
    return ValidationReport(not viol, {"pairs": pairs}, viol)


def superdimension(m: SuperModule) -> int:
    e, o = m.dims
    return e - o


def _same_algebra(a: SuperModule, b: SuperModule) -> None:
    if a.algebra is not b.algebra and a.algebra.dumps() != b.algebra.dumps():
        raise AlgebraMismatch(f"{a.algebra.name} vs {b.algebra.name}")


def dual(m: SuperModule) -> SuperModule:
    """(x.f)(v) = -(-1)^(|x||f|) f(x.v)."""
    g = m.algebra
    par = m.parities
    acts = []
    for k, a in enumerate(m.actions):
        xp = g.parities[k]
        acts.append(SparseMatrix(m.dim, m.dim, {
            (j, i): (v if (xp and par[i]) else -v) for (i, j), v in a.entries.items()}))
    labels = tuple(BasisLabel(b.label + "*", b.degree, b.parity) for b in m.space.basis)
    return SuperModule(g, SuperSpace(labels), acts, name=f"{m.name}*")


def tensor(a: SuperModule, b: SuperModule) -> SuperModule:
    """x.(u (x) v) = x.u (x) v + (-1)^(|x||u|) u (x) x.v."""
    _same_algebra(a, b)
    g = a.algebra
    da, db = a.dim, b.dim
    pa = a.parities
    labels = tuple(BasisLabel(f"{x.label}(x){y.label}", None, (x.parity + y.parity) % 2)
                   for x in a.space.basis for y in b.space.basis)
    acts = []
    for k in range(g.dim):
        xp = g.parities[k]
        ent: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), v in a.actions[k].entries.items():
            for t in range(db):
                ent[(i * db + t, j * db + t)] = ent.get((i * db + t, j * db + t), 0) + v
        for (i, j), v in b.actions[k].entries.items():
            for s in range(da):
                sg = -1 if xp and pa[s] else 1
                key = (s * db + i, s * db + j)
                ent[key] = ent.get(key, 0) + sg * v
        acts.append(SparseMatrix(da * db, da * db, ent))
    space, acts = _reorder_even_first(SuperSpace(labels), acts)
    return SuperModule(g, space, acts, name=f"({a.name}(x){b.name})")


def direct_sum(a: SuperModule, b: SuperModule) -> SuperModule:
    _same_algebra(a, b)
    da, d = a.dim, a.dim + b.dim
    labels = tuple(BasisLabel(f"{x.label}#0", x.degree, x.parity) for x in a.space.basis) + \
        tuple(BasisLabel(f"{y.label}#1", y.degree, y.parity) for y in b.space.basis)
    acts = []
    for k in range(a.algebra.dim):
        ent = dict(a.actions[k].entries)
        ent.update({(i + da, j + da): v for (i, j), v in b.actions[k].entries.items()})
        acts.append(SparseMatrix(d, d, ent))
    space, acts = _reorder_even_first(SuperSpace(labels), acts)
    return SuperModule(a.algebra, space, acts, name=f"({a.name}+{b.name})")


def parity_flip(m: SuperModule) -> SuperModule:
    labels = tuple(BasisLabel("P" + b.label, b.degree, 1 - b.parity) for b in m.space.basis)
    space, acts = _reorder_even_first(SuperSpace(labels), m.actions)
    return SuperModule(m.algebra, space, acts, name=f"P{m.name}")


def trivial(g: LieSuperalgebra) -> SuperModule:
    return SuperModule(g, even_first_space(1, 0, "1"), [SparseMatrix.zeros(1, 1)] * g.dim, name="C")


def adjoint(g: LieSuperalgebra) -> SuperModule:
    acts = [g.ad({k: 1}) for k in range(g.dim)]
    space, acts = _reorder_even_first(g.space, acts)
    return SuperModule(g, space, acts, name="ad")


# ---------------------------------------------------------------------------
# Kac modules K(a sigma)


@lru_cache(maxsize=None)
def kac_module_sigma(n: int, a: int = 0, family: str = "Sbar") -> SuperModule:
    """K(a sigma) = U(g) (x)_{U(g_0 + g^+)} C_{a sigma}, realised on Lambda(g_{-1}).

    Basis: d_{i1} ... d_{ik} (x) v with i1 < ... < ik.  The action is computed
    by PBW recursion x.(d_i u) = [x, d_i].u + (-1)^|x| d_i.(x.u); g_0 acts on
    v by the character x -> -a tr(ad x | g_{-1}) (a on each xi_i d_i) and
    g^+ kills v.
    """
    from itertools import combinations

    if family != "Sbar":
        raise ValueError("Kac modules are built for Sbar(n) only")
    g = construct_Sbar(n)
    deg = g.degrees
    minus = [g.index(f"d{i}") for i in range(1, n + 1)]
    mpos = {k: i for i, k in enumerate(minus)}
    subsets = [S for k in range(n + 1) for S in combinations(range(n), k)]
    subsets.sort(key=lambda S: (len(S) % 2, len(S), S))
    sindex = {S: r for r, S in enumerate(subsets)}

    def character(x: int) -> Fraction:
        tr = sum(g.bracket_basis(x, k).get(k, 0) for k in minus)
        return -a * Fraction(tr)

    def push(i: int, vec: Mapping[Tuple[int, ...], object]) -> Dict[Tuple[int, ...], object]:
        # d_i . (d_S v)
        out: Dict[Tuple[int, ...], object] = {}
        for S, c in vec.items():
            if i in S:
                continue
            s = -1 if sum(1 for j in S if j < i) % 2 else 1
            T = tuple(sorted(S + (i,)))
            out[T] = out.get(T, 0) + s * c
        return {k: v for k, v in out.items() if v}

    cache: Dict[Tuple[int, Tuple[int, ...]], Dict[Tuple[int, ...], object]] = {}

    def act(x: int, S: Tuple[int, ...]) -> Dict[Tuple[int, ...], object]:
        key = (x, S)
        if key in cache:
            return cache[key]
        if x in mpos:
            res = push(mpos[x], {S: 1})
        elif not S:
            res = {(): character(x)} if deg[x] == 0 and character(x) else {}
        else:
            i, rest = S[0], S[1:]
            res = {}
            for y, c in g.bracket_basis(x, minus[i]).items():
                add_into(res, c, act(y, rest))
            sg = -1 if g.parities[x] else 1
            add_into(res, sg, push(i, act(x, rest)))
        cache[key] = res
        return res

    acts = []
    for x in range(g.dim):
        cols = []
        for S in subsets:
            cols.append({sindex[T]: c for T, c in act(x, S).items()})
        acts.append(SparseMatrix.from_columns(len(subsets), cols))
    labels = tuple(BasisLabel("v" if not S else "d" + "".join(str(i + 1) for i in S), -len(S), len(S) % 2)
                   for S in subsets)
    mod = SuperModule(g, SuperSpace(labels), acts, name=f"K({a}sigma)")
    mod.subsets = subsets
    return mod


# ---------------------------------------------------------------------------
# modules over a detecting subalgebra e with [e0, e0] = [e0, e1] = 0


def _check_e_relations(e: SubalgebraSpec) -> None:
    g = e.parent
    evens = [v for v, p in zip(e.members, e.parities()) if p == EVEN]
    for x in evens:
        for y in e.members:
            if g.bracket(x, y):
                raise RelationUnsatisfiable("need [e0, e0] = [e0, e1] = 0")


def _form_matrix(E: LieSuperalgebra, mu: Mapping[int, Fraction], odd: List[int]) -> List[List[Fraction]]:
    """B_mu(a, b) = mu([f_a, f_b]) on the odd basis of E."""
    return [[sum((Fraction(c) * mu.get(k, 0) for k, c in E.bracket_basis(a, b).items()), Fraction(0))
             for b in odd] for a in odd]


def _diagonalize(B: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """Congruence diagonalisation over Q: rows P with P B P^T = diag(d)."""
    r = len(B)
    A = [list(row) for row in B]
    P = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]

    def addrow(i, j, c):  # row_i += c row_j and col_i += c col_j
        for k in range(r):
            A[i][k] += c * A[j][k]
        for k in range(r):
            A[k][i] += c * A[k][j]
        for k in range(r):
            P[i][k] += c * P[j][k]

    for i in range(r):
        if A[i][i] == 0:
            for j in range(i + 1, r):
                if A[j][j] != 0:
                    A[i], A[j] = A[j], A[i]
                    for row in A:
                        row[i], row[j] = row[j], row[i]
                    P[i], P[j] = P[j], P[i]
                    break
            else:
                for j in range(i + 1, r):
                    if A[i][j] != 0:
                        addrow(i, j, Fraction(1))
                        break
        if A[i][i] == 0:
            continue
        for j in range(i + 1, r):
            if A[j][i]:
                addrow(j, i, -A[j][i] / A[i][i])
    return P, [A[i][i] for i in range(r)]


def _inverse(M: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _kron(a: List[List[Fraction]], b: List[List[Fraction]]) -> List[List[Fraction]]:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _clifford_block(d: List[Fraction], nil: int, rng: random.Random) -> Tuple[List[List[List[Fraction]]], List[int]]:
    """Operators Y_k (one per direction) on a graded tensor product of (1|1) factors.

    Direction k squares to d_k / 2; ``nil`` extra radical directions are
    nilpotent.  Returns the operators (dense) and the parities of the basis.
    """
    factors = [[[Fraction(0), v / 2], [Fraction(1), Fraction(0)]] for v in d]
    factors += [[[Fraction(0), Fraction(0)], [Fraction(1), Fraction(0)]] for _ in range(nil)]
    gamma = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
    one = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    r = len(factors)
    ops = []
    for k in range(r):
        M = [[Fraction(1)]]
        for l in range(r):
            M = _kron(M, gamma if l < k else factors[k] if l == k else one)
        ops.append(M)
    par = [0]
    for _ in range(r):
        par = [p for q in par for p in (q, 1 - q)]
    return ops, par


def random_e_module(e: SubalgebraSpec, dims: Tuple[int, int], seed: int = 0,
                    max_tries: int = 50) -> SuperModule:
    """A random e-module of the given (even|odd) dims, deterministic in ``seed``.

    Built as a direct sum of blocks on which e_0 acts by a character mu.  For
    mu with nonzero form B_mu(a, b) = mu([f_a, f_b]) the odd operators come
    from a Clifford module of B_mu; for B_mu = 0 they are random maps from the
    even to the odd part.  A random even change of basis mixes the blocks.
    """
    _check_e_relations(e)
    E = restrict(e)
    rng = random.Random(seed)
    evens = [k for k, p in enumerate(E.parities) if p == EVEN]
    odd = [k for k, p in enumerate(E.parities) if p == ODD]
    ne, no = dims
    if ne < 0 or no < 0:
        raise ValueError("dims must be nonnegative")
    # characters killing [e1, e1]
    imgs = [E.bracket_basis(a, b) for a in odd for b in odd]
    rows = [{evens.index(k): v for k, v in w.items()} for w in imgs if w]
    flat = kernel_basis(SparseMatrix.from_rows(len(rows), len(evens), rows)) if evens else []

    for _ in range(max_tries):
        blocks = []  # (mu, ops over odd basis, parities)
        re_, ro = ne, no
        while re_ + ro > 0:
            placed = False
            for _draw in range(5 if rng.random() < 0.8 else 0):
                mu = {k: Fraction(rng.randint(-3, 3)) for k in evens}
                B = _form_matrix(E, mu, odd)
                P, d = _diagonalize(B)
                nz = [i for i, v in enumerate(d) if v != 0]
                if not nz:
                    continue
                nil = rng.randint(0, 1) if len(d) > len(nz) else 0
                half = 2 ** (len(nz) + nil - 1)
                if half <= re_ and half <= ro:
                    Pinv = _inverse(P) if P else []
                    dirs = nz + [i for i in range(len(d)) if d[i] == 0][:nil]
                    ops, par = _clifford_block([d[i] for i in nz], nil, rng)
                    size = len(par)
                    X = []
                    for a in range(len(odd)):
                        M = [[Fraction(0)] * size for _ in range(size)]
                        for slot, i in enumerate(dirs):
                            c = Pinv[a][i]
                            if c:
                                for r in range(size):
                                    for s in range(size):
                                        M[r][s] += c * ops[slot][r][s]
                        X.append(M)
                    if rng.random() < 0.5:
                        par = [1 - p for p in par]
                    blocks.append((mu, X, par))
                    re_ -= half
                    ro -= half
                    placed = True
                    break
            if placed:
                continue
            # flat block: mu kills [e1, e1]
            mu = {k: Fraction(0) for k in evens}
            for v in flat:
                c = rng.randint(-2, 2)
                for j, x in v.items():
                    mu[evens[j]] += c * x
            be = rng.randint(0, re_) if ro else re_
            bo = rng.randint(0 if be else 1, ro) if ro else 0
            if be + bo == 0:
                continue
            size = be + bo
            par = [EVEN] * be + [ODD] * bo
            X = []
            for _a in odd:
                M = [[Fraction(0)] * size for _ in range(size)]
                for r in range(be, size):
                    for s in range(be):
                        M[r][s] = Fraction(rng.randint(-2, 2))
                X.append(M)
            blocks.append((mu, X, par))
            re_ -= be
            ro -= bo
        mod = _assemble(E, evens, odd, blocks, rng)
        if validate_module(mod).ok:
            return mod
    raise RelationUnsatisfiable(f"no valid module found for dims {dims} in {max_tries} tries")


def _assemble(E, evens, odd, blocks, rng) -> SuperModule:
    par: List[int] = []
    ent: List[Dict[Tuple[int, int], Fraction]] = [dict() for _ in range(E.dim)]
    off = 0
    for mu, X, bpar in blocks:
        size = len(bpar)
        for k in evens:
            if mu[k]:
                for r in range(size):
                    ent[k][(off + r, off + r)] = mu[k]
        for a, k in enumerate(odd):
            for r in range(size):
                for s in range(size):
                    if X[a][r][s]:
                        ent[k][(off + r, off + s)] = X[a][r][s]
        par += bpar
        off += size
    space = SuperSpace(tuple(BasisLabel(f"m{i}", None, p) for i, p in enumerate(par)))
    acts = [SparseMatrix(off, off, e) for e in ent]
    space, acts = _reorder_even_first(space, acts)
    ne = space.dims[0]
    # random even change of basis, unitriangular blocks so the inverse is exact
    Pm = [[Fraction(int(i == j)) for j in range(off)] for i in range(off)]
    for i in range(off):
        for j in range(off):
            same = (i < ne) == (j < ne)
            if same and i != j and rng.random() < 0.5:
                Pm[i][j] = Fraction(rng.randint(-2, 2))
    Pm = _matmul(_lower(Pm), _upper(Pm))
    Pi = _inverse(Pm) if off else []
    P = SparseMatrix.from_dense(Pm) if off else SparseMatrix.zeros(0, 0)
    Pinv = SparseMatrix.from_dense(Pi) if off else SparseMatrix.zeros(0, 0)
    acts = [P @ a @ Pinv for a in acts]
    return SuperModule(E, space, acts, name="rand")


def _lower(M):
    n = len(M)
    return [[M[i][j] if j < i else Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _upper(M):
    n = len(M)
    return [[M[i][j] if j > i else Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _matmul(A, B):
    n = len(A)
    m = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(m)] for i in range(n)]


def free_e_module(e: SubalgebraSpec, mu: Optional[Mapping[int, object]] = None) -> SuperModule:
    """U(e) (x)_{U(e_0)} C_mu: the Clifford algebra of B_mu acting on itself.

    Basis: ordered products f_S = f_{s1} ... f_{sk} of odd basis vectors,
    S a subset of the odd basis.  Free of rank one over U(<x>) for every odd
    x in e_1, hence projective at every nonzero point.
    """
    from itertools import combinations

    _check_e_relations(e)
    E = restrict(e)
    evens = [k for k, p in enumerate(E.parities) if p == EVEN]
    odd = [k for k, p in enumerate(E.parities) if p == ODD]
    mu = {k: Fraction(mu.get(k, 0)) if mu else Fraction(0) for k in evens}
    B = _form_matrix(E, mu, odd)
    r = len(odd)
    subsets = [S for k in range(r + 1) for S in combinations(range(r), k)]
    subsets.sort(key=lambda S: (len(S) % 2, len(S), S))
    sindex = {S: i for i, S in enumerate(subsets)}

    def left(a: int, S: Tuple[int, ...]) -> Dict[Tuple[int, ...], Fraction]:
        # f_a f_S, using f_a f_b = -f_b f_a + B(a, b) for a != b and f_a^2 = B(a, a) / 2
        if not S:
            return {(a,): Fraction(1)}
        b = S[0]
        if a < b:
            return {(a,) + S: Fraction(1)}
        if a == b:
            return {S[1:]: B[a][a] / 2} if B[a][a] else {}
        out: Dict[Tuple[int, ...], Fraction] = {}
        for T, c in left(a, S[1:]).items():
            # f_b f_T, T already sorted with b < min(T) unless empty
            if T and T[0] == b:
                if B[b][b]:
                    out[T[1:]] = out.get(T[1:], 0) - c * B[b][b] / 2
            else:
                out[(b,) + T] = out.get((b,) + T, 0) - c
        if B[a][b]:
            out[S[1:]] = out.get(S[1:], 0) + B[a][b]
        return {k: v for k, v in out.items() if v}

    acts = []
    for k in range(E.dim):
        if k in evens:
            acts.append(SparseMatrix(len(subsets), len(subsets),
                                     {(i, i): mu[k] for i in range(len(subsets)) if mu[k]}))
        else:
            a = odd.index(k)
            cols = [{sindex[T]: c for T, c in left(a, S).items()} for S in subsets]
            acts.append(SparseMatrix.from_columns(len(subsets), cols))
    labels = tuple(BasisLabel("1" if not S else "f" + "".join(str(i) for i in S), None, len(S) % 2)
                   for S in subsets)
    return SuperModule(E, SuperSpace(labels), acts, name="free")
