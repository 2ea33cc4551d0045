"""Lie superalgebras given by structure constants.

Cartan-type algebras are built from superderivations of the Grassmann
algebra Lambda(n): a derivation is determined by the images f_j of the
generators xi_j, and ``xi_I d_i`` is the derivation sending xi_i to xi_I and
every other generator to 0.  Brackets are computed, never typed in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .ratlin import SparseMatrix, Span, Vector, add_into, kernel_basis
from .superspace import EVEN, ODD, BasisLabel, SuperSpace


class InvalidRank(ValueError):
    pass


class NotASubalgebra(ValueError):
    pass


class QuotientIllDefined(ValueError):
    pass


def _fast(x):
    """Integral fractions become ints; keeps the hot loops off Fraction."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _frac(vec: Mapping[int, object]) -> Vector:
    return {k: Fraction(v) for k, v in vec.items() if v}


class LieSuperalgebra:
    """Basis-indexed Lie superalgebra.

    ``brackets`` maps ``(i, j)`` with ``i <= j`` to a sparse combination of
    basis indices; the other half of the table follows from super
    antisymmetry ``[x, y] = -(-1)^(|x||y|) [y, x]``.
    """

    def __init__(self, space: SuperSpace, brackets: Mapping[Tuple[int, int], Mapping[int, object]],
                 name: str = "", meta: Optional[dict] = None):
        self.space = space
        self.name = name
        self.meta = dict(meta or {})
        n = space.dim
        stored: Dict[Tuple[int, int], Vector] = {}
        for (i, j), comb in brackets.items():
            if not (0 <= i <= j < n):
                raise IndexError(f"bracket key ({i}, {j}) must satisfy 0 <= i <= j < {n}")
            clean = _frac(comb)
            if clean:
                stored[(i, j)] = clean
        self.brackets = stored
        par = space.parities
        tab: List[List[Dict[int, object]]] = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), comb in stored.items():
            fast = {k: _fast(v) for k, v in comb.items()}
            tab[i][j] = fast
            if i != j:
                s = 1 if par[i] and par[j] else -1
                tab[j][i] = {k: s * v for k, v in fast.items()}
        self._tab = tab

    # -- basic data --------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def parities(self) -> Tuple[int, ...]:
        return self.space.parities

    @property
    def degrees(self) -> Tuple[Optional[int], ...]:
        return tuple(b.degree for b in self.space.basis)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.space.labels

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def graded_dims(self) -> Dict[Optional[int], int]:
        return self.space.graded_dims()

    def __repr__(self) -> str:
        e, o = self.space.dims
        return f"LieSuperalgebra({self.name or '?'}, dim={self.dim} ({e}|{o}))"

    # -- brackets ------------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> Vector:
        return _frac(self._tab[i][j])

    def bracket(self, u: Mapping[int, object], v: Mapping[int, object]) -> Vector:
        out: Dict[int, object] = {}
        tab = self._tab
        for i, a in u.items():
            row = tab[i]
            for j, b in v.items():
                comb = row[j]
                if comb:
                    add_into(out, a * b, comb)
        return _frac(out)

    def ad(self, u: Mapping[int, object]) -> SparseMatrix:
        cols = [self.bracket(u, {j: 1}) for j in range(self.dim)]
        return SparseMatrix.from_columns(self.dim, cols)

    def element_parity(self, v: Mapping[int, object]) -> int:
        ps = {self.parities[k] for k, c in v.items() if c}
        if len(ps) > 1:
            raise ValueError("inhomogeneous element")
        return ps.pop() if ps else EVEN

    def element_degree(self, v: Mapping[int, object]) -> Optional[int]:
        ds = {self.degrees[k] for k, c in v.items() if c}
        return ds.pop() if len(ds) == 1 else None

    def format(self, v: Mapping[int, object]) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = Fraction(v[k])
            lab = self.labels[k]
            if c == 1:
                parts.append(f"+{lab}")
            elif c == -1:
                parts.append(f"-{lab}")
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}*{lab}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def perturbed(self, i: int, j: int, k: int, delta=1) -> "LieSuperalgebra":
        """Copy with the stored structure constant c_{ij}^k shifted by ``delta``."""
        if i > j:
            i, j = j, i
        br = {key: dict(v) for key, v in self.brackets.items()}
        comb = br.setdefault((i, j), {})
        comb[k] = comb.get(k, 0) + Fraction(delta)
        return LieSuperalgebra(self.space, br, name=self.name + "~", meta=self.meta)

    # -- interchange ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "basis": [{"label": b.label, "degree": b.degree, "parity": b.parity} for b in self.space.basis],
            "brackets": [[i, j, [[k, f"{c.numerator}/{c.denominator}"] for k, c in sorted(comb.items())]]
                         for (i, j), comb in sorted(self.brackets.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "LieSuperalgebra":
        space = SuperSpace(tuple(BasisLabel(b["label"], b["degree"], b["parity"]) for b in data["basis"]))
        br = {(i, j): {k: Fraction(c) for k, c in comb} for i, j, comb in data["brackets"]}
        return cls(space, br, name=name)


# ---------------------------------------------------------------------------
# Grassmann algebra and superderivations

Mono = Tuple[int, ...]


def mono_mul(a: Mono, b: Mono) -> Tuple[int, Mono]:
    """Product of two Grassmann monomials: (sign, monomial), sign 0 if they share a generator."""
    if set(a) & set(b):
        return 0, ()
    inv = sum(1 for x in a for y in b if x > y)
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


def lam_mul(f: Mapping[Mono, object], g: Mapping[Mono, object]) -> Dict[Mono, object]:
    out: Dict[Mono, object] = {}
    for a, x in f.items():
        for b, y in g.items():
            s, m = mono_mul(a, b)
            if s:
                out[m] = out.get(m, 0) + s * x * y
    return {m: c for m, c in out.items() if c}


@dataclass
class SuperDerivation:
    """Superderivation of Lambda(n) fixed by its values on the generators."""

    images: Dict[int, Dict[Mono, object]]
    parity: int
    n: int = 0

    def apply_mono(self, mono: Mono) -> Dict[Mono, object]:
        out: Dict[Mono, object] = {}
        for s, j in enumerate(mono):
            f = self.images.get(j)
            if not f:
                continue
            sign = -1 if (self.parity and s % 2) else 1
            left = {mono[:s]: sign}
            right = {mono[s + 1:]: 1}
            for m, c in lam_mul(lam_mul(left, f), right).items():
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}

    def apply(self, f: Mapping[Mono, object]) -> Dict[Mono, object]:
        out: Dict[Mono, object] = {}
        for m, c in f.items():
            for mm, cc in self.apply_mono(m).items():
                out[mm] = out.get(mm, 0) + c * cc
        return {m: c for m, c in out.items() if c}

    def bracket(self, other: "SuperDerivation") -> "SuperDerivation":
        s = -1 if (self.parity and other.parity) else 1
        images: Dict[int, Dict[Mono, object]] = {}
        for j in range(1, max(self.n, other.n) + 1):
            acc: Dict[Mono, object] = {}
            if j in other.images:
                for m, c in self.apply(other.images[j]).items():
                    acc[m] = acc.get(m, 0) + c
            if j in self.images:
                for m, c in other.apply(self.images[j]).items():
                    acc[m] = acc.get(m, 0) - s * c
            acc = {m: c for m, c in acc.items() if c}
            if acc:
                images[j] = acc
        return SuperDerivation(images, (self.parity + other.parity) % 2, max(self.n, other.n))


def _mono_label(I: Mono, n: int) -> str:
    if not I:
        return ""
    if n < 10:
        return "x" + "".join(map(str, I))
    return "x(" + ",".join(map(str, I)) + ")"


def _w_label(I: Mono, i: int, n: int) -> str:
    return f"{_mono_label(I, n)}d{i}"


def _w_basis(n: int) -> List[Tuple[Mono, int]]:
    out = []
    for k in range(0, n + 1):
        for I in combinations(range(1, n + 1), k):
            for i in range(1, n + 1):
                out.append((I, i))
    return out


def _derivation_of(I: Mono, i: int, n: int) -> SuperDerivation:
    return SuperDerivation({i: {I: 1}}, (len(I) - 1) % 2, n)


def _derivation_to_w(D: SuperDerivation, windex: Mapping[Tuple[Mono, int], int]) -> Vector:
    out: Vector = {}
    for j, f in D.images.items():
        for m, c in f.items():
            out[windex[(m, j)]] = Fraction(c)
    return out


@lru_cache(maxsize=None)
def construct_W(n: int) -> LieSuperalgebra:
    """W(n): all superderivations of Lambda(n), basis xi_I d_i graded by |I| - 1."""
    if n < 2:
        raise InvalidRank("W(n) needs n >= 2")
    basis = _w_basis(n)
    windex = {b: k for k, b in enumerate(basis)}
    ders = [_derivation_of(I, i, n) for I, i in basis]
    labels = tuple(BasisLabel(_w_label(I, i, n), len(I) - 1, (len(I) - 1) % 2) for I, i in basis)
    br = {}
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            v = _derivation_to_w(ders[a].bracket(ders[b]), windex)
            if v:
                br[(a, b)] = v
    meta = {"family": "W", "n": n, "w_basis": basis}
    return LieSuperalgebra(SuperSpace(labels), br, name=f"W({n})", meta=meta)


def w_element(n: int, terms: Mapping[Tuple[Mono, int], object]) -> Vector:
    """Coordinates in construct_W(n) of sum c * xi_I d_i given as {(I, i): c}."""
    windex = {b: k for k, b in enumerate(_w_basis(n))}
    out: Vector = {}
    for (I, i), c in terms.items():
        s, m = _sort_mono(tuple(I))
        if s:
            k = windex[(m, i)]
            out[k] = out.get(k, 0) + s * Fraction(c)
    return {k: v for k, v in out.items() if v}


def _sort_mono(I: Mono) -> Tuple[int, Mono]:
    if len(set(I)) != len(I):
        return 0, ()
    inv = sum(1 for a in range(len(I)) for b in range(a + 1, len(I)) if I[a] > I[b])
    return (-1 if inv % 2 else 1), tuple(sorted(I))


def divergence(d: Mapping[int, object], n: int) -> Dict[Mono, Fraction]:
    """div(sum f_i d_i) = sum d_i(f_i) for an element given in W(n) coordinates."""
    basis = _w_basis(n)
    out: Dict[Mono, Fraction] = {}
    for k, c in d.items():
        if not c:
            continue
        I, i = basis[k]
        if i in I:
            s = I.index(i)
            m = I[:s] + I[s + 1:]
            out[m] = out.get(m, 0) + (-1) ** s * Fraction(c)
    return {m: v for m, v in out.items() if v}


def _divergence_matrix(n: int, degree: int) -> Tuple[SparseMatrix, List[int]]:
    basis = _w_basis(n)
    cols = [k for k, (I, i) in enumerate(basis) if len(I) - 1 == degree]
    targets = list(combinations(range(1, n + 1), degree)) if degree >= 0 else []
    tindex = {m: r for r, m in enumerate(targets)}
    entries = {}
    for c, k in enumerate(cols):
        for m, v in divergence({k: 1}, n).items():
            entries[(tindex[m], c)] = v
    return SparseMatrix(len(targets), len(cols), entries), cols


def _paper_s_basis(n: int, bar: bool) -> List[Tuple[str, int, Vector]]:
    """Divergence-free basis: type I xi_I d_i (i not in I) and type II xi_A h_ij."""
    out = []
    out += [(f"d{i}", -1, w_element(n, {((), i): 1})) for i in range(1, n + 1)]
    for k in range(0, n - 1):
        if k == 0 and bar:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    out.append((f"x{i}d{j}" if n < 10 else f"x({i})d{j}", 0, w_element(n, {((i,), j): 1})))
            continue
        for I in combinations(range(1, n + 1), k + 1):
            for i in range(1, n + 1):
                if i not in I:
                    out.append((_w_label(I, i, n), k, w_element(n, {(I, i): 1})))
        for A in combinations(range(1, n + 1), k):
            B = [b for b in range(1, n + 1) if b not in A]
            i = B[0]
            for j in B[1:]:
                lab = f"{_mono_label(A, n)}h{i}{j}" if n < 10 else f"{_mono_label(A, n)}h({i},{j})"
                vec = w_element(n, {(A + (i,), i): 1, (A + (j,), j): -1})
                out.append((lab, k, vec))
    return out


def _sub_from_w(n: int, items: List[Tuple[str, int, Vector]], name: str, family: str) -> LieSuperalgebra:
    W = construct_W(n)
    vecs = [v for _, _, v in items]
    span = Span(vecs)
    if not span.independent():
        raise AssertionError("basis vectors are dependent")
    br = {}
    for a in range(len(vecs)):
        for b in range(a, len(vecs)):
            w = W.bracket(vecs[a], vecs[b])
            if w:
                br[(a, b)] = span.coordinates(w)
    labels = tuple(BasisLabel(lab, deg, deg % 2) for lab, deg, _ in items)
    meta = {"family": family, "n": n, "w_coords": vecs}
    return LieSuperalgebra(SuperSpace(labels), br, name=name, meta=meta)


def _check_div_kernel(n: int, items: List[Tuple[str, int, Vector]], bar: bool) -> None:
    for deg in range(-1, n - 1):
        mat, cols = _divergence_matrix(n, deg)
        ker = [{cols[c]: x for c, x in v.items()} for v in kernel_basis(mat)]
        ours = [v for _, d, v in items if d == deg]
        if bar and deg == 0:
            # gl(n) = sl(n) + Euler field
            ker.append({k: 1 for k, (I, i) in enumerate(_w_basis(n)) if I == (i,)})
        ospan = Span(ours)
        if len(ours) != len(ker) or not all(v in ospan for v in ker):
            raise AssertionError(f"degree {deg}: basis does not match the divergence kernel")


@lru_cache(maxsize=None)
def construct_S(n: int) -> LieSuperalgebra:
    """S(n), the divergence-free part of W(n)."""
    if n < 2:
        raise InvalidRank("S(n) needs n >= 2")
    items = _paper_s_basis(n, bar=False)
    _check_div_kernel(n, items, False)
    return _sub_from_w(n, items, f"S({n})", "S")


@lru_cache(maxsize=None)
def construct_Sbar(n: int) -> LieSuperalgebra:
    """S(n) with the Euler field sum xi_i d_i adjoined; degree 0 part is gl(n)."""
    if n < 2:
        raise InvalidRank("Sbar(n) needs n >= 2")
    items = _paper_s_basis(n, bar=True)
    _check_div_kernel(n, items, True)
    return _sub_from_w(n, items, f"Sbar({n})", "Sbar")


def euler_element(g: LieSuperalgebra) -> Vector:
    n = g.meta["n"]
    return {g.index(f"x{i}d{i}"): Fraction(1) for i in range(1, n + 1)}


@lru_cache(maxsize=None)
def construct_gl_super(m: int, n: int) -> LieSuperalgebra:
    """gl(m|n) with matrix units E_ij and the supercommutator."""
    if m < 1 or n < 1:
        raise InvalidRank("gl(m|n) needs m, n >= 1")
    N = m + n

    def block(i):
        return 0 if i < m else 1

    pairs = [(i, j) for i in range(N) for j in range(N)]
    idx = {p: k for k, p in enumerate(pairs)}
    labels = []
    par = []
    for i, j in pairs:
        p = (block(i) + block(j)) % 2
        deg = block(j) - block(i)
        labels.append(BasisLabel(f"E{i + 1},{j + 1}", deg, p))
        par.append(p)
    br = {}
    for a, (i, j) in enumerate(pairs):
        for b in range(a, len(pairs)):
            k, l = pairs[b]
            out: Dict[int, int] = {}
            if j == k:
                out[idx[(i, l)]] = out.get(idx[(i, l)], 0) + 1
            if l == i:
                s = -1 if par[a] and par[b] else 1
                out[idx[(k, j)]] = out.get(idx[(k, j)], 0) - s
            out = {x: c for x, c in out.items() if c}
            if out:
                br[(a, b)] = out
    meta = {"family": "glmn", "m": m, "n": n}
    return LieSuperalgebra(SuperSpace(tuple(labels)), br, name=f"gl({m}|{n})", meta=meta)


def abelian(n_even: int, n_odd: int) -> LieSuperalgebra:
    par = [EVEN] * n_even + [ODD] * n_odd
    space = SuperSpace(tuple(BasisLabel(f"a{i}", None, p) for i, p in enumerate(par)))
    return LieSuperalgebra(space, {}, name=f"ab({n_even}|{n_odd})", meta={"family": "abelian"})


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    checked: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def first_violation(self) -> Optional[str]:
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.ok


def validate(g: LieSuperalgebra, max_violations: int = 10) -> ValidationReport:
    """Check super antisymmetry, the super Jacobi identity and grading additivity.

    Antisymmetry is checked on every stored pair (in particular [x, x] = 0 for
    even x).  Given antisymmetry the Jacobiator is super-alternating, so the
    triples ``i <= j <= k`` cover every ordered triple.
    """
    viol: List[str] = []
    par = g.parities
    deg = g.degrees
    tab = g._tab
    n = g.dim
    lab = g.labels

    for i in range(n):
        if tab[i][i] and par[i] == EVEN:
            viol.append(f"antisymmetry: [{lab[i]},{lab[i]}] != 0 for even {lab[i]}")
    for (i, j), comb in g.brackets.items():
        for k in comb:
            if par[k] != (par[i] + par[j]) % 2:
                viol.append(f"parity: [{lab[i]},{lab[j]}] has component {lab[k]}")
            if None not in (deg[i], deg[j], deg[k]) and deg[k] != deg[i] + deg[j]:
                viol.append(f"grading: [{lab[i]},{lab[j]}] has component {lab[k]} of degree {deg[k]}")

    def nested(x, y, z):
        # [x, [y, z]]
        out: Dict[int, object] = {}
        row = tab[x]
        for k, c in tab[y][z].items():
            comb = row[k]
            if comb:
                add_into(out, c, comb)
        return out

    triples = 0
    for x in range(n):
        for y in range(x, n):
            for z in range(y, n):
                triples += 1
                acc: Dict[int, object] = {}
                add_into(acc, -1 if par[x] and par[z] else 1, nested(x, y, z))
                add_into(acc, -1 if par[y] and par[x] else 1, nested(y, z, x))
                add_into(acc, -1 if par[z] and par[y] else 1, nested(z, x, y))
                if acc:
                    viol.append(f"jacobi: ({lab[x]}, {lab[y]}, {lab[z]}) -> {g.format(acc)}")
                    if len(viol) >= max_violations:
                        break
            if len(viol) >= max_violations:
                break
        if len(viol) >= max_violations:
            break
    return ValidationReport(not viol, {"pairs": len(g.brackets), "triples": triples}, viol)


# ---------------------------------------------------------------------------
# subalgebras


@dataclass
class SubalgebraSpec:
    parent: LieSuperalgebra
    members: List[Vector]
    name: str = ""

    def __post_init__(self):
        self.members = [_frac(v) for v in self.members]
        for v in self.members:
            self.parent.element_parity(v)
        self._span = Span(self.members)
        if not self._span.independent():
            raise ValueError("subalgebra members must be linearly independent")

    @property
    def dim(self) -> int:
        return len(self.members)

    @property
    def span(self) -> Span:
        return self._span

    def parities(self) -> List[int]:
        return [self.parent.element_parity(v) for v in self.members]

    def even_part(self) -> "SubalgebraSpec":
        return SubalgebraSpec(self.parent, [v for v, p in zip(self.members, self.parities()) if p == EVEN],
                              name=self.name + "_0")

    def odd_members(self) -> List[Vector]:
        return [v for v, p in zip(self.members, self.parities()) if p == ODD]

    def contains(self, v: Mapping[int, object]) -> bool:
        return v in self._span

    def closure_violation(self) -> Optional[Tuple[int, int]]:
        g = self.parent
        for a in range(self.dim):
            for b in range(a, self.dim):
                if not self.contains(g.bracket(self.members[a], self.members[b])):
                    return a, b
        return None

    def is_closed(self) -> bool:
        return self.closure_violation() is None

    def is_basis_aligned(self) -> bool:
        return all(len(v) == 1 for v in self.members)


def subalgebra_by_labels(g: LieSuperalgebra, labels: Sequence[str], name: str = "") -> SubalgebraSpec:
    return SubalgebraSpec(g, [{g.index(l): 1} for l in labels], name=name)


def zero_subalgebra(g: LieSuperalgebra) -> SubalgebraSpec:
    return SubalgebraSpec(g, [], name="0")


def degree_zero_subalgebra(g: LieSuperalgebra) -> SubalgebraSpec:
    return SubalgebraSpec(g, [{k: 1} for k, d in enumerate(g.degrees) if d == 0], name="g0")


def even_subalgebra(g: LieSuperalgebra) -> SubalgebraSpec:
    return SubalgebraSpec(g, [{k: 1} for k, p in enumerate(g.parities) if p == EVEN], name="g_even")


def cartan_subalgebra(g: LieSuperalgebra) -> SubalgebraSpec:
    fam = g.meta.get("family")
    if fam in ("W", "S", "Sbar"):
        n = g.meta["n"]
        if fam == "S":
            labs = [f"h1{j}" for j in range(2, n + 1)]
        else:
            labs = [f"x{i}d{i}" for i in range(1, n + 1)]
        return subalgebra_by_labels(g, labs, name="h")
    if fam == "glmn":
        N = g.meta["m"] + g.meta["n"]
        return subalgebra_by_labels(g, [f"E{i},{i}" for i in range(1, N + 1)], name="h")
    raise ValueError(f"no Cartan subalgebra recipe for {g.name}")


def derived_subalgebra_in(g: LieSuperalgebra, t: SubalgebraSpec) -> bool:
    """True iff every bracket of basis vectors of g lies in t."""
    if t.parent is not g:
        raise ValueError("subalgebra belongs to another algebra")
    if not t.is_closed():
        raise NotASubalgebra(f"{t.name or 't'} is not closed under the bracket")
    for comb in g.brackets.values():
        if not t.contains(comb):
            return False
    return True


def restrict(t: SubalgebraSpec, name: str = "") -> LieSuperalgebra:
    """The subalgebra t as a Lie superalgebra in its own right (basis = members)."""
    g = t.parent
    cached = getattr(t, "_restricted", None)
    if cached is not None and (not name or cached.name == name):
        return cached
    viol = t.closure_violation()
    if viol is not None:
        raise NotASubalgebra(f"members {viol} bracket outside the span")
    labels = []
    seen = set()
    for v in t.members:
        lab = g.format(v)
        while lab in seen:
            lab += "'"
        seen.add(lab)
        labels.append(BasisLabel(lab, g.element_degree(v), g.element_parity(v)))
    br = {}
    for a in range(t.dim):
        for b in range(a, t.dim):
            w = g.bracket(t.members[a], t.members[b])
            if w:
                br[(a, b)] = t.span.coordinates(w)
    meta = {"family": "sub", "parent": g, "members": t.members}
    E = LieSuperalgebra(SuperSpace(tuple(labels)), br, name=name or f"{t.name or 'sub'}<{g.name}>", meta=meta)
    if not name:
        t._restricted = E
    return E


class Quotient:
    """g/t modelled on a complement of t spanned by parent basis vectors.

    The complement is the set of parent basis vectors outside the pivot
    columns of the echelon form of t; for basis-aligned t it is simply the
    basis vectors not in t.
    """

    def __init__(self, t: SubalgebraSpec):
        self.t = t
        self.g = g = t.parent
        piv = set(t.span.pivots)
        self.comp = [k for k in range(g.dim) if k not in piv]
        self.pos = {q: a for a, q in enumerate(self.comp)}
        self.parities = [g.parities[q] for q in self.comp]
        self.labels = [g.labels[q] for q in self.comp]

    @property
    def dim(self) -> int:
        return len(self.comp)

    def project(self, v: Mapping[int, object]) -> Vector:
        r = self.t.span.residual(v)
        pos = self.pos
        return {pos[k]: c for k, c in r.items() if k in pos}

    def bracket_table(self) -> List[List[Vector]]:
        g = self.g
        return [[self.project(g.bracket({p: 1}, {q: 1})) for q in self.comp] for p in self.comp]

    def action(self, y: Mapping[int, object]) -> SparseMatrix:
        g = self.g
        cols = [self.project(g.bracket(y, {q: 1})) for q in self.comp]
        return SparseMatrix.from_columns(self.dim, cols)


def adjoint_action(g: LieSuperalgebra, t: SubalgebraSpec, target: str = "quotient") -> List[SparseMatrix]:
    """One matrix per member of t, acting on g/t ("quotient") or on g ("full")."""
    if t.parent is not g:
        raise ValueError("subalgebra belongs to another algebra")
    if target == "full":
        return [g.ad(y) for y in t.members]
    if target != "quotient":
        raise ValueError(f"unknown target {target!r}")
    if not t.is_closed():
        raise QuotientIllDefined("[t, t] not inside t")
    q = Quotient(t)
    return [q.action(y) for y in t.members]


# ---------------------------------------------------------------------------
# detecting subalgebras


@lru_cache(maxsize=None)
def detecting_subalgebra_sbar(n: int) -> Tuple[SubalgebraSpec, SubalgebraSpec]:
    """(e, a) in Sbar(n): odd part d1, xi_1 h_2i (i = 3..n); even part diag with
    vanishing first entry for e, all diagonals for a."""
    if n < 3:
        raise InvalidRank("the detecting subalgebra needs n >= 3")
    g = construct_Sbar(n)
    odd = ["d1"] + [f"x1h2{i}" if n < 10 else f"x1h(2,{i})" for i in range(3, n + 1)]
    e0 = [f"x{i}d{i}" if n < 10 else f"x({i})d{i}" for i in range(2, n + 1)]
    a0 = [f"x{i}d{i}" if n < 10 else f"x({i})d{i}" for i in range(1, n + 1)]
    e = subalgebra_by_labels(g, e0 + odd, name="e")
    a = subalgebra_by_labels(g, a0 + odd, name="a")
    for s in (e, a):
        if not s.is_closed():
            raise NotASubalgebra(f"{s.name} not closed")
    e_even = [v for v, p in zip(e.members, e.parities()) if p == EVEN]
    for x in e_even:
        for y in e.members:
            if g.bracket(x, y):
                raise AssertionError("[e_even, e] != 0")
    return e, a


@lru_cache(maxsize=None)
def detecting_subalgebra_gl(m: int, n: int, r: int) -> SubalgebraSpec:
    """Odd part E_{m+1-s,m+s} + E_{m+s,m+1-s} (s = 1..r); even part its stabilizer in g_even."""
    if r < 1 or r > min(m, n):
        raise InvalidRank("need 1 <= r <= min(m, n)")
    g = construct_gl_super(m, n)
    odd = []
    for s in range(1, r + 1):
        a, b = m + 1 - s, m + s
        odd.append({g.index(f"E{a},{b}"): 1, g.index(f"E{b},{a}"): 1})
    ospan = Span(odd)
    evens = [k for k, p in enumerate(g.parities) if p == EVEN]
    rows: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for c, k in enumerate(evens):
        for s, v in enumerate(odd):
            for coord, val in ospan.residual(g.bracket({k: 1}, v)).items():
                rows.setdefault((s, coord), {})[c] = val
    keys = sorted(rows)
    mat = SparseMatrix.from_rows(len(keys), len(evens), [rows[k] for k in keys])
    stab = [{evens[c]: x for c, x in vec.items()} for vec in kernel_basis(mat)]
    e = SubalgebraSpec(g, stab + odd, name="e")
    if not e.is_closed():
        raise NotASubalgebra("e not closed")
    return e


def subalgebra_pair(t: SubalgebraSpec) -> Tuple[LieSuperalgebra, SubalgebraSpec]:
    """(t as an algebra, its even part as a subalgebra of it)."""
    E = restrict(t)
    even = [{k: 1} for k, p in enumerate(E.parities) if p == EVEN]
    return E, SubalgebraSpec(E, even, name=f"{t.name}_0")
