"""Naive relative Chevalley-Eilenberg complex, written independently of supercoh.cochain.

Cochains are stored on every canonical word of the complement basis; invariance
is imposed under every member of t; linear algebra is sympy's DomainMatrix over QQ.
Only even t is supported (all pairs used in the tests).
"""

from itertools import combinations, combinations_with_replacement

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def words(par, p):
    ev = [i for i, q in enumerate(par) if q == 0]
    od = [i for i, q in enumerate(par) if q == 1]
    out = []
    for k in range(p + 1):
        for a in combinations(ev, k):
            for b in combinations_with_replacement(od, p - k):
                out.append(a + b)
    return out


def canon(word, par):
    w, sign = list(word), 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            x, y = w[j], w[j + 1]
            if x == y and par[x] == 0:
                return 0, None
            if (par[x], x) > (par[y], y):
                w[j], w[j + 1] = y, x
                if not (par[x] and par[y]):
                    sign = -sign
    if any(w[j] == w[j + 1] and par[w[j]] == 0 for j in range(len(w) - 1)):
        return 0, None
    return sign, tuple(w)


class NaiveComplex:
    def __init__(self, g, t, M):
        assert all(g.element_parity(v) == 0 for v in t.members)
        self.g, self.M = g, M
        tset = set()
        for v in t.members:
            assert len(v) == 1, "oracle needs basis-aligned t"
            tset |= set(v)
        self.comp = [k for k in range(g.dim) if k not in tset]
        self.tset = tset
        self.pos = {k: a for a, k in enumerate(self.comp)}
        self.par = [g.parities[k] for k in self.comp]
        self.t = [next(iter(v)) for v in t.members]
        self.mact = [[[0] * M.dim for _ in range(M.dim)] for _ in range(g.dim)]
        for k, A in enumerate(M.actions):
            for (r, c), x in A.entries.items():
                self.mact[k][r][c] = QQ(x.numerator, x.denominator)
        self._spaces = {}

    def br(self, a, b):
        # [x_a, x_b] projected onto the complement, in complement coordinates
        out = {}
        for k, c in self.g.bracket({self.comp[a]: 1}, {self.comp[b]: 1}).items():
            if k in self.pos:
                out[self.pos[k]] = QQ(c.numerator, c.denominator)
        return out

    def ambient(self, p):
        ws = words(self.par, p)
        idx = {(w, m): i for i, (w, m) in enumerate((w, m) for w in ws for m in range(self.M.dim))}
        return ws, idx

    def evaluate(self, word, m, idx):
        """Row over ambient coordinates giving component m of phi(word)."""
        s, w = canon(word, self.par)
        return {} if s == 0 else {idx[(w, m)]: QQ(s)}

    def diff_rows(self, p):
        """Ambient matrix of d: C^p -> C^(p+1), one row per (word, m) of degree p+1."""
        ws, idx = self.ambient(p)
        ws1, idx1 = self.ambient(p + 1)
        par, M = self.par, self.M
        Mpar = M.parities
        rows = []
        for w in ws1:
            xs = list(w)
            k = [sum(par[x] for x in xs[:i]) for i in range(len(xs))]
            for m in range(M.dim):
                row = {}

                def add(r, c):
                    for key, v in r.items():
                        row[key] = row.get(key, QQ(0)) + c * v
                # action term: x_i . phi(rest); the parity of phi is read off per coordinate
                for i, x in enumerate(xs):
                    rest = xs[:i] + xs[i + 1:]
                    A = self.mact[self.comp[x]]
                    for mm in range(M.dim):
                        c = A[m][mm]
                        if not c:
                            continue
                        phibar = (Mpar[mm] + sum(par[y] for y in rest)) % 2
                        e = i + (par[x] * (k[i] + phibar))
                        add(self.evaluate(rest, mm, idx), c * (-1) ** e)
                # bracket term
                for i in range(len(xs)):
                    for j in range(i + 1, len(xs)):
                        kij = sum(par[x] for x in xs[i + 1:j])
                        e = (i + 1) + (j + 1) + (par[xs[i]] + par[xs[j]]) * k[i] + par[xs[j]] * kij
                        rest = xs[:i] + xs[i + 1:j] + xs[j + 1:]
                        for z, c in self.br(xs[i], xs[j]).items():
                            add(self.evaluate([z] + rest, m, idx), c * (-1) ** e)
                rows.append(row)
        return rows, len(idx)

    def invariant_basis(self, p):
        if p in self._spaces:
            return self._spaces[p]
        ws, idx = self.ambient(p)
        N = len(idx)
        rows = []
        for y in self.t:
            A = self.mact[y]
            ady = {}
            for a, x in enumerate(self.comp):
                col = {}
                for k, c in self.g.bracket({y: 1}, {x: 1}).items():
                    if k in self.pos:
                        col[self.pos[k]] = QQ(c.numerator, c.denominator)
                ady[a] = col
            for w in ws:
                for m in range(self.M.dim):
                    # (y.phi)(w)_m = sum_mm A[m][mm] phi(w)_mm - sum_s phi(.., [y, x_s], ..)_m
                    row = {}
                    for mm in range(self.M.dim):
                        if A[m][mm]:
                            row[idx[(w, mm)]] = row.get(idx[(w, mm)], QQ(0)) + A[m][mm]
                    for s in range(len(w)):
                        for z, c in ady[w[s]].items():
                            for key, v in self.evaluate(w[:s] + (z,) + w[s + 1:], m, idx).items():
                                row[key] = row.get(key, QQ(0)) - c * v
                    if any(row.values()):
                        rows.append(row)
        if rows:
            mat = to_dm(rows, N)
            basis = mat.nullspace().to_Matrix().T  # columns span the kernel
            K = DomainMatrix.from_Matrix(basis).convert_to(QQ)
        else:
            K = DomainMatrix.eye(N, QQ)
        self._spaces[p] = K
        return K

    def differential(self, p):
        rows, N = self.diff_rows(p)
        D = to_dm(rows, N) if rows else DomainMatrix.zeros((0, N), QQ)
        return D * self.invariant_basis(p)

    def cohomology(self, p_max):
        dims = []
        prev_rank = 0
        for p in range(p_max + 1):
            K = self.invariant_basis(p)
            dimC = K.shape[1]
            D = self.differential(p)
            r = D.rank() if D.shape[0] and dimC else 0
            dims.append(dimC - r - prev_rank)
            prev_rank = r
        return dims

    def cochain_dims(self, p_max):
        return [self.invariant_basis(p).shape[1] for p in range(p_max + 1)]


def to_dm(rows, ncols):
    from sympy.polys.matrices.sdm import SDM
    data = {}
    for i, r in enumerate(rows):
        rr = {j: v for j, v in r.items() if v}
        if rr:
            data[i] = rr
    return DomainMatrix.from_rep(SDM(data, (len(rows), ncols), QQ))
