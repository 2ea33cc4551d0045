"""Exact sparse linear algebra over the rationals.

Every dimension computed elsewhere in the package bottoms out here.  Matrices
are stored row-wise as dictionaries ``{col: Fraction}``; elimination runs on
integer rows (each row scaled by the lcm of its denominators) with
fraction-free updates, so Python's big integers carry all the arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Vector = Dict[int, Fraction]


class CompositionNonzero(ValueError):
    """Raised when two maps that should compose to zero do not."""


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class SparseMatrix:
    """Immutable sparse rational matrix.

    >>> m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6]])
    >>> m.nrows, m.ncols, rank(m)
    (2, 3, 1)
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[Tuple[int, int], object] = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        rows: Dict[int, Vector] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (i, j), v in items:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            v = _q(v)
            if v:
                rows.setdefault(i, {})[j] = v
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def from_rows(cls, nrows: int, ncols: int, rows: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        m = cls(nrows, ncols)
        for i, row in enumerate(rows):
            clean = {}
            for j, v in row.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} outside {ncols}")
                v = _q(v)
                if v:
                    clean[j] = v
            if clean:
                if i >= nrows:
                    raise IndexError(f"row {i} outside {nrows}")
                m._rows[i] = clean
        return m

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[Mapping[int, object]]) -> "SparseMatrix":
        m = cls(nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                if not 0 <= i < nrows:
                    raise IndexError(f"row {i} outside {nrows}")
                v = _q(v)
                if v:
                    m._rows.setdefault(i, {})[j] = v
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls.from_rows(nrows, ncols, [{j: v for j, v in enumerate(r) if v} for r in rows])

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {(i, j): v for i, row in self._rows.items() for j, v in row.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, i: int) -> Vector:
        return dict(self._rows.get(i, {}))

    def rows(self) -> List[Vector]:
        return [dict(self._rows.get(i, {})) for i in range(self.nrows)]

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.ncols)]
        for i, row in self._rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows.get(i, {}).get(j, Fraction(0))

    def is_zero(self) -> bool:
        return not self._rows

    def is_diagonal(self) -> bool:
        return all(set(row) <= {i} for i, row in self._rows.items())

    def transpose(self) -> "SparseMatrix":
        m = SparseMatrix(self.ncols, self.nrows)
        for i, row in self._rows.items():
            for j, v in row.items():
                m._rows.setdefault(j, {})[i] = v
        return m

    def apply(self, vec: Mapping[int, object]) -> Vector:
        """Matrix times a sparse column vector."""
        out: Vector = {}
        for i, row in self._rows.items():
            s = 0
            for j, v in row.items():
                x = vec.get(j)
                if x:
                    s += v * x
            if s:
                out[i] = _q(s)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        m = SparseMatrix(self.nrows, other.ncols)
        orows = other._rows
        for i, row in self._rows.items():
            acc: Dict[int, object] = {}
            for k, a in row.items():
                orow = orows.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: _q(v) for j, v in acc.items() if v}
            if acc:
                m._rows[i] = acc
        return m

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        m = SparseMatrix(self.nrows, self.ncols)
        for i in set(self._rows) | set(other._rows):
            acc = dict(self._rows.get(i, {}))
            for j, v in other._rows.get(i, {}).items():
                acc[j] = acc.get(j, 0) + sign * v
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                m._rows[i] = acc
        return m

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -1)

    def scale(self, c) -> "SparseMatrix":
        c = _q(c)
        return SparseMatrix(self.nrows, self.ncols, {k: c * v for k, v in self.entries.items()})

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(sorted(self.entries.items()))))

    def to_dense(self) -> List[List[Fraction]]:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[i, j, f"{v.numerator}/{v.denominator}"] for (i, j), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SparseMatrix":
        return cls(data["rows"], data["cols"], {(i, j): Fraction(v) for i, j, v in data["entries"]})


# ---------------------------------------------------------------------------
# elimination


def _int_row(row: Mapping[int, object]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        if d != 1:
            den = lcm(den, d)
    out = {}
    for j, v in row.items():
        if v:
            out[j] = int(v * den) if den != 1 or isinstance(v, Fraction) else v
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


class Echelon:
    """Incremental fraction-free echelon form.

    Rows are inserted one at a time; each is reduced against the pivots
    already present (oldest pivot first, so reduction terminates) and, if
    something survives, its pivot is the surviving column with the smallest
    static column count (Markowitz-style least fill; ties broken by column
    index).
    """

    def __init__(self, ncols: int, col_counts: Sequence[int] | None = None):
        self.ncols = ncols
        self.col_counts = col_counts
        self.pivot_rows: List[Tuple[int, Dict[int, int]]] = []
        self._order: Dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        order = self._order
        prows = self.pivot_rows
        while row:
            best = None
            for j in row:
                k = order.get(j)
                if k is not None and (best is None or k < best):
                    best = k
            if best is None:
                break
            c, prow = prows[best]
            a = prow[c]
            b = row[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {j: a * v for j, v in row.items()}
            for j, v in prow.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new)
        return row

    def insert(self, row: Mapping[int, object]) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(_int_row(row))
        if not r:
            return False
        cc = self.col_counts
        if cc is None:
            c = min(r)
        else:
            c = min(r, key=lambda j: (cc[j], j))
        self._order[c] = len(self.pivot_rows)
        self.pivot_rows.append((c, r))
        return True

    def contains(self, row: Mapping[int, object]) -> bool:
        return not self.reduce(_int_row(row))

    def kernel(self) -> List[Vector]:
        """Null space of the inserted rows, one vector per free column.

        The vector attached to free column f has entry 1 at f and 0 at every
        other free column, so coordinates of a kernel element in this basis are
        read off at the free columns.
        """
        pivots = self._order
        expr: Dict[int, Vector] = {}
        for c, row in reversed(self.pivot_rows):
            a = row[c]
            acc: Dict[int, Fraction] = {}
            for j, v in row.items():
                if j == c:
                    continue
                if j in pivots:
                    for f, w in expr[j].items():
                        acc[f] = acc.get(f, 0) + v * w
                else:
                    acc[j] = acc.get(j, 0) + v
            expr[c] = {f: Fraction(-w, a) if isinstance(w, int) else -w / a for f, w in acc.items() if w}
        basis: Dict[int, Vector] = {f: {f: Fraction(1)} for f in range(self.ncols) if f not in pivots}
        for c, e in expr.items():
            for f, w in e.items():
                basis[f][c] = w
        return [basis[f] for f in sorted(basis)]


def _echelon(m: SparseMatrix) -> Echelon:
    counts = [0] * m.ncols
    for row in m._rows.values():
        for j in row:
            counts[j] += 1
    ech = Echelon(m.ncols, counts)
    for i in sorted(m._rows, key=lambda i: (len(m._rows[i]), i)):
        ech.insert(m._rows[i])
    return ech


def rank(m: SparseMatrix) -> int:
    """Rank over Q."""
    return _echelon(m).rank


def kernel_basis(m: SparseMatrix) -> List[Vector]:
    """A basis of the right null space ``{v : m v = 0}`` as sparse vectors."""
    return _echelon(m).kernel()


def rank_of_vectors(vectors: Iterable[Mapping[int, object]], dim: int) -> int:
    ech = Echelon(dim)
    for v in vectors:
        ech.insert(v)
    return ech.rank


def subquotient_dim(d_in: SparseMatrix, d_out: SparseMatrix) -> int:
    """``dim ker(d_out) - rank(d_in)`` for a composable pair with zero composite."""
    if d_in.nrows != d_out.ncols:
        raise ValueError(f"not composable: {d_in.shape} then {d_out.shape}")
    if not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out . d_in != 0")
    return d_out.ncols - rank(d_out) - rank(d_in)


# ---------------------------------------------------------------------------
# spans of small families of vectors


class Span:
    """Row space of a list of vectors, with coordinates back in that list.

    Keeps a reduced row echelon form ``R = T V`` so that a vector in the span
    can be written in terms of the original generators.  Meant for the small
    bases (a few dozen vectors) that show up in subalgebras and gradings.
    """

    def __init__(self, vectors: Sequence[Mapping[int, object]]):
        self.vectors = [{j: _q(v) for j, v in vec.items() if v} for vec in vectors]
        rows: List[Vector] = []
        trans: List[Vector] = []
        pivots: List[int] = []
        for idx, vec in enumerate(self.vectors):
            r = dict(vec)
            t: Vector = {idx: Fraction(1)}
            for prow, ptrans, pc in zip(rows, trans, pivots):
                c = r.get(pc)
                if c:
                    _axpy(r, -c, prow)
                    _axpy(t, -c, ptrans)
            if not r:
                continue
            pc = min(r)
            inv = 1 / r[pc]
            r = {j: v * inv for j, v in r.items()}
            t = {j: v * inv for j, v in t.items()}
            for k, prow in enumerate(rows):
                c = prow.get(pc)
                if c:
                    _axpy(prow, -c, r)
                    _axpy(trans[k], -c, t)
            rows.append(r)
            trans.append(t)
            pivots.append(pc)
        self.rows = rows
        self.trans = trans
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.rows)

    def independent(self) -> bool:
        return self.dim == len(self.vectors)

    def residual(self, vec: Mapping[int, object]) -> Vector:
        """``vec`` minus its component along the span (zero at all pivots)."""
        r = {j: _q(v) for j, v in vec.items() if v}
        for prow, pc in zip(self.rows, self.pivots):
            c = r.get(pc)
            if c:
                _axpy(r, -c, prow)
        return r

    def __contains__(self, vec: Mapping[int, object]) -> bool:
        return not self.residual(vec)

    def coordinates(self, vec: Mapping[int, object]) -> Vector:
        """Coefficients of ``vec`` in the original generators (independent case)."""
        if self.residual(vec):
            raise ValueError("vector not in span")
        out: Vector = {}
        for t, pc in zip(self.trans, self.pivots):
            c = vec.get(pc)
            if c:
                _axpy(out, _q(c), t)
        return out


def _axpy(y: Dict[int, Fraction], a, x: Mapping[int, Fraction]) -> None:
    for j, v in x.items():
        w = y.get(j, 0) + a * v
        if w:
            y[j] = w
        else:
            y.pop(j, None)


def add_into(y: Dict[int, object], a, x: Mapping[int, object]) -> None:
    """In-place ``y += a * x`` on sparse vectors, dropping zeros."""
    _axpy(y, a, x)
