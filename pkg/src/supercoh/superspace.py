"""Graded super vector spaces and super wedge powers.

A super wedge power Lambda_s^p(V) is Lambda(V_even) (x) S(V_odd) in total
degree p.  Words are tuples of basis indices; the canonical form lists the
even indices (strictly increasing) followed by the odd ones (weakly
increasing).  Swapping adjacent letters a, b costs ``-(-1)^(|a||b|)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class BasisLabel:
    label: str
    degree: Optional[int]
    parity: int


@dataclass(frozen=True)
class SuperSpace:
    basis: Tuple[BasisLabel, ...]

    def __post_init__(self):
        labels = [b.label for b in self.basis]
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        for b in self.basis:
            if b.parity not in (EVEN, ODD):
                raise ValueError(f"bad parity for {b.label}")

    @classmethod
    def from_parities(cls, parities: Sequence[int], prefix: str = "v", degrees=None) -> "SuperSpace":
        degrees = degrees or [None] * len(parities)
        return cls(tuple(BasisLabel(f"{prefix}{i}", d, p) for i, (p, d) in enumerate(zip(parities, degrees))))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def parities(self) -> Tuple[int, ...]:
        return tuple(b.parity for b in self.basis)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(b.label for b in self.basis)

    @property
    def dims(self) -> Tuple[int, int]:
        odd = sum(self.parities)
        return self.dim - odd, odd

    def graded_dims(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for b in self.basis:
            out[b.degree] = out.get(b.degree, 0) + 1
        return dict(sorted(out.items(), key=lambda kv: (kv[0] is None, kv[0])))

    def consistent_grading(self) -> bool:
        return all(b.degree is None or b.degree % 2 == b.parity for b in self.basis)


def dual(v: SuperSpace) -> SuperSpace:
    return SuperSpace(tuple(
        BasisLabel(b.label[:-1] if b.label.endswith("*") else b.label + "*",
                   None if b.degree is None else -b.degree, b.parity)
        for b in v.basis))


def tensor(a: SuperSpace, b: SuperSpace) -> SuperSpace:
    out = []
    for x in a.basis:
        for y in b.basis:
            deg = None if x.degree is None or y.degree is None else x.degree + y.degree
            out.append(BasisLabel(f"{x.label}(x){y.label}", deg, (x.parity + y.parity) % 2))
    return SuperSpace(tuple(out))


def direct_sum(a: SuperSpace, b: SuperSpace) -> SuperSpace:
    return SuperSpace(tuple(BasisLabel(f"{x.label}#0", x.degree, x.parity) for x in a.basis)
                      + tuple(BasisLabel(f"{y.label}#1", y.degree, y.parity) for y in b.basis))


class WedgeBasisElement(NamedTuple):
    even_indices: Tuple[int, ...]
    odd_indices: Tuple[int, ...]

    @property
    def word(self) -> Tuple[int, ...]:
        return self.even_indices + self.odd_indices

    def __len__(self):
        return len(self.even_indices) + len(self.odd_indices)


def wedge_dim(n_even: int, n_odd: int, p: int) -> int:
    """Binomial-sum dimension of Lambda_s^p for a (n_even|n_odd) space."""
    if p < 0:
        return 0
    total = 0
    for k in range(min(n_even, p) + 1):
        r = p - k
        total += comb(n_even, k) * (comb(n_odd + r - 1, r) if n_odd else int(r == 0))
    return total


def canonical_words(parities: Sequence[int], p: int) -> List[Tuple[int, ...]]:
    """All canonical words of length p, evens block first, lexicographic."""
    if p < 0:
        return []
    evens = [i for i, q in enumerate(parities) if q == EVEN]
    odds = [i for i, q in enumerate(parities) if q == ODD]
    out: List[Tuple[int, ...]] = []

    def rec(pos: int, left: int, prefix: Tuple[int, ...]):
        if left == 0:
            out.append(prefix)
            return
        ne = len(evens)
        for k in range(pos, ne + len(odds)):
            if k < ne:
                rec(k + 1, left - 1, prefix + (evens[k],))
            else:
                rec(k, left - 1, prefix + (odds[k - ne],))

    rec(0, p, ())
    return out


def wedge_basis(v: SuperSpace, p: int) -> List[WedgeBasisElement]:
    par = v.parities
    out = []
    for w in canonical_words(par, p):
        k = sum(1 for i in w if par[i] == EVEN)
        out.append(WedgeBasisElement(w[:k], w[k:]))
    return out


def normalize_word(word: Sequence[int], parities: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sort a word into canonical form; return (sign, canonical word).

    Sign is 0 when an even letter repeats.
    """
    n = len(word)
    sign = 1
    for a in range(n):
        x = word[a]
        px = parities[x]
        for b in range(a + 1, n):
            y = word[b]
            py = parities[y]
            if x == y:
                if px == EVEN:
                    return 0, ()
                continue
            if (px, x) > (py, y):
                if not (px and py):
                    sign = -sign
    if sign == 0:
        return 0, ()
    return sign, tuple(sorted(word, key=lambda i: (parities[i], i)))


def normalize_wedge(word: Sequence[int], v: SuperSpace) -> Tuple[int, Optional[WedgeBasisElement]]:
    par = v.parities
    for i in word:
        if not 0 <= i < v.dim:
            raise IndexError(f"index {i} outside space of dim {v.dim}")
    sign, w = normalize_word(word, par)
    if sign == 0:
        return 0, None
    k = sum(1 for i in w if par[i] == EVEN)
    return sign, WedgeBasisElement(w[:k], w[k:])


def koszul_sign(word: Sequence[int], perm: Sequence[int], parities: Sequence[int]) -> int:
    """Sign picked up by rearranging ``word`` into ``[word[i] for i in perm]``."""
    sign = 1
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b]:
                if not (parities[word[perm[a]]] and parities[word[perm[b]]]):
                    sign = -sign
    return sign
