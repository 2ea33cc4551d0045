"""Weight combinatorics for W(n) and Sbar(n): dominance, atypicality, sigma shifts.

Coordinates are in the basis eps_1..eps_n dual to xi_1 d_1, ..., xi_n d_n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


class NotDominant(ValueError):
    pass


class NotAtypical(ValueError):
    pass


class IsSigmaMultiple(ValueError):
    pass


def _q(lam: Sequence) -> List[Fraction]:
    return [Fraction(x) for x in lam]


def parse_weight(text: str) -> List[Fraction]:
    return [Fraction(x.strip()) for x in text.strip().strip("()").split(",") if x.strip()]


def is_dominant(lam: Sequence) -> bool:
    lam = _q(lam)
    return all(x.denominator == 1 for x in lam) and all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def is_atypical_W(lam: Sequence) -> bool:
    """lam = a eps_i + eps_{i+1} + ... + eps_n for some i and a."""
    lam = _q(lam)
    n = len(lam)
    for i in range(n):
        if all(x == 0 for x in lam[:i]) and all(x == 1 for x in lam[i + 1:]):
            return True
    return False


def omega_forms(lam: Sequence) -> List[Tuple[int, Fraction, Fraction]]:
    """All (i, a, b) (i 1-based) with lam = a(eps_1..eps_{i-1}) + b eps_i + (a+1)(eps_{i+1}..eps_n).

    When i = 1 the value of a is fixed by the tail; when i = n = 1 any a works and
    we report a = b.
    """
    lam = _q(lam)
    n = len(lam)
    out = []
    for i in range(n):
        head, b, tail = lam[:i], lam[i], lam[i + 1:]
        if head:
            a = head[0]
        elif tail:
            a = tail[0] - 1
        else:
            a = b
        if all(x == a for x in head) and all(x == a + 1 for x in tail):
            out.append((i + 1, a, b))
    return out


def is_atypical_Sbar(lam: Sequence) -> bool:
    """Membership in the atypical set Omega of Sbar(n)."""
    return bool(omega_forms(lam))


def atypical_dominant_form(lam: Sequence) -> bool:
    """lam_1 = ... = lam_{n-1} and lam_n <= lam_1, for dominant integral lam."""
    lam = _q(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{[str(x) for x in lam]} is not dominant integral")
    return all(x == lam[0] for x in lam[:-1]) and lam[-1] <= lam[0]


def sigma_multiple(lam: Sequence) -> Optional[Fraction]:
    lam = _q(lam)
    return lam[0] if lam and all(x == lam[0] for x in lam) else None


def sigma_shift(lam: Sequence) -> Tuple[Fraction, List[Fraction]]:
    """The unique a with lam - a sigma atypical for W(n), and lam - a sigma.

    Needs n >= 3: for n = 2 both (a, 1) and (0, a) lie in Omega_W and the
    shift is ambiguous.
    """
    lam = _q(lam)
    if len(lam) < 3:
        raise ValueError("sigma shift is only unique for n >= 3")
    if sigma_multiple(lam) is not None:
        raise IsSigmaMultiple(f"{[str(x) for x in lam]} is a multiple of sigma")
    if not is_atypical_Sbar(lam):
        raise NotAtypical(f"{[str(x) for x in lam]} is not in Omega")
    cands = sorted({x for x in lam} | {x - 1 for x in lam})
    hits = [a for a in cands if is_atypical_W([x - a for x in lam])]
    if len(hits) != 1:
        raise AssertionError(f"sigma shift not unique: {hits}")
    a = hits[0]
    return a, [x - a for x in lam]


def dominant_weights(n: int, lo: int, hi: int):
    """All dominant integral weights with entries in [lo, hi]."""
    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for x in range(top, lo - 1, -1):
            yield from rec(prefix + [x], x)
    yield from rec([], hi)
