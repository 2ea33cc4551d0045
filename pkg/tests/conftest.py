import random
from fractions import Fraction

import pytest
import sympy


def sympy_rank(rows):
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in r]
                         for r in rows]).rank()


def random_dense(rng, nrows, ncols, density=0.3, bound=3):
    return [[Fraction(rng.randint(-bound, bound)) if rng.random() < density else Fraction(0)
             for _ in range(ncols)] for _ in range(nrows)]


@pytest.fixture
def rng():
    return random.Random(12345)
