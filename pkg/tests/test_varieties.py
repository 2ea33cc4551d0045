import random
from fractions import Fraction

import pytest

from supercoh import cohomology as coh
from supercoh import liesuper as ls
from supercoh import smodule as sm
from supercoh import varieties as var
from supercoh import weights as wt
from supercoh.ratlin import SparseMatrix
from supercoh.superspace import EVEN, ODD


@pytest.fixture(scope="module")
def e3():
    return ls.detecting_subalgebra_sbar(3)[0]


def test_odd_line_free_module_is_projective():
    # U(<x>) with [x, x] = 0: dims (1|1), x maps the even vector to the odd one
    g = ls.abelian(0, 1)
    space = sm.even_first_space(1, 1)
    M = sm.SuperModule(g, space, [SparseMatrix(2, 2, {(1, 0): 1})])
    assert sm.validate_module(M).ok
    v = var.rank_point_test(M, [1])
    assert v.projective and v.witness["rank_X_on_V0"] == 1


def test_trivial_module_not_projective(e3):
    C = sm.trivial(ls.restrict(e3))
    for x in ([1, 0], [0, 1], [2, -3]):
        v = var.rank_point_test(C, x)
        assert not v.projective and v.in_variety


def test_invertible_c_gives_projective(e3):
    F = sm.free_e_module(e3, {ls.restrict(e3).index("x2d2"): 1})
    E = F.algebra
    odd = var.odd_basis(F)
    for x in ([1, 1], [2, 3], [-1, 1]):
        xe = {k: c for k, c in zip(odd, x)}
        C = F.act(E.bracket(xe, xe))
        assert not C.is_zero()
        assert var.rank_point_test(F, x).projective


def test_relation_violated_detected(e3):
    E = ls.restrict(e3)
    F = sm.free_e_module(e3, {E.index("x2d2"): 1})
    acts = list(F.actions)
    k = var.odd_basis(F)[0]
    acts[k] = acts[k].scale(2)
    with pytest.raises(var.RelationViolated):
        var.rank_point_test(sm.SuperModule(E, F.space, acts), [1, 1])


def test_free_and_trivial_samples(e3):
    F = sm.free_e_module(e3)
    d = var.rank_variety_sample(F, count=30, seed=3)
    assert d.consistent_with(var.ZERO_POINT)
    assert d.points[0].in_variety and not any(d.points[0].point)
    d = var.rank_variety_sample(sm.trivial(ls.restrict(e3)), count=30, seed=3)
    assert d.consistent_with(var.FULL_AFFINE) and not d.consistent_with(var.ZERO_POINT)


def _random_dims(seed):
    r = random.Random(seed)
    dims = (r.randint(0, 4), r.randint(0, 4))
    return dims if dims != (0, 0) else (1, 1)


@pytest.mark.parametrize("seed", range(6))
def test_rank_variety_matches_relative_ext(e3, seed):
    # projective in (e, e_0) iff Ext^{1..4}(M, M) = 0; H(e, e_0; C) is generated in degree 1
    E, e0 = ls.subalgebra_pair(e3)
    M = sm.random_e_module(e3, _random_dims(seed), seed)
    d = var.rank_variety_sample(M, count=50, seed=seed)
    ext = coh.ext_dims(E, e0, M, M, 4).dims
    assert d.consistent_with(var.ZERO_POINT) == (ext[1:] == [0, 0, 0, 0])


@pytest.mark.parametrize("seed", range(4))
def test_tensor_and_sum_pointwise(e3, seed):
    M = sm.random_e_module(e3, _random_dims(seed), seed)
    N = sm.random_e_module(e3, _random_dims(seed + 100), seed + 100)
    pts = var.random_points(20, 2, seed)
    for x in pts:
        a, b = var.rank_point_test(M, x).in_variety, var.rank_point_test(N, x).in_variety
        assert var.rank_point_test(sm.tensor(M, N), x).in_variety == (a and b)
        assert var.rank_point_test(sm.direct_sum(M, N), x).in_variety == (a or b)


def test_nonzero_superdimension_is_everywhere_nonprojective(e3):
    for seed in range(10):
        M = sm.random_e_module(e3, (3, 1), seed)
        assert sm.superdimension(M) != 0
        for x in var.random_points(10, 2, seed):
            assert not var.rank_point_test(M, x).projective


def test_support_simple_examples():
    assert var.support_simple("sbar", 3, (2, 1, 0)).kind == var.ZERO_POINT
    d = var.support_simple("sbar", 5, (1, 1, 1, 1, 0))
    assert (d.kind, d.dim, d.ambient_dim) == (var.FULL_AFFINE, 3, 3)
    d = var.support_simple("Sbar", 3, (2, 2, 2))
    assert (d.kind, d.dim) == (var.FULL_AFFINE, 1)
    with pytest.raises(wt.NotDominant):
        var.support_simple("sbar", 3, (0, 1, 2))
    with pytest.raises(var.Unsupported):
        var.support_simple("W", 3, (0, 0, 0))


def test_support_simple_follows_omega():
    for n in (3, 4):
        for lam in wt.dominant_weights(n, -3, 3):
            kind = var.support_simple("sbar", n, lam).kind
            assert (kind == var.FULL_AFFINE) == wt.is_atypical_Sbar(lam)


def test_support_kac():
    assert var.support_kac("sbar", 3, (0, 0, 0)).kind == var.ZERO_POINT
    assert var.support_kac("sbar", 4, (1, 1, 1, 1)).kind == var.ZERO_POINT
    with pytest.raises(wt.NotDominant):
        var.support_kac("sbar", 3, (0, 0, 1))


def test_quotient_descriptors():
    full = var.VarietyDescriptor(var.FULL_AFFINE, 3, 3)
    q = var.quotient_descriptor(full, "T")
    assert (q.kind, q.dim) == (var.FULL_AFFINE, 2)
    z = var.VarietyDescriptor(var.ZERO_POINT, 3)
    for grp in ("T", "Sym", "TSym"):
        assert var.quotient_descriptor(z, grp).kind == var.ZERO_POINT
    f2 = var.VarietyDescriptor(var.FULL_AFFINE, 2, 2)
    assert var.quotient_descriptor(f2, "Sym").dim == 2
    with pytest.raises(var.Unsupported):
        var.quotient_descriptor(var.VarietyDescriptor(var.SAMPLED, 2), "T")
    with pytest.raises(ValueError):
        var.VarietyDescriptor(var.FULL_AFFINE, 2, 3)


def test_descriptor_json():
    d = var.VarietyDescriptor(var.FULL_AFFINE, 2, 2)
    assert d.to_json() == {"schema": "1", "kind": "FullAffine", "ambient_dim": 2, "dim": 2}
    v = var.RankPointVerdict([Fraction(1, 2), Fraction(0)], True)
    assert v.to_json() == {"coords": ["1/2", "0"], "projective": True}
