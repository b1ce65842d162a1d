import pytest

from helpers import trunc_poly

from ainfty.ext import (
    QuiverPresentation, dg_end, ext_ainf, fd_algebra_from_table, path_algebra,
    projective_resolution, simple_module,
)
from ainfty.fields import QQ


def a4_presentation():
    # linear quiver 1 -> 2 -> 3 -> 4 with the length-3 path set to zero;
    # arrows compose function-style, rightmost applied first
    return QuiverPresentation(
        vertices=["1", "2", "3", "4"],
        arrows=[("ga", "1", "2"), ("be", "2", "3"), ("al", "3", "4")],
        relations=[{("al", "be", "ga"): 1}])


def trunc_fd(n):
    dga = trunc_poly(QQ, n)
    return fd_algebra_from_table(QQ, dga.space, dga.mul, "1")


# -------------------------------------------------------------- path algebras

def test_path_algebra_a4_basis_and_products():
    B = path_algebra(QQ, a4_presentation())
    assert sorted(B.space.names) == [
        "al", "al*be", "be", "be*ga", "e_1", "e_2", "e_3", "e_4", "ga"]
    assert B.mul_names("al", "be") == {"al*be": QQ.one}
    assert B.mul_names("be", "ga") == {"be*ga": QQ.one}
    # the relation kills the long path from either side
    assert B.mul_names("al*be", "ga") == {}
    assert B.mul_names("al", "be*ga") == {}
    # composition in the wrong order is zero from the start
    assert B.mul_names("ga", "al") == {}
    assert B.mul_names("e_4", "al") == {"al": QQ.one}
    assert B.mul_names("al", "e_3") == {"al": QQ.one}
    assert len(B.radical_names()) == 5


def test_path_algebra_loop_needs_relation():
    loop = QuiverPresentation(vertices=["v"], arrows=[("x", "v", "v")],
                              relations=[], nilpotency_bound=4)
    with pytest.raises(AssertionError):
        path_algebra(QQ, loop)
    bounded = QuiverPresentation(vertices=["v"], arrows=[("x", "v", "v")],
                                 relations=[{("x", "x"): 1}], nilpotency_bound=4)
    B = path_algebra(QQ, bounded)
    assert sorted(B.space.names) == ["e_v", "x"]
    assert B.mul_names("x", "x") == {}


# ---------------------------------------------------------------- resolutions

def test_a4_simple_resolutions():
    B = path_algebra(QQ, a4_presentation())
    # the source vertex carries a projective simple
    res1 = projective_resolution(B, simple_module(B, "1"), 6)
    assert res1.exact and res1.steps == [["1"]] and res1.betti() == [1]
    # the sink sees the relation: P(1) -> P(3) -> P(4)
    res4 = projective_resolution(B, simple_module(B, "4"), 6)
    assert res4.exact
    assert res4.steps == [["4"], ["3"], ["1"]]
    assert res4.betti() == [1, 1, 1]
    assert res4.diffs[0] == {(0, 0): {"al": QQ.one}}
    assert res4.diffs[1] == {(0, 0): {"be*ga": QQ.one}}


def test_truncated_polynomial_resolution_is_periodic():
    B = trunc_fd(3)
    res = projective_resolution(B, simple_module(B, "1"), 5)
    assert not res.exact
    assert res.steps == [["1"]] * 6 and res.betti() == [1] * 6
    # multiplication by x and by x² alternate
    for j, d in enumerate(res.diffs):
        want = "x1" if j % 2 == 0 else "x2"
        assert d == {(0, 0): {want: QQ.one}}
    assert res.aug == [{"s_1": QQ.one}]


def test_dg_end_is_a_dg_algebra():
    B = path_algebra(QQ, a4_presentation())
    res = projective_resolution(B, simple_module(B, "4"), 6)
    end = dg_end(res, check=True)
    assert end.d.compose(end.d).is_zero()
    assert not end.d.is_zero()
    # 3 projective steps, pairwise hom spaces are small but nontrivial
    aend = end.to_ainf(check=True)
    assert set(aend.arities()) <= {1, 2}


# ------------------------------------------------------- minimal Ext structure

def ext_dims(data):
    out = {}
    for _, q in data.labels.items():
        out[q] = out.get(q, 0) + 1
    return out


def test_ext_a4_sum_of_simples():
    B = path_algebra(QQ, a4_presentation())
    mods = [(v, simple_module(B, v)) for v in ["1", "2", "3", "4"]]
    data = ext_ainf(B, mods, 4)
    assert data.valid_degree is None and data.resolution.exact
    assert ext_dims(data) == {0: 4, 1: 3, 2: 1}
    m = data.algebra
    assert set(m.arities()) == {2, 3}
    # degree-1 classes have no binary products: every composition of two
    # arrows is a radical square, invisible to Ext¹·Ext¹ here
    ones = sorted(n for n, q in data.labels.items() if q == 1)
    b2 = m.ops[2]
    for x in ones:
        for y in ones:
            assert (x, y) not in b2.cols
    # the relation shows up as a single ternary product
    assert m.ops[3].cols == {
        ("ext1_0", "ext1_1", "ext1_2"): {"ext2_0": QQ.one}}
    assert data.summand_classes == {
        "1": {"ext0_0": QQ.one}, "2": {"ext0_1": QQ.one},
        "3": {"ext0_2": QQ.one}, "4": {"ext0_3": QQ.one}}


def test_ext_truncated_polynomial_higher_products():
    # k[x]/(x^n): one class in each degree, operations in arities {2, n} only,
    # and the n-fold product of the degree-1 class hits the degree-2 class
    for n in (3, 4):
        B = trunc_fd(n)
        k = simple_module(B, "1")
        data = ext_ainf(B, k, n, resolution_length=n + 3)
        assert data.valid_degree == 3
        assert ext_dims(data) == {0: 1, 1: 1, 2: 1, 3: 1}
        m = data.algebra
        assert set(m.arities()) == {2, n}
        y = ("ext1_0",) * n
        assert m.ops[n].cols.get(y) == {"ext2_0": QQ.one}
        assert ("ext1_0", "ext1_0") not in m.ops[2].cols
        # products against the degree-0 class act as a unit up to sign
        assert m.ops[2].cols[("ext0_0", "ext1_0")] == {"ext1_0": QQ.one}


def test_ext_hereditary_is_formal():
    # no relations: global dimension 1, so Ext stops in degree 1 and the
    # transferred structure is a plain graded algebra
    qp = QuiverPresentation(vertices=["1", "2", "3"],
                            arrows=[("b", "1", "2"), ("a", "2", "3")],
                            relations=[])
    B = path_algebra(QQ, qp)
    mods = [(v, simple_module(B, v)) for v in ["1", "2", "3"]]
    data = ext_ainf(B, mods, 5)
    assert data.valid_degree is None
    assert ext_dims(data) == {0: 3, 1: 2}
    m = data.algebra
    assert set(m.arities()) == {2}
    ones = sorted(n for n, q in data.labels.items() if q == 1)
    for x in ones:
        for y in ones:
            assert (x, y) not in m.ops[2].cols


def test_ext_is_deterministic():
    B = path_algebra(QQ, a4_presentation())
    mods = [(v, simple_module(B, v)) for v in ["1", "2", "3", "4"]]
    d1 = ext_ainf(B, mods, 4)
    d2 = ext_ainf(B, mods, 4)
    assert d1.labels == d2.labels
    assert {n: d1.algebra.ops[n].cols for n in d1.algebra.arities()} == \
           {n: d2.algebra.ops[n].cols for n in d2.algebra.arities()}
