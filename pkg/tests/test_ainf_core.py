import itertools
import random

import pytest

from helpers import dual_numbers, table_algebra, trunc_poly, upper_triangular2

from ainfty.ainf_core import (
    AInfAlgebra, AInfMorphism, AInfModule, compose_morphisms, deform,
    free_module, from_dga, identity_morphism, module_ok, morphism_defect,
    morphism_ok, stasheff_defect, stasheff_ok, strict_unit_check,
)
from ainfty.fields import QQ, Field
from ainfty.grlin import (
    GradedMap, GradedSpace, map_from_entries, tensor_many, tensor_power,
)
from ainfty.hochschild import hochschild_complex
from ainfty.randomgen import random_dg_algebra


def test_from_dga_dual_numbers():
    alg = dual_numbers(QQ).to_ainf(check=True)
    assert alg.is_dg()
    assert not alg.is_weak()
    assert set(alg.arities()) == {2}
    assert stasheff_ok(alg, 6) is None
    assert alg.unit == ("s", "1")
    assert strict_unit_check(alg)


def test_from_dga_rejects_broken_leibniz():
    basis = [("1", 0), ("u", 0), ("v", 1)]
    prods = {("1", "1"): {"1": 1}, ("1", "u"): {"u": 1}, ("u", "1"): {"u": 1},
             ("1", "v"): {"v": 1}, ("v", "1"): {"v": 1},
             ("u", "u"): {"u": 1}}  # d(u·u) = v but du·u + u·du = 2uv = 0
    diffs = {"u": {"v": 1}}
    with pytest.raises(AssertionError):
        table_algebra(QQ, basis, prods, unit="1", diffs=diffs).to_ainf(check=True)


def test_suspended_product_signs():
    # b_2 = s ∘ m_2 ∘ (s⁻¹ ⊗ s⁻¹) picks up a sign on odd-degree left inputs
    basis = [("1", 0), ("t", 1)]
    prods = {("1", "1"): {"1": 1}, ("1", "t"): {"t": 1}, ("t", "1"): {"t": 1},
             ("t", "t"): {}}
    alg = table_algebra(QQ, basis, prods, unit="1").to_ainf(check=True)
    b2 = alg.op(2)
    # 1·t = t with |s1| even at level 0 ... the suspension transport keeps
    # exactness of the checks; spot two entries against direct computation
    assert b2((("s", "1"), ("s", "t"))) in ({("s", "t"): QQ.one}, {("s", "t"): QQ.of(-1)})
    assert stasheff_ok(alg, 4) is None


def test_stasheff_defect_zero_for_dg():
    alg = trunc_poly(QQ, 3).to_ainf(check=True)
    for n in range(1, 6):
        assert stasheff_defect(alg, n).is_zero()


def test_stasheff_catches_corruption():
    alg = trunc_poly(QQ, 3).to_ainf(check=True)
    sa = alg.sa
    extra = map_from_entries(
        QQ, tensor_power(sa, 2), sa, 1,
        [((("s", "x2"), ("s", "x2")), ("s", "x1"), QQ.one)])
    corrupt = AInfAlgebra(QQ, sa, {2: alg.op(2) + extra}, 2,
                          unit=alg.unit, check=False)
    assert stasheff_ok(corrupt, 4) == 3  # associativity breaks


def test_weak_structure_flag():
    sa = GradedSpace(QQ, [("a", 1)])
    b0 = GradedMap(QQ, tensor_power(sa, 0), sa, 1, {(): {"a": QQ.one}}, check=True)
    alg = AInfAlgebra(QQ, sa, {0: b0}, 2, check=False)
    assert alg.is_weak()


def test_deform_square_zero_cocycle():
    # c(x, x) = x on the dual numbers is a Hochschild 2-cocycle; the deformed
    # structure is a flat family member: all Stasheff identities hold
    dga = dual_numbers(QQ)
    c = map_from_entries(QQ, tensor_power(dga.space, 2), dga.space, 0,
                         [(("x1", "x1"), "x1", QQ.one)])
    alg = deform(dga.space, dga.mul, c, 2, unit="1", check=True)
    assert stasheff_ok(alg, 4) is None
    assert any(isinstance(n[1], tuple) and n[1][0] == "eps" for n in alg.sa.names)


def test_deform_non_cocycle_fails():
    dga = dual_numbers(QQ)
    hc = hochschild_complex(dga.space, dga.mul, unit_name="1", check=False)
    c = map_from_entries(QQ, dga.space, dga.space, 0, [("x1", "1", QQ.one)])
    assert not hc.differential(hc.from_ordinary(c)).is_zero()
    alg = deform(dga.space, dga.mul, c, 1, unit="1", check=False)
    assert stasheff_ok(alg, 3) is not None


def test_deform_arity_sets_epsilon_degree():
    dga = trunc_poly(QQ, 3)
    c = map_from_entries(QQ, tensor_power(dga.space, 3), dga.space, 0,
                         [(("x1", "x1", "x1"), "x2", QQ.one)])
    alg = deform(dga.space, dga.mul, c, 3, unit="1", check=False)
    # epsilon block sits in degree 2 − n = −1 before suspension
    degs = [alg.a_space.deg(m) for m in alg.a_space.names
            if isinstance(m, tuple) and m[0] == "eps"]
    assert degs == [-1, -1, -1]


def test_identity_morphism_and_composition():
    alg = trunc_poly(QQ, 4).to_ainf(check=True)
    one = identity_morphism(alg)
    assert morphism_ok(one, 4) is None
    two = compose_morphisms(one, one, n_max=4)
    assert morphism_ok(two, 4) is None
    for n in range(1, 5):
        assert morphism_defect(one, n).is_zero()


def test_morphism_defect_detects_non_multiplicative():
    a3 = trunc_poly(QQ, 3).to_ainf(check=True)
    a2 = dual_numbers(QQ).to_ainf(check=True)
    # the linear surjection x^k -> x^k (k ≤ 1), x2 -> 0 is not an algebra map:
    # f(x·x) = 0 but f(x)·f(x) = 0 ... that one actually works; send x2 to 1
    cols = {("s", "1"): {("s", "1"): QQ.one}, ("s", "x1"): {("s", "x1"): QQ.one},
            ("s", "x2"): {("s", "1"): QQ.one}}
    f1 = GradedMap(QQ, a3.sa, a2.sa, 0, cols, check=True)
    fmor = AInfMorphism(a3, a2, {1: f1}, check=False)
    assert morphism_ok(fmor, 3) == 2


def test_free_module_rank_one():
    alg = trunc_poly(QQ, 3).to_ainf(check=True)
    mod = free_module(alg)
    assert module_ok(mod, 4) is None


def test_module_ok_catches_broken_action():
    alg = dual_numbers(QQ).to_ainf(check=True)
    sm = GradedSpace(QQ, [("m", 0)])
    # m·x = m is inconsistent with x·x = 0: (m·x)·x = m but m·(x·x) = 0
    cols = {("m", ("s", "x1")): {"m": QQ.one}, ("m", ("s", "1")): {"m": QQ.one}}
    src = tensor_many(QQ, [sm, alg.sa])
    op2 = GradedMap(QQ, src, sm, 1, cols, check=False)
    mod = AInfModule(alg, sm, {2: op2}, 2, check=False)
    assert module_ok(mod, 4) == 3


def test_random_dg_algebras_pass_stasheff():
    for seed in range(12):
        alg = random_dg_algebra(QQ, seed).to_ainf(check=True)
        assert stasheff_ok(alg, 4) is None, seed


def test_char_two_algebra():
    F2 = Field(2)
    alg = trunc_poly(F2, 3).to_ainf(check=True)
    assert stasheff_ok(alg, 4) is None
