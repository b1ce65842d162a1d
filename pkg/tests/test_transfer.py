from functools import lru_cache

from hypothesis import given, strategies as st

from helpers import trunc_poly

from ainfty.ainf_core import morphism_ok, stasheff_ok
from ainfty.fields import QQ
from ainfty.grlin import (
    ChainComplex, ContractionData, GradedSpace, homology_with_contraction,
    identity_map, koszul_many, zero_map,
)
from ainfty.randomgen import random_dg_algebra
from ainfty.transfer import minimal_model, planar_trees, transfer_structure


@lru_cache(maxsize=None)
def tree_count_oracle(n):
    "rooted planar trees with n leaves, every inner vertex at least binary"
    if n == 1:
        return 1

    def comps(m, k):
        # ordered k-part compositions of m, weighted by subtree counts
        if k == 1:
            return tree_count_oracle(m)
        return sum(tree_count_oracle(first) * comps(m - first, k - 1)
                   for first in range(1, m - k + 2))

    return sum(comps(n, k) for k in range(2, n + 1))


def test_planar_tree_counts_first_values():
    assert [len(planar_trees(n)) for n in range(1, 6)] == [1, 1, 3, 11, 45]


@given(st.integers(min_value=1, max_value=8))
def test_planar_trees_match_recursion_oracle(n):
    trees = planar_trees(n)
    assert len(trees) == tree_count_oracle(n)
    assert len(set(trees)) == len(trees)  # no duplicates


def test_minimal_input_is_fixed_point():
    "b_1 = 0 on the input: transfer with the trivial contraction changes nothing"
    alg = trunc_poly(QQ, 3).to_ainf(check=True)
    assert alg.op(1).is_zero()
    cx = ChainComplex(alg.sa, alg.op(1))
    con = ContractionData(cx, alg.sa, identity_map(alg.sa), identity_map(alg.sa),
                          zero_map(QQ, alg.sa, alg.sa, -1))
    mini, incl = transfer_structure(alg, con, 5)
    assert set(mini.arities()) == set(alg.arities())
    for n in alg.arities():
        assert mini.op(n) == alg.op(n)
    assert morphism_ok(incl, 5) is None


def test_acyclic_complex_transfers_to_zero():
    from helpers import table_algebra
    basis = [("u", 0), ("v", 1)]
    prods = {(a, b): {} for a in ("u", "v") for b in ("u", "v")}
    dga = table_algebra(QQ, basis, prods, diffs={"u": {"v": 1}})
    alg = dga.to_ainf(check=True)
    mini, incl, con = minimal_model(alg, 4)
    assert mini.sa.dim == 0
    assert stasheff_ok(mini, 4) is None


def test_transferred_b2_is_induced_product():
    for seed in (3, 17, 40):
        dga = random_dg_algebra(QQ, seed)
        alg = dga.to_ainf(check=True)
        mini, incl, con = minimal_model(alg, 4)
        want = con.p.compose(alg.op(2).compose(koszul_many([con.i, con.i])))
        assert mini.op(2) == want, seed


def test_minimal_model_random_suite():
    for seed in range(25):
        alg = random_dg_algebra(QQ, seed).to_ainf(check=True)
        mini, incl, con = minimal_model(alg, 5)
        assert mini.op(1).is_zero(), seed
        assert stasheff_ok(mini, 5) is None, seed
        assert morphism_ok(incl, 5) is None, seed
        # the inclusion's linear part embeds H: p ∘ i_1 = identity on H
        lin = incl.comps.get(1)
        if lin is None:
            assert mini.sa.dim == 0, seed
        else:
            assert con.p.compose(lin) == identity_map(mini.sa), seed


def test_transfer_requires_matching_differential():
    alg = trunc_poly(QQ, 3).to_ainf(check=True)
    other = GradedSpace(QQ, [("w", 0)])
    cx = ChainComplex(other, zero_map(QQ, other, other, 1))
    con = ContractionData(cx, other, identity_map(other), identity_map(other),
                          zero_map(QQ, other, other, -1))
    try:
        transfer_structure(alg, con, 3)
        assert False, "mismatched contraction accepted"
    except AssertionError:
        pass
