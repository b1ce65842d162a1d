"""Minimal models by homotopy transfer along a contraction.

The transferred operations are sums over planar rooted trees: each tree
with n leaves evaluates bottom-up as  leaf ↦ i,  node of arity m ↦
h ∘ b_m ∘ (children),  and the root's h is replaced by p.  With the
contraction conventions of grlin (i∘p = 1 + d∘h + h∘d and the side
conditions) every tree enters with coefficient +1.

Trees are nested tuples: a leaf is (), an internal node is the tuple of
its children and always has at least two of them.
"""
from __future__ import annotations

import itertools

from .ainf_core import AInfAlgebra, AInfMorphism, _compositions
from .grlin import (ChainComplex, GradedMap, GradedSpace, homology_with_contraction,
                    koszul_many, tensor_power, zero_map)


def planar_trees(n):
    "all planar rooted trees with n leaves and internal arities ≥ 2"
    assert n >= 1
    if n == 1:
        return [()]
    out = []
    for m in range(2, n + 1):
        for parts in _compositions(n, m, min_part=1):
            for kids in itertools.product(*[planar_trees(k) for k in parts]):
                out.append(tuple(kids))
    return out


def tree_leaf_count(tree):
    if tree == ():
        return 1
    return sum(tree_leaf_count(k) for k in tree)


def transfer_structure(alg, con, n_max, source_names=None):
    """Transferred A∞-structure on the contraction's homology space.

    Returns (minimal algebra on H, inclusion A∞-morphism H → A).
    Requires a non-weak input whose arity-1 map is the contraction's
    differential.

    With source_names, the operations are computed only on the span of
    those homology basis names and their outputs projected back onto it.
    The restricted structure is a windowed view, not a sub-A∞-algebra;
    identities involving outputs outside the window are not preserved.
    """
    assert not alg.is_weak(), "homotopy transfer needs a non-weak structure"
    assert con.cx.d.cols == alg.op(1).cols, "contraction differential is not b_1"
    f = alg.field
    full = con.h_space
    if source_names is None:
        H = full
        leaf = con.i
        post = con.p
    else:
        keep = [n for n in full.names if n in set(source_names)]
        H = GradedSpace(f, [(n, full.deg(n)) for n in keep])
        leaf = GradedMap(f, H, alg.sa, 0,
                         {n: dict(con.i.cols.get(n, {})) for n in keep}, check=False)
        proj = {n: {w: c for w, c in col.items() if w in set(keep)}
                for n, col in con.p.cols.items()}
        post = GradedMap(f, con.cx.space, H, 0,
                         {n: col for n, col in proj.items() if col}, check=False)

    memo = {(): leaf}

    def value(tree):
        "h-rooted evaluation: H^{⊗leaves} → SA, degree 0"
        got = memo.get(tree)
        if got is not None:
            return got
        kids = [value(k) for k in tree]
        bm = alg.ops.get(len(tree))
        if bm is None:
            val = zero_map(f, tensor_power(H, tree_leaf_count(tree)), alg.sa, 0)
        else:
            val = con.h.compose(bm).compose(koszul_many(kids))
        memo[tree] = val
        return val

    min_ops = {}
    comps = {1: leaf}
    for n in range(2, n_max + 1):
        bn = zero_map(f, tensor_power(H, n), H, 1)
        fn = zero_map(f, tensor_power(H, n), alg.sa, 0)
        for tree in planar_trees(n):
            kids = [value(k) for k in tree]
            bm = alg.ops.get(len(tree))
            if bm is None:
                continue
            core = bm.compose(koszul_many(kids))
            bn = bn + post.compose(core)
            fn = fn + con.h.compose(core)
        min_ops[n] = bn
        comps[n] = fn

    minimal = AInfAlgebra(f, H, min_ops, arity_max=n_max, check=False)
    incl = AInfMorphism(minimal, alg, comps, check=False)
    return minimal, incl


def minimal_model(alg, n_max, name_prefix="h"):
    """Minimal model of an A∞-algebra: homology with transferred operations.

    Returns (minimal algebra, inclusion morphism, contraction data).
    """
    cx = ChainComplex(alg.sa, alg.op(1))
    con = homology_with_contraction(cx, name_prefix=name_prefix)
    minimal, incl = transfer_structure(alg, con, n_max)
    return minimal, incl, con
