"""Ext-algebras of finite-dimensional basic algebras, as minimal A∞-models
of dg endomorphism algebras of projective resolutions.

Paths compose like functions: the product p·q is "q then p", so a path
written a*b*g applies g first.  A path algebra basis element b belongs to
a unique vertex pair (w, v) with e_w·b·e_v = b; table algebras use a single
vertex.  Right modules throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .barcobar import DgAlgebra
from .grlin import (ChainComplex, ContractionData, GradedMap, GradedSpace,
                    homology_with_contraction, tensor_power)
from .transfer import transfer_structure


# ------------------------------------------------------------ quivers, algebras

@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list          # (name, src, tgt); degree-0 arrows only
    relations: list       # sparse {path_tuple: coeff}, path tuples in composition order
    nilpotency_bound: int = 6

    def arrow_ends(self):
        return {name: (src, tgt) for name, src, tgt in self.arrows}


class FDAlgebra:
    """Basic finite-dimensional algebra on a vertex-adapted basis.

    `bigrade[b] = (w, v)` means e_w·b·e_v = b.  The radical is the span of
    the non-idempotent basis elements and must be nilpotent.
    """

    def __init__(self, field, space, mul, idempotents, bigrade, check=True):
        self.field = field
        self.space = space
        self.mul = mul
        self.idempotents = list(idempotents)
        self.bigrade = dict(bigrade)
        self.vertices = sorted({v for v, _ in self.bigrade.values()} |
                               {v for _, v in self.bigrade.values()}, key=str)
        if check:
            self.check()

    def mul_names(self, a, b):
        "product of two basis elements, sparse"
        return self.mul((a, b))

    def mul_vec(self, xvec, yvec):
        f = self.field
        out = {}
        for a, ca in xvec.items():
            for b, cb in yvec.items():
                for w, c in self.mul_names(a, b).items():
                    s = f.add(out.get(w, f.zero), f.mul(f.mul(ca, cb), c))
                    if f.is_zero(s):
                        out.pop(w, None)
                    else:
                        out[w] = s
        return out

    def radical_names(self):
        idset = set(self.idempotents)
        return [n for n in self.space.names if n not in idset]

    def unit_vec(self):
        return {e: self.field.one for e in self.idempotents}

    def check(self):
        f = self.field
        names = self.space.names
        assert all(self.space.deg(n) == 0 for n in names), "algebra must sit in degree 0"
        # associativity on the basis
        for a, b, c in itertools.product(names, repeat=3):
            left = {}
            for w, cw in self.mul_names(a, b).items():
                for z, cz in self.mul_names(w, c).items():
                    left[z] = f.add(left.get(z, f.zero), f.mul(cw, cz))
            right = {}
            for w, cw in self.mul_names(b, c).items():
                for z, cz in self.mul_names(a, w).items():
                    right[z] = f.add(right.get(z, f.zero), f.mul(cw, cz))
            left = {k: v for k, v in left.items() if not f.is_zero(v)}
            right = {k: v for k, v in right.items() if not f.is_zero(v)}
            assert left == right, "associativity fails at (%r,%r,%r)" % (a, b, c)
        # idempotents: orthogonal, and the bigrade is respected
        for e in self.idempotents:
            assert self.bigrade[e] == (self.bigrade[e][1], self.bigrade[e][0]), e
        for e1 in self.idempotents:
            for e2 in self.idempotents:
                want = {e1: f.one} if e1 == e2 else {}
                assert self.mul_names(e1, e2) == want, "idempotents not orthogonal"
        for b in names:
            w, v = self.bigrade[b]
            for e in self.idempotents:
                left = self.mul_names(e, b)
                right = self.mul_names(b, e)
                if self.bigrade[e][0] == w:
                    assert left == {b: f.one}, "e_w·b ≠ b at %r" % (b,)
                else:
                    assert left == {}, "e·b ≠ 0 at (%r,%r)" % (e, b)
                if self.bigrade[e][1] == v:
                    assert right == {b: f.one}, "b·e_v ≠ b at %r" % (b,)
                else:
                    assert right == {}, "b·e ≠ 0 at (%r,%r)" % (b, e)
        # radical nilpotency
        rad = [{n: f.one} for n in self.radical_names()]
        power = rad
        for _ in range(self.space.dim + 1):
            if not power:
                break
            nxt = []
            for x in power:
                for r in rad:
                    p = self.mul_vec(x, r)
                    if p:
                        nxt.append(p)
            power = self._span(nxt)
        assert not power, "radical is not nilpotent"
        return True

    def _span(self, vecs):
        if not vecs:
            return []
        f = self.field
        names = self.space.names
        idx = {n: i for i, n in enumerate(names)}
        mat = [[f.zero] * len(names) for _ in vecs]
        for r, v in enumerate(vecs):
            for n, c in v.items():
                mat[r][idx[n]] = c
        rows, pivots = linalg.rref(f, mat)
        return [{names[j]: rows[r][j] for j in range(len(names))
                 if not f.is_zero(rows[r][j])} for r in range(len(pivots))]


def fd_algebra_from_table(field, space, mul, unit_name, check=True):
    "single-vertex FDAlgebra from a multiplication table with a unit element"
    bigrade = {n: ("1", "1") for n in space.names}
    return FDAlgebra(field, space, mul, [unit_name], bigrade, check=check)


def path_algebra(field, qp, check=True):
    """Quotient of the path algebra of a quiver by relations.

    Paths are enumerated to length `nilpotency_bound`; the relation ideal is
    spanned inside that window.  It is an input error if a maximal-length
    path survives the quotient, since finite-dimensionality is then not
    certified.  Longest paths are eliminated first, so surviving class
    representatives are as short as possible.
    """
    ends = qp.arrow_ends()
    verts = list(qp.vertices)

    # paths by length; a path is a tuple of arrow names in composition order
    paths = {0: [()], 1: [(a,) for a, _, _ in qp.arrows]}
    for l in range(2, qp.nilpotency_bound + 1):
        paths[l] = []
        for p in paths[l - 1]:
            for a, _, _ in qp.arrows:
                # p·(a): a is applied first, so a's target must match p's source
                if ends[p[-1]][0] == ends[a][1]:
                    paths[l].append(p + (a,))

    def path_name(p, v=None):
        return "e_%s" % v if not p else "*".join(p)

    def src_of(p, v=None):
        return v if not p else ends[p[-1]][0]

    def tgt_of(p, v=None):
        return v if not p else ends[p[0]][1]

    all_paths = [((), v) for v in verts] + [(p, None) for l in range(1, qp.nilpotency_bound + 1)
                                            for p in paths[l]]
    # columns ordered longest first so rref eliminates long paths
    order = sorted(range(len(all_paths)),
                   key=lambda i: (-len(all_paths[i][0]), all_paths[i][0],
                                  str(all_paths[i][1])))
    col_of = {i: j for j, i in enumerate(order)}
    npaths = len(all_paths)
    pidx = {pv: i for i, pv in enumerate(all_paths)}

    def compose2(pv1, pv2):
        "pv1 after pv2, or None when the endpoints do not match"
        (p1, v1), (p2, v2) = pv1, pv2
        if src_of(p1, v1) != tgt_of(p2, v2):
            return None
        p = p1 + p2
        return (p, v1 if not p else None)

    span = []
    for rel in qp.relations:
        # u·rel·w over all path pairs; non-composable or over-length terms
        # vanish in the length-truncated path algebra
        for u_pv in all_paths:
            for w_pv in all_paths:
                vec = [field.zero] * npaths
                nonzero = False
                for p, c in rel.items():
                    mid = compose2((p, None), w_pv)
                    if mid is None:
                        continue
                    tot = compose2(u_pv, mid)
                    if tot is None or len(tot[0]) > qp.nilpotency_bound:
                        continue
                    j = col_of[pidx[tot]]
                    vec[j] = field.add(vec[j], field.of(c))
                    nonzero = True
                if nonzero and any(not field.is_zero(x) for x in vec):
                    span.append(vec)
    if span:
        rows, pivots = linalg.rref(field, span)
    else:
        rows, pivots = [], []
    pivset = set(pivots)

    survivors = [all_paths[i] for j, i in enumerate(order) if j not in pivset]
    for p, v in survivors:
        assert len(p) < qp.nilpotency_bound, \
            "path %r of maximal window length survives; raise nilpotency_bound" % (path_name(p, v),)

    reduce_nf = {}
    nonpivot_names = {}
    for j, i in enumerate(order):
        if j not in pivset:
            p, v = all_paths[i]
            nonpivot_names[j] = path_name(p, v)
    for r, pc in enumerate(pivots):
        i = order[pc]
        p, v = all_paths[i]
        nf = {}
        for j in range(npaths):
            if j not in pivset and not field.is_zero(rows[r][j]):
                nf[nonpivot_names[j]] = field.neg(rows[r][j])
        reduce_nf[path_name(p, v)] = nf

    names = [path_name(p, v) for p, v in survivors]
    meta = {path_name(p, v): (p, tgt_of(p, v), src_of(p, v)) for p, v in survivors}
    space = GradedSpace(field, [(n, 0) for n in names])

    def class_of(p, v=None):
        "normal form of a raw path, sparse over surviving names"
        nm = path_name(p, v)
        if nm in reduce_nf:
            return dict(reduce_nf[nm])
        if (p, v) in pidx:
            return {nm: field.one}
        return {}

    ments = {}
    for n1 in names:
        p1, t1, s1 = meta[n1]
        for n2 in names:
            p2, t2, s2 = meta[n2]
            if s1 != t2:
                continue
            total = p1 + p2
            if not total:
                out = {n1: field.one}  # both vertex paths at the same vertex
            elif len(total) > qp.nilpotency_bound:
                out = {}
            else:
                out = class_of(total)
            if out:
                ments[(n1, n2)] = out
    mul = GradedMap(field, tensor_power(space, 2), space, 0, ments, check=False)

    idems = ["e_%s" % v for v in verts]
    bigrade = {n: (meta[n][1], meta[n][2]) for n in names}
    alg = FDAlgebra(field, space, mul, idems, bigrade, check=check)
    alg.path_meta = meta
    return alg


# ------------------------------------------------------------------- modules

class RightModule:
    "right module on a named basis; action stored per algebra basis element"

    def __init__(self, algebra, space, acts, check=True):
        self.algebra = algebra
        self.field = algebra.field
        self.space = space
        self.acts = {a: dict(cols) for a, cols in acts.items()}  # a -> {m: {m': c}}
        if check:
            self.check()

    def act_name(self, m, a):
        return dict(self.acts.get(a, {}).get(m, {}))

    def act_vec(self, vec, a):
        f = self.field
        out = {}
        for m, cm in vec.items():
            for m2, c in self.acts.get(a, {}).get(m, {}).items():
                s = f.add(out.get(m2, f.zero), f.mul(cm, c))
                if f.is_zero(s):
                    out.pop(m2, None)
                else:
                    out[m2] = s
        return out

    def act_alg_vec(self, vec, avec):
        f = self.field
        out = {}
        for a, ca in avec.items():
            for m2, c in self.act_vec(vec, a).items():
                s = f.add(out.get(m2, f.zero), f.mul(ca, c))
                if f.is_zero(s):
                    out.pop(m2, None)
                else:
                    out[m2] = s
        return out

    def check(self):
        f = self.field
        B = self.algebra
        for m in self.space.names:
            u = self.act_alg_vec({m: f.one}, B.unit_vec())
            assert u == {m: f.one}, "unit does not act as identity at %r" % (m,)
        for a in B.space.names:
            for b in B.space.names:
                prod = B.mul_names(a, b)
                for m in self.space.names:
                    left = self.act_vec(self.act_vec({m: f.one}, a), b)
                    right = self.act_alg_vec({m: f.one}, prod)
                    assert left == right, "action not associative at (%r,%r,%r)" % (m, a, b)
        return True


def simple_module(algebra, vertex, check=True):
    "one-dimensional simple at a vertex: e_v acts as 1, the radical acts as 0"
    f = algebra.field
    name = "s_%s" % vertex
    space = GradedSpace(f, [(name, 0)])
    acts = {}
    for e in algebra.idempotents:
        if algebra.bigrade[e][0] == vertex:
            acts[e] = {name: {name: f.one}}
    return RightModule(algebra, space, acts, check=check)


def direct_sum_modules(modules, check=False):
    f = modules[0].field
    algebra = modules[0].algebra
    names = []
    acts = {}
    for k, m in enumerate(modules):
        for n in m.space.names:
            names.append(((k, n), 0))
        for a, cols in m.acts.items():
            dst = acts.setdefault(a, {})
            for src, col in cols.items():
                dst[(k, src)] = {(k, w): c for w, c in col.items()}
    space = GradedSpace(f, names)
    return RightModule(algebra, space, acts, check=check)


# -------------------------------------------------------- projective resolutions

@dataclass
class ResolutionComplex:
    """Minimal projective resolution data.

    steps[i] is the list of generator vertices of P_i; diffs[i] (i ≥ 1) maps
    generator a of P_i to sum_b gen_b · entry[(b, a)], entries being sparse
    algebra elements in e_{v_b}·B·e_{v_a} ∩ rad.  aug maps generators of P_0
    to module elements.  exact is True when the resolution terminated.
    gen_parts tags each generator with the module summand it resolves, for
    resolutions assembled from a direct sum.
    """
    algebra: object
    module: object
    steps: list
    diffs: list
    aug: list
    exact: bool
    gen_parts: list = None

    def proj_basis(self, i):
        "basis of P_i: (generator index, path name with matching source vertex)"
        B = self.algebra
        out = []
        for g, v in enumerate(self.steps[i]):
            for n in B.space.names:
                if B.bigrade[n][0] == v:
                    out.append((g, n))
        return out

    def betti(self):
        return [len(s) for s in self.steps]


def _module_radical_complement(module):
    "generators of top(M), vertex-homogeneous: list of (vertex, sparse M-vector)"
    f = module.field
    B = module.algebra
    names = list(module.space.names)
    idx = {n: i for i, n in enumerate(names)}
    dim = len(names)
    rad_vecs = []
    for r in B.radical_names():
        for m in names:
            v = module.act_name(m, r)
            if v:
                dense = [f.zero] * dim
                for w, c in v.items():
                    dense[idx[w]] = c
                rad_vecs.append(dense)
    if rad_vecs:
        rows, pivots = linalg.rref(f, rad_vecs)
    else:
        rows, pivots = [], []
    pivset = set(pivots)
    comp = [k for k in range(dim) if k not in pivset]
    # projection to the quotient: subtract the radical part
    # full basis F = [rad rows | complement unit vectors]; coords via F⁻¹
    full = [list(rows[r]) for r in range(len(pivots))] + \
           [[f.one if j == k else f.zero for j in range(dim)] for k in comp]
    if not full:
        return []
    fmat = [[full[r][j] for r in range(dim)] for j in range(dim)]
    finv = linalg.invert(f, fmat)
    nrad = len(pivots)

    def project(vec):
        "coordinates in top(M), over the complement basis"
        dense = [f.zero] * dim
        for n, c in vec.items():
            dense[idx[n]] = c
        out = []
        for r in range(len(comp)):
            s = f.zero
            for j in range(dim):
                s = f.add(s, f.mul(finv[nrad + r][j], dense[j]))
            out.append(s)
        return out

    gens = []
    for e in B.idempotents:
        v = B.bigrade[e][0]
        # image of e_v on top(M): column space of project∘act(e_v) over lifts
        cols = []
        for k in comp:
            vec = module.act_name(names[k], e)
            cols.append(project(vec))
        if not cols:
            continue
        mat = [[cols[j][i] for j in range(len(comp))] for i in range(len(comp))]
        rows2, pivots2 = linalg.rref(f, mat)
        for pc in pivots2:
            # lift: (complement basis vector)·e_v, a vertex-homogeneous generator
            lift = module.act_name(names[comp[pc]], e)
            assert lift, "empty generator lift"
            gens.append((v, lift))
    return gens


def _kernel_module(module, cover_cols, p_basis, check):
    "kernel of a cover P → M as a right module with named basis"
    f = module.field
    B = module.algebra
    mnames = list(module.space.names)
    midx = {n: i for i, n in enumerate(mnames)}
    mat = [[f.zero] * len(p_basis) for _ in mnames]
    for j, pb in enumerate(p_basis):
        for w, c in cover_cols.get(pb, {}).items():
            mat[midx[w]][j] = c
    ker = linalg.kernel_basis(f, mat, ncols=len(p_basis))
    if not ker:
        return None, None
    knames = ["k%d" % t for t in range(len(ker))]
    kspace = GradedSpace(f, [(n, 0) for n in knames])
    kvecs = {knames[t]: {p_basis[j]: ker[t][j] for j in range(len(p_basis))
                         if not f.is_zero(ker[t][j])} for t in range(len(ker))}
    # solve to express kernel-supported P-vectors back in k-coordinates
    kmat = [[ker[t][j] for t in range(len(ker))] for j in range(len(p_basis))]
    pindex = {pb: j for j, pb in enumerate(p_basis)}

    def to_coords(pvec):
        dense = [f.zero] * len(p_basis)
        for pb, c in pvec.items():
            dense[pindex[pb]] = c
        sol = linalg.solve(f, kmat, dense)
        assert sol is not None, "vector not in the kernel submodule"
        return sol

    acts = {}
    for a in B.space.names:
        cols = {}
        for t, kn in enumerate(knames):
            # act on the P-coordinates: (g, p)·a = sum (g, p·a)
            out = {}
            for (g, p), c in kvecs[kn].items():
                for p2, c2 in B.mul_names(p, a).items():
                    key = (g, p2)
                    s = f.add(out.get(key, f.zero), f.mul(c, c2))
                    if f.is_zero(s):
                        out.pop(key, None)
                    else:
                        out[key] = s
            if out:
                sol = to_coords(out)
                col = {knames[r]: sol[r] for r in range(len(knames))
                       if not f.is_zero(sol[r])}
                if col:
                    cols[kn] = col
        if cols:
            acts[a] = cols
    kmod = RightModule.__new__(RightModule)
    kmod.algebra = B
    kmod.field = f
    kmod.space = kspace
    kmod.acts = acts
    if check:
        kmod.check()
    return kmod, kvecs


def projective_resolution(algebra, module, max_length, check=True):
    """Minimal resolution by projective covers, up to homological degree
    max_length (or until it terminates)."""
    B = algebra
    f = B.field
    steps = []
    diffs = []
    aug = None
    current = module
    embed = None  # current's basis -> sparse vec over previous P's basis
    exact = False
    for i in range(max_length + 1):
        gens = _module_radical_complement(current)
        if not gens:
            exact = True
            break
        steps.append([v for v, _ in gens])
        # cover map columns: basis (g, path) of P_i -> element of `current`
        cover_cols = {}
        p_basis = []
        for g, (v, gen_vec) in enumerate(gens):
            for n in B.space.names:
                if B.bigrade[n][0] == v:
                    p_basis.append((g, n))
                    img = current.act_vec(gen_vec, n)
                    if img:
                        cover_cols[(g, n)] = img
        if i == 0:
            aug = [dict(gen_vec) for _, gen_vec in gens]
        else:
            # differential entries: generator a of P_i covers gens[a] in the
            # kernel submodule; expand through the kernel embedding
            dmat = {}
            for a, (v, gen_vec) in enumerate(gens):
                pvec = {}
                for kn, c in gen_vec.items():
                    for pb, c2 in embed[kn].items():
                        s = f.add(pvec.get(pb, f.zero), f.mul(c, c2))
                        if f.is_zero(s):
                            pvec.pop(pb, None)
                        else:
                            pvec[pb] = s
                for (g, p), c in pvec.items():
                    dst = dmat.setdefault((g, a), {})
                    dst[p] = f.add(dst.get(p, f.zero), c)
                    assert p not in B.idempotents, "resolution is not minimal"
            diffs.append(dmat)
        kmod, kvecs = _kernel_module(current, cover_cols, p_basis, check)
        if kmod is None:
            exact = True
            break
        current = kmod
        embed = kvecs
    parts = [[None] * len(s) for s in steps]
    res = ResolutionComplex(B, module, steps, diffs, aug, exact, parts)
    if check:
        _check_resolution(res)
    return res


def combine_resolutions(labeled, check=True):
    """Direct sum of resolutions of module summands, block by block.
    `labeled` is a list of (label, ResolutionComplex) pairs over one algebra;
    generators keep their summand label in gen_parts."""
    B = labeled[0][1].algebra
    length = max(len(r.steps) for _, r in labeled)
    steps, gen_parts, offs = [], [], []
    for i in range(length):
        row, tags, off = [], [], {}
        for k, (lab, r) in enumerate(labeled):
            off[k] = len(row)
            if i < len(r.steps):
                row += r.steps[i]
                tags += [lab] * len(r.steps[i])
        steps.append(row)
        gen_parts.append(tags)
        offs.append(off)
    diffs = []
    for i in range(1, length):
        dmat = {}
        for k, (lab, r) in enumerate(labeled):
            if i < len(r.steps):
                for (b, a), vec in r.diffs[i - 1].items():
                    dmat[(b + offs[i - 1][k], a + offs[i][k])] = dict(vec)
        diffs.append(dmat)
    aug = []
    for k, (lab, r) in enumerate(labeled):
        for vec in r.aug:
            aug.append({(k, n): c for n, c in vec.items()})
    module = direct_sum_modules([r.module for _, r in labeled])
    exact = all(r.exact for _, r in labeled)
    res = ResolutionComplex(B, module, steps, diffs, aug, exact, gen_parts)
    if check:
        _check_resolution(res)
    return res


def _check_resolution(res):
    "d∘d = 0 and exactness ranks of the assembled complex"
    B = res.algebra
    f = B.field
    for i in range(1, len(res.diffs)):
        # compose diffs[i] after diffs[i-1]: P_{i+1} -> P_i -> P_{i-1}
        lower, upper = res.diffs[i - 1], res.diffs[i]
        nup = len(res.steps[i + 1])
        for a in range(nup):
            acc = {}
            for (b, aa), vec in upper.items():
                if aa != a:
                    continue
                for (c, bb), vec2 in lower.items():
                    if bb != b:
                        continue
                    for p2, c2 in vec2.items():
                        for p1, c1 in vec.items():
                            for w, cw in B.mul_names(p2, p1).items():
                                key = (c, w)
                                s = f.add(acc.get(key, f.zero), f.mul(f.mul(c2, c1), cw))
                                if f.is_zero(s):
                                    acc.pop(key, None)
                                else:
                                    acc[key] = s
            assert not acc, "d² ≠ 0 in the resolution at step %d" % (i + 1,)


# ------------------------------------------------------------ dg endomorphisms

def dg_end(res, check=True):
    """Dg endomorphism algebra of the complex of projectives P placed in
    cohomological degrees −i.

    Basis: (j, a, jt, b, q) is the map sending the generator a of P_j into
    generator b of P_{jt} by left multiplication with the path q, extended
    as zero elsewhere; its degree is j − jt.  The differential is the graded
    commutator with the internal differential of P.
    """
    B = res.algebra
    f = B.field
    names = []
    for j, gj in enumerate(res.steps):
        for jt, gt in enumerate(res.steps):
            for a, va in enumerate(gj):
                for b, vb in enumerate(gt):
                    for q in B.space.names:
                        if B.bigrade[q] == (vb, va):
                            names.append(((j, a, jt, b, q), j - jt))
    space = GradedSpace(f, names)

    by_src = {}
    for (j, a, jt, b, q), _ in names:
        by_src.setdefault((j, a), []).append((jt, b, q))

    ments = {}
    for (j1, a1, jt1, b1, q1), _ in names:      # x: P_{j1} -> P_{jt1}
        for (j2, a2, jt2, b2, q2), _ in names:  # y: P_{j2} -> P_{jt2}
            # x∘y: y's target summand must be x's source summand
            if (jt2, b2) != (j1, a1):
                continue
            prod = B.mul_names(q1, q2)
            if not prod:
                continue
            key = ((j1, a1, jt1, b1, q1), (j2, a2, jt2, b2, q2))
            ments[key] = {(j2, a2, jt1, b1, w): c for w, c in prod.items()}
    mul = GradedMap(f, tensor_power(space, 2), space, 0, ments, check=False)

    # internal differential D = sum of diffs, an End element of degree +1
    dvec = {}
    for i, dmat in enumerate(res.diffs):
        # d_{i+1}: P_{i+1} -> P_i
        for (b, a), vec in dmat.items():
            for p, c in vec.items():
                dvec[(i + 1, a, i, b, p)] = c

    def mul_vec(x, y):
        out = {}
        for nx, cx in x.items():
            for ny, cy in y.items():
                col = ments.get((nx, ny))
                if not col:
                    continue
                for w, c in col.items():
                    s = f.add(out.get(w, f.zero), f.mul(f.mul(cx, cy), c))
                    if f.is_zero(s):
                        out.pop(w, None)
                    else:
                        out[w] = s
        return out

    dcols = {}
    for nm, deg in names:
        x = {nm: f.one}
        dx = mul_vec(dvec, x)
        xd = mul_vec(x, dvec)
        sgn = f.neg(f.one) if deg % 2 == 0 else f.one
        for w, c in xd.items():
            s = f.add(dx.get(w, f.zero), f.mul(sgn, c))
            if f.is_zero(s):
                dx.pop(w, None)
            else:
                dx[w] = s
        if dx:
            dcols[nm] = dx
    d = GradedMap(f, space, space, 1, dcols, check=False)
    if check:
        assert d.compose(d).is_zero(), "End differential does not square to zero"
    dga = DgAlgebra(space, d, mul, unit_name=None)
    # the identity of End is a sum of basis elements, not a basis element
    idem_of = {B.bigrade[e][0]: e for e in B.idempotents}
    dga.end_unit_vec = {(j, a, j, a, idem_of[v]): f.one
                        for j, gj in enumerate(res.steps) for a, v in enumerate(gj)}
    return dga


# ------------------------------------------------------------------ Ext models

@dataclass
class ExtData:
    algebra: object        # minimal A∞-algebra on Ext, suspended level
    inclusion: object
    contraction: object
    end_dga: object
    resolution: object
    labels: dict           # basis name -> Ext degree
    valid_degree: object   # max certified Ext degree (None = exact)
    summand_classes: dict  # module-summand label -> Ext⁰ class (sparse vec)


def ext_ainf(algebra, module, arity_max, resolution_length=None, check=True):
    """Minimal A∞-structure on Ext_B(M, M).

    Resolves M to the requested length (default arity_max + 2, always
    stopping early at exactness), forms the dg endomorphism algebra, and
    transfers to homology.  Basis elements are named ext{q}_{i} with q the
    Ext degree (suspended degree q − 1).

    `module` may be a RightModule or a list of (label, RightModule) pairs;
    in the latter case each summand is resolved separately and the class of
    its identity endomorphism is reported in summand_classes[label].

    When the resolution does not terminate, endomorphisms concentrated at
    the cut-off step create homology classes that are artifacts of the
    truncation.  Ext degrees up to length − arity_max are certified; the
    returned structure is restricted to the certified classes (truncation
    artifacts carry no Ext label and are dropped), and degree 0 is spanned
    by the summand identity classes.
    """
    if resolution_length is None:
        resolution_length = arity_max + 2
    if isinstance(module, list):
        pieces = [(lab, projective_resolution(algebra, m, resolution_length,
                                              check=check))
                  for lab, m in module]
        res = combine_resolutions(pieces, check=check)
    else:
        res = projective_resolution(algebra, module, resolution_length,
                                    check=check)
    end = dg_end(res, check=check)
    aend = end.to_ainf(check=False)
    f = algebra.field

    cx = ChainComplex(aend.sa, aend.op(1), check=check)
    con = homology_with_contraction(cx)
    valid = None if res.exact else (len(res.steps) - 1) - arity_max

    # identity endomorphism of each summand's resolution block; blocks are
    # d-stable, so these are genuine degree-0 cocycles spanning Hom(M, M)
    # for a sum of pairwise distinct simples
    part_labels = []
    for tags in res.gen_parts:
        for t in tags:
            if t not in part_labels:
                part_labels.append(t)
    idem_of = {algebra.bigrade[e][0]: e for e in algebra.idempotents}
    raw = []
    for lab in part_labels:
        pvec = {}
        for j, gj in enumerate(res.steps):
            for a, va in enumerate(gj):
                if res.gen_parts[j][a] == lab:
                    pvec[("s", (j, a, j, a, idem_of[va]))] = f.one
        raw.append(con.p.apply(pvec))

    # base change on the homology: in suspended degree −1 (Ext⁰) the summand
    # classes come first and a complement fills up the rest; everything is
    # renamed ext{q}_{i}, with truncation artifacts renamed cut{q}_{i}
    old = con.h_space
    names0 = [n for n in old.names if old.deg(n) == -1]
    idx0 = {n: k for k, n in enumerate(names0)}
    mat = [[f.zero] * len(names0) for _ in raw]
    for r, vec in enumerate(raw):
        for n, c in vec.items():
            mat[r][idx0[n]] = c
    rows0, pivots0 = linalg.rref(f, mat) if raw else ([], [])
    assert len(pivots0) == len(raw), "summand identity classes are dependent"
    complement = [names0[j] for j in range(len(names0)) if j not in set(pivots0)]

    def certified(q):
        return res.exact or (1 <= q <= valid)

    ucols = {}
    newnames = []
    counters = {}

    def fresh(prefix, q):
        k = counters.get((prefix, q), 0)
        counters[(prefix, q)] = k + 1
        return "%s%d_%d" % (prefix, q, k)

    for k, lab in enumerate(part_labels):
        nm = fresh("ext", 0)
        ucols[nm] = dict(raw[k])
        newnames.append((nm, -1))
    for n in complement:
        nm = fresh("ext" if res.exact else "cut", 0)
        ucols[nm] = {n: f.one}
        newnames.append((nm, -1))
    rename = {}
    for n in old.names:
        d = old.deg(n)
        if d == -1:
            continue
        q = d + 1
        nm = fresh("ext" if certified(q) else "cut", q)
        ucols[nm] = {n: f.one}
        newnames.append((nm, d))
        rename[n] = nm
    hnew = GradedSpace(f, newnames)
    umap = GradedMap(f, hnew, old, 0, ucols, check=False)
    # invert the degree −1 block; all other degrees are plain renamings
    deg0_new = [nm for nm, d in newnames if d == -1]
    amat = [[ucols[nm].get(n, f.zero) for nm in deg0_new] for n in names0]
    ainv = linalg.invert(f, amat) if names0 else []
    invcols = {n: {nm: f.one} for n, nm in rename.items()}
    for i0, n in enumerate(names0):
        invcols[n] = {deg0_new[j]: ainv[j][i0] for j in range(len(deg0_new))
                      if not f.is_zero(ainv[j][i0])}
    uinv = GradedMap(f, old, hnew, 0, invcols, check=False)
    con2 = ContractionData(cx, hnew, uinv.compose(con.p), con.i.compose(umap), con.h)

    cert_names = [nm for nm, _ in newnames if nm.startswith("ext")]
    minimal, incl = transfer_structure(
        aend, con2, arity_max,
        source_names=None if res.exact else cert_names)

    labels = {n: minimal.sa.deg(n) + 1 for n in minimal.sa.names}
    classes = {lab: {"ext0_%d" % k: f.one} for k, lab in enumerate(part_labels)}
    return ExtData(minimal, incl, con2, end, res, labels, valid, classes)
