"""Graded vector spaces, sparse graded maps, Koszul-signed tensor calculus.

Conventions, fixed once here and used by every higher layer:
  * cohomological grading; differentials have degree +1.
  * Koszul rule: evaluating a tensor product of maps picks up
    (-1)^{sum_{i<j} |f_j|·|v_i|} on (v_1 ⊗ ... ⊗ v_k).
  * suspension S shifts degree down: (SV)^p = V^{p+1}, and s: V → SV
    has degree -1.  Suspended basis names carry an ('s', name) marker.

Spaces are either atomic (explicit basis names with degrees) or tensor
products of atomics.  Tensor-space basis names are tuples, one component
per atomic factor; tensor products flatten, so nested products never
produce nested name tuples.
"""
from __future__ import annotations

import itertools

from . import linalg


# ---------------------------------------------------------------- spaces

class GradedSpace:
    "atomic graded vector space with an ordered basis of named elements"

    def __init__(self, field, basis):
        basis = list(basis)  # (name, degree) pairs
        self.field = field
        self.names = tuple(n for n, _ in basis)
        self._deg = {n: d for n, d in basis}
        assert len(self.names) == len(self._deg), "duplicate basis names"

    @property
    def dim(self):
        return len(self.names)

    def deg(self, name):
        return self._deg[name]

    def has(self, name):
        return name in self._deg

    def basis(self):
        return iter(self.names)

    def atoms(self):
        return (self,)

    def names_by_degree(self):
        out = {}
        for n in self.names:
            out.setdefault(self._deg[n], []).append(n)
        return out

    def __repr__(self):
        return "GradedSpace(dim=%d)" % self.dim


class TensorSpace(GradedSpace):
    """Tensor product of atomic spaces; basis names are tuples.

    Never constructed with exactly one factor (tensor_many normalizes),
    so a bare atomic name and a 1-tuple are never confused.
    """

    def __init__(self, field, factors):
        factors = tuple(factors)
        assert all(not isinstance(f, TensorSpace) for f in factors), "factors must be atomic"
        assert len(factors) != 1, "one-factor tensor spaces are not allowed"
        self.field = field
        self.factors = factors

    @property
    def dim(self):
        d = 1
        for f in self.factors:
            d *= f.dim
        return d

    def deg(self, name):
        assert len(name) == len(self.factors), "name arity mismatch: %r" % (name,)
        return sum(f.deg(c) for f, c in zip(self.factors, name))

    def has(self, name):
        return (isinstance(name, tuple) and len(name) == len(self.factors)
                and all(f.has(c) for f, c in zip(self.factors, name)))

    def basis(self):
        return itertools.product(*[f.names for f in self.factors])

    def atoms(self):
        return self.factors

    def names_by_degree(self):
        out = {}
        for n in self.basis():
            out.setdefault(self.deg(n), []).append(n)
        return out

    def __repr__(self):
        return "TensorSpace(%d factors)" % len(self.factors)


def unit_space(field):
    "the tensor unit k: one basis element, the empty tuple, in degree 0"
    return TensorSpace(field, ())


def tensor_many(field, spaces):
    "tensor product, flattened; zero factors give k, one factor gives the space itself"
    atoms = []
    for sp in spaces:
        atoms.extend(sp.atoms())
    if len(atoms) == 1:
        return atoms[0]
    return TensorSpace(field, atoms)


def tensor_power(space, n):
    return tensor_many(space.field, [space] * n)


def same_space(u, v):
    if u is v:
        return True
    if isinstance(u, TensorSpace) or isinstance(v, TensorSpace):
        if not (isinstance(u, TensorSpace) and isinstance(v, TensorSpace)):
            return False
        return (len(u.factors) == len(v.factors)
                and all(same_space(a, b) for a, b in zip(u.factors, v.factors)))
    return u.names == v.names and u._deg == v._deg


def explicit_space(space):
    "atomic copy of any space, materializing tensor names (for homology)"
    if not isinstance(space, TensorSpace):
        return space
    return GradedSpace(space.field, [(n, space.deg(n)) for n in space.basis()])


def _chunk(space, name):
    "name as a tuple of atomic components, matching space.atoms()"
    if isinstance(space, TensorSpace):
        return name
    return (name,)


# ------------------------------------------------------------ sparse maps

class GradedMap:
    "sparse homogeneous linear map, stored column-wise as {src: {tgt: coeff}}"

    __slots__ = ("field", "source", "target", "degree", "cols")

    def __init__(self, field, source, target, degree, cols=None, check=True):
        self.field = field
        self.source = source
        self.target = target
        self.degree = degree
        clean = {}
        for v, col in (cols or {}).items():
            cc = {w: c for w, c in col.items() if not field.is_zero(c)}
            if cc:
                clean[v] = cc
        self.cols = clean
        if check:
            for v, col in clean.items():
                assert source.has(v), "source lacks %r" % (v,)
                dv = source.deg(v)
                for w in col:
                    assert target.has(w), "target lacks %r" % (w,)
                    assert target.deg(w) == dv + degree, \
                        "degree clash: |%r|=%d -> |%r|=%d but map degree %d" % (
                            v, dv, w, target.deg(w), degree)

    def apply(self, vec):
        "apply to a sparse vector {name: coeff}"
        f = self.field
        out = {}
        for v, c in vec.items():
            col = self.cols.get(v)
            if col is None:
                continue
            for w, a in col.items():
                s = f.add(out.get(w, f.zero), f.mul(c, a))
                if f.is_zero(s):
                    out.pop(w, None)
                else:
                    out[w] = s
        return out

    def __call__(self, name):
        "image of a single basis element, as a sparse vector"
        return dict(self.cols.get(name, {}))

    def entries(self):
        for v, col in self.cols.items():
            for w, c in col.items():
                yield v, w, c

    def is_zero(self):
        return not self.cols

    def __add__(self, other):
        assert self.degree == other.degree, "degree mismatch in sum"
        f = self.field
        cols = {v: dict(col) for v, col in self.cols.items()}
        for v, col in other.cols.items():
            dst = cols.setdefault(v, {})
            for w, c in col.items():
                dst[w] = f.add(dst.get(w, f.zero), c)
        return GradedMap(f, self.source, self.target, self.degree, cols, check=False)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def scale(self, a):
        f = self.field
        if f.is_zero(a):
            return GradedMap(f, self.source, self.target, self.degree, {}, check=False)
        cols = {v: {w: f.mul(a, c) for w, c in col.items()} for v, col in self.cols.items()}
        return GradedMap(f, self.source, self.target, self.degree, cols, check=False)

    def compose(self, other):
        "self after other"
        assert same_space(other.target, self.source), "composition space mismatch"
        f = self.field
        cols = {}
        for v, col in other.cols.items():
            acc = {}
            for m, c in col.items():
                col2 = self.cols.get(m)
                if col2 is None:
                    continue
                for w, a in col2.items():
                    s = f.add(acc.get(w, f.zero), f.mul(c, a))
                    if f.is_zero(s):
                        acc.pop(w, None)
                    else:
                        acc[w] = s
            if acc:
                cols[v] = acc
        return GradedMap(f, other.source, self.target, self.degree + other.degree,
                         cols, check=False)

    def __mul__(self, other):
        return self.compose(other)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.degree == other.degree and self.cols == other.cols
                and same_space(self.source, other.source)
                and same_space(self.target, other.target))

    def __repr__(self):
        return "GradedMap(deg=%+d, nnz=%d)" % (self.degree, sum(len(c) for c in self.cols.values()))


def zero_map(field, source, target, degree):
    return GradedMap(field, source, target, degree, {}, check=False)


def identity_map(space):
    f = space.field
    cols = {n: {n: f.one} for n in space.basis()}
    return GradedMap(f, space, space, 0, cols, check=False)


def map_from_entries(field, source, target, degree, entries, check=True):
    cols = {}
    for v, w, c in entries:
        dst = cols.setdefault(v, {})
        dst[w] = field.add(dst.get(w, field.zero), field.of(c))
    return GradedMap(field, source, target, degree, cols, check=check)


def add_many(maps):
    assert maps, "add_many needs at least one map"
    out = maps[0]
    for m in maps[1:]:
        out = out + m
    return out


def koszul_many(maps, field=None):
    """Tensor product of maps with Koszul signs.

    On v_1 ⊗ ... ⊗ v_k the sign is (-1)^{sum_{i<j} |f_j| |v_i|}: each map
    f_j moves past the arguments v_i standing to its left.
    """
    maps = list(maps)
    if not maps:
        assert field is not None, "empty koszul_many needs the field"
        return identity_map(unit_space(field))
    f = maps[0].field
    source = tensor_many(f, [m.source for m in maps])
    target = tensor_many(f, [m.target for m in maps])
    degree = sum(m.degree for m in maps)
    src_tensor = isinstance(source, TensorSpace)
    tgt_tensor = isinstance(target, TensorSpace)
    per = [[(v, m.source.deg(v), col) for v, col in m.cols.items()] for m in maps]
    cols = {}
    for combo in itertools.product(*per):
        exp = 0
        left = 0
        for m, (_, dv, _) in zip(maps, combo):
            exp += m.degree * left
            left += dv
        sign = f.one if exp % 2 == 0 else f.neg(f.one)
        src = ()
        for m, (v, _, _) in zip(maps, combo):
            src += _chunk(m.source, v)
        skey = src if src_tensor else src[0]
        dst = cols.setdefault(skey, {})
        for tgt_combo in itertools.product(*[list(col.items()) for (_, _, col) in combo]):
            w = ()
            coeff = sign
            for m, (wname, c) in zip(maps, tgt_combo):
                w += _chunk(m.target, wname)
                coeff = f.mul(coeff, c)
            wkey = w if tgt_tensor else w[0]
            s = f.add(dst.get(wkey, f.zero), coeff)
            if f.is_zero(s):
                dst.pop(wkey, None)
            else:
                dst[wkey] = s
        if not dst:
            cols.pop(skey, None)
    return GradedMap(f, source, target, degree, cols, check=False)


def map_differential(fmap, d_source, d_target):
    "differential on hom: d(f) = d_target∘f − (−1)^{|f|} f∘d_source"
    df = d_target.compose(fmap)
    fd = fmap.compose(d_source)
    if fmap.degree % 2 == 0:
        return df - fd
    return df + fd


def matrix_of(fmap, src_names, tgt_names):
    "dense matrix (rows = tgt_names, cols = src_names)"
    f = fmap.field
    idx = {n: i for i, n in enumerate(tgt_names)}
    mat = [[f.zero] * len(src_names) for _ in tgt_names]
    for j, v in enumerate(src_names):
        for w, c in fmap.cols.get(v, {}).items():
            i = idx.get(w)
            assert i is not None, "image leaves the named window at %r -> %r" % (v, w)
            mat[i][j] = c
    return mat


# ------------------------------------------------------------- suspension

def suspend_space(space):
    "SV: names gain an ('s', ·) marker, degrees drop by one"
    assert not isinstance(space, TensorSpace), "suspend atomic spaces only"
    return GradedSpace(space.field, [(("s", n), space.deg(n) - 1) for n in space.names])


def s_map(space, sspace=None):
    "the degree −1 iso s: V → SV"
    if sspace is None:
        sspace = suspend_space(space)
    f = space.field
    cols = {n: {("s", n): f.one} for n in space.names}
    return GradedMap(f, space, sspace, -1, cols, check=False)


def s_inv_map(space, sspace=None):
    "the degree +1 iso s⁻¹: SV → V"
    if sspace is None:
        sspace = suspend_space(space)
    f = space.field
    cols = {("s", n): {n: f.one} for n in space.names}
    return GradedMap(f, sspace, space, 1, cols, check=False)


def strip_suspension(name):
    assert isinstance(name, tuple) and len(name) == 2 and name[0] == "s", \
        "not a suspended name: %r" % (name,)
    return name[1]


# ---------------------------------------------------------- chain complexes

class ChainComplex:
    "graded space with a degree +1 differential squaring to zero"

    def __init__(self, space, d, check=True):
        assert same_space(d.source, space) and same_space(d.target, space)
        assert d.degree == 1, "differentials have degree +1"
        self.space = space
        self.d = d
        if check:
            assert d.compose(d).is_zero(), "d² ≠ 0"

    def homology_dims(self):
        "dimension of H^n for each degree n present in the space"
        f = self.space.field
        by_deg = self.space.names_by_degree()
        ranks = {}
        for n, names in by_deg.items():
            tgt = by_deg.get(n + 1, [])
            mat = matrix_of(self.d, names, tgt)
            ranks[n] = linalg.rank(f, mat) if tgt else 0
        return {n: len(names) - ranks.get(n, 0) - ranks.get(n - 1, 0)
                for n, names in by_deg.items()}


def sub_complex(cx, keep):
    "restriction to the span of the basis names in `keep`; must be d-stable"
    keep = set(keep)
    space = cx.space
    names = [n for n in space.basis() if n in keep]
    sub = GradedSpace(space.field, [(n, space.deg(n)) for n in names])
    cols = {}
    for v in names:
        col = cx.d.cols.get(v)
        if not col:
            continue
        for w in col:
            assert w in keep, "subspace not d-stable: %r -> %r" % (v, w)
        cols[v] = dict(col)
    d = GradedMap(space.field, sub, sub, 1, cols, check=False)
    return ChainComplex(sub, d, check=False)


class ContractionData:
    """Deformation retract of a complex onto its homology.

    p: C → H and i: H → C are chain maps with p∘i = 1_H,
    i∘p = 1_C + d∘h + h∘d, and the side conditions h² = 0, h∘i = 0, p∘h = 0.
    """

    def __init__(self, cx, h_space, p, i, h):
        self.cx = cx
        self.h_space = h_space
        self.p = p
        self.i = i
        self.h = h

    def check(self):
        d = self.cx.d
        assert self.p.compose(self.i) == identity_map(self.h_space), "p∘i ≠ 1"
        lhs = self.i.compose(self.p) - identity_map(self.cx.space)
        rhs = d.compose(self.h) + self.h.compose(d)
        assert lhs == rhs, "i∘p − 1 ≠ d∘h + h∘d"
        assert self.h.compose(self.h).is_zero(), "h² ≠ 0"
        assert self.h.compose(self.i).is_zero(), "h∘i ≠ 0"
        assert self.p.compose(self.h).is_zero(), "p∘h ≠ 0"
        assert self.p.compose(d).is_zero(), "p is not a chain map to (H, 0)"
        assert d.compose(self.i).is_zero(), "i is not a chain map from (H, 0)"
        return True


def homology_with_contraction(cx, name_prefix="h"):
    """Homology of a complex together with contraction data.

    Gaussian-elimination splitting per degree: C^n = B^n ⊕ H^n ⊕ L^n with
    B = im d, d|_L injective onto B of the next degree.  The homotopy is
    h = −(d|_L)⁻¹ ∘ proj_B, the sign being forced by i∘p = 1 + d∘h + h∘d.
    """
    space = explicit_space(cx.space)
    f = space.field
    by_deg = space.names_by_degree()
    degs = sorted(by_deg)

    # per degree: pivot (L) basis names and kernel basis vectors, both in
    # the order of by_deg[n]
    l_names = {}
    k_vecs = {}
    for n in degs:
        names = by_deg[n]
        tgt = by_deg.get(n + 1, [])
        mat = matrix_of(cx.d, names, tgt)
        if tgt:
            _, pivots = linalg.rref(f, mat)
            ker = linalg.kernel_basis(f, mat, ncols=len(names))
        else:
            pivots = []
            ker = linalg.kernel_basis(f, [], ncols=len(names))
        l_names[n] = [names[j] for j in pivots]
        k_vecs[n] = ker

    h_basis = []          # (hname, degree)
    i_cols = {}           # hname -> sparse vector in C
    p_cols = {}           # cname -> {hname: coeff}
    h_cols = {}           # cname -> sparse vector in C, one degree down

    for n in degs:
        names = by_deg[n]
        ncount = len(names)
        pos = {nm: k for k, nm in enumerate(names)}

        # image basis: d of the previous degree's pivot part
        b_vecs = []
        for lm in l_names.get(n - 1, []):
            col = cx.d.cols.get(lm, {})
            v = [f.zero] * ncount
            for w, c in col.items():
                v[pos[w]] = c
            b_vecs.append(v)

        # homology part: kernel vectors independent from the image
        stacked = b_vecs + k_vecs[n]
        if stacked:
            mat = [[stacked[j][i] for j in range(len(stacked))] for i in range(ncount)]
            _, pivots = linalg.rref(f, mat)
        else:
            pivots = []
        h_vecs = [k_vecs[n][j - len(b_vecs)] for j in pivots if j >= len(b_vecs)]

        l_vecs = []
        for lm in l_names[n]:
            v = [f.zero] * ncount
            v[pos[lm]] = f.one
            l_vecs.append(v)

        assert len(b_vecs) + len(h_vecs) + len(l_vecs) == ncount, "splitting dims off"
        here = [("%s%d_%d" % (name_prefix, n, k), n) for k in range(len(h_vecs))]
        h_basis.extend(here)
        for (hn, _), vec in zip(here, h_vecs):
            i_cols[hn] = {names[k]: vec[k] for k in range(ncount) if not f.is_zero(vec[k])}

        if ncount:
            full = b_vecs + h_vecs + l_vecs
            fmat = [[full[j][i] for j in range(ncount)] for i in range(ncount)]
            finv = linalg.invert(f, fmat)
            nb, nh = len(b_vecs), len(h_vecs)
            prev_l = l_names.get(n - 1, [])
            for col, nm in enumerate(names):
                pc = {}
                for r in range(nh):
                    c = finv[nb + r][col]
                    if not f.is_zero(c):
                        pc[here[r][0]] = c
                if pc:
                    p_cols[nm] = pc
                hc = {}
                for r in range(nb):
                    c = finv[r][col]
                    if not f.is_zero(c):
                        hc[prev_l[r]] = f.neg(c)
                if hc:
                    h_cols[nm] = hc

    h_space = GradedSpace(f, h_basis)
    p = GradedMap(f, space, h_space, 0, p_cols, check=False)
    i = GradedMap(f, h_space, space, 0, i_cols, check=False)
    h = GradedMap(f, space, space, -1, h_cols, check=False)
    cx2 = cx if space is cx.space else ChainComplex(
        space, GradedMap(f, space, space, 1, cx.d.cols, check=False), check=False)
    con = ContractionData(cx2, h_space, p, i, h)
    con.check()
    return con
