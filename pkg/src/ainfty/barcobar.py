"""Bar and cobar constructions, twisting cochains, twisted tensor products,
and Koszul duality for quadratic algebras.

Everything is computed inside explicit finite windows: tensor coalgebras
are truncated at a maximal word length, quadratic algebras at a maximal
Adams (word) degree.  Each operation documents which part of its output
is window-independent.
"""
from __future__ import annotations

import itertools

from . import linalg
from .ainf_core import AInfAlgebra, from_dga
from .grlin import (
    ChainComplex, GradedMap, GradedSpace, TensorSpace,
    identity_map, koszul_many, map_from_entries, same_space,
    tensor_many, tensor_power, unit_space, zero_map,
)


# ------------------------------------------------------------ dg (co)algebras

class DgAlgebra:
    "dg algebra presented on a basis: differential, product, optional unit name"

    def __init__(self, space, d, mul, unit_name=None):
        self.field = space.field
        self.space = space
        self.d = d if d is not None else zero_map(self.field, space, space, 1)
        self.mul = mul
        self.unit_name = unit_name

    def to_ainf(self, check=True):
        "suspended A∞ presentation; with check, verifies all dg axioms"
        return from_dga(self.space, self.d, self.mul, unit=self.unit_name, check=check)


class DgCoalgebra:
    """Coaugmented dg coalgebra on a basis; `unit_name` is the group-like
    coaugmentation element."""

    def __init__(self, space, d, comul, unit_name, check=True):
        self.field = space.field
        self.space = space
        self.d = d if d is not None else zero_map(self.field, space, space, 1)
        self.comul = comul
        self.unit_name = unit_name
        if check:
            self.check()

    def check(self):
        f = self.field
        space = self.space
        ident = identity_map(space)
        assert space.deg(self.unit_name) == 0, "coaugmentation must sit in degree 0"
        assert self.comul(self.unit_name) == {(self.unit_name, self.unit_name): f.one}, \
            "coaugmentation is not group-like"
        lhs = koszul_many([self.comul, ident]).compose(self.comul)
        rhs = koszul_many([ident, self.comul]).compose(self.comul)
        assert lhs == rhs, "comultiplication not coassociative"
        # counit laws, with ε = dual functional of the coaugmentation
        unit = unit_space(f)
        eps = GradedMap(f, space, unit, 0, {self.unit_name: {(): f.one}}, check=False)
        left = koszul_many([eps, ident]).compose(self.comul)
        right = koszul_many([ident, eps]).compose(self.comul)
        assert left == ident and right == ident, "counit laws fail"
        assert self.d(self.unit_name) == {}, "differential must kill the coaugmentation"
        assert self.d.compose(self.d).is_zero(), "d² ≠ 0"
        lhs = self.comul.compose(self.d)
        rhs = (koszul_many([self.d, ident]) + koszul_many([ident, self.d])).compose(self.comul)
        assert lhs == rhs, "d is not a coderivation"
        return True

    def reduced_comul(self):
        "Δ̄(c) = Δ(c) − c⊗1 − 1⊗c on the complement of the coaugmentation"
        f = self.field
        u = self.unit_name
        cols = {}
        for c in self.space.basis():
            if c == u:
                continue
            col = dict(self.comul.cols.get(c, {}))
            for key in [(c, u), (u, c)]:
                if key in col:
                    val = f.sub(col[key], f.one)
                    if f.is_zero(val):
                        del col[key]
                    else:
                        col[key] = val
                else:
                    col[key] = f.neg(f.one)
            for (a, b), v in col.items():
                assert u not in (a, b) or f.is_zero(v), \
                    "reduced comultiplication leaks the coaugmentation at %r" % (c,)
            if col:
                cols[c] = col
        return GradedMap(f, self.space, tensor_power(self.space, 2), 0, cols, check=False)

    def reduced_comul_iterates(self, cap=64):
        """list [Δ̄^{(1)} = id, Δ̄^{(2)}, ...] until the iterate vanishes

        Each step expands the first tensor slot of the previous iterate
        column by column; the (Δ̄ ⊗ 1 ⊗ ...) ∘ Δ̄^{(n)} recursion never
        materializes a map out of the full n-fold tensor power.  All maps
        involved have degree 0, so no Koszul signs appear.
        """
        f = self.field
        red = self.reduced_comul()
        out = [identity_map(self.space), red]
        while not out[-1].is_zero():
            assert len(out) < cap, "reduced comultiplication is not conilpotent in this window"
            n = len(out)  # arity of out[-1]
            cols = {}
            for c, col in out[-1].cols.items():
                acc = {}
                for names, a in col.items():
                    first = red.cols.get(names[0])
                    if not first:
                        continue
                    for pair, b in first.items():
                        key = pair + names[1:]
                        s = f.add(acc.get(key, f.zero), f.mul(a, b))
                        if f.is_zero(s):
                            acc.pop(key, None)
                        else:
                            acc[key] = s
                if acc:
                    cols[c] = acc
            out.append(GradedMap(f, self.space, tensor_power(self.space, n + 1),
                                 0, cols, check=False))
        out.pop()  # drop the vanished iterate
        return out


def tensor_coalgebra(letter_space, l_max):
    "T^c(V) truncated at word length l_max, deconcatenation coproduct, d = 0"
    f = letter_space.field
    words = []
    for l in range(l_max + 1):
        for w in itertools.product(letter_space.names, repeat=l):
            words.append((w, sum(letter_space.deg(x) for x in w)))
    space = GradedSpace(f, words)
    cols = {}
    for w, _ in words:
        col = {}
        for i in range(len(w) + 1):
            key = (w[:i], w[i:])
            col[key] = f.add(col.get(key, f.zero), f.one)
        cols[w] = col
    comul = GradedMap(f, space, tensor_power(space, 2), 0, cols, check=False)
    return DgCoalgebra(space, None, comul, (), check=False)


# ------------------------------------------------------------------ bar side

def reduced_letter_names(alg):
    "basis of the augmentation ideal; checks the basis-adapted augmentation"
    from .ainf_core import strict_unit_check
    if alg.unit is None:
        return list(alg.sa.names)
    assert strict_unit_check(alg), "declared unit is not a strict unit"
    letters = [n for n in alg.sa.names if n != alg.unit]
    lset = set(letters)
    for n, m in alg.ops.items():
        for v, col in m.cols.items():
            args = v if isinstance(m.source, TensorSpace) else (v,)
            if all(a in lset for a in args):
                for w in col:
                    if w not in lset:
                        raise ValueError(
                            "not augmented along this basis: b_%d%r has a unit component" % (n, v))
    return letters


def bar(alg, l_max, check=True):
    """Bar construction B(A) = T^c(S Ā) with the coderivation of the b_n.

    The word space is truncated at length l_max; differentials only shorten
    or preserve words, so the complex is honest.  d² = 0 there is exactly
    the Stasheff identities up to arity l_max.
    """
    assert not alg.is_weak(), "bar construction needs a non-weak structure"
    f = alg.field
    letters = reduced_letter_names(alg)
    lset = set(letters)
    lspace = GradedSpace(f, [(n, alg.sa.deg(n)) for n in letters])

    words = []
    for l in range(l_max + 1):
        for w in itertools.product(letters, repeat=l):
            words.append((w, sum(alg.sa.deg(x) for x in w)))
    space = GradedSpace(f, words)

    cols = {}
    for w, _ in words:
        col = {}
        for j, bj in alg.ops.items():
            if j == 0 or j > len(w):
                continue
            for i in range(len(w) - j + 1):
                prefix, chunk, suffix = w[:i], w[i:i + j], w[i + j:]
                key = chunk if j > 1 else chunk[0]
                img = bj.cols.get(key)
                if not img:
                    continue
                pdeg = sum(alg.sa.deg(x) for x in prefix)
                sign = f.one if pdeg % 2 == 0 else f.neg(f.one)
                for y, c in img.items():
                    assert y in lset, "bar image leaves the augmentation ideal"
                    new = prefix + (y,) + suffix
                    val = f.add(col.get(new, f.zero), f.mul(sign, c))
                    if f.is_zero(val):
                        col.pop(new, None)
                    else:
                        col[new] = val
        if col:
            cols[w] = col
    d = GradedMap(f, space, space, 1, cols, check=False)

    ccols = {}
    for w, _ in words:
        ccols[w] = {(w[:i], w[i:]): f.one for i in range(len(w) + 1)}
    comul = GradedMap(f, space, tensor_power(space, 2), 0, ccols, check=False)
    coalg = DgCoalgebra(space, d, comul, (), check=check)
    coalg.letter_space = lspace
    return coalg


def bar_homology(alg, t_max):
    """Homology of the bar construction, reported as {word length: dim}.

    For an algebra concentrated in degree 0 this is Tor_t(k, k); computed
    with one extra word length so every reported value is window-safe.
    """
    coalg = bar(alg, t_max + 1, check=False)
    cx = ChainComplex(coalg.space, coalg.d)
    dims = cx.homology_dims()
    # letters sit in degree −1 each when A is concentrated in degree 0
    assert all(alg.sa.deg(n) == -1 for n in reduced_letter_names(alg)), \
        "bar_homology's length grading needs a degree-0 algebra"
    return {t: dims.get(-t, 0) for t in range(t_max + 1)}


def universal_twisting_cochain(alg, coalg):
    "the projection B(A) → S Ā → Ā ⊂ A, a twisting cochain by construction"
    assert alg.a_space is not None, "need an unsuspended presentation"
    f = alg.field
    cols = {}
    for w in coalg.space.names:
        if len(w) == 1:
            cols[w] = {w[0][1]: f.one}  # strip the ('s', ·) marker
    return GradedMap(f, coalg.space, alg.a_space, 1, cols, check=False)


# ----------------------------------------------------------------- cobar side

def cobar(coalg, l_max, check=True):
    """Cobar construction Ω(C) = T(s⁻¹ C̄), truncated past word length l_max.

    The truncation quotients by the ideal of long words (d raises length by
    at most one, so the ideal is stable and d² = 0 holds exactly in the
    quotient).  Degrees n whose cocycles and coboundaries only involve words
    of length < l_max are window-independent.
    """
    f = coalg.field
    u = coalg.unit_name
    letters = [c for c in coalg.space.names if c != u]
    red = coalg.reduced_comul()

    ldeg = {c: coalg.space.deg(c) + 1 for c in letters}
    words = []
    for l in range(l_max + 1):
        for w in itertools.product(letters, repeat=l):
            words.append((w, sum(ldeg[x] for x in w)))
    space = GradedSpace(f, words)

    # d on a generator: −s⁻¹(dc) − Σ (−1)^{|c₁|} s⁻¹c₁ · s⁻¹c₂
    gen_d = {}
    for c in letters:
        col = {}
        for y, v in coalg.d.cols.get(c, {}).items():
            assert y != u
            col[(y,)] = f.neg(v)
        for (a, b), v in red.cols.get(c, {}).items():
            sign = f.one if coalg.space.deg(a) % 2 == 0 else f.neg(f.one)
            val = f.mul(f.neg(sign), v)
            key = (a, b)
            tot = f.add(col.get(key, f.zero), val)
            if f.is_zero(tot):
                col.pop(key, None)
            else:
                col[key] = tot
        gen_d[c] = col

    cols = {}
    for w, _ in words:
        col = {}
        pdeg = 0
        for i, x in enumerate(w):
            sign = f.one if pdeg % 2 == 0 else f.neg(f.one)
            for piece, v in gen_d[x].items():
                new = w[:i] + piece + w[i + 1:]
                if len(new) > l_max:
                    continue
                val = f.add(col.get(new, f.zero), f.mul(sign, v))
                if f.is_zero(val):
                    col.pop(new, None)
                else:
                    col[new] = val
            pdeg += ldeg[x]
        if col:
            cols[w] = col
    d = GradedMap(f, space, space, 1, cols, check=False)
    if check:
        assert d.compose(d).is_zero(), "cobar differential does not square to zero"

    ments = []
    for w1, _ in words:
        for w2, _ in words:
            if len(w1) + len(w2) <= l_max:
                ments.append(((w1, w2), w1 + w2, 1))
    mul = map_from_entries(f, tensor_power(space, 2), space, 0, ments, check=False)
    return DgAlgebra(space, d, mul, unit_name=())


def cobar_twisting_cochain(coalg, omega):
    "canonical τ: C → ΩC, c ↦ s⁻¹c on the complement of the coaugmentation"
    f = coalg.field
    cols = {c: {(c,): f.one} for c in coalg.space.names
            if c != coalg.unit_name and omega.space.has((c,))}
    return GradedMap(f, coalg.space, omega.space, 1, cols, check=False)


# ----------------------------------------------------------- twisting cochains

def is_twisting_cochain(coalg, alg, tau, return_defect=False):
    """Check the Maurer-Cartan equation for τ: C → A against an A∞-target:

        b_1∘sτ − sτ∘d_C + sum_{n≥2} b_n ∘ (sτ ⊗ ... ⊗ sτ) ∘ Δ̄^{(n)}  =  0,

    which for a dg target desuspends to dτ + τ*τ = 0 in Hom(C, A).
    τ must kill the coaugmentation.  Returns ok (and the defect map
    C → SA if requested).
    """
    assert alg.a_space is not None, "target needs an unsuspended presentation"
    f = alg.field
    assert tau.degree == 1, "twisting cochains have degree +1"
    assert same_space(tau.source, coalg.space) and same_space(tau.target, alg.a_space)
    tau_s = alg.s.compose(tau)
    ok = not tau.cols.get(coalg.unit_name)
    defect = -tau_s.compose(coalg.d)
    if ok:
        # fold sτ through the coproduct: power_n = (sτ)^⊗n ∘ Δ̄^{(n)} is
        # computed as (sτ ⊗ power_{n-1}) ∘ Δ̄, a map C → (SA)^⊗n, so the
        # n-fold tensor power of C never appears (all maps degree 0,
        # coassociativity justifies peeling one slot at a time)
        b1 = alg.ops.get(1)
        if b1 is not None:
            defect = defect + b1.compose(tau_s)
        red = coalg.reduced_comul()
        power = tau_s
        for n in range(2, max(alg.arities(), default=1) + 1):
            power = koszul_many([tau_s, power]).compose(red)
            if power.is_zero():
                break
            bn = alg.ops.get(n)
            if bn is not None:
                defect = defect + bn.compose(power)
        ok = defect.is_zero()
    if return_defect:
        return ok, defect
    return ok


def twisting_witness(coalg, defect):
    "first basis element with a nonzero Maurer-Cartan defect, plus its value"
    for c in coalg.space.names:
        col = defect.cols.get(c)
        if col:
            return c, dict(col)
    return None


# ------------------------------------------------------- twisted tensor products

def twisted_tensor_left(lspace, d_l, action, coalg, tau, check=True):
    """L ⊗_τ C for a dg right module (L, d_l, action μ: L⊗A → L):

        d = d_L⊗1 + 1⊗d_C + (μ⊗1)(1⊗τ⊗1)(1⊗Δ).
    """
    f = lspace.field
    id_l = identity_map(lspace)
    id_c = identity_map(coalg.space)
    base = koszul_many([d_l, id_c]) + koszul_many([id_l, coalg.d])
    twist = koszul_many([action, id_c]).compose(
        koszul_many([id_l, tau, id_c])).compose(
        koszul_many([id_l, coalg.comul]))
    space = tensor_many(f, [lspace, coalg.space])
    d = base + twist
    return ChainComplex(space, d, check=check)


def twisted_tensor_right(mspace, d_m, coaction, dga, tau, check=True):
    """M ⊗_τ A for a dg right comodule (M, d_m, coaction δ: M → M⊗C):

        d = d_M⊗1 + 1⊗d_A + (1⊗μ)(1⊗τ⊗1)(δ⊗1).
    """
    f = mspace.field
    id_m = identity_map(mspace)
    id_a = identity_map(dga.space)
    base = koszul_many([d_m, id_a]) + koszul_many([id_m, dga.d])
    twist = koszul_many([id_m, dga.mul]).compose(
        koszul_many([id_m, tau, id_a])).compose(
        koszul_many([coaction, id_a]))
    space = tensor_many(f, [mspace, dga.space])
    d = base + twist
    return ChainComplex(space, d, check=check)


def two_sided_twisted_complex(dga, coalg, tau, check=True):
    "A ⊗_τ C ⊗_τ A, assembled as (A ⊗_τ C) ⊗_τ A with the shuffled coaction 1⊗Δ"
    f = dga.field
    left = twisted_tensor_left(dga.space, dga.d, dga.mul, coalg, tau, check=check)
    coaction = koszul_many([identity_map(dga.space), coalg.comul])
    return twisted_tensor_right(left.space, left.d, coaction, dga, tau, check=check)


# ---------------------------------------------------------------- convolution

def convolution(coalg, alg, n_max=None):
    """Convolution A∞-structure on Hom(C̄, SA).

    Elementary basis (c, a): the map sending c to a.  The arity-1 operation
    is the hom differential b_1∘f − (−1)^{|f|} f∘d_C; higher operations are
    b_n^conv(f_1..f_n) = b_n ∘ (f_1⊗...⊗f_n) ∘ Δ̄^{(n)}.  Sizes grow as
    dim^n, so keep the inputs small.
    """
    f = alg.field
    if n_max is None:
        n_max = alg.arity_max
    letters = [c for c in coalg.space.names if c != coalg.unit_name]
    hom_basis = [((c, a), alg.sa.deg(a) - coalg.space.deg(c))
                 for c in letters for a in alg.sa.names]
    hom = GradedSpace(f, hom_basis)

    def elem(name):
        c, a = name
        return GradedMap(f, coalg.space, alg.sa, hom.deg(name),
                         {c: {a: f.one}}, check=False)

    def expand(val):
        "re-express a map C → SA in the elementary basis"
        col = {}
        for c, cc in val.cols.items():
            for a, v in cc.items():
                col[(c, a)] = f.add(col.get((c, a), f.zero), v)
        return {k: v for k, v in col.items() if not f.is_zero(v)}

    iterates = coalg.reduced_comul_iterates()
    ops = {}
    b1 = alg.op(1)
    cols1 = {}
    for x in hom.names:
        em = elem(x)
        val = b1.compose(em)
        fd = em.compose(coalg.d)
        val = val - fd if hom.deg(x) % 2 == 0 else val + fd
        col = expand(val)
        if col:
            cols1[x] = col
    ops[1] = GradedMap(f, hom, hom, 1, cols1, check=False)
    for n in range(2, n_max + 1):
        if n > len(iterates):
            break
        bn = alg.ops.get(n)
        if bn is None:
            continue
        delta_n = iterates[n - 1]
        cols = {}
        src = tensor_power(hom, n)
        for combo in itertools.product(hom.names, repeat=n):
            col = expand(bn.compose(koszul_many([elem(x) for x in combo])).compose(delta_n))
            if col:
                cols[combo] = col
        ops[n] = GradedMap(f, src, hom, 1, cols, check=False)
    return AInfAlgebra(f, hom, ops, arity_max=n_max, check=False)


# ------------------------------------------------------------- Koszul duality

def _span_basis(field, vectors, dim):
    "row-reduce a list of dense vectors; returns an independent spanning list"
    if not vectors:
        return []
    rows, pivots = linalg.rref(field, vectors)
    return [rows[i] for i in range(len(pivots))]


def _intersect_spans(field, span_a, span_b, dim):
    "basis of span(A) ∩ span(B), dense vectors of length dim"
    if not span_a or not span_b:
        return []
    cols = len(span_a) + len(span_b)
    mat = [[field.zero] * cols for _ in range(dim)]
    for j, v in enumerate(span_a):
        for i in range(dim):
            mat[i][j] = v[i]
    for j, v in enumerate(span_b):
        for i in range(dim):
            mat[i][len(span_a) + j] = field.neg(v[i])
    out = []
    for k in linalg.kernel_basis(field, mat, ncols=cols):
        vec = [field.zero] * dim
        for j, c in enumerate(k[:len(span_a)]):
            if not field.is_zero(c):
                for i in range(dim):
                    vec[i] = field.add(vec[i], field.mul(c, span_a[j][i]))
        if any(not field.is_zero(x) for x in vec):
            out.append(vec)
    return _span_basis(field, out, dim)


def quadratic_algebra(field, letters, relations, w_max):
    """TV/(R) truncated at word length w_max; generators in degree 0.

    `relations` are sparse vectors over length-2 words {(x, y): coeff}.
    Basis names are the surviving words themselves; the Adams degree of a
    class is its word length.  Multiplication concatenates and reduces.
    """
    lspace = GradedSpace(field, [(x, 0) for x in letters])
    rel_vecs = []
    pairs = list(itertools.product(letters, repeat=2))
    pairs_idx = {w: i for i, w in enumerate(pairs)}
    for r in relations:
        v = [field.zero] * len(pairs)
        for w, c in r.items():
            v[pairs_idx[w]] = field.of(c)
        rel_vecs.append(v)

    # per length: normal-form data
    survivors = {0: [()], 1: [(x,) for x in letters]}
    reduce_rows = {}  # length -> (pivot word -> sparse normal form over survivors)
    for n in range(2, w_max + 1):
        words = list(itertools.product(letters, repeat=n))
        widx = {w: i for i, w in enumerate(words)}
        span = []
        for p in range(n - 1):
            for u in itertools.product(letters, repeat=p):
                for v in itertools.product(letters, repeat=n - 2 - p):
                    for rv in rel_vecs:
                        vec = [field.zero] * len(words)
                        for (x, y), c in zip(pairs, rv):
                            if not field.is_zero(c):
                                vec[widx[u + (x, y) + v]] = c
                        span.append(vec)
        if span:
            rows, pivots = linalg.rref(field, span)
        else:
            rows, pivots = [], []
        pivset = set(pivots)
        survivors[n] = [words[i] for i in range(len(words)) if i not in pivset]
        red = {}
        for r, pc in enumerate(pivots):
            nf = {}
            for j in range(len(words)):
                if j not in pivset and not field.is_zero(rows[r][j]):
                    nf[words[j]] = field.neg(rows[r][j])
            red[words[pc]] = nf
        reduce_rows[n] = red

    names = [(w, 0) for n in range(w_max + 1) for w in survivors[n]]
    space = GradedSpace(field, names)

    def reduce_word(w):
        "normal form of a word as a sparse vector over surviving words"
        n = len(w)
        if n > w_max:
            return {}
        red = reduce_rows.get(n, {})
        if w in red:
            return dict(red[w])
        return {w: field.one}

    ments = {}
    for w1 in space.names:
        for w2 in space.names:
            if len(w1) + len(w2) > w_max:
                continue
            nf = reduce_word(w1 + w2)
            if nf:
                ments[(w1, w2)] = nf
    mul = GradedMap(field, tensor_power(space, 2), space, 0, ments, check=False)
    return DgAlgebra(space, None, mul, unit_name=())


class KoszulData:
    "quadratic algebra, its Koszul dual coalgebra, and the canonical cochain"

    def __init__(self, algebra, coalgebra, tau, c_vectors, letters):
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.tau = tau
        self.c_vectors = c_vectors  # class name -> dense vector over words
        self.letters = letters

    def adams_a(self, name):
        return len(name)

    def adams_c(self, name):
        return int(str(name).split("_")[0][1:]) if name != "c0_0" else 0


def koszul_dual(field, letters, relations, n_max, w_max, check=True):
    """Koszul-dual pair of a quadratic presentation (V, R).

    C_n = intersection of V^p ⊗ R ⊗ V^q over p+2+q = n, with V placed in
    degree −1 and zero differential; τ: C → A is the canonical degree +1
    map through C_1 = V.  Returns KoszulData.
    """
    algebra = quadratic_algebra(field, letters, relations, w_max)

    pairs = list(itertools.product(letters, repeat=2))
    pairs_idx = {w: i for i, w in enumerate(pairs)}
    rel_vecs = []
    for r in relations:
        v = [field.zero] * len(pairs)
        for w, c in r.items():
            v[pairs_idx[w]] = field.of(c)
        rel_vecs.append(v)
    rel_vecs = _span_basis(field, rel_vecs, len(pairs))

    # dual classes, as dense vectors over words of each length
    word_lists = {n: list(itertools.product(letters, repeat=n)) for n in range(n_max + 1)}
    c_bases = {0: [None], 1: [[field.one if i == j else field.zero
                               for j in range(len(letters))] for i in range(len(letters))]}
    for n in range(2, n_max + 1):
        words = word_lists[n]
        widx = {w: i for i, w in enumerate(words)}
        dim = len(words)
        current = None
        for p in range(n - 1):
            q = n - 2 - p
            span = []
            for u in word_lists[p]:
                for v in word_lists[q]:
                    for rv in rel_vecs:
                        vec = [field.zero] * dim
                        for (x, y), c in zip(pairs, rv):
                            if not field.is_zero(c):
                                vec[widx[u + (x, y) + v]] = c
                        span.append(vec)
            span = _span_basis(field, span, dim)
            current = span if current is None else _intersect_spans(field, current, span, dim)
            if not current:
                break
        c_bases[n] = current or []

    basis = [("c0_0", 0)]
    c_vectors = {"c0_0": None}
    for n in range(1, n_max + 1):
        for i, vec in enumerate(c_bases.get(n, [])):
            name = "c%d_%d" % (n, i)
            basis.append((name, -n))
            c_vectors[name] = vec
    cspace = GradedSpace(field, basis)

    # comultiplication: deconcatenate the word expansion, re-expressed in the
    # class bases (always solvable since (C_p⊗V^q) ∩ (V^p⊗C_q) = C_p⊗C_q)
    names_of = {n: ["c%d_%d" % (n, i) for i in range(len(c_bases.get(n, [])))]
                for n in range(n_max + 1)}
    ccols = {"c0_0": {("c0_0", "c0_0"): field.one}}
    for n in range(1, n_max + 1):
        for ci, cname in enumerate(names_of[n]):
            vec = c_vectors[cname]
            col = {("c0_0", cname): field.one, (cname, "c0_0"): field.one}
            for p in range(1, n):
                q = n - p
                a_names, b_names = names_of[p], names_of[q]
                if not a_names or not b_names:
                    # the split must then be zero; verified below by re-expansion
                    continue
                cols_pq = []
                for an in a_names:
                    for bn in b_names:
                        va, vb = c_vectors[an], c_vectors[bn]
                        kron = [field.zero] * len(word_lists[n])
                        widx = {w: i for i, w in enumerate(word_lists[n])}
                        for ia, wa in enumerate(word_lists[p]):
                            if field.is_zero(va[ia]):
                                continue
                            for ib, wb in enumerate(word_lists[q]):
                                if field.is_zero(vb[ib]):
                                    continue
                                kron[widx[wa + wb]] = field.mul(va[ia], vb[ib])
                        cols_pq.append(kron)
                mat = [[cols_pq[j][i] for j in range(len(cols_pq))]
                       for i in range(len(word_lists[n]))]
                sol = linalg.solve(field, mat, vec)
                assert sol is not None, "deconcatenation leaves C⊗C at %s, split %d" % (cname, p)
                k = 0
                for an in a_names:
                    for bn in b_names:
                        if not field.is_zero(sol[k]):
                            col[(an, bn)] = sol[k]
                        k += 1
            ccols[cname] = col
    comul = GradedMap(field, cspace, tensor_power(cspace, 2), 0, ccols, check=False)
    coalg = DgCoalgebra(cspace, None, comul, "c0_0", check=check)

    tcols = {}
    for i, x in enumerate(letters):
        tcols["c1_%d" % i] = {(x,): field.one}
    tau = GradedMap(field, cspace, algebra.space, 1, tcols, check=False)
    return KoszulData(algebra, coalg, tau, c_vectors, list(letters))
