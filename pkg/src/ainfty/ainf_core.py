"""A-infinity algebras, morphisms and modules over exact fields.

Structure maps live at the suspended level: b_n: (SA)^{⊗n} → SA, all of
degree +1, n ≥ 1 (n = 0 allowed for weak structures).  Absent arities are
zero.  The defining identities are, for each n,

    sum_{i+j+l=n} b_{i+1+l} ∘ (1^{⊗i} ⊗ b_j ⊗ 1^{⊗l}) = 0,

with j = 0 terms included exactly when an arity-0 map is present.  A dg
algebra (A, m_1, m_2) embeds via b_1 = −s∘m_1∘s⁻¹ and b_2 = −s∘m_2∘(s⁻¹⊗s⁻¹),
which reproduces the usual dictionary m_1 = −b_1, m_2(x,y) = (−1)^{|x|} b_2(sx,sy).
"""
from __future__ import annotations

from .grlin import (
    GradedMap, GradedSpace, TensorSpace,
    identity_map, koszul_many, map_from_entries, s_inv_map, s_map,
    same_space, suspend_space, tensor_many, tensor_power, unit_space, zero_map,
)


def _compositions(n, parts, min_part=1):
    "ordered tuples (i_1..i_parts) of ints ≥ min_part summing to n"
    if parts == 0:
        return [()] if n == 0 else []
    out = []
    for first in range(min_part, n - min_part * (parts - 1) + 1):
        for rest in _compositions(n - first, parts - 1, min_part):
            out.append((first,) + rest)
    return out


class AInfAlgebra:
    "finite-dimensional A∞-algebra, given by suspended structure maps"

    def __init__(self, field, sa, ops, arity_max, unit=None, check=True):
        self.field = field
        self.sa = sa
        self.ops = {n: m for n, m in ops.items() if not m.is_zero()}
        self.arity_max = arity_max
        self.unit = unit  # suspended-level basis name of a strict unit, or None
        # display data, populated when built from an unsuspended algebra
        self.a_space = None
        self.s = None
        self.s_inv = None
        if check:
            for n, m in self.ops.items():
                assert n >= 0, "negative arity"
                assert m.degree == 1, "b_%d must have degree +1" % n
                assert same_space(m.target, sa), "b_%d target is not SA" % n
                assert same_space(m.source, tensor_power(sa, n)), "b_%d source arity" % n
                for v, w, _ in m.entries():
                    assert m.source.has(v) and sa.has(w), "b_%d entry outside basis" % n
                    assert sa.deg(w) == m.source.deg(v) + 1, "b_%d entry degree" % n
            if unit is not None:
                assert sa.has(unit), "unit name not in basis"

    def op(self, n):
        m = self.ops.get(n)
        if m is not None:
            return m
        return zero_map(self.field, tensor_power(self.sa, n), self.sa, 1)

    def arities(self):
        return sorted(self.ops)

    def is_weak(self):
        return 0 in self.ops

    def is_dg(self):
        return all(n <= 2 for n in self.ops)

    def rename_basis(self, mapping, unit=None):
        "fresh algebra with sa basis names pushed through `mapping`"
        sa2 = GradedSpace(self.field, [(mapping[n], self.sa.deg(n)) for n in self.sa.names])
        ops2 = {}
        for n, m in self.ops.items():
            src2 = tensor_power(sa2, n)
            cols = {}
            for v, col in m.cols.items():
                key = tuple(mapping[c] for c in v) if isinstance(m.source, TensorSpace) else mapping[v]
                cols[key] = {mapping[w]: c for w, c in col.items()}
            ops2[n] = GradedMap(self.field, src2, sa2, 1, cols, check=False)
        if unit is None and self.unit is not None:
            unit = mapping[self.unit]
        return AInfAlgebra(self.field, sa2, ops2, self.arity_max, unit=unit, check=False)


def stasheff_defect(alg, n):
    "left side of the arity-n identity; zero iff the identity holds"
    f = alg.field
    src = tensor_power(alg.sa, n)
    out = zero_map(f, src, alg.sa, 2)
    ident = identity_map(alg.sa)
    for j in alg.arities():
        if j > n:
            continue
        outer = alg.ops.get(n - j + 1)
        if outer is None:
            continue
        for i in range(0, n - j + 1):
            l = n - j - i
            inner = koszul_many([ident] * i + [alg.op(j)] + [ident] * l, field=f)
            out = out + outer.compose(inner)
    return out


def stasheff_ok(alg, n_max, n_min=None):
    "None if all identities hold up to n_max, else the first failing arity"
    start = 0 if alg.is_weak() else 1
    if n_min is not None:
        start = n_min
    for n in range(start, n_max + 1):
        if not stasheff_defect(alg, n).is_zero():
            return n
    return None


# ----------------------------------------------------------- suspension I/O

def transport_to_suspension(m, s, s_inv, arity=None):
    "s ∘ m ∘ (s⁻¹ ⊗ ... ⊗ s⁻¹), the sign-free transport of an n-ary map"
    if arity is None:
        arity = len(m.source.atoms())
    f = m.field
    inner = koszul_many([s_inv] * arity, field=f)
    return s.compose(m).compose(inner)


def from_dga(space, m1, m2, unit=None, check=True):
    """A∞-algebra of a dg algebra (differential m1 of degree +1, product m2).

    Either map may be None (zero).  With `check`, the dg axioms are verified:
    m1² = 0, graded Leibniz, associativity, and unit laws if a unit is named.
    """
    f = space.field
    ident = identity_map(space)
    if m1 is None:
        m1 = zero_map(f, space, space, 1)
    if m2 is None:
        m2 = zero_map(f, tensor_power(space, 2), space, 0)
    if check:
        assert m1.degree == 1 and m2.degree == 0
        assert m1.compose(m1).is_zero(), "m1² ≠ 0"
        leib = m1.compose(m2) - m2.compose(
            koszul_many([m1, ident]) + koszul_many([ident, m1]))
        assert leib.is_zero(), "Leibniz rule fails"
        assoc = m2.compose(koszul_many([m2, ident])) - m2.compose(koszul_many([ident, m2]))
        assert assoc.is_zero(), "product not associative"
        if unit is not None:
            assert space.deg(unit) == 0, "unit must sit in degree 0"
            for x in space.names:
                assert m2((unit, x)) == {x: f.one}, "left unit law fails at %r" % (x,)
                assert m2((x, unit)) == {x: f.one}, "right unit law fails at %r" % (x,)
    sa = suspend_space(space)
    s = s_map(space, sa)
    si = s_inv_map(space, sa)
    b1 = -transport_to_suspension(m1, s, si, arity=1)
    b2 = -transport_to_suspension(m2, s, si, arity=2)
    alg = AInfAlgebra(f, sa, {1: b1, 2: b2}, arity_max=2,
                      unit=("s", unit) if unit is not None else None, check=False)
    alg.a_space = space
    alg.s = s
    alg.s_inv = si
    return alg


def m_level_op(alg, n):
    """The unsuspended n-ary operation (for display): degrees n·|A| → |A| + 2 − n.

    Inverse of the from_dga transport; for n = 1, 2 this realizes
    m_1 = −b_1 and m_2(x,y) = (−1)^{|x|} b_2(sx, sy).
    """
    assert alg.a_space is not None, "algebra has no unsuspended presentation"
    f = alg.field
    outer = alg.s_inv.compose(alg.op(n)).compose(koszul_many([alg.s] * n, field=f))
    exp = n * (n - 1) // 2 + 1
    return outer.scale(f.one if exp % 2 == 0 else f.neg(f.one))


def strict_unit_check(alg):
    """Verify the strict unit laws at the suspended level.

    b_n vanishes whenever any argument is the unit, for n ≠ 2, and
    b_2(u, y) = y, b_2(y, u) = (−1)^{deg_SA(y)+1} y.
    """
    u = alg.unit
    assert u is not None, "no unit declared"
    f = alg.field
    sa = alg.sa
    for n, m in alg.ops.items():
        if n == 2:
            continue
        for v, col in m.cols.items():
            args = v if isinstance(m.source, TensorSpace) else (v,)
            if u in args and col:
                return False
    b2 = alg.op(2)
    for y in sa.names:
        left = b2((u, y))
        if left != {y: f.one}:
            return False
        want = f.one if (sa.deg(y) + 1) % 2 == 0 else f.neg(f.one)
        right = b2((y, u))
        if right != {y: want}:
            return False
    return True


# ----------------------------------------------------------------- morphisms

class AInfMorphism:
    "A∞-morphism: components f_n: (SA)^{⊗n} → SB of degree 0, n ≥ 1"

    def __init__(self, source, target, comps, check=True):
        self.source = source
        self.target = target
        self.comps = {n: m for n, m in comps.items() if not m.is_zero()}
        if check:
            for n, m in self.comps.items():
                assert n >= 1, "morphism components start at arity 1"
                assert m.degree == 0, "f_%d must have degree 0" % n
                assert same_space(m.source, tensor_power(source.sa, n))
                assert same_space(m.target, target.sa)

    def comp(self, n):
        m = self.comps.get(n)
        if m is not None:
            return m
        return zero_map(self.source.field,
                        tensor_power(self.source.sa, n), self.target.sa, 0)


def identity_morphism(alg):
    return AInfMorphism(alg, alg, {1: identity_map(alg.sa)}, check=False)


def morphism_defect(fmor, n):
    """Arity-n morphism identity defect:

    sum f_{i+1+l}(1 ⊗ b_j ⊗ 1)  −  sum b_s(f_{i_1} ⊗ ... ⊗ f_{i_s}).

    Weak sources contribute j = 0 insertions; weak targets contribute
    compositions with zero parts filled by the target's arity-0 map.
    """
    A, B = fmor.source, fmor.target
    f = A.field
    src = tensor_power(A.sa, n)
    out = zero_map(f, src, B.sa, 1)
    ident = identity_map(A.sa)
    if n == 0:
        out = out + fmor.comp(1).compose(A.op(0)) - B.op(0)
        return out
    for j in A.arities():
        if j > n:
            continue
        fouter = fmor.comps.get(n - j + 1)
        if fouter is None:
            continue
        for i in range(0, n - j + 1):
            l = n - j - i
            inner = koszul_many([ident] * i + [A.op(j)] + [ident] * l, field=f)
            out = out + fouter.compose(inner)
    # with a weak target, compositions may have zero parts filled by b_0,
    # so the outer arity s is bounded by the target's stored arities
    min_part = 0 if B.is_weak() else 1
    for s in [a for a in B.arities() if a >= 1]:
        bs = B.ops[s]
        for parts in _compositions(n, s, min_part=min_part):
            factors = []
            ok = True
            for it in parts:
                if it == 0:
                    factors.append(B.op(0))
                else:
                    fi = fmor.comps.get(it)
                    if fi is None:
                        ok = False
                        break
                    factors.append(fi)
            if not ok:
                continue
            out = out - bs.compose(koszul_many(factors, field=f))
    return out


def morphism_ok(fmor, n_max):
    start = 0 if (fmor.source.is_weak() or fmor.target.is_weak()) else 1
    for n in range(start, n_max + 1):
        if not morphism_defect(fmor, n).is_zero():
            return n
    return None


def compose_morphisms(fmor, gmor, n_max=None):
    "composite A∞-morphism (f∘g)_n = sum f_s(g_{i_1} ⊗ ... ⊗ g_{i_s})"
    assert fmor.source is gmor.target or same_space(fmor.source.sa, gmor.target.sa)
    f = gmor.source.field
    if n_max is None:
        n_max = max(max(fmor.comps, default=1), max(gmor.comps, default=1),
                    gmor.source.arity_max)
    comps = {}
    for n in range(1, n_max + 1):
        acc = zero_map(f, tensor_power(gmor.source.sa, n), fmor.target.sa, 0)
        for s in range(1, n + 1):
            fs = fmor.comps.get(s)
            if fs is None:
                continue
            for parts in _compositions(n, s, min_part=1):
                factors = [gmor.comps.get(it) for it in parts]
                if any(x is None for x in factors):
                    continue
                acc = acc + fs.compose(koszul_many(factors, field=f))
        comps[n] = acc
    return AInfMorphism(gmor.source, fmor.target, comps, check=False)


# ------------------------------------------------------------------- modules

class AInfModule:
    "right-style A∞-module: maps b^M_n: SM ⊗ (SA)^{⊗(n−1)} → SM, degree +1"

    def __init__(self, algebra, sm, ops, arity_max, check=True):
        self.algebra = algebra
        self.field = algebra.field
        self.sm = sm
        self.ops = {n: m for n, m in ops.items() if not m.is_zero()}
        self.arity_max = arity_max
        if check:
            for n, m in self.ops.items():
                assert n >= 1, "module operations start at arity 1"
                assert m.degree == 1
                assert same_space(m.source, self.source_space(n))
                assert same_space(m.target, sm)

    def source_space(self, n):
        return tensor_many(self.field, [self.sm] + [self.algebra.sa] * (n - 1))

    def op(self, n):
        m = self.ops.get(n)
        if m is not None:
            return m
        return zero_map(self.field, self.source_space(n), self.sm, 1)


def free_module(alg):
    "the algebra over itself; module maps are the structure maps"
    return AInfModule(alg, alg.sa, {n: m for n, m in alg.ops.items() if n >= 1},
                      alg.arity_max, check=False)


def module_defect(mod, n):
    "arity-n module identity defect (module slot first)"
    A = mod.algebra
    f = mod.field
    src = mod.source_space(n)
    out = zero_map(f, src, mod.sm, 2)
    id_a = identity_map(A.sa)
    id_m = identity_map(mod.sm)
    # inner map hits the module slot
    for j in mod.ops:
        if j > n:
            continue
        outer = mod.ops.get(n - j + 1)
        if outer is None:
            continue
        l = n - j
        inner = koszul_many([mod.op(j)] + [id_a] * l, field=f)
        out = out + outer.compose(inner)
    # inner map lives in the algebra slots
    for j in A.arities():
        if j > n - 1 and j != 0:
            continue
        outer = mod.ops.get(n - j + 1)
        if outer is None:
            continue
        top = n - j if j > 0 else n
        for i in range(1, top + 1):
            l = (n - j) - i if j > 0 else n - i
            if l < 0:
                continue
            inner = koszul_many([id_m] + [id_a] * (i - 1) + [A.op(j)] + [id_a] * l, field=f)
            out = out + outer.compose(inner)
    return out


def module_ok(mod, n_max):
    for n in range(1, n_max + 1):
        if not module_defect(mod, n).is_zero():
            return n
    return None


# -------------------------------------------------------------- deformations

def deform(space, mul, cochain, n, unit=None, check=True):
    """Square-zero deformation A = B ⊕ Bε with b'_n twisted by an N-cochain.

    `space` is an ordinary algebra in degree 0 with associative product
    `mul`; `cochain` is a degree-0 map B^{⊗n} → B.  The new basis element
    ε has degree 2 − n and squares to zero; the arity-n structure map gains
    the suspension transport of ε·cochain.  A weak structure results when
    n = 0.
    """
    f = space.field
    assert all(space.deg(x) == 0 for x in space.names), "base algebra must sit in degree 0"
    assert cochain.degree == 0, "deformation cochain must have degree 0"
    assert same_space(cochain.source, tensor_power(space, n))
    assert same_space(cochain.target, space)
    if check:
        ident = identity_map(space)
        assoc = mul.compose(koszul_many([mul, ident])) - mul.compose(koszul_many([ident, mul]))
        assert assoc.is_zero(), "base product not associative"

    eps_deg = 2 - n
    ext = GradedSpace(f, [(x, 0) for x in space.names]
                      + [(("eps", x), eps_deg) for x in space.names])
    ext2 = tensor_power(ext, 2)

    cols = {}
    for (x, y), col in mul.cols.items():
        cols[(x, y)] = dict(col)
        cols[(("eps", x), y)] = {("eps", w): c for w, c in col.items()}
        cols[(x, ("eps", y))] = {("eps", w): c for w, c in col.items()}
        # ε² = 0: nothing on (εx, εy)
    m2 = GradedMap(f, ext2, ext, 0, cols, check=False)

    # ε·cochain, extended by zero on tuples touching ε
    ccols = {}
    if n == 0:
        img = cochain(())
        if img:
            ccols[()] = {("eps", w): c for w, c in img.items()}
    else:
        for v, col in cochain.cols.items():
            key = v if isinstance(cochain.source, TensorSpace) else (v,)
            key = key if n > 1 else key[0]
            ccols[key] = {("eps", w): c for w, c in col.items()}
    csrc = tensor_power(ext, n)
    ec = GradedMap(f, csrc, ext, eps_deg, ccols, check=False)

    sa = suspend_space(ext)
    s = s_map(ext, sa)
    si = s_inv_map(ext, sa)
    b2 = -transport_to_suspension(m2, s, si, arity=2)
    bn = transport_to_suspension(ec, s, si, arity=n)
    if n == 2:
        ops = {2: b2 + bn}
    else:
        ops = {2: b2, n: bn}
    alg = AInfAlgebra(f, sa, ops, arity_max=max(2, n),
                      unit=("s", unit) if unit is not None else None, check=False)
    alg.a_space = ext
    alg.s = s
    alg.s_inv = si
    return alg
