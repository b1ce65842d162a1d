"""Hochschild cochains of an ordinary algebra: brace insertions, the
cochain differential, and the bar construction of the cochain algebra
with its interleaving product.

Cochains are kept at the suspended level throughout: an arity-p cochain
is a map W^{⊗p} → W on the letter space W (the suspension of the algebra,
or of a basis complement of the unit in the reduced case).  The cochain
differential is the commutator with the suspended product, expressed
through single insertions, so no side sign table is needed.
"""
from __future__ import annotations

import itertools

from .ainf_core import AInfAlgebra, _compositions, from_dga, stasheff_ok
from .barcobar import DgCoalgebra, bar, reduced_letter_names
from .grlin import (
    GradedMap, GradedSpace, TensorSpace,
    identity_map, koszul_many, s_inv_map, s_map,
    tensor_power, zero_map,
)


def _space_arity(space):
    "number of tensor slots; atomic spaces count as one"
    if isinstance(space, TensorSpace):
        return len(space.factors)
    return 1


def cochain_arity(m):
    "number of inputs of a cochain, read off its source"
    return _space_arity(m.source)


# ------------------------------------------------------------ cochain complex

class HochschildComplex:
    """Cochains on a letter space W equipped with a degree +1 binary
    operation (the suspended product of an ordinary algebra).

    `base`, `s`, `s_inv` are kept when the complex was built from an
    ordinary algebra, so degree-0 cochains on the original basis can be
    transported in.
    """

    def __init__(self, letters, b2, base=None, s=None, s_inv=None):
        self.field = letters.field
        self.letters = letters
        self.b2 = b2
        self.base = base
        self.s = s
        self.s_inv = s_inv

    def space(self, p):
        return tensor_power(self.letters, p)

    def elementary(self, inputs, out):
        "cochain sending one basis tuple to one letter"
        f = self.field
        inputs = tuple(inputs)
        p = len(inputs)
        key = () if p == 0 else (inputs if p > 1 else inputs[0])
        deg = self.letters.deg(out) - sum(self.letters.deg(a) for a in inputs)
        return GradedMap(f, self.space(p), self.letters, deg,
                         {key: {out: f.one}}, check=False)

    def elementary_cochains(self, p):
        "basis of the arity-p cochains, as ((inputs, out), map) pairs"
        out = []
        for inputs in itertools.product(self.letters.names, repeat=p):
            for w in self.letters.names:
                out.append(((inputs, w), self.elementary(inputs, w)))
        return out

    def from_ordinary(self, c):
        "transport a cochain on the original basis to the letter space"
        assert self.s is not None, "complex was not built from an ordinary algebra"
        p = cochain_arity(c)
        if p == 0 or (p == 1 and not isinstance(c.source, TensorSpace)):
            inner = [self.s_inv] * p
        else:
            inner = [self.s_inv] * _space_arity(c.source)
        if not inner:
            return self.s.compose(c)
        return self.s.compose(c).compose(koszul_many(inner, field=self.field))

    def brace(self, f, gs):
        """Insertion sum f{g_1, …, g_k}: the g's land in k of the input
        slots of f in order, the remaining slots are filled with
        identities, and every filling contributes with its Koszul sign."""
        gs = list(gs)
        if not gs:
            return f
        fld = self.field
        W = self.letters
        p = cochain_arity(f)
        k = len(gs)
        qs = [cochain_arity(g) for g in gs]
        out_arity = p + sum(qs) - k
        if k > p:
            if out_arity < 0:
                raise ValueError("more insertions than input slots")
            return zero_map(fld, tensor_power(W, out_arity), W,
                            f.degree + sum(g.degree for g in gs))
        total = None
        ident = identity_map(W)
        for comp in _compositions(p - k, k + 1, min_part=0):
            maps = [ident] * comp[0]
            for g, a in zip(gs, comp[1:]):
                maps.append(g)
                maps.extend([ident] * a)
            term = f.compose(koszul_many(maps, field=fld))
            total = term if total is None else total + term
        return total

    def cup(self, f, g):
        "product cochain: the suspended product applied to a tensor pair"
        return self.b2.compose(koszul_many([f, g], field=self.field))

    def differential(self, phi):
        """Commutator with the suspended product, via single insertions:
        δφ = b{φ} − (−1)^{|φ|} φ{b}."""
        fld = self.field
        left = self.brace(self.b2, [phi])
        right = self.brace(phi, [self.b2])
        sgn = fld.neg(fld.one) if phi.degree % 2 == 0 else fld.one
        return left + right.scale(sgn)

    def check(self, p_max=2):
        "δ² = 0 on every elementary cochain of arity ≤ p_max"
        for _, c in [e for p in range(p_max + 1) for e in self.elementary_cochains(p)]:
            assert self.differential(self.differential(c)).is_zero(), "δ² ≠ 0"
        return True


def hochschild_complex(space, mul, unit_name=None, reduced=False, check=True):
    """Cochain complex of an ordinary algebra given on a basis.

    With reduced=True (needs `unit_name` and a basis-adapted augmentation)
    the letters run over the complement of the unit; otherwise over the
    whole algebra.  The underlying product is verified when `check` is set.
    """
    f = space.field
    d0 = zero_map(f, space, space, 1)
    alg = from_dga(space, d0, mul, unit=unit_name, check=check)
    if not reduced:
        s = s_map(space, alg.sa)
        si = s_inv_map(space, alg.sa)
        return HochschildComplex(alg.sa, alg.ops[2], base=space, s=s, s_inv=si)
    assert unit_name is not None, "reduced complex needs a unit"
    letters = reduced_letter_names(alg)
    W = GradedSpace(f, [(n, alg.sa.deg(n)) for n in letters])
    lset = set(letters)
    cols = {}
    for (u, v), col in alg.ops[2].cols.items():
        if u in lset and v in lset and col:
            cols[(u, v)] = dict(col)
    b2 = GradedMap(f, tensor_power(W, 2), W, 1, cols, check=False)
    base = GradedSpace(f, [(n[1], space.deg(n[1])) for n in letters])
    s = GradedMap(f, base, W, -1,
                  {n[1]: {n: f.one} for n in letters}, check=False)
    si = GradedMap(f, W, base, 1,
                   {n: {n[1]: f.one} for n in letters}, check=False)
    return HochschildComplex(W, b2, base=base, s=s, s_inv=si)


def brace(hc, f, gs):
    "insertion sum on cochains of `hc`; see HochschildComplex.brace"
    return hc.brace(f, gs)


def hochschild_differential(hc, c):
    "cochain differential on `hc`; see HochschildComplex.differential"
    return hc.differential(c)


def coderivation_check(coalg, D, left=None, right=None):
    """Does D satisfy Δ∘D = (left⊗D + D⊗right)∘Δ on the coalgebra?

    Defaults check an honest coderivation (left = right = identity).
    Returns (True, None) or (False, witness) with the first basis element
    and pair where the two sides differ.
    """
    ident = identity_map(coalg.space)
    if left is None:
        left = ident
    if right is None:
        right = ident
    lhs = coalg.comul.compose(D)
    rhs = (koszul_many([left, D]) + koszul_many([D, right])).compose(coalg.comul)
    diff = lhs - rhs
    if diff.is_zero():
        return True, None
    v, w, c = next(iter(diff.entries()))
    return False, (v, w, c)


# ----------------------------------------------- bar of the cochain algebra

class BraceBialgebra:
    """Words of Hochschild cochains with the deconcatenation coproduct,
    the bar differential of (δ, cup), and the interleaving product in
    which the left word's letters absorb blocks of the right word's
    letters as brace arguments.

    The stored word space truncates letters at arity ≤ p_max and words at
    length ≤ l_max.  Products are computed with exact untruncated
    intermediates and projected to the window only at the end; the
    verification routines compare both sides of each identity the same
    way, so a reported failure is a real one.
    """

    def __init__(self, hc, p_max, l_max, check=True):
        self.field = hc.field
        self.hc = hc
        self.p_max = p_max
        self.l_max = l_max

        # interned letters; arities above p_max appear only in intermediates
        self._lname = []
        self._lid = {}
        self._ldeg = []
        self._lar = []
        self._lmap_memo = []
        self._brace_memo = {}
        self._dlet_memo = {}
        self._cup_memo = {}
        self._mul_memo = {}
        for p in range(p_max + 1):
            for (inputs, out), _ in hc.elementary_cochains(p):
                self._intern(("c", inputs, out))
        self.letter_names = list(self._lname)
        self._window = len(self.letter_names)

        lspace = GradedSpace(self.field, [(n, self._ldeg[self._lid[n]])
                                          for n in self.letter_names])
        self.letter_space = lspace
        d1 = self._letter_diff_map(lspace)
        c2 = self._letter_cup_map(lspace)
        self.cochain_algebra = AInfAlgebra(self.field, lspace, {1: d1, 2: c2},
                                           arity_max=2, unit=None, check=False)
        if check:
            assert stasheff_ok(self.cochain_algebra, 3) is None, \
                "truncated cochain algebra is not dg"
        self.coalgebra = bar(self.cochain_algebra, l_max, check=check)
        self.space = self.coalgebra.space
        self.comul = self.coalgebra.comul
        self.d = self.coalgebra.d
        self.unit_word = ()
        self.words = [tuple(self._lid[n] for n in w) for w in self.space.names]
        self.mul = self._mul_map()

    # --------------- letter bookkeeping

    def _intern(self, name):
        lid = self._lid.get(name)
        if lid is None:
            lid = len(self._lname)
            self._lid[name] = lid
            self._lname.append(name)
            _, inputs, out = name
            W = self.hc.letters
            self._ldeg.append(W.deg(out) - sum(W.deg(a) for a in inputs))
            self._lar.append(len(inputs))
            self._lmap_memo.append(None)
        return lid

    def _letter_map(self, lid):
        m = self._lmap_memo[lid]
        if m is None:
            _, inputs, out = self._lname[lid]
            m = self.hc.elementary(inputs, out)
            self._lmap_memo[lid] = m
        return m

    def _expand(self, m):
        "write a cochain as letter ids with coefficients"
        r = _space_arity(m.source)
        out = []
        for v, w, c in m.entries():
            inputs = tuple(v) if r > 1 else ((v,) if r == 1 else ())
            out.append((self._intern(("c", inputs, w)), c))
        return tuple(out)

    def _brace_combo(self, fid, args):
        key = (fid, args)
        hit = self._brace_memo.get(key)
        if hit is None:
            if not args:
                hit = ((fid, self.field.one),)
            elif len(args) > self._lar[fid]:
                hit = ()
            else:
                hit = self._expand(self.hc.brace(
                    self._letter_map(fid), [self._letter_map(a) for a in args]))
            self._brace_memo[key] = hit
        return hit

    def _dlet(self, lid):
        hit = self._dlet_memo.get(lid)
        if hit is None:
            hit = self._expand(self.hc.differential(self._letter_map(lid)))
            self._dlet_memo[lid] = hit
        return hit

    def _cuplet(self, a, b):
        hit = self._cup_memo.get((a, b))
        if hit is None:
            hit = self._expand(self.hc.cup(self._letter_map(a), self._letter_map(b)))
            self._cup_memo[(a, b)] = hit
        return hit

    def _letter_diff_map(self, lspace):
        f = self.field
        cols = {}
        for n in lspace.names:
            col = {}
            for lid, c in self._dlet(self._lid[n]):
                if lid < self._window:
                    col[self._lname[lid]] = c
            if col:
                cols[n] = col
        return GradedMap(f, lspace, lspace, 1, cols, check=False)

    def _letter_cup_map(self, lspace):
        f = self.field
        cols = {}
        for n1 in lspace.names:
            for n2 in lspace.names:
                col = {}
                for lid, c in self._cuplet(self._lid[n1], self._lid[n2]):
                    if lid < self._window:
                        col[self._lname[lid]] = c
                if col:
                    cols[(n1, n2)] = col
        return GradedMap(f, tensor_power(lspace, 2), lspace, 1, cols, check=False)

    # --------------- exact product engine

    def _mul(self, wa, wb, prune=None):
        """Interleaving product of two id-words, exact in arity; with
        `prune`, terms longer than that length are not generated."""
        key = (wa, wb, prune)
        hit = self._mul_memo.get(key)
        if hit is not None:
            return hit
        f = self.field
        zero = f.zero
        n = len(wb)
        m = len(wa)
        ypar = [0] * (n + 1)
        for t, y in enumerate(wb):
            ypar[t + 1] = ypar[t] ^ (self._ldeg[y] & 1)
        out = {}

        def rec(k, start, word, coeff):
            if k == m:
                tail = word + wb[start:]
                if prune is None or len(tail) <= prune:
                    val = f.add(out.get(tail, zero), coeff)
                    out[tail] = val
                return
            x = wa[k]
            xpar = self._ldeg[x] & 1
            slots = self._lar[x]
            for i in range(start, n + 1):
                if prune is not None and len(word) + (i - start) + (m - k) > prune:
                    break
                c1 = f.neg(coeff) if xpar and ypar[i] else coeff
                base = word + wb[start:i]
                for j in range(i, min(n, i + slots) + 1):
                    for lid, bc in self._brace_combo(x, wb[i:j]):
                        rec(k + 1, j, base + (lid,), f.mul(c1, bc))

        rec(0, 0, (), f.one)
        out = {w: c for w, c in out.items() if not f.is_zero(c)}
        self._mul_memo[key] = out
        return out

    def _in_window(self, w):
        return len(w) <= self.l_max and all(lid < self._window for lid in w)

    def _to_names(self, w):
        return tuple(self._lname[lid] for lid in w)

    def product(self, wa, wb):
        "product of two window words, projected back to the window"
        a = tuple(self._lid[n] for n in wa)
        b = tuple(self._lid[n] for n in wb)
        full = self._mul(a, b, prune=self.l_max)
        return {self._to_names(w): c for w, c in full.items() if self._in_window(w)}

    def _mul_map(self):
        f = self.field
        cols = {}
        for wa in self.space.names:
            for wb in self.space.names:
                col = self.product(wa, wb)
                if col:
                    cols[(wa, wb)] = col
        return GradedMap(f, tensor_power(self.space, 2), self.space, 0,
                         cols, check=False)

    def _word_diff(self, w):
        "exact bar differential of an id-word, letters left untruncated"
        f = self.field
        out = {}
        par = 0
        for i, x in enumerate(w):
            sgn = par
            for lid, c in self._dlet(x):
                new = w[:i] + (lid,) + w[i + 1:]
                val = f.add(out.get(new, f.zero), f.neg(c) if sgn else c)
                out[new] = val
            if i + 1 < len(w):
                for lid, c in self._cuplet(x, w[i + 1]):
                    new = w[:i] + (lid,) + w[i + 2:]
                    val = f.add(out.get(new, f.zero), f.neg(c) if sgn else c)
                    out[new] = val
            par ^= self._ldeg[x] & 1
        return {v: c for v, c in out.items() if not f.is_zero(c)}

    def _wdeg(self, w):
        return sum(self._ldeg[x] for x in w)

    # --------------- identity verification

    def verify_unit(self):
        "empty word is a strict two-sided unit for the stored product"
        for w in self.words:
            if self._mul((), w) != {w: self.field.one}:
                return False, self._to_names(w)
            if self._mul(w, ()) != {w: self.field.one}:
                return False, self._to_names(w)
        return True, None

    def verify_associativity(self):
        """(x·y)·z = x·(y·z) on every triple of window words, with exact
        intermediates; the two sides are compared inside the window."""
        f = self.field
        words = self.words
        l_max = self.l_max
        left = {}
        for wa in words:
            for wb in words:
                first = self._mul(wa, wb)
                for wc in words:
                    acc = {}
                    for w, c in first.items():
                        if len(w) > l_max:
                            continue
                        for v, c2 in self._mul(w, wc, prune=l_max).items():
                            if self._in_window(v):
                                val = f.add(acc.get(v, f.zero), f.mul(c, c2))
                                acc[v] = val
                    acc = {v: c for v, c in acc.items() if not f.is_zero(c)}
                    if acc:
                        left[(wa, wb, wc)] = acc
        for wb in words:
            for wc in words:
                second = self._mul(wb, wc)
                for wa in words:
                    acc = {}
                    for u, c in second.items():
                        for v, c2 in self._mul(wa, u, prune=l_max).items():
                            if self._in_window(v):
                                val = f.add(acc.get(v, f.zero), f.mul(c, c2))
                                acc[v] = val
                    acc = {v: c for v, c in acc.items() if not f.is_zero(c)}
                    key = (wa, wb, wc)
                    if left.get(key, {}) != acc:
                        return False, tuple(self._to_names(w) for w in key)
                    left.pop(key, None)
        if left:
            return False, tuple(self._to_names(w) for w in next(iter(left)))
        return True, None

    def verify_coproduct_multiplicative(self):
        """Deconcatenation of an exact product equals the componentwise
        product of deconcatenations, with the Koszul crossing sign."""
        f = self.field
        for wa in self.words:
            for wb in self.words:
                lhs = {}
                for w, c in self._mul(wa, wb).items():
                    for i in range(len(w) + 1):
                        key = (w[:i], w[i:])
                        lhs[key] = f.add(lhs.get(key, f.zero), c)
                rhs = {}
                for i in range(len(wa) + 1):
                    a1, a2 = wa[:i], wa[i:]
                    p2 = self._wdeg(a2) & 1
                    for j in range(len(wb) + 1):
                        b1, b2 = wb[:j], wb[j:]
                        sgn = p2 and (self._wdeg(b1) & 1)
                        for u1, c1 in self._mul(a1, b1).items():
                            c1s = f.neg(c1) if sgn else c1
                            for u2, c2 in self._mul(a2, b2).items():
                                key = (u1, u2)
                                val = f.add(rhs.get(key, f.zero), f.mul(c1s, c2))
                                rhs[key] = val
                lhs = {k: v for k, v in lhs.items() if not f.is_zero(v)}
                rhs = {k: v for k, v in rhs.items() if not f.is_zero(v)}
                if lhs != rhs:
                    return False, (self._to_names(wa), self._to_names(wb))
        return True, None

    def verify_derivation(self):
        "d(x·y) = dx·y + (−1)^{|x|} x·dy with exact intermediates"
        f = self.field
        for wa in self.words:
            apar = self._wdeg(wa) & 1
            da = self._word_diff(wa)
            for wb in self.words:
                lhs = {}
                for w, c in self._mul(wa, wb).items():
                    for v, c2 in self._word_diff(w).items():
                        lhs[v] = f.add(lhs.get(v, f.zero), f.mul(c, c2))
                rhs = {}
                for u, c in da.items():
                    for v, c2 in self._mul(u, wb).items():
                        rhs[v] = f.add(rhs.get(v, f.zero), f.mul(c, c2))
                for u, c in self._word_diff(wb).items():
                    cs = f.neg(c) if apar else c
                    for v, c2 in self._mul(wa, u).items():
                        rhs[v] = f.add(rhs.get(v, f.zero), f.mul(cs, c2))
                lhs = {k: v for k, v in lhs.items() if not f.is_zero(v)}
                rhs = {k: v for k, v in rhs.items() if not f.is_zero(v)}
                if lhs != rhs:
                    return False, (self._to_names(wa), self._to_names(wb))
        return True, None

    def verify_all(self):
        "run every identity check; the coalgebra axioms re-run too"
        report = {}
        report["coalgebra_axioms"] = self.coalgebra.check()
        ok, wit = coderivation_check(self.coalgebra, self.d)
        report["differential_coderivation"] = ok
        for name, meth in [("unit", self.verify_unit),
                           ("associativity", self.verify_associativity),
                           ("coproduct_multiplicative", self.verify_coproduct_multiplicative),
                           ("derivation", self.verify_derivation)]:
            ok, wit = meth()
            report[name] = ok
            if not ok:
                report[name + "_witness"] = wit
        return report


def hochschild_bar_bialgebra(space, mul, unit_name, arity_max, length_max, check=True):
    """Bar construction of the reduced cochain algebra of an ordinary
    augmented algebra, with the interleaving product: letters are
    elementary cochains of arity ≤ arity_max, words have length
    ≤ length_max.  Identity checks live on the returned object."""
    hc = hochschild_complex(space, mul, unit_name=unit_name,
                            reduced=True, check=check)
    return BraceBialgebra(hc, arity_max, length_max, check=check)
