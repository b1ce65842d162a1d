"""Seeded random structures for property suites.

Three families of small dg algebras, all honest by construction or by
rejection against the full dg axiom check:

  end        endomorphism algebra of a random two-term complex, with the
             supercommutator differential
  squarezero unital extension k ⊕ M with M·M = 0 and a random differential
             on M
  sparse     rejection-sampled sparse multiplication tables

Everything is deterministic in the seed.
"""
import random

from .barcobar import DgAlgebra
from .grlin import GradedMap, GradedSpace, tensor_power
from .ainf_core import from_dga


def random_graded_map(rng, field, source, target, degree, density=0.5,
                      coeffs=(1, -1, 2)):
    "sparse map hitting degree-compatible targets; may be zero at low density"
    cols = {}
    for v in source.basis():
        if rng.random() > density:
            continue
        opts = [w for w in target.basis()
                if target.deg(w) == source.deg(v) + degree]
        if not opts:
            continue
        w = rng.choice(opts)
        cols[v] = {w: field.of(rng.choice(coeffs))}
    return GradedMap(field, source, target, degree, cols, check=False)


def _end_algebra(rng, field):
    # End(V) for a 2-dim complex V; d = supercommutator with a random
    # square-zero degree +1 map (automatic here: degrees cannot cycle)
    dv = [rng.randint(-1, 1), rng.randint(-1, 1)]
    basis = [("E%d%d" % (i, j), dv[i] - dv[j]) for i in range(2) for j in range(2)]
    space = GradedSpace(field, basis)
    delta = {}
    for j in range(2):
        for i in range(2):
            if dv[i] == dv[j] + 1 and rng.random() < 0.7:
                delta[(i, j)] = field.of(rng.choice((1, -1)))

    mcols = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                # composition E_ij ∘ E_jk; second argument acts first
                mcols[("E%d%d" % (i, j), "E%d%d" % (j, k))] = {"E%d%d" % (i, k): field.one}
    mul = GradedMap(field, tensor_power(space, 2), space, 0, mcols, check=False)

    dcols = {}
    for i in range(2):
        for j in range(2):
            col = {}
            for (a, b), c in delta.items():
                if b == i:  # delta ∘ E_ij
                    col["E%d%d" % (a, j)] = field.add(col.get("E%d%d" % (a, j), field.zero), c)
                if a == j:  # E_ij ∘ delta, Koszul sign of |E_ij|
                    s = field.neg(c) if (dv[i] - dv[j]) % 2 == 0 else c
                    col["E%d%d" % (i, b)] = field.add(col.get("E%d%d" % (i, b), field.zero), s)
            col = {w: c for w, c in col.items() if not field.is_zero(c)}
            if col:
                dcols["E%d%d" % (i, j)] = col
    d = GradedMap(field, space, space, 1, dcols, check=False)
    return DgAlgebra(space, d, mul, unit_name=None)


def _squarezero_algebra(rng, field):
    m_dim = rng.randint(1, 3)
    names = [("1", 0)] + [("t%d" % k, rng.randint(-2, 2)) for k in range(m_dim)]
    space = GradedSpace(field, names)
    mcols = {}
    for n, _ in names:
        mcols[("1", n)] = {n: field.one}
        if n != "1":
            mcols[(n, "1")] = {n: field.one}
    mul = GradedMap(field, tensor_power(space, 2), space, 0, mcols, check=False)
    # differential from a source half into a target half: d² = 0 for free
    cut = rng.randint(0, m_dim)
    srcs = ["t%d" % k for k in range(cut)]
    tgts = ["t%d" % k for k in range(cut, m_dim)]
    dcols = {}
    for v in srcs:
        opts = [w for w in tgts if space.deg(w) == space.deg(v) + 1]
        if opts and rng.random() < 0.8:
            dcols[v] = {rng.choice(opts): field.of(rng.choice((1, -1, 2)))}
    d = GradedMap(field, space, space, 1, dcols, check=False)
    return DgAlgebra(space, d, mul, unit_name="1")


def _sparse_algebra(rng, field, attempts=300):
    for _ in range(attempts):
        dim = rng.randint(2, 4)
        names = [("x%d" % k, rng.randint(-2, 2)) for k in range(dim)]
        space = GradedSpace(field, names)
        mul = random_graded_map(rng, field, tensor_power(space, 2), space, 0,
                                density=0.25, coeffs=(1, -1))
        d = random_graded_map(rng, field, space, space, 1,
                              density=0.4, coeffs=(1, -1))
        try:
            from_dga(space, d, mul, check=True)
        except AssertionError:
            continue
        return DgAlgebra(space, d, mul, unit_name=None)
    return _squarezero_algebra(rng, field)


def random_dg_algebra(field, seed):
    """A random dg algebra of dimension ≤ 4 with degrees in [−2, 2].

    The family is part of the draw; the result always passes the full
    dg axiom check."""
    rng = random.Random(seed)
    family = rng.choice(("end", "squarezero", "sparse"))
    if family == "end":
        return _end_algebra(rng, field)
    if family == "squarezero":
        return _squarezero_algebra(rng, field)
    return _sparse_algebra(rng, field)
