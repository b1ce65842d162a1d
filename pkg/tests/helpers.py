"""Shared builders for the test suite: small algebras given by tables."""

from ainfty.barcobar import DgAlgebra
from ainfty.grlin import GradedMap, GradedSpace, tensor_power


def table_algebra(field, basis, prods, unit=None, diffs=None):
    """DgAlgebra from a plain dict table.

    prods: {(a, b): {name: int}}; diffs likewise, single-name keys.
    Integer coefficients go through field.of.
    """
    space = GradedSpace(field, basis)
    mcols = {}
    for (a, b), col in prods.items():
        col = {w: field.of(c) for w, c in col.items() if c}
        if col:
            mcols[(a, b)] = col
    mul = GradedMap(field, tensor_power(space, 2), space, 0, mcols, check=False)
    d = None
    if diffs:
        dcols = {}
        for a, col in diffs.items():
            col = {w: field.of(c) for w, c in col.items() if c}
            if col:
                dcols[a] = col
        d = GradedMap(field, space, space, 1, dcols, check=False)
    return DgAlgebra(space, d, mul, unit_name=unit)


def trunc_poly(field, n):
    "k[x]/(x^n) on the basis 1, x, ..., x^{n-1}, all in degree 0"
    names = ["1"] + ["x%d" % k for k in range(1, n)]
    basis = [(nm, 0) for nm in names]
    prods = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                prods[(names[i], names[j])] = {names[i + j]: 1}
            else:
                prods[(names[i], names[j])] = {}
    return table_algebra(field, basis, prods, unit="1")


def dual_numbers(field):
    return trunc_poly(field, 2)


def upper_triangular2(field):
    """2x2 upper triangular matrices: e11, e12, e22.

    The unit e11 + e22 is not a basis element, so no unit name is set.
    """
    basis = [("e11", 0), ("e12", 0), ("e22", 0)]
    prods = {
        ("e11", "e11"): {"e11": 1},
        ("e11", "e12"): {"e12": 1},
        ("e12", "e22"): {"e12": 1},
        ("e22", "e22"): {"e22": 1},
    }
    for a in ("e11", "e12", "e22"):
        for b in ("e11", "e12", "e22"):
            prods.setdefault((a, b), {})
    return table_algebra(field, basis, prods)
