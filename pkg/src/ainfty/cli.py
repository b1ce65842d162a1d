"""Command-line interface: sectioned text jobs in, deterministic reports out.

JOB FORMAT (version 1)
  Plain text; '#' starts a comment, blank lines are ignored.  Top-level
  key lines:

      command NAME            # optional; the subcommand overrides it
      field 0                 # characteristic: 0 or a prime
      seed 0
      arity_max 4             # bounds, all optional integers
      length_max 5
      resolution_length 8
      module simples [v ...]  # for ext: which simples (default: all vertices)

  Blocks run to a matching 'end' line:

      table [NAME]            # algebra (possibly dg) on a basis
        basis 1:0 x:0         # name:degree pairs
        unit 1
        prod x x = 0          # right-hand sides are 0 or +-joined terms
        prod 1 x = x          # a term is coeff*name or a bare name
        d x = 1*y             # optional differential rows
      end

      quiver
        vertices 1 2 3 4
        arrow g 1 2           # name source target
        relation a*b*g        # sum of paths; rightmost arrow acts first
        nilpotency 4          # optional path-length cutoff witness
      end

      quadratic
        generators x y
        relation 1*x*y + -1*y*x
      end

      ainf [NAME]             # explicit structure on suspended letters
        basis a:-1 b:0
        op 2 a b = 1*b        # op ARITY in_1 .. in_ARITY = combo
      end

      morphism SRC TGT        # components of a morphism between ainf blocks
        comp 1 a = a2
      end

      amodule ALG             # right module over the ainf block ALG
        basis m:0
        op 2 m a = 1*m
      end

      cochain N               # deformation input, on the table's basis
        entry x x = 1*x
      end

      coalgebra
        basis c:0 v:1
        unit c
        comul v = c|v + v|c   # pair terms coeff*a|b
        d v = 0
      end

      tau                     # cochain on bar words (letters: algebra basis)
        entry x*x = 1*x2
      end

  Coefficients are exact: rationals as 'p/q' or integers, mod-p values as
  integers.  Bare names inside multi-letter paths must not parse as field
  elements; relation and generator names therefore cannot be numeric.

REPORTS are JSON documents on stdout (sorted keys, exact coefficient
strings); '--format table' renders the same data as indented text.  Exit
status: 0 success, 1 a verification failed, 2 parse or usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dataclass_field

from .ainf_core import (
    AInfAlgebra, AInfModule, AInfMorphism,
    deform, module_ok, morphism_ok, stasheff_defect, stasheff_ok,
)
from .barcobar import (
    DgAlgebra, DgCoalgebra, bar, bar_homology, cobar,
    is_twisting_cochain, koszul_dual, twisting_witness,
    two_sided_twisted_complex, universal_twisting_cochain,
)
from .ext import QuiverPresentation, ext_ainf, fd_algebra_from_table, path_algebra, simple_module
from .fields import Field
from .grlin import GradedMap, GradedSpace, homology_with_contraction, tensor_many, tensor_power
from .hochschild import hochschild_bar_bialgebra, hochschild_complex
from .transfer import minimal_model

JOB_FORMAT = "ainfty-job-1"
REPORT_FORMAT = "ainfty-report-1"

COMMANDS = ("check", "minimal-model", "ext", "bar-homology", "cobar",
            "koszul", "deform-check", "braces", "tw-check")

BOUND_KEYS = ("arity_max", "length_max", "resolution_length", "trials")


class ParseError(Exception):
    def __init__(self, line_no, msg):
        super().__init__("line %d: %s" % (line_no, msg))
        self.line_no = line_no


@dataclass
class JobSpec:
    "parsed job: field choice, object descriptions, bounds, command"
    command: str | None = None
    field_char: int = 0
    seed: int = 0
    bounds: dict = dataclass_field(default_factory=dict)
    module: tuple | None = None
    tables: dict = dataclass_field(default_factory=dict)
    quiver: dict | None = None
    quadratic: dict | None = None
    ainfs: dict = dataclass_field(default_factory=dict)
    morphism: dict | None = None
    amodule: dict | None = None
    cochain: dict | None = None
    coalgebra: dict | None = None
    tau: dict | None = None


# ------------------------------------------------------------------- parsing

def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _coeff(fld, tok, no):
    try:
        return fld.to_str(fld.parse(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(no, "bad coefficient %r" % tok)


def _is_coeff(fld, tok):
    try:
        fld.parse(tok)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def _rhs(fld, text, no, pair=False):
    """Parse '0' or a +-joined sum of terms into {name: coeff string}.
    A term is coeff*name-parts or bare name-parts; multi-part names stay
    tuples.  With pair=True the final part must be 'a|b'."""
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    for term in (t.strip() for t in text.split("+")):
        if not term:
            raise ParseError(no, "empty term in %r" % text)
        parts = term.split("*")
        if len(parts) > 1 and _is_coeff(fld, parts[0]):
            coeff, parts = _coeff(fld, parts[0], no), parts[1:]
        else:
            coeff = fld.to_str(fld.one)
        if any(not p for p in parts):
            raise ParseError(no, "empty name in term %r" % term)
        if pair:
            if len(parts) != 1 or "|" not in parts[0]:
                raise ParseError(no, "expected a|b pair in %r" % term)
            a, b = parts[0].split("|", 1)
            key = (a, b)
        else:
            key = tuple(parts) if len(parts) > 1 else parts[0]
        if key in out:
            raise ParseError(no, "repeated name %r" % (key,))
        out[key] = coeff
    return out


def _basis_items(toks, no):
    out = []
    for tok in toks:
        if ":" not in tok:
            raise ParseError(no, "basis entries look like name:degree, got %r" % tok)
        name, _, deg = tok.rpartition(":")
        try:
            out.append((name, int(deg)))
        except ValueError:
            raise ParseError(no, "bad degree in %r" % tok)
        if not name or any(c in name for c in "*+|: \t"):
            raise ParseError(no, "bad basis name %r" % name)
    return out


def parse_jobspec(text):
    "parse the sectioned job format; raises ParseError with a line number"
    js = JobSpec()
    fld = Field(0)
    items = list(_lines(text))
    # the field line (if any) is read first so coefficients normalize
    for no, line in items:
        toks = line.split()
        if toks[0] == "field":
            if len(toks) != 2:
                raise ParseError(no, "field takes one integer")
            try:
                js.field_char = int(toks[1])
                fld = Field(js.field_char)
            except ValueError as e:
                raise ParseError(no, str(e))
            break

    i = 0
    while i < len(items):
        no, line = items[i]
        toks = line.split()
        key = toks[0]
        i += 1
        if key == "field":
            continue
        if key == "command":
            if len(toks) != 2 or toks[1] not in COMMANDS:
                raise ParseError(no, "command must be one of %s" % (COMMANDS,))
            js.command = toks[1]
        elif key == "seed":
            js.seed = _int_arg(toks, no)
        elif key in BOUND_KEYS:
            v = _int_arg(toks, no)
            if v <= 0:
                raise ParseError(no, "%s must be positive" % key)
            js.bounds[key] = v
        elif key == "module":
            if len(toks) < 2 or toks[1] != "simples":
                raise ParseError(no, "module line looks like: module simples [v ...]")
            js.module = ("simples", tuple(toks[2:]))
        elif key in ("table", "ainf", "quiver", "quadratic", "morphism",
                     "amodule", "cochain", "coalgebra", "tau"):
            body = []
            while i < len(items) and items[i][1] != "end":
                body.append(items[i])
                i += 1
            if i == len(items):
                raise ParseError(no, "unterminated %s block" % key)
            i += 1
            _parse_block(js, fld, key, toks[1:], body, no)
        else:
            raise ParseError(no, "unknown directive %r" % key)
    return js


def _int_arg(toks, no):
    if len(toks) != 2:
        raise ParseError(no, "%s takes one integer" % toks[0])
    try:
        return int(toks[1])
    except ValueError:
        raise ParseError(no, "bad integer %r" % toks[1])


def _parse_block(js, fld, kind, args, body, no0):
    if kind == "table" or kind == "ainf":
        name = args[0] if args else "A"
        data = {"basis": [], "unit": None, "prod": {}, "diff": {}, "ops": {}}
        for no, line in body:
            toks = line.split()
            if toks[0] == "basis":
                data["basis"].extend(_basis_items(toks[1:], no))
            elif toks[0] == "unit":
                data["unit"] = toks[1]
            elif toks[0] == "prod" and kind == "table":
                lhs, rhs = _split_eq(line, no)
                a, b = _expect_args(lhs[1:], 2, no)
                data["prod"][(a, b)] = _rhs(fld, rhs, no)
            elif toks[0] == "d" and kind == "table":
                lhs, rhs = _split_eq(line, no)
                (a,) = _expect_args(lhs[1:], 1, no)
                data["diff"][a] = _rhs(fld, rhs, no)
            elif toks[0] == "op" and kind == "ainf":
                lhs, rhs = _split_eq(line, no)
                n = int(lhs[1])
                ins = tuple(_expect_args(lhs[2:], n, no))
                data["ops"].setdefault(n, {})[ins] = _rhs(fld, rhs, no)
            else:
                raise ParseError(no, "unexpected %r in %s block" % (toks[0], kind))
        if not data["basis"]:
            raise ParseError(no0, "%s block without basis" % kind)
        target = js.tables if kind == "table" else js.ainfs
        if name in target:
            raise ParseError(no0, "duplicate %s %r" % (kind, name))
        if kind == "ainf":
            data.pop("prod"), data.pop("diff")
        else:
            data.pop("ops")
        target[name] = data
    elif kind == "quiver":
        data = {"vertices": [], "arrows": [], "relations": [], "nilpotency": 6}
        for no, line in body:
            toks = line.split()
            if toks[0] == "vertices":
                data["vertices"].extend(toks[1:])
            elif toks[0] == "arrow":
                nm, src, tgt = _expect_args(toks[1:], 3, no)
                if _is_coeff(fld, nm):
                    raise ParseError(no, "arrow name %r would parse as a coefficient" % nm)
                data["arrows"].append((nm, src, tgt))
            elif toks[0] == "relation":
                rel = _rhs(fld, line.split(None, 1)[1], no)
                data["relations"].append({(k if isinstance(k, tuple) else (k,)): v
                                          for k, v in rel.items()})
            elif toks[0] == "nilpotency":
                data["nilpotency"] = _int_arg(toks, no)
            else:
                raise ParseError(no, "unexpected %r in quiver block" % toks[0])
        js.quiver = data
    elif kind == "quadratic":
        data = {"generators": [], "relations": []}
        for no, line in body:
            toks = line.split()
            if toks[0] == "generators":
                for g in toks[1:]:
                    if _is_coeff(fld, g):
                        raise ParseError(no, "generator %r would parse as a coefficient" % g)
                data["generators"].extend(toks[1:])
            elif toks[0] == "relation":
                rel = _rhs(fld, line.split(None, 1)[1], no)
                for k in rel:
                    if not (isinstance(k, tuple) and len(k) == 2):
                        raise ParseError(no, "quadratic relations use length-2 words")
                data["relations"].append(rel)
            else:
                raise ParseError(no, "unexpected %r in quadratic block" % toks[0])
        js.quadratic = data
    elif kind == "morphism":
        src, tgt = _expect_args(args, 2, no0)
        data = {"source": src, "target": tgt, "comps": {}}
        for no, line in body:
            toks = line.split()
            if toks[0] != "comp":
                raise ParseError(no, "morphism blocks hold comp lines")
            lhs, rhs = _split_eq(line, no)
            n = int(lhs[1])
            ins = tuple(_expect_args(lhs[2:], n, no))
            data["comps"].setdefault(n, {})[ins] = _rhs(fld, rhs, no)
        js.morphism = data
    elif kind == "amodule":
        (over,) = _expect_args(args, 1, no0)
        data = {"over": over, "basis": [], "ops": {}}
        for no, line in body:
            toks = line.split()
            if toks[0] == "basis":
                data["basis"].extend(_basis_items(toks[1:], no))
            elif toks[0] == "op":
                lhs, rhs = _split_eq(line, no)
                n = int(lhs[1])
                ins = tuple(_expect_args(lhs[2:], n, no))
                data["ops"].setdefault(n, {})[ins] = _rhs(fld, rhs, no)
            else:
                raise ParseError(no, "unexpected %r in amodule block" % toks[0])
        js.amodule = data
    elif kind == "cochain":
        (n_str,) = _expect_args(args, 1, no0)
        try:
            arity = int(n_str)
        except ValueError:
            raise ParseError(no0, "cochain arity must be an integer")
        data = {"arity": arity, "entries": {}}
        for no, line in body:
            toks = line.split()
            if toks[0] != "entry":
                raise ParseError(no, "cochain blocks hold entry lines")
            lhs, rhs = _split_eq(line, no)
            ins = tuple(_expect_args(lhs[1:], arity, no))
            data["entries"][ins] = _rhs(fld, rhs, no)
        js.cochain = data
    elif kind == "coalgebra":
        data = {"basis": [], "unit": None, "comul": {}, "diff": {}}
        for no, line in body:
            toks = line.split()
            if toks[0] == "basis":
                data["basis"].extend(_basis_items(toks[1:], no))
            elif toks[0] == "unit":
                data["unit"] = toks[1]
            elif toks[0] == "comul":
                lhs, rhs = _split_eq(line, no)
                (a,) = _expect_args(lhs[1:], 1, no)
                data["comul"][a] = _rhs(fld, rhs, no, pair=True)
            elif toks[0] == "d":
                lhs, rhs = _split_eq(line, no)
                (a,) = _expect_args(lhs[1:], 1, no)
                data["diff"][a] = _rhs(fld, rhs, no)
            else:
                raise ParseError(no, "unexpected %r in coalgebra block" % toks[0])
        if data["unit"] is None:
            raise ParseError(no0, "coalgebra block needs a unit line")
        js.coalgebra = data
    elif kind == "tau":
        data = {"entries": {}}
        for no, line in body:
            toks = line.split()
            if toks[0] != "entry":
                raise ParseError(no, "tau blocks hold entry lines")
            lhs, rhs = _split_eq(line, no)
            if len(lhs) != 2:
                raise ParseError(no, "tau entries look like: entry w1*w2 = combo")
            word = tuple(lhs[1].split("*"))
            data["entries"][word] = _rhs(fld, rhs, no)
        js.tau = data


def _split_eq(line, no):
    if "=" not in line:
        raise ParseError(no, "missing '=' in %r" % line)
    lhs, rhs = line.split("=", 1)
    return lhs.split(), rhs


def _expect_args(toks, n, no):
    if len(toks) != n:
        raise ParseError(no, "expected %d names, got %d" % (n, len(toks)))
    return toks


# -------------------------------------------------------------- serialization

def _rhs_str(rhs):
    if not rhs:
        return "0"
    parts = []
    for key in sorted(rhs, key=lambda k: (k,) if isinstance(k, str) else k):
        name = "*".join(key) if isinstance(key, tuple) else key
        parts.append("%s*%s" % (rhs[key], name))
    return " + ".join(parts)


def _pair_rhs_str(rhs):
    if not rhs:
        return "0"
    return " + ".join("%s*%s|%s" % (rhs[k], k[0], k[1]) for k in sorted(rhs))


def serialize_jobspec(js):
    "canonical text for a JobSpec; parse(serialize(js)) == js"
    out = []
    if js.command:
        out.append("command %s" % js.command)
    out.append("field %d" % js.field_char)
    out.append("seed %d" % js.seed)
    for k in sorted(js.bounds):
        out.append("%s %d" % (k, js.bounds[k]))
    if js.module is not None:
        out.append(("module simples " + " ".join(js.module[1])).strip())
    if js.quiver:
        q = js.quiver
        out.append("quiver")
        out.append("  vertices " + " ".join(q["vertices"]))
        for nm, s, t in q["arrows"]:
            out.append("  arrow %s %s %s" % (nm, s, t))
        for rel in q["relations"]:
            out.append("  relation " + _rhs_str(rel))
        out.append("  nilpotency %d" % q["nilpotency"])
        out.append("end")
    if js.quadratic:
        out.append("quadratic")
        out.append("  generators " + " ".join(js.quadratic["generators"]))
        for rel in js.quadratic["relations"]:
            out.append("  relation " + _rhs_str(rel))
        out.append("end")
    for name in sorted(js.tables):
        t = js.tables[name]
        out.append("table %s" % name)
        out.append("  basis " + " ".join("%s:%d" % nd for nd in t["basis"]))
        if t["unit"] is not None:
            out.append("  unit %s" % t["unit"])
        for (a, b) in sorted(t["prod"]):
            out.append("  prod %s %s = %s" % (a, b, _rhs_str(t["prod"][(a, b)])))
        for a in sorted(t["diff"]):
            out.append("  d %s = %s" % (a, _rhs_str(t["diff"][a])))
        out.append("end")
    for name in sorted(js.ainfs):
        t = js.ainfs[name]
        out.append("ainf %s" % name)
        out.append("  basis " + " ".join("%s:%d" % nd for nd in t["basis"]))
        if t["unit"] is not None:
            out.append("  unit %s" % t["unit"])
        for n in sorted(t["ops"]):
            for ins in sorted(t["ops"][n]):
                out.append("  op %d %s = %s" % (n, " ".join(ins), _rhs_str(t["ops"][n][ins])))
        out.append("end")
    if js.morphism:
        m = js.morphism
        out.append("morphism %s %s" % (m["source"], m["target"]))
        for n in sorted(m["comps"]):
            for ins in sorted(m["comps"][n]):
                out.append("  comp %d %s = %s" % (n, " ".join(ins), _rhs_str(m["comps"][n][ins])))
        out.append("end")
    if js.amodule:
        m = js.amodule
        out.append("amodule %s" % m["over"])
        out.append("  basis " + " ".join("%s:%d" % nd for nd in m["basis"]))
        for n in sorted(m["ops"]):
            for ins in sorted(m["ops"][n]):
                out.append("  op %d %s = %s" % (n, " ".join(ins), _rhs_str(m["ops"][n][ins])))
        out.append("end")
    if js.cochain:
        out.append("cochain %d" % js.cochain["arity"])
        for ins in sorted(js.cochain["entries"]):
            out.append("  entry %s = %s" % (" ".join(ins), _rhs_str(js.cochain["entries"][ins])))
        out.append("end")
    if js.coalgebra:
        c = js.coalgebra
        out.append("coalgebra")
        out.append("  basis " + " ".join("%s:%d" % nd for nd in c["basis"]))
        out.append("  unit %s" % c["unit"])
        for a in sorted(c["comul"]):
            out.append("  comul %s = %s" % (a, _pair_rhs_str(c["comul"][a])))
        for a in sorted(c["diff"]):
            out.append("  d %s = %s" % (a, _rhs_str(c["diff"][a])))
        out.append("end")
    if js.tau:
        out.append("tau")
        for w in sorted(js.tau["entries"]):
            out.append("  entry %s = %s" % ("*".join(w), _rhs_str(js.tau["entries"][w])))
        out.append("end")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------- builders

def _build_space(fld, basis):
    return GradedSpace(fld, basis)


def _parse_combo(fld, space, rhs, where):
    col = {}
    for name, cstr in rhs.items():
        if isinstance(name, tuple):
            raise ParseError(0, "unexpected path in %s" % where)
        if not space.has(name):
            raise ParseError(0, "unknown name %r in %s" % (name, where))
        col[name] = fld.parse(cstr)
    return col


def build_table(fld, data, check=True):
    "DgAlgebra from a table block"
    space = _build_space(fld, data["basis"])
    mcols = {}
    for (a, b), rhs in data["prod"].items():
        col = _parse_combo(fld, space, rhs, "prod %s %s" % (a, b))
        if col:
            mcols[(a, b)] = col
    mul = GradedMap(fld, tensor_power(space, 2), space, 0, mcols, check=False)
    d = None
    if data["diff"]:
        dcols = {}
        for a, rhs in data["diff"].items():
            col = _parse_combo(fld, space, rhs, "d %s" % a)
            if col:
                dcols[a] = col
        d = GradedMap(fld, space, space, 1, dcols, check=False)
    return DgAlgebra(space, d, mul, unit_name=data["unit"])


def build_ainf(fld, data, check=True):
    "AInfAlgebra from explicit suspended-level op lines"
    sa = _build_space(fld, data["basis"])
    ops = {}
    arity_max = 2
    for n, rows in data["ops"].items():
        cols = {}
        for ins, rhs in rows.items():
            col = _parse_combo(fld, sa, rhs, "op %d %s" % (n, " ".join(ins)))
            for x in ins:
                if not sa.has(x):
                    raise ParseError(0, "unknown letter %r in op %d" % (x, n))
            if col:
                cols[ins if n > 1 else ins[0]] = col
        if cols:
            ops[n] = GradedMap(fld, tensor_power(sa, n), sa, 1, cols, check=check)
            arity_max = max(arity_max, n)
    return AInfAlgebra(fld, sa, ops, arity_max, unit=data["unit"], check=False)


def build_quiver(data):
    return QuiverPresentation(
        vertices=list(data["vertices"]),
        arrows=[tuple(a) for a in data["arrows"]],
        relations=[{p: c for p, c in rel.items()} for rel in data["relations"]],
        nilpotency_bound=data["nilpotency"])


def build_coalgebra(fld, data, check=True):
    space = _build_space(fld, data["basis"])
    unit = data["unit"]
    ccols = {}
    for a, rhs in data["comul"].items():
        col = {}
        for (x, y), cstr in rhs.items():
            if not (space.has(x) and space.has(y)):
                raise ParseError(0, "unknown name in comul %s" % a)
            col[(x, y)] = fld.parse(cstr)
        if col:
            ccols[a] = col
    if unit not in ccols:
        ccols[unit] = {(unit, unit): fld.one}
    comul = GradedMap(fld, space, tensor_power(space, 2), 0, ccols, check=False)
    d = None
    if data["diff"]:
        dcols = {}
        for a, rhs in data["diff"].items():
            col = _parse_combo(fld, space, rhs, "d %s" % a)
            if col:
                dcols[a] = col
        d = GradedMap(fld, space, space, 1, dcols, check=False)
    return DgCoalgebra(space, d, comul, unit, check=check)


# ------------------------------------------------------------------ reports

def name_str(n):
    "flat deterministic rendering of (possibly suspended, nested) names"
    if isinstance(n, tuple):
        if len(n) == 2 and n[0] == "s":
            return "s." + name_str(n[1])
        return "(" + ",".join(name_str(x) for x in n) + ")"
    return str(n)


def _map_entries(fld, m):
    "sorted [[inputs...], output, coeff] rows of a sparse map"
    from .grlin import TensorSpace
    out = []
    for v, w, c in m.entries():
        if isinstance(m.source, TensorSpace):
            ins = [name_str(x) for x in (v if isinstance(v, tuple) else (v,))]
        else:
            ins = [name_str(v)]
        out.append([ins, name_str(w), fld.to_str(c)])
    out.sort(key=lambda r: (r[0], r[1]))
    return out


def _ops_report(fld, alg):
    return {str(n): _map_entries(fld, alg.op(n))
            for n in sorted(alg.arities()) if not alg.op(n).is_zero()}


def _dims_by_degree(space):
    dims = {}
    for n in space.names:
        dims[space.deg(n)] = dims.get(space.deg(n), 0) + 1
    return {str(k): dims[k] for k in sorted(dims)}


# ----------------------------------------------------------------- handlers

def _bound(js, key, default):
    return js.bounds.get(key, default)


def run_check(js, fld):
    arity_max = _bound(js, "arity_max", 4)
    verdicts = {}
    algs = {}
    ok = True
    for name in sorted(js.ainfs):
        alg = build_ainf(fld, js.ainfs[name])
        algs[name] = alg
        bad = stasheff_ok(alg, arity_max)
        verdicts[name] = {"kind": "stasheff", "ok": bad is None}
        if bad is not None:
            ok = False
            d = stasheff_defect(alg, bad)
            verdicts[name]["failing_arity"] = bad
            verdicts[name]["witness"] = _map_entries(fld, d)[0]
    for name in sorted(js.tables):
        dga = build_table(fld, js.tables[name])
        alg = dga.to_ainf(check=False)
        algs[name] = alg
        bad = stasheff_ok(alg, max(3, arity_max))
        verdicts[name] = {"kind": "dg-stasheff", "ok": bad is None}
        if bad is not None:
            ok = False
            verdicts[name]["failing_arity"] = bad
            verdicts[name]["witness"] = _map_entries(fld, stasheff_defect(alg, bad))[0]
    if js.morphism:
        m = js.morphism
        try:
            src, tgt = algs[m["source"]], algs[m["target"]]
        except KeyError as e:
            raise ParseError(0, "morphism references unknown block %s" % e)
        comps = {}
        for n, rows in m["comps"].items():
            cols = {}
            for ins, rhs in rows.items():
                col = _parse_combo(fld, tgt.sa, rhs, "comp %d" % n)
                if col:
                    cols[ins if n > 1 else ins[0]] = col
            comps[n] = GradedMap(fld, tensor_power(src.sa, n), tgt.sa, 0, cols, check=False)
        fmor = AInfMorphism(src, tgt, comps, check=False)
        bad = morphism_ok(fmor, arity_max)
        verdicts["morphism"] = {"kind": "morphism", "ok": bad is None}
        if bad is not None:
            ok = False
            verdicts["morphism"]["failing_arity"] = bad
    if js.amodule:
        m = js.amodule
        alg = algs.get(m["over"])
        if alg is None:
            raise ParseError(0, "amodule references unknown block %r" % m["over"])
        sm = _build_space(fld, m["basis"])
        ops = {}
        for n, rows in m["ops"].items():
            cols = {}
            for ins, rhs in rows.items():
                col = _parse_combo(fld, sm, rhs, "module op %d" % n)
                if col:
                    cols[ins if n > 1 else ins[0]] = col
            src_space = sm if n == 1 else tensor_many(fld, [sm] + [alg.sa] * (n - 1))
            ops[n] = GradedMap(fld, src_space, sm, 1, cols, check=False)
        mod = AInfModule(alg, sm, ops, max(m["ops"], default=2), check=False)
        bad = module_ok(mod, arity_max)
        verdicts["amodule"] = {"kind": "module", "ok": bad is None}
        if bad is not None:
            ok = False
            verdicts["amodule"]["failing_arity"] = bad
    if not verdicts:
        raise ParseError(0, "check needs at least one ainf or table block")
    return {"verdicts": verdicts, "arity_max": arity_max}, ok


def run_minimal_model(js, fld):
    if len(js.tables) != 1:
        raise ParseError(0, "minimal-model takes exactly one table block")
    arity_max = _bound(js, "arity_max", 4)
    dga = build_table(fld, next(iter(js.tables.values())))
    alg = dga.to_ainf(check=True)
    mini, incl, con = minimal_model(alg, arity_max)
    ok = stasheff_ok(mini, arity_max) is None and morphism_ok(incl, arity_max) is None
    report = {
        "arity_max": arity_max,
        "homology_dims": _dims_by_degree(mini.sa),
        "ops": _ops_report(fld, mini),
        "inclusion_ok": ok,
    }
    return report, ok


def run_ext(js, fld):
    arity_max = _bound(js, "arity_max", 4)
    res_len = js.bounds.get("resolution_length")
    if js.quiver:
        B = path_algebra(fld, build_quiver(js.quiver))
        vertices = list(js.quiver["vertices"])
    elif len(js.tables) == 1:
        t = next(iter(js.tables.values()))
        if t["unit"] is None:
            raise ParseError(0, "ext over a table needs a unit")
        space = _build_space(fld, t["basis"])
        mcols = {}
        for (a, b), rhs in t["prod"].items():
            col = _parse_combo(fld, space, rhs, "prod")
            if col:
                mcols[(a, b)] = col
        mul = GradedMap(fld, tensor_power(space, 2), space, 0, mcols, check=False)
        B = fd_algebra_from_table(fld, space, mul, t["unit"])
        vertices = ["1"]
    else:
        raise ParseError(0, "ext needs a quiver block or one table block")
    chosen = vertices
    if js.module is not None and js.module[1]:
        chosen = list(js.module[1])
        for v in chosen:
            if v not in vertices:
                raise ParseError(0, "module vertex %r is not in the quiver" % v)
    labeled = [(v, simple_module(B, v)) for v in chosen]
    data = ext_ainf(B, labeled, arity_max, resolution_length=res_len)
    mini = data.algebra
    degs = {}
    for name, q in sorted(data.labels.items()):
        degs.setdefault(q, []).append(name)
    report = {
        "arity_max": arity_max,
        "algebra_dim": B.space.dim,
        "resolution_steps": len(data.resolution.steps),
        "betti": data.resolution.betti(),
        "exact": data.resolution.exact,
        "certified_degree_max": data.valid_degree,
        "labels": {name: q for name, q in sorted(data.labels.items())},
        "dims_by_degree": {str(q): len(v) for q, v in sorted(degs.items())},
        "summand_classes": {lab: {n: fld.to_str(c) for n, c in col.items()}
                            for lab, col in sorted(data.summand_classes.items())},
        "ops": _ops_report(fld, mini),
    }
    return report, True


def run_bar_homology(js, fld):
    if len(js.tables) != 1:
        raise ParseError(0, "bar-homology takes exactly one table block")
    l_max = _bound(js, "length_max", 5)
    dga = build_table(fld, next(iter(js.tables.values())))
    alg = dga.to_ainf(check=True)
    dims = bar_homology(alg, l_max)
    return {"length_max": l_max,
            "dims_by_length": {str(t): dims[t] for t in sorted(dims)}}, True


def run_cobar(js, fld):
    if js.coalgebra is None:
        raise ParseError(0, "cobar needs a coalgebra block")
    l_max = _bound(js, "length_max", 4)
    coalg = build_coalgebra(fld, js.coalgebra, check=True)
    om = cobar(coalg, l_max, check=True)
    dsq = om.d.compose(om.d).is_zero()
    return {"length_max": l_max,
            "dims_by_degree": _dims_by_degree(om.space),
            "dsq_zero": dsq}, dsq


def run_koszul(js, fld):
    if js.quadratic is None:
        raise ParseError(0, "koszul needs a quadratic block")
    l_max = _bound(js, "length_max", 4)
    letters = js.quadratic["generators"]
    rels = [{k: fld.parse(c) for k, c in rel.items()} for rel in js.quadratic["relations"]]
    kd = koszul_dual(fld, letters, rels, n_max=l_max, w_max=l_max)
    dual_dims = {}
    for n in kd.coalgebra.space.names:
        a = kd.adams_c(n)
        dual_dims[a] = dual_dims.get(a, 0) + 1
    tau_ok = is_twisting_cochain(kd.coalgebra, kd.algebra.to_ainf(check=False), kd.tau)
    cx = two_sided_twisted_complex(kd.algebra, kd.coalgebra, kd.tau, check=False)
    dsq = cx.d.compose(cx.d).is_zero()
    hcon = homology_with_contraction(cx)
    hdims = _dims_by_degree(hcon.h_space)
    deg0_matches = hdims.get("0", 0) == kd.algebra.space.dim
    ok = bool(tau_ok) and dsq and deg0_matches
    return {"length_max": l_max,
            "dual_dims_by_weight": {str(k): dual_dims[k] for k in sorted(dual_dims)},
            "algebra_dims_by_weight": _weight_dims(kd.algebra.space),
            "tau_twisting": bool(tau_ok),
            "twisted_complex_dsq_zero": dsq,
            "twisted_homology_dims": hdims,
            "degree0_equals_algebra": deg0_matches}, ok


def _weight_dims(space):
    dims = {}
    for w in space.names:
        dims[len(w)] = dims.get(len(w), 0) + 1
    return {str(k): dims[k] for k in sorted(dims)}


def run_deform_check(js, fld):
    if len(js.tables) != 1 or js.cochain is None:
        raise ParseError(0, "deform-check needs one table block and a cochain block")
    t = next(iter(js.tables.values()))
    if t["diff"]:
        raise ParseError(0, "deform-check works on ordinary algebras (no d lines)")
    dga = build_table(fld, t)
    space, mul = dga.space, dga.mul
    n = js.cochain["arity"]
    ccols = {}
    for ins, rhs in js.cochain["entries"].items():
        col = _parse_combo(fld, space, rhs, "cochain entry")
        for x in ins:
            if not space.has(x):
                raise ParseError(0, "unknown name %r in cochain entry" % x)
        if col:
            ccols[ins if n > 1 else (ins[0] if n else ())] = col
    c = GradedMap(fld, tensor_power(space, n), space, 0, ccols, check=False)
    hc = hochschild_complex(space, mul, unit_name=t["unit"], check=True)
    closed = hc.differential(hc.from_ordinary(c)).is_zero()
    alg = deform(space, mul, c, n, unit=t["unit"], check=False)
    bad = stasheff_ok(alg, n + 2)
    report = {
        "arity": n,
        "cocycle": closed,
        "deformation_stasheff_ok": bad is None,
        "iff_agrees": closed == (bad is None),
    }
    if bad is not None:
        report["failing_arity"] = bad
    return report, report["iff_agrees"]


def run_braces(js, fld):
    if len(js.tables) != 1:
        raise ParseError(0, "braces takes exactly one table block")
    t = next(iter(js.tables.values()))
    if t["unit"] is None:
        raise ParseError(0, "braces needs an augmented table (unit line)")
    p_max = _bound(js, "arity_max", 3)
    l_max = _bound(js, "length_max", 3)
    dga = build_table(fld, t)
    bb = hochschild_bar_bialgebra(dga.space, dga.mul, t["unit"], p_max, l_max, check=True)
    checks = bb.verify_all()
    ok = all(v is True for k, v in checks.items() if not k.endswith("_witness"))
    braces_table = {}
    for f1 in bb.letter_names:
        for f2 in bb.letter_names:
            combo = bb._brace_combo(bb._lid[f1], (bb._lid[f2],))
            rows = sorted((name_str(bb._lname[lid]), fld.to_str(c))
                          for lid, c in combo if lid < bb._window)
            if rows:
                braces_table["%s{%s}" % (name_str(f1), name_str(f2))] = rows
    report = {
        "arity_max": p_max,
        "length_max": l_max,
        "letters": [name_str(n) for n in bb.letter_names],
        "letter_degrees": [bb.letter_space.deg(n) for n in bb.letter_names],
        "word_count": bb.space.dim,
        "checks": {k: (v if isinstance(v, bool) else list(map(str, v)))
                   for k, v in checks.items()},
        "single_braces": braces_table,
    }
    return report, ok


def run_tw_check(js, fld):
    if len(js.tables) != 1:
        raise ParseError(0, "tw-check takes exactly one table block")
    l_max = _bound(js, "length_max", 4)
    t = next(iter(js.tables.values()))
    dga = build_table(fld, t)
    alg = dga.to_ainf(check=True)
    coalg = bar(alg, l_max, check=True)
    if js.tau is not None:
        cols = {}
        for word, rhs in js.tau["entries"].items():
            key = tuple(("s", x) for x in word)
            if not coalg.space.has(key):
                raise ParseError(0, "tau entry %r is not a bar word in the window"
                                 % ("*".join(word),))
            col = _parse_combo(fld, dga.space, rhs, "tau entry")
            if col:
                cols[key] = col
        tau = GradedMap(fld, coalg.space, dga.space, 1, cols, check=False)
        source = "supplied"
    else:
        tau = universal_twisting_cochain(alg, coalg)
        source = "universal"
    ok, defect = is_twisting_cochain(coalg, alg, tau, return_defect=True)
    report = {"length_max": l_max, "tau_source": source, "twisting": bool(ok)}
    if not ok:
        w, val = twisting_witness(coalg, defect)
        report["witness"] = {"word": name_str(w),
                             "defect": {name_str(k): fld.to_str(v) for k, v in val.items()}}
    return report, bool(ok)


HANDLERS = {
    "check": run_check,
    "minimal-model": run_minimal_model,
    "ext": run_ext,
    "bar-homology": run_bar_homology,
    "cobar": run_cobar,
    "koszul": run_koszul,
    "deform-check": run_deform_check,
    "braces": run_braces,
    "tw-check": run_tw_check,
}


def run(js):
    """Dispatch a JobSpec; returns (report dict, ok).

    The report always carries the format tag, command, field, and seed;
    coefficients are exact strings."""
    if js.command not in HANDLERS:
        raise ParseError(0, "no command given (set one on the command line or a command line in the job)")
    fld = Field(js.field_char)
    payload, ok = HANDLERS[js.command](js, fld)
    report = {"format": REPORT_FORMAT, "command": js.command,
              "field": str(js.field_char), "seed": js.seed, "ok": ok}
    report.update(payload)
    return report, ok


# ------------------------------------------------------------------- output

def _render_table(value, indent=0, out=None):
    pad = "  " * indent
    for key in sorted(value) if isinstance(value, dict) else []:
        v = value[key]
        if isinstance(v, dict):
            out.append("%s%s:" % (pad, key))
            _render_table(v, indent + 1, out)
        elif isinstance(v, list) and v and isinstance(v[0], list):
            out.append("%s%s:" % (pad, key))
            for row in v:
                if len(row) == 3 and isinstance(row[0], list):
                    out.append("%s  (%s) -> %s   %s" % (pad, ", ".join(row[0]), row[1], row[2]))
                else:
                    out.append("%s  %s" % (pad, " ".join(str(x) for x in row)))
        else:
            out.append("%s%s: %s" % (pad, key, v))
    return out


def render_report(report, fmt):
    if fmt == "table":
        lines = []
        _render_table(report, 0, lines)
        return "\n".join(lines) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="ainfty",
        description="exact computations with homotopy-associative structures")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", nargs="?", default="-",
                        help="job file (default: standard input)")
    parser.add_argument("--format", choices=("json", "table"), default="json")
    parser.add_argument("--module", nargs="+", default=None, metavar="SIMPLES",
                        help="module choice for ext: simples [vertex ...]")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--arity-max", type=int, default=None)
    parser.add_argument("--length-max", type=int, default=None)
    parser.add_argument("--resolution-length", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2

    try:
        js = parse_jobspec(text)
        js.command = args.command
        if args.seed is not None:
            js.seed = args.seed
        if args.module is not None:
            if args.module[0] != "simples":
                print("error: --module starts with 'simples'", file=sys.stderr)
                return 2
            js.module = ("simples", tuple(args.module[1:]))
        for key, val in (("arity_max", args.arity_max),
                         ("length_max", args.length_max),
                         ("resolution_length", args.resolution_length)):
            if val is not None:
                if val <= 0:
                    print("error: %s must be positive" % key, file=sys.stderr)
                    return 2
                js.bounds[key] = val
        report, ok = run(js)
    except ParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    except AssertionError as e:
        print(render_report({"format": REPORT_FORMAT, "command": args.command,
                             "ok": False, "error": str(e) or "verification failed"},
                            args.format), end="")
        return 1

    print(render_report(report, args.format), end="")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
