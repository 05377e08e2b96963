"""Command line front end: a line-oriented algebra format and JSON reports.

Spec files look like::

    field q                      # or: field fp 5
    quiver vertices 1 2
    arrow a 1 2
    relation a*b                 # optional, paths compose left to right
    module M dim 1
    action e2 1

Other algebra blocks: ``algebra labels ...`` with ``mult``/``unit``/
``idempotent``/``radical`` lines; ``triangular dR dS dM`` with
``component R``/``component S`` stanzas closed by ``end`` and a
``bimodule`` stanza; ``product`` with ``component`` stanzas.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import (
    Algebra, Bimodule, path_algebra, product_algebra, structure_algebra, triangular_algebra,
)
from .errors import MalformedRelation, ParseError, SerreTypeError
from .linalg import GF, QQ, Field, Matrix
from .modcat import Module, probe_family

EXIT_OK, EXIT_VERIFY, EXIT_PARSE = 0, 2, 3
_LABEL = re.compile(r"[\w.][\w.*]*$")
_NUMBER = re.compile(r"[+-]?\d+(/\d+)?$")
_SCALED = re.compile(r"(\d+(?:/\d+)?)\*(.+)$")


# ---------------------------------------------------------------------------
# tokens


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    lines = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [_Tok(m.group(), n, m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            lines.append((n, len(body.rstrip()) + 1, toks))
    return lines


class _Line:
    def __init__(self, n: int, end: int, toks: list):
        self.n, self.end, self.toks, self.pos = n, end, toks, 1

    @property
    def head(self) -> str:
        return self.toks[0].text

    def take(self, expected: str) -> _Tok:
        if self.pos >= len(self.toks):
            raise ParseError(self.n, self.end, expected)
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def word(self, expected: str, *choices: str) -> str:
        t = self.take(expected)
        if choices and t.text not in choices:
            raise ParseError(t.line, t.col, expected)
        return t.text

    def integer(self, expected: str) -> int:
        t = self.take(expected)
        if not re.fullmatch(r"\d+", t.text):
            raise ParseError(t.line, t.col, expected)
        return int(t.text)

    def rest(self) -> list:
        out = self.toks[self.pos:]
        self.pos = len(self.toks)
        return out

    def done(self) -> None:
        if self.pos < len(self.toks):
            t = self.toks[self.pos]
            raise ParseError(t.line, t.col, "end of line")


def _number(t: _Tok, field: Field):
    if not _NUMBER.fullmatch(t.text):
        raise ParseError(t.line, t.col, "integer or p/q rational")
    try:
        return field.coerce(Fraction(t.text))
    except (ZeroDivisionError, ValueError, SerreTypeError):
        raise ParseError(t.line, t.col, "rational with nonzero denominator invertible in the field")


def _linear(toks: list, labels: list, field: Field, line: _Line) -> list:
    """Parse ``2*a - 1/2*b + c`` (tokens separated by spaces) into a coefficient vector."""
    vec = [0] * len(labels)
    if not toks:
        raise ParseError(line.n, line.end, "linear combination")
    if len(toks) == 1 and toks[0].text == "0":
        return vec
    sign = 1
    expect_term = True
    for t in toks:
        if expect_term and t.text in "+-" and len(t.text) == 1:
            sign = -sign if t.text == "-" else sign
            continue
        if not expect_term:
            if t.text not in ("+", "-"):
                raise ParseError(t.line, t.col, "'+' or '-'")
            sign = -1 if t.text == "-" else 1
            expect_term = True
            continue
        body = t.text.lstrip("+-")
        c = Fraction(-1 if t.text.startswith("-") else 1)
        if body in labels:
            lab = body
        else:
            m = _SCALED.fullmatch(body)
            if not m or m.group(2) not in labels:
                raise ParseError(t.line, t.col, f"term over labels {' '.join(labels)}")
            c *= Fraction(m.group(1))
            lab = m.group(2)
        k = labels.index(lab)
        vec[k] = field.coerce(vec[k] + field.coerce(sign * c))
        sign = 1
        expect_term = False
    if expect_term:
        t = toks[-1]
        raise ParseError(t.line, t.col + len(t.text), "term")
    return vec


# ---------------------------------------------------------------------------
# spec files


@dataclass
class SpecFile:
    field: Field
    algebra: Algebra
    modules: dict = dc_field(default_factory=dict)
    kind: str = "algebra"


def parse_spec(text: str) -> SpecFile:
    """Parse a spec file; every error is a ParseError with line and column."""
    lines = [_Line(*x) for x in _tokenize(text)]
    if not lines:
        raise ParseError(1, 1, "'field'")
    first = lines[0]
    if first.head != "field":
        raise ParseError(first.n, first.toks[0].col, "'field'")
    fld = _parse_field(first)
    pos = 1
    if pos >= len(lines):
        raise ParseError(first.n, first.end, "algebra block")
    alg, pos, kind = _parse_algebra(lines, pos, fld)
    mods = {}
    while pos < len(lines):
        ln = lines[pos]
        if ln.head != "module":
            raise ParseError(ln.n, ln.toks[0].col, "'module'")
        m, pos = _parse_module(lines, pos, alg)
        if m.name in mods:
            raise ParseError(ln.n, ln.toks[1].col, "a new module name")
        mods[m.name] = m
    return SpecFile(fld, alg, mods, kind)


def _parse_field(ln: _Line) -> Field:
    kind = ln.word("'q' or 'fp'", "q", "fp")
    if kind == "q":
        ln.done()
        return QQ
    t = ln.take("prime")
    if not re.fullmatch(r"\d+", t.text):
        raise ParseError(t.line, t.col, "prime")
    p = int(t.text)
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ParseError(t.line, t.col, "prime")
    ln.done()
    return GF(p)


def _parse_algebra(lines: list, pos: int, fld: Field, name: str = "A") -> tuple:
    ln = lines[pos]
    head = ln.head
    if head == "quiver":
        return (*_parse_quiver(lines, pos, fld, name), "quiver")
    if head == "algebra":
        return (*_parse_structure(lines, pos, fld, name), "structure")
    if head == "triangular":
        return (*_parse_triangular(lines, pos, fld), "triangular")
    if head == "product":
        return (*_parse_product(lines, pos, fld), "product")
    raise ParseError(ln.n, ln.toks[0].col, "'quiver', 'algebra', 'triangular' or 'product'")


def _parse_quiver(lines: list, pos: int, fld: Field, name: str) -> tuple:
    ln = lines[pos]
    ln.word("'vertices'", "vertices")
    verts = [t.text for t in ln.rest()]
    if not verts:
        raise ParseError(ln.n, ln.end, "vertex names")
    if len(set(verts)) != len(verts):
        raise ParseError(ln.n, ln.end, "distinct vertex names")
    arrows, rels, rel_lines = [], [], []
    pos += 1
    while pos < len(lines) and lines[pos].head in ("arrow", "relation"):
        ln = lines[pos]
        if ln.head == "arrow":
            a = ln.take("arrow name")
            if not re.fullmatch(r"[A-Za-z_]\w*", a.text) or a.text in [x[0] for x in arrows]:
                raise ParseError(a.line, a.col, "new arrow name")
            ends = []
            for what in ("source vertex", "target vertex"):
                t = ln.take(what)
                if t.text not in verts:
                    raise ParseError(t.line, t.col, what)
                ends.append(t.text)
            ln.done()
            arrows.append((a.text, ends[0], ends[1]))
        else:
            toks = ln.rest()
            if not toks:
                raise ParseError(ln.n, ln.end, "relation")
            rels.append(" ".join(t.text for t in toks))
            rel_lines.append(toks[0])
        pos += 1
    try:
        alg = path_algebra(verts, arrows, rels, fld, name=name)
    except MalformedRelation as exc:
        t = rel_lines[0] if rel_lines else lines[pos - 1].toks[0]
        raise ParseError(t.line, t.col, f"well-formed relation ({exc})")
    except SerreTypeError as exc:
        t = lines[pos - 1].toks[0]
        raise ParseError(t.line, t.col, f"finite-dimensional quiver algebra ({exc})")
    return alg, pos


def _parse_structure(lines: list, pos: int, fld: Field, name: str) -> tuple:
    ln = lines[pos]
    ln.word("'labels'", "labels")
    labels = [t.text for t in ln.rest()]
    if not labels:
        raise ParseError(ln.n, ln.end, "basis labels")
    for t in lines[pos].toks[2:]:
        if not _LABEL.fullmatch(t.text) or labels.count(t.text) > 1:
            raise ParseError(t.line, t.col, "distinct basis label")
    products, unit, idems, radical = {}, None, [], None
    pos += 1
    while pos < len(lines) and lines[pos].head in ("mult", "unit", "idempotent", "radical"):
        ln = lines[pos]
        if ln.head == "mult":
            x, y = (ln.take(f"{w} label") for w in ("left", "right"))
            for t in (x, y):
                if t.text not in labels:
                    raise ParseError(t.line, t.col, "basis label")
            products[(x.text, y.text)] = _linear(ln.rest(), labels, fld, ln)
        elif ln.head == "unit":
            unit = _linear(ln.rest(), labels, fld, ln)
        elif ln.head == "idempotent":
            idems.append(_linear(ln.rest(), labels, fld, ln))
        else:
            # "radical 0" declares a semisimple algebra
            r = _linear(ln.rest(), labels, fld, ln)
            radical = (radical or []) + ([r] if any(r) else [])
        pos += 1
    head = lines[pos - 1]
    if unit is None:
        raise ParseError(head.n, head.end, "'unit' line")
    try:
        table = {(labels.index(x), labels.index(y)): v for (x, y), v in products.items()}
        alg = structure_algebra(fld, labels, table, unit, idems or [unit], radical, name=name)
    except SerreTypeError as exc:
        raise ParseError(head.n, 1, f"valid structure constants ({exc})")
    return alg, pos


def _parse_component(lines: list, pos: int, fld: Field) -> tuple:
    ln = lines[pos]
    cname = ln.word("component name")
    ln.done()
    pos += 1
    if pos >= len(lines):
        raise ParseError(ln.n, ln.end, "algebra block")
    alg, pos, _ = _parse_algebra(lines, pos, fld, name=cname)
    if pos >= len(lines) or lines[pos].head != "end":
        ref = lines[pos] if pos < len(lines) else lines[-1]
        raise ParseError(ref.n, ref.toks[0].col if pos < len(lines) else ref.end, "'end'")
    lines[pos].done()
    return cname, alg, pos + 1


def _parse_triangular(lines: list, pos: int, fld: Field) -> tuple:
    ln = lines[pos]
    dims = [ln.integer(w) for w in ("dim R", "dim S", "dim M")]
    ln.done()
    pos += 1
    comps = {}
    while pos < len(lines) and lines[pos].head == "component":
        start = lines[pos]
        cname, alg, pos = _parse_component(lines, pos, fld)
        if cname not in ("R", "S") or cname in comps:
            raise ParseError(start.n, start.toks[1].col, "component R or S")
        comps[cname] = alg
    if set(comps) != {"R", "S"}:
        ref = lines[min(pos, len(lines) - 1)]
        raise ParseError(ref.n, 1, "components R and S")
    R, S = comps["R"], comps["S"]
    for t_dim, alg, what in ((dims[0], R, "R"), (dims[1], S, "S")):
        if alg.dim != t_dim:
            raise ParseError(ln.n, ln.toks[1 if what == "R" else 2].col, f"dim {what} = {alg.dim}")
    if pos >= len(lines) or lines[pos].head != "bimodule":
        ref = lines[min(pos, len(lines) - 1)]
        raise ParseError(ref.n, 1, "'bimodule'")
    bl = lines[pos]
    how = bl.word("'regular' or 'M'", "regular", "M")
    bl.done()
    pos += 1
    d = dims[2]
    if how == "regular":
        if R.labels != S.labels or R.table != S.table or d != R.dim:
            raise ParseError(bl.n, bl.toks[1].col, "R and S equal with dim M = dim R")
        M = Bimodule(S, R, d, [R.left_mult(i) for i in range(d)],
                     [R.right_mult(j) for j in range(d)], name="M")
    else:
        L = {}
        Rm = {}
        while pos < len(lines) and lines[pos].head in ("left", "right"):
            al = lines[pos]
            side_alg, store = (S, L) if al.head == "left" else (R, Rm)
            lab = al.take("basis label")
            if lab.text not in side_alg.labels:
                raise ParseError(lab.line, lab.col, f"label of {side_alg.name}")
            store[lab.text] = _matrix(al, d, fld)
            pos += 1
        for alg, store, side in ((S, L, "left"), (R, Rm, "right")):
            missing = [x for x in alg.labels if x not in store]
            if missing:
                raise ParseError(bl.n, bl.end, f"'{side} {missing[0]}' action")
        try:
            M = Bimodule(S, R, d, [L[x] for x in S.labels], [Rm[x] for x in R.labels], name="M")
        except SerreTypeError as exc:
            raise ParseError(bl.n, 1, f"valid bimodule ({exc})")
    try:
        return triangular_algebra(R, S, M), pos
    except SerreTypeError as exc:
        raise ParseError(ln.n, 1, f"valid triangular data ({exc})")


def _parse_product(lines: list, pos: int, fld: Field) -> tuple:
    ln = lines[pos]
    ln.done()
    pos += 1
    parts = []
    while pos < len(lines) and lines[pos].head == "component":
        _, alg, pos = _parse_component(lines, pos, fld)
        parts.append(alg)
    if not parts:
        raise ParseError(ln.n, ln.end, "'component' stanza")
    out = parts[0]
    for p in parts[1:]:
        out = product_algebra(out, p)
    return out, pos


def _matrix(ln: _Line, d: int, fld: Field) -> Matrix:
    toks = ln.rest()
    if len(toks) != d * d:
        t = toks[-1] if toks else None
        col = (t.col + len(t.text) + 1) if t else ln.end
        raise ParseError(ln.n, col, f"{d * d} matrix entries")
    vals = [_number(t, fld) for t in toks]
    return Matrix(fld, [vals[r * d:(r + 1) * d] for r in range(d)], d)


def _parse_module(lines: list, pos: int, alg: Algebra) -> tuple:
    ln = lines[pos]
    name = ln.word("module name")
    ln.word("'dim'", "dim")
    d = ln.integer("dimension")
    ln.done()
    pos += 1
    acts = {}
    while pos < len(lines) and lines[pos].head == "action":
        al = lines[pos]
        lab = al.take("basis label")
        if lab.text not in alg.labels:
            raise ParseError(lab.line, lab.col, "basis label of the algebra")
        acts[lab.text] = _matrix(al, d, alg.field)
        pos += 1
    try:
        mats = [_action_for(x, acts, alg, d) for x in alg.labels]
    except KeyError as exc:
        raise ParseError(ln.n, ln.end, f"'action {exc.args[0]}' line")
    try:
        return Module(alg, d, mats, name=name), pos
    except SerreTypeError as exc:
        raise ParseError(ln.n, 1, f"valid module action ({exc})")


def _action_for(label: str, acts: dict, alg: Algebra, d: int) -> Matrix:
    if label in acts:
        return acts[label]
    if "*" in label and alg._cache.get("arrows") is not None:
        out = None
        for part in label.split("*"):
            m = acts[part]
            out = m if out is None else out @ m
        return out
    raise KeyError(label)


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_linear(vec: list, labels: list) -> str:
    terms = [f"{_fmt(c)}*{labels[k]}" for k, c in enumerate(vec) if c]
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def format_spec(spec: SpecFile) -> str:
    """Serialize as structure constants; parse_spec of the output gives the same data."""
    a = spec.algebra
    f = a.field
    out = ["field q" if f == QQ else f"field fp {f.p}", "algebra labels " + " ".join(a.labels)]
    for i in range(a.dim):
        for j in range(a.dim):
            if any(a.table[i][j]):
                out.append(f"mult {a.labels[i]} {a.labels[j]} "
                           + _fmt_linear(a.table[i][j], a.labels))
    out.append("unit " + _fmt_linear(a.unit, a.labels))
    for e in a.idempotents:
        out.append("idempotent " + _fmt_linear(e, a.labels))
    for r in a.radical or []:
        out.append("radical " + _fmt_linear(r, a.labels))
    for m in spec.modules.values():
        out.append(f"module {m.name} dim {m.dim}")
        for lab, mat in zip(a.labels, m.action):
            out.append(f"action {lab} " + " ".join(_fmt(x) for r in mat.rows for x in r))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# reports


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Matrix):
        return _plain(x.rows)
    if isinstance(x, float) and x in (float("inf"), float("-inf")):
        return "infinite"
    return x


def emit_report(report: dict) -> str:
    """Deterministic JSON: sorted keys, rationals as "p/q" strings."""
    return json.dumps(_plain(report), sort_keys=True, indent=2) + "\n"


def _indices(text: str, r: int, flag: str) -> list:
    text = text.strip()
    if text in ("", "none"):
        return []
    try:
        out = sorted({int(x) for x in text.split(",")})
    except ValueError:
        raise SerreTypeError(f"{flag} expects comma separated indices")
    if any(not 1 <= i <= r for i in out):
        raise SerreTypeError(f"{flag} indices must lie in 1..{r}")
    return out


def _find_module(spec: SpecFile, name: str) -> Module:
    if name in spec.modules:
        return spec.modules[name]
    for m in probe_family(spec.algebra):
        if m.name == name:
            return m
    from .modcat import injectives, projectives, regular_module, simples
    a = spec.algebra
    named = {f"P{i + 1}": p for i, p in enumerate(projectives(a))}
    named.update({f"S{i + 1}": s for i, s in enumerate(simples(a))})
    named.update({f"I{i + 1}": x for i, x in enumerate(injectives(a))})
    named["A"] = regular_module(a)
    if name in named:
        return named[name]
    raise SerreTypeError(f"unknown module {name!r}")


def _report(command: str) -> dict:
    from .typeclass import AMBIENT
    return {"command": command, "ambient": AMBIENT, "result": {}, "chains": [],
            "certificates": [], "witnesses": {}, "timing_ms": None}


def run(command: str, spec: SpecFile, args: argparse.Namespace) -> tuple[dict, int]:
    """Execute one command; returns (report, exit code)."""
    from . import recollement as rc
    from . import torsion as tr
    from . import typeclass as tc
    from .serre import from_simples

    a = spec.algebra
    r = a.num_idempotents
    seed = args.seed
    rep = _report(command)
    code = EXIT_OK
    if command == "classify":
        s = from_simples(a, _indices(args.simples, r, "--simples"))
        res = tc.classify(s, seed)
        d = res.as_dict()
        rep["result"] = {"type": d["type"], "simples": d["simples"]}
        if res.split_certificate:
            rep["result"]["split_certificate"] = res.split_certificate
        rep["chains"] = [{"F": d["chains"]["F"], "G": d["chains"]["G"]}]
        rep["certificates"] = d["adjunctions"] + [{"serre": s.certificates}]
        rep["witnesses"] = d["stop_reasons"]
        if not all(res.checks.values()):
            code = EXIT_VERIFY
    elif command == "classify-all":
        rows = tc.classify_all(a, seed=seed)
        rep["result"] = {
            "rows": [{"simples": list(x.simple_set), "type": x.type_json()} for x in rows],
            "all_in_type_list": all(x.checks["in_type_list"] for x in rows),
            "all_m_n_positive": all(x.m >= 1 and x.n >= 1 for x in rows),
        }
        rep["certificates"] = [{"simples": list(x.simple_set), **x.checks} for x in rows]
        if not (rep["result"]["all_in_type_list"] and rep["result"]["all_m_n_positive"]):
            code = EXIT_VERIFY
    elif command in ("recollement", "extend"):
        idx = _indices(args.idempotent, r, "--idempotent")
        rec = rc.recollement_at(a, idx, ladder=True)
        rep["result"] = {"idempotent": idx, "dims": {"B": rec.B.dim, "A": a.dim, "C": rec.C.dim}}
        rep["chains"] = [{k: tc.describe(f) for k, f in rec.functors().items()},
                         {k: (tc.describe(f) if f is not None else None)
                          for k, f in rec.ladder.items()}]
        if command == "extend":
            from .errors import ExtensionFailed
            try:
                _, cert = rc.extend_left_recollement(rec.left(), seed)
                rep["result"]["extended"] = True
                rep["certificates"] = cert
            except ExtensionFailed as exc:
                rep["result"]["extended"] = False
                rep["witnesses"] = {"error": str(exc)}
                code = EXIT_VERIFY
        elif getattr(args, "split", False):
            sp = rc.split_check(rec, seed)
            rep["result"]["split"] = sp.split
            rep["result"]["decompositions"] = [{"module": x["module"], "dims": x["dims"]}
                                               for x in sp.decompositions]
            rep["witnesses"] = {"isos": sp.isos, "not_split": sp.witness,
                                "decomposition_matrices": {x["module"]: x["matrix"]
                                                           for x in sp.decompositions}}
        elif getattr(args, "battery", False):
            b31, b32 = rc.prop31_battery(rec), rc.prop32_battery(rec)
            cc = rc.crosscheck_adjoints(rec)
            rep["result"]["right"] = {k: b31[k] for k in ("conditions", "consistent",
                                                          "witness_exact", "witness_perp")}
            rep["result"]["left"] = {k: b32[k] for k in ("conditions", "consistent",
                                                         "witness_exact", "witness_perp")}
            rep["result"]["adjoint_crosscheck"] = cc["grade"]
            rep["witnesses"] = {"right": b31["witness_sequences"],
                                "left": b32["witness_sequences"]}
            ok = all(b[k] for b in (b31, b32) for k in ("consistent", "witness_exact",
                                                          "witness_perp"))
            if not ok or cc["grade"] == "failed":
                code = EXIT_VERIFY
        else:
            v = rc.verify_recollement(rec, seed)
            rep["result"]["verified"] = v["verified"]
            rep["certificates"] = v
            if not v["verified"]:
                code = EXIT_VERIFY
    elif command == "torsion":
        idx = _indices(args.idempotent, r, "--idempotent")
        e = tuple(a.idempotent_sum(idx).coeffs)
        if args.kind == "killed":
            tp = tr.torsion_pair(a, tr.Killed(e))
        else:
            tp = tr.torsion_pair(a, tr.Full(e), tr.Killed(e))
        m = _find_module(spec, args.module)
        seq = tr.t_decompose(tp, m)
        her, coh = tr.is_hereditary(tp), tr.is_cohereditary(tp)
        rep["result"] = {"kind": args.kind, "idempotent": idx, "module": m.name,
                         "t_decomposition": [seq.mono.source.dim, m.dim, seq.epi.target.dim],
                         "inclusion": seq.mono.mat.rows}
        rep["certificates"] = [{"torsion_pair": tp.checked}, {"hereditary": her.as_dict()},
                               {"cohereditary": coh.as_dict()}]
        if args.kind == "killed" and her.holds:
            w = tr.strongly_hereditary_witness(tp, m)
            rep["witnesses"] = {"strongly_hereditary": {"dims": w.dims(), "checks": w.checks}}
    elif command == "remark54":
        out = tc.remark54_check(a, seed)
        rep["result"] = {"iso_found": out["iso_i_-2_j_1"]["grade"] in ("certified", "probed"),
                         "merged_certified": out["all_pairs_certified"],
                         "blocked_at_both_ends": out["blocked_at_both_ends"],
                         "F_indices": out["F_indices"], "G_indices": out["G_indices"]}
        rep["chains"] = [out["merged"]]
        rep["certificates"] = out["adjacent_pairs"]
        rep["witnesses"] = {"ends": out["ends"], "iso": out["iso_i_-2_j_1"],
                            "corner_iso": out["corner_iso"]}
        if not (rep["result"]["iso_found"] and out["all_pairs_certified"]
                and out["blocked_at_both_ends"]):
            code = EXIT_VERIFY
    else:
        raise SerreTypeError(f"unknown command {command}")
    return rep, code


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="serretype",
                                description="Serre subcategories, recollements and their types.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("spec", help="algebra spec file, or - for standard input")
        sp.add_argument("--seed", type=int, default=0, help="seed for isomorphism searches")
        sp.add_argument("--timing", action="store_true", help="report wall time in timing_ms")
        return sp

    add("classify", "type of one Serre subcategory").add_argument(
        "--simples", required=True, help="comma separated 1-based simple indices (or none)")
    add("classify-all", "type of every Serre subcategory")
    rc = add("recollement", "recollement at an idempotent")
    rc.add_argument("--idempotent", required=True, help="comma separated 1-based indices")
    mode = rc.add_mutually_exclusive_group()
    mode.add_argument("--verify", action="store_true", help="check the axioms (default)")
    mode.add_argument("--battery", action="store_true", help="run both diagnostic batteries")
    mode.add_argument("--split", action="store_true", help="test whether it splits")
    t = add("torsion", "t-decomposition for an idempotent torsion pair")
    t.add_argument("--kind", choices=("killed", "full"), required=True)
    t.add_argument("--idempotent", required=True)
    t.add_argument("--module", required=True, help="module declared in the input file, or P1, S1, I1, A")
    add("extend", "extend the left recollement at an idempotent").add_argument(
        "--idempotent", required=True)
    add("remark54", "merged adjoint sequence for T_2(R)")
    return p


def main(argv: list | None = None) -> int:
    args = _parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.spec == "-":
            text = sys.stdin.read()
        else:
            with open(args.spec, encoding="utf-8") as fh:
                text = fh.read()
        spec = parse_spec(text)
    except ParseError as exc:
        rep = _report(args.command)
        rep["error"] = {"kind": "ParseError", "line": exc.line, "col": exc.col,
                        "expected": exc.expected}
        sys.stdout.write(emit_report(rep))
        print(f"serretype: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"serretype: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        rep, code = run(args.command, spec, args)
    except SerreTypeError as exc:
        rep = _report(args.command)
        rep["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        print(f"serretype: {exc}", file=sys.stderr)
        code = EXIT_VERIFY
    if args.timing:
        rep["timing_ms"] = round((time.perf_counter() - start) * 1000, 1)
    sys.stdout.write(emit_report(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
