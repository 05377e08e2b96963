"""Finite-dimensional unital algebras given by structure constants.

Every algebra carries a complete list of orthogonal idempotents (the
"distinguished" idempotents, indexed from 1) and, when available, a basis of
its Jacobson radical.  Constructors build path algebras of bound quivers
(paths composed left to right), triangular matrix algebras and products, and
the derived objects ``eAe``, ``AeA`` and ``A/AeA``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import (
    BimoduleAlgebraMismatch, DegenerateQuotient, DimensionMismatch, FieldMismatch,
    InfiniteDimensional, InvalidStructure, MalformedRelation, NotDistinguishedSum,
    NotIdempotent, NotTwoSidedIdeal, SearchBudgetExceeded,
)
from .linalg import (
    Field, Matrix, complement_rows, in_row_space, independent_rows, inverse, matmul,
    null_space_rows, row_reduce, rows_rank, solve_left, unit_vec, vecmat,
)


class ZeroCategory:
    """The zero abelian category, standing in for modules over the zero ring."""

    is_zero = True
    dim = 0
    labels: list = []
    idempotents: list = []
    radical: list = []

    def __init__(self, field: Field, name: str = "0"):
        self.field = field
        self.name = name

    @property
    def num_idempotents(self) -> int:
        return 0

    def same_as(self, other) -> bool:
        return isinstance(other, ZeroCategory) and other.field == self.field

    def __repr__(self):
        return f"ZeroCategory({self.field})"


class Algebra:
    """Associative unital algebra with structure constants ``table[i][j][k]``.

    ``b_i * b_j = sum_k table[i][j][k] * b_k``.
    """

    is_zero = False

    def __init__(self, field: Field, labels: Sequence[str], table, unit, idempotents,
                 radical=None, name: str = "A", verify: bool = True):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        if self.dim == 0:
            raise InvalidStructure("an algebra needs a nonzero unit")
        n = field.norm
        self.table = [[[n(x) for x in table[i][j]] for j in range(self.dim)]
                      for i in range(self.dim)]
        self.unit = [n(x) for x in unit]
        self.idempotents = [[n(x) for x in e] for e in idempotents]
        self.radical = None if radical is None else [[n(x) for x in r] for r in radical]
        self.name = name
        self._cache: dict = {}
        if verify:
            self.verify()

    # basics ---------------------------------------------------------------
    @property
    def num_idempotents(self) -> int:
        return len(self.idempotents)

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, over {self.field})"

    def basis_vec(self, i: int) -> list:
        return unit_vec(self.dim, i)

    def element(self, coeffs) -> "Element":
        return Element(self, [self.field.coerce(c) for c in coeffs])

    def mul(self, x: Sequence, y: Sequence) -> list:
        d = self.dim
        acc = [0] * d
        t = self.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = t[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(ti[j]):
                    if v:
                        acc[k] += c * v
        n = self.field.norm
        return [n(v) for v in acc]

    def add(self, x, y) -> list:
        n = self.field.norm
        return [n(a + b) for a, b in zip(x, y)]

    def right_mult(self, j: int) -> Matrix:
        """Matrix of x -> x * b_j on row vectors."""
        key = ("R", j)
        if key not in self._cache:
            self._cache[key] = Matrix(self.field, [self.table[i][j][:] for i in range(self.dim)],
                                      self.dim)
        return self._cache[key]

    def left_mult(self, i: int) -> Matrix:
        """Matrix of x -> b_i * x on row vectors."""
        key = ("L", i)
        if key not in self._cache:
            self._cache[key] = Matrix(self.field, [self.table[i][j][:] for j in range(self.dim)],
                                      self.dim)
        return self._cache[key]

    def right_mult_by(self, x: Sequence) -> Matrix:
        return _combine(self.field, x, [self.right_mult(j) for j in range(self.dim)], self.dim)

    def left_mult_by(self, x: Sequence) -> Matrix:
        return _combine(self.field, x, [self.left_mult(i) for i in range(self.dim)], self.dim)

    def idempotent_sum(self, indices) -> "Element":
        """Sum of the distinguished idempotents with the given 1-based indices."""
        v = [0] * self.dim
        for i in sorted(set(indices)):
            if not 1 <= i <= self.num_idempotents:
                raise NotDistinguishedSum(f"no distinguished idempotent {i}")
            v = self.add(v, self.idempotents[i - 1])
        return Element(self, v)

    def same_as(self, other) -> bool:
        if self is other:
            return True
        return (isinstance(other, Algebra) and self.field == other.field
                and self.dim == other.dim and self.table == other.table
                and self.unit == other.unit and self.idempotents == other.idempotents)

    # verification ---------------------------------------------------------
    def verify(self) -> None:
        d = self.dim
        for x in [self.unit] + self.idempotents + (self.radical or []):
            if len(x) != d:
                raise DimensionMismatch("coefficient vector of wrong length")
        if any(len(self.table[i][j]) != d for i in range(d) for j in range(d)):
            raise DimensionMismatch("structure constants of wrong shape")
        R = [self.right_mult(j) for j in range(d)]
        for j in range(d):
            for k in range(d):
                lhs = matmul(R[j], R[k])
                rhs = _combine(self.field, self.table[j][k], R, d)
                if lhs != rhs:
                    raise InvalidStructure(
                        f"not associative on ({self.labels[j]}, {self.labels[k]})")
        for i in range(d):
            b = self.basis_vec(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise InvalidStructure("unit does not act as identity")
        total = [0] * d
        for a, e in enumerate(self.idempotents):
            for b, f in enumerate(self.idempotents):
                expect = e if a == b else [0] * d
                if self.mul(e, f) != expect:
                    raise InvalidStructure("idempotents are not orthogonal idempotents")
            if not any(e):
                raise InvalidStructure("zero idempotent in the distinguished list")
            total = self.add(total, e)
        if total != self.unit:
            raise InvalidStructure("distinguished idempotents do not sum to the unit")
        if self.radical is not None:
            self._verify_radical()

    def _verify_radical(self) -> None:
        d = self.dim
        J = independent_rows(self.radical, d, self.field)
        if len(J) != len(self.radical):
            raise InvalidStructure("radical basis is not independent")
        for r in J:
            for i in range(d):
                b = self.basis_vec(i)
                if not in_row_space(self.mul(b, r), J, self.field) or \
                        not in_row_space(self.mul(r, b), J, self.field):
                    raise InvalidStructure("radical basis does not span a two-sided ideal")
        power = J
        for _ in range(d + 1):
            if not power:
                break
            prods = [self.mul(x, y) for x in power for y in J]
            power = independent_rows([p for p in prods if any(p)], d, self.field)
        if power:
            raise InvalidStructure("radical is not nilpotent")
        if self.field.char == 0:
            tr = self.trace_radical()
            if rows_rank(tr, d, self.field) != len(J) or \
                    any(not in_row_space(v, J, self.field) for v in tr):
                raise InvalidStructure("quotient by the supplied radical is not semisimple")

    def trace_radical(self) -> list:
        """Radical of the trace form x, y -> tr(right multiplication by xy).

        In characteristic zero this is the Jacobson radical.
        """
        d = self.dim
        traces = []
        for k in range(d):
            m = self.right_mult(k)
            traces.append(self.field.norm(sum(m.rows[i][i] for i in range(d))))
        gram = []
        for i in range(d):
            row = []
            for j in range(d):
                row.append(self.field.norm(sum(c * t for c, t in zip(self.table[i][j], traces) if c)))
            gram.append(row)
        basis, _ = null_space_rows(gram, d, self.field)
        return basis

    def with_radical(self) -> "Algebra":
        """Same algebra with the radical filled in (characteristic zero only)."""
        if self.radical is not None or self.field.char != 0:
            return self
        return Algebra(self.field, self.labels, self.table, self.unit, self.idempotents,
                       self.trace_radical(), self.name)

    # derived data ------------------------------------------------------------
    def opposite(self) -> "Algebra":
        if "op" not in self._cache:
            d = self.dim
            table = [[self.table[j][i] for j in range(d)] for i in range(d)]
            op = Algebra(self.field, self.labels, table, self.unit, self.idempotents,
                         self.radical, self.name + "^op", verify=False)
            op._cache["op"] = self
            self._cache["op"] = op
        return self._cache["op"]

    def block(self, s: int, t: int) -> list:
        """Basis of e_s A e_t (0-based idempotent positions) as vectors of A."""
        key = ("block", s, t)
        if key not in self._cache:
            es, et = self.idempotents[s], self.idempotents[t]
            vecs = [self.mul(self.mul(es, self.basis_vec(k)), et) for k in range(self.dim)]
            self._cache[key] = independent_rows([v for v in vecs if any(v)], self.dim, self.field)
        return self._cache[key]

    def block_of(self, x: Sequence) -> tuple[int, int] | None:
        for s, es in enumerate(self.idempotents):
            for t, et in enumerate(self.idempotents):
                if self.mul(self.mul(es, x), et) == list(x):
                    return s, t
        return None

    def generators(self) -> list:
        """Homogeneous algebra generators: the idempotents, then block elements.

        Each entry is ``(vector, (s, t))`` with the vector lying in e_s A e_t.
        Intertwining conditions and tensor relations only need these.
        """
        if "gens" in self._cache:
            return self._cache["gens"]
        r = self.num_idempotents
        gens = [(e[:], (a, a)) for a, e in enumerate(self.idempotents)]
        span = self._closure([g for g, _ in gens])
        for k in range(self.dim):
            for s in range(r):
                for t in range(r):
                    v = self.mul(self.mul(self.idempotents[s], self.basis_vec(k)),
                                 self.idempotents[t])
                    if any(v) and not in_row_space(v, span, self.field):
                        gens.append((v, (s, t)))
                        span = self._closure([g for g, _ in gens])
        if len(span) != self.dim:
            raise InvalidStructure("idempotent blocks fail to generate the algebra")
        self._cache["gens"] = gens
        return gens

    def _closure(self, gens: list) -> list:
        span = independent_rows([self.unit] + gens, self.dim, self.field)
        frontier = span
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = self.mul(v, g)
                    if any(w) and not in_row_space(w, span + new, self.field):
                        new.append(w)
            span = span + new
            frontier = new
        return span

    def word_basis(self) -> tuple[list, list]:
        """Words in the generators whose values form a basis of the algebra.

        Returns ``(words, values)``; the empty word stands for the unit.
        """
        if "words" in self._cache:
            return self._cache["words"]
        gens = [g for g, _ in self.generators()]
        words, values = [()], [self.unit[:]]
        frontier = [((), self.unit[:])]
        while frontier:
            nxt = []
            for w, v in frontier:
                for gi, g in enumerate(gens):
                    x = self.mul(v, g)
                    if any(x) and not in_row_space(x, values, self.field):
                        words.append(w + (gi,))
                        values.append(x)
                        nxt.append((w + (gi,), x))
            frontier = nxt
        if len(values) != self.dim:
            raise InvalidStructure("generators do not span the algebra")
        self._cache["words"] = (words, values)
        return words, values

    def distinguished_support(self, e: Sequence) -> list:
        """1-based indices I with e = sum of the idempotents in I."""
        r = self.num_idempotents
        coeffs = solve_left(Matrix(self.field, [x[:] for x in self.idempotents], self.dim),
                            Matrix(self.field, [list(e)], self.dim)) if r else None
        if coeffs is None:
            if not any(e):
                return []
            raise NotDistinguishedSum("element is not a combination of the idempotents")
        c = coeffs.rows[0]
        if any(x not in (0, 1) for x in c):
            raise NotDistinguishedSum("element is not a sum of distinguished idempotents")
        return [i + 1 for i, x in enumerate(c) if x == 1]


def _combine(field: Field, coeffs: Sequence, mats: Sequence[Matrix], n: int) -> Matrix:
    acc = [[0] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if c:
            for i, row in enumerate(m.rows):
                ai = acc[i]
                for j, v in enumerate(row):
                    if v:
                        ai[j] += c * v
    nm = field.norm
    return Matrix(field, [[nm(v) for v in r] for r in acc], n)


@dataclass
class Element:
    algebra: Algebra
    coeffs: list

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise DimensionMismatch("coefficient vector does not match the algebra")

    def __mul__(self, other: "Element") -> "Element":
        return Element(self.algebra, self.algebra.mul(self.coeffs, other.coeffs))

    def __add__(self, other: "Element") -> "Element":
        return Element(self.algebra, self.algebra.add(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def is_idempotent(self) -> bool:
        return self.algebra.mul(self.coeffs, self.coeffs) == self.coeffs


def _vec(a: Algebra, e) -> list:
    if isinstance(e, Element):
        if e.algebra is not a and not e.algebra.same_as(a):
            raise BimoduleAlgebraMismatch("element belongs to another algebra")
        return e.coeffs[:]
    if isinstance(e, (set, frozenset)):
        return a.idempotent_sum(e).coeffs
    return [a.field.coerce(x) for x in e]


# ---------------------------------------------------------------------------
# constructors


def ground_field(field: Field) -> Algebra:
    return Algebra(field, ["1"], [[[1]]], [1], [[1]], [], name="k")


def structure_algebra(field: Field, labels, products: dict, unit, idempotents,
                      radical=None, name: str = "A") -> Algebra:
    """Algebra from a sparse product table ``{(i, j): coefficient vector}``."""
    d = len(labels)
    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (i, j), v in products.items():
        table[i][j] = [field.coerce(x) for x in v]
    return Algebra(field, labels, table, [field.coerce(x) for x in unit],
                   [[field.coerce(x) for x in e] for e in idempotents],
                   None if radical is None else [[field.coerce(x) for x in r] for r in radical],
                   name=name)


@dataclass(frozen=True)
class Path:
    src: str
    tgt: str
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.src}"


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z_][\w]*(?:\s*\*\s*[A-Za-z_][\w]*)*)\s*")


def parse_relation(text: str) -> list:
    """Parse ``'a*b - 2 c*d'`` into ``[(1, ('a','b')), (-2, ('c','d'))]``."""
    out = []
    pos = 0
    text = text.strip()
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and m.group(1) is None):
            raise MalformedRelation(f"cannot parse relation {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        names = tuple(s.strip() for s in m.group(3).split("*"))
        out.append((sign * coef, names))
        pos = m.end()
        first = False
    if not out:
        raise MalformedRelation("empty relation")
    return out


def path_algebra(vertices: Sequence, arrows: Sequence, relations: Sequence = (),
                 field: Field | None = None, cap: int = 10000, name: str = "kQ/I") -> Algebra:
    """Path algebra of a quiver modulo the ideal generated by ``relations``.

    ``arrows`` is a list of ``(name, source, target)``; a relation is either a
    string such as ``'a*b - c'`` or a list of ``(coefficient, arrow tuple)``;
    a bare vertex name ``e<v>`` denotes the trivial path at ``v``.  Paths are
    composed left to right, so ``a*b`` means ``a`` followed by ``b``.
    """
    if field is None:
        raise ValueError("a field is required")
    verts = [str(v) for v in vertices]
    if len(set(verts)) != len(verts) or not verts:
        raise MalformedRelation("vertex names must be distinct and nonempty")
    arr = {}
    for a, s, t in arrows:
        a, s, t = str(a), str(s), str(t)
        if s not in verts or t not in verts:
            raise MalformedRelation(f"arrow {a} has an unknown endpoint")
        if a in arr or a in {f"e{v}" for v in verts}:
            raise MalformedRelation(f"duplicate arrow name {a}")
        arr[a] = (s, t)

    def as_path(names: tuple) -> Path:
        if len(names) == 1 and names[0] not in arr and names[0].startswith("e") \
                and names[0][1:] in verts:
            v = names[0][1:]
            return Path(v, v, ())
        for x in names:
            if x not in arr:
                raise MalformedRelation(f"unknown arrow {x}")
        for x, y in zip(names, names[1:]):
            if arr[x][1] != arr[y][0]:
                raise MalformedRelation(f"arrows {x} and {y} do not compose")
        return Path(arr[names[0]][0], arr[names[-1]][1], names)

    rels = []
    for r in relations:
        terms = parse_relation(r) if isinstance(r, str) else list(r)
        paths = [(field.coerce(c), as_path(tuple(p))) for c, p in terms]
        ends = {(p.src, p.tgt) for _, p in paths}
        if len(ends) != 1:
            raise MalformedRelation(f"relation {r!r} combines non-parallel paths")
        rels.append(paths)

    by_len: list = [[Path(v, v, ()) for v in verts]]
    out_arrows = {v: [a for a in arr if arr[a][0] == v] for v in verts}

    def extend_to(L: int) -> None:
        while len(by_len) <= L:
            nxt = []
            for p in by_len[-1]:
                for a in out_arrows[p.tgt]:
                    nxt.append(Path(p.src, arr[a][1], p.arrows + (a,)))
            by_len.append(nxt)
            if sum(len(x) for x in by_len) > 20 * cap:
                raise InfiniteDimensional(f"more than {20 * cap} paths to reduce")

    def paths_upto(L: int) -> list:
        extend_to(L)
        return [p for lvl in by_len[:L + 1] for p in lvl]

    def ideal_rows(L: int, index: dict) -> list:
        rows = []
        n = len(index)
        for rel in rels:
            top = max(len(p) for _, p in rel)
            s, t = rel[0][1].src, rel[0][1].tgt
            for lu in range(0, L - top + 1):
                lefts = [p for p in by_len[lu] if p.tgt == s]
                for lv in range(0, L - top - lu + 1):
                    rights = [p for p in by_len[lv] if p.src == t]
                    for u in lefts:
                        for v in rights:
                            row = [0] * n
                            for c, p in rel:
                                q = Path(u.src, v.tgt, u.arrows + p.arrows + v.arrows)
                                row[index[q]] = field.norm(row[index[q]] + c)
                            if any(row):
                                rows.append(row)
        return rows

    if _has_free_cycle(verts, arr, rels):
        raise InfiniteDimensional("arbitrarily long paths avoid every relation")
    L = 1
    while True:
        allp = paths_upto(L)
        if not by_len[L]:
            break
        index = {p: i for i, p in enumerate(allp)}
        n = len(allp)
        J = ideal_rows(L, index)
        if n - rows_rank(J, n, field) > cap:
            raise InfiniteDimensional(f"more than {cap} basis paths")
        span = J + [unit_vec(n, index[p]) for lvl in by_len[:L] for p in lvl]
        base = rows_rank(span, n, field)
        if rows_rank(span + [unit_vec(n, index[p]) for p in by_len[L]], n, field) == base:
            break
        L += 1
    Lmax = 2 * L
    allp = paths_upto(Lmax)
    index = {p: i for i, p in enumerate(allp)}
    n = len(allp)
    J = row_reduce(ideal_rows(Lmax, index), n, field)[0]
    basis_paths = []
    span = [r[:] for r in J]
    for p in allp:
        v = unit_vec(n, index[p])
        if not in_row_space(v, span, field):
            basis_paths.append(p)
            span.append(v)
    d = len(basis_paths)
    stack = Matrix(field, [unit_vec(n, index[p]) for p in basis_paths] + [r[:] for r in J], n)

    def normal_form(q: Path) -> list:
        x = solve_left(stack, Matrix(field, [unit_vec(n, index[q])], n))
        if x is None:
            raise MalformedRelation("path does not reduce; relations are not closed")
        return x.rows[0][:d]

    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i, p in enumerate(basis_paths):
        for j, q in enumerate(basis_paths):
            if p.tgt == q.src:
                table[i][j] = normal_form(Path(p.src, q.tgt, p.arrows + q.arrows))
    idem = [unit_vec(d, basis_paths.index(Path(v, v, ()))) for v in verts]
    unit = [1 if len(p) == 0 else 0 for p in basis_paths]
    labels = [p.label() for p in basis_paths]
    radical = [unit_vec(d, i) for i, p in enumerate(basis_paths) if len(p) > 0]
    try:
        alg = Algebra(field, labels, table, unit, idem, radical, name=name)
    except InvalidStructure:
        alg = Algebra(field, labels, table, unit, idem, None, name=name)
        if field.char == 0:
            alg = alg.with_radical()
    alg._cache["paths"] = basis_paths
    alg._cache["arrows"] = dict(arr)
    alg._cache["vertices"] = verts
    return alg


def _has_free_cycle(verts: list, arr: dict, rels: list) -> bool:
    """True if arbitrarily long paths contain no relation term as a subpath.

    Such paths are independent modulo the relation ideal, so the quotient is
    infinite-dimensional.
    """
    terms = {p.arrows for rel in rels for _, p in rel if p.arrows}
    if any(not p.arrows for rel in rels for _, p in rel):
        return False
    k = max((len(t) for t in terms), default=1) - 1

    def ok(word: tuple) -> bool:
        return not any(word[i:j] in terms for i in range(len(word))
                       for j in range(i + 1, len(word) + 1))

    # states: admissible words of length <= k (suffix memory); edges append an arrow
    def succ(state: tuple):
        last = arr[state[-1]][1] if state else None
        for a, (s, _) in arr.items():
            if last is not None and s != last:
                continue
            w = state + (a,)
            if ok(w):
                yield w[-k:] if k else ()

    starts = [(a,)[-k:] if k else () for a in arr if ok((a,))]
    if k == 0:
        # no relation longer than one arrow: any cycle of unforbidden arrows
        free = {a for a in arr if (a,) not in terms}
        graph = {v: [arr[a][1] for a in free if arr[a][0] == v] for v in verts}
        return _graph_has_cycle(graph)
    graph: dict = {}
    stack = list(dict.fromkeys(starts))
    while stack:
        st = stack.pop()
        if st in graph:
            continue
        graph[st] = list(dict.fromkeys(succ(st)))
        stack.extend(x for x in graph[st] if x not in graph)
    return _graph_has_cycle(graph)


def _graph_has_cycle(graph: dict) -> bool:
    color: dict = {}
    for root in graph:
        if root in color:
            continue
        stack = [(root, iter(graph.get(root, ())))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
            elif color.get(nxt) == 1:
                return True
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(graph.get(nxt, ()))))
    return False


def triangular_algebra(R: Algebra, S: Algebra, M: "Bimodule") -> Algebra:
    """The algebra of matrices [[r, 0], [m, s]] with m in the S-R bimodule M."""
    if R.field != S.field or M.field != R.field:
        raise FieldMismatch("triangular data over different fields")
    if not (isinstance(M.left, Algebra) and M.left.same_as(S)
            and isinstance(M.right, Algebra) and M.right.same_as(R)):
        raise BimoduleAlgebraMismatch("M must be an S-R bimodule")
    f = R.field
    dr, ds, dm = R.dim, S.dim, M.dim
    d = dr + ds + dm
    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(dr):
        for j in range(dr):
            table[i][j][:dr] = R.table[i][j][:]
    for i in range(ds):
        for j in range(ds):
            table[dr + i][dr + j][dr:dr + ds] = S.table[i][j][:]
    for i in range(ds):
        L = M.L[i]
        for k in range(dm):
            table[dr + i][dr + ds + k][dr + ds:] = L.rows[k][:]
    for k in range(dm):
        for j in range(dr):
            table[dr + ds + k][j][dr + ds:] = M.R[j].rows[k][:]
    labels = [f"R.{x}" for x in R.labels] + [f"S.{x}" for x in S.labels] + \
             [f"M.{k + 1}" for k in range(dm)]
    unit = R.unit + S.unit + [0] * dm
    idem = [e + [0] * (ds + dm) for e in R.idempotents] + \
           [[0] * dr + e + [0] * dm for e in S.idempotents]
    radical = None
    if R.radical is not None and S.radical is not None:
        radical = [r + [0] * (ds + dm) for r in R.radical] + \
                  [[0] * dr + s + [0] * dm for s in S.radical] + \
                  [unit_vec(d, dr + ds + k) for k in range(dm)]
    alg = Algebra(f, labels, table, unit, idem, radical, name=f"({R.name} 0; M {S.name})")
    alg._cache["triangular"] = (R, S, M)
    return alg


def product_algebra(a: Algebra, b: Algebra) -> Algebra:
    if not isinstance(a, Algebra) or not isinstance(b, Algebra):
        raise InvalidStructure("products of unital algebras only")
    if a.field != b.field:
        raise FieldMismatch("product of algebras over different fields")
    da, db = a.dim, b.dim
    d = da + db
    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(da):
        for j in range(da):
            table[i][j][:da] = a.table[i][j][:]
    for i in range(db):
        for j in range(db):
            table[da + i][da + j][da:] = b.table[i][j][:]
    labels = [f"p1.{x}" for x in a.labels] + [f"p2.{x}" for x in b.labels]
    idem = [e + [0] * db for e in a.idempotents] + [[0] * da + e for e in b.idempotents]
    radical = None
    if a.radical is not None and b.radical is not None:
        radical = [r + [0] * db for r in a.radical] + [[0] * da + r for r in b.radical]
    return Algebra(a.field, labels, table, a.unit + b.unit, idem, radical,
                   name=f"{a.name} x {b.name}")


# ---------------------------------------------------------------------------
# corners, ideals, quotients


@dataclass
class Corner:
    """eAe together with its embedding into A (rows = basis in A coordinates)."""
    algebra: object
    embed: Matrix
    support: list


def check_idempotent(a: Algebra, e) -> list:
    v = _vec(a, e)
    if a.mul(v, v) != v:
        raise NotIdempotent("element is not idempotent")
    return v


def corner(a: Algebra, e) -> Corner:
    v = check_idempotent(a, e)
    support = a.distinguished_support(v)
    if not support:
        return Corner(ZeroCategory(a.field, "eAe"), Matrix(a.field, [], a.dim), [])
    vecs = [a.mul(a.mul(v, a.basis_vec(k)), v) for k in range(a.dim)]
    basis = independent_rows([x for x in vecs if any(x)], a.dim, a.field)
    emb = Matrix(a.field, basis, a.dim)
    labels = []
    for x in basis:
        k = next((k for k in range(a.dim) if x == a.basis_vec(k)), None)
        labels.append(a.labels[k] if k is not None else f"e({len(labels) + 1})e")

    def coords(x):
        c = solve_left(emb, Matrix(a.field, [x], a.dim))
        if c is None:
            raise InvalidStructure("corner is not closed under multiplication")
        return c.rows[0]

    d = len(basis)
    table = [[coords(a.mul(basis[i], basis[j])) for j in range(d)] for i in range(d)]
    idem = [coords(a.idempotents[i - 1]) for i in support]
    radical = None
    if a.radical is not None:
        rad = [a.mul(a.mul(v, r), v) for r in a.radical]
        radical = [coords(x) for x in independent_rows([x for x in rad if any(x)], a.dim, a.field)]
    alg = Algebra(a.field, labels, table, coords(v), idem, radical, name=f"e{a.name}e")
    return Corner(alg, emb, support)


def idempotent_ideal(a: Algebra, e) -> list:
    """Basis of the two-sided ideal AeA."""
    v = check_idempotent(a, e)
    vecs = []
    for i in range(a.dim):
        left = a.mul(a.basis_vec(i), v)
        if not any(left):
            continue
        for j in range(a.dim):
            x = a.mul(left, a.basis_vec(j))
            if any(x):
                vecs.append(x)
    basis = independent_rows(vecs, a.dim, a.field)
    _check_ideal(a, basis)
    if basis:
        prods = [a.mul(x, y) for x in basis for y in basis]
        if rows_rank([p for p in prods if any(p)] or [[0] * a.dim], a.dim, a.field) != len(basis):
            raise NotTwoSidedIdeal("AeA is not idempotent")
    return basis


def _check_ideal(a: Algebra, basis: list) -> None:
    for x in basis:
        for k in range(a.dim):
            b = a.basis_vec(k)
            if not in_row_space(a.mul(b, x), basis, a.field) or \
                    not in_row_space(a.mul(x, b), basis, a.field):
                raise NotTwoSidedIdeal("span is not a two-sided ideal")


@dataclass
class Quotient:
    """A/I with the projection (dim A x dim A/I) and a linear section."""
    algebra: object
    proj: Matrix
    section: Matrix
    ideal: list
    support: list = dc_field(default_factory=list)


def quotient(a: Algebra, ideal_basis: list) -> Quotient:
    """Quotient by a two-sided ideal; the zero ring becomes ZeroCategory."""
    f = a.field
    ideal = independent_rows([list(x) for x in ideal_basis], a.dim, f)
    _check_ideal(a, ideal)
    comp = complement_rows(ideal, a.dim, f)
    if not comp:
        return Quotient(ZeroCategory(f, "A/I"), Matrix(f, [[] for _ in range(a.dim)], 0),
                        Matrix(f, [], a.dim), ideal, [])
    stack = Matrix(f, [r[:] for r in ideal] + [r[:] for r in comp], a.dim)
    inv = inverse(stack)
    k = len(ideal)
    proj = inv.block(0, a.dim, k, a.dim)
    d = len(comp)

    def p(x):
        return vecmat(x, proj)

    table = [[p(a.mul(comp[i], comp[j])) for j in range(d)] for i in range(d)]
    idem, support = [], []
    for i, e in enumerate(a.idempotents):
        pe = p(e)
        if any(pe):
            idem.append(pe)
            support.append(i + 1)
    radical = None
    if a.radical is not None:
        radical = independent_rows([x for x in (p(r) for r in a.radical) if any(x)], d, f)
    labels = [a.labels[row.index(1)] for row in comp]
    alg = Algebra(f, labels, table, p(a.unit), idem, radical, name=f"{a.name}/I")
    return Quotient(alg, proj, Matrix(f, [r[:] for r in comp], a.dim), ideal, support)


def quotient_algebra(a: Algebra, ideal_basis: list) -> Algebra:
    q = quotient(a, ideal_basis)
    if isinstance(q.algebra, ZeroCategory):
        raise DegenerateQuotient("quotient by the whole algebra is the zero ring")
    return q.algebra


# ---------------------------------------------------------------------------
# bimodules


class Bimodule:
    """A C-A bimodule on a vector space with row-vector actions.

    ``R[j]`` is the matrix of x -> x * a_j and ``L[i]`` the matrix of
    x -> c_i * x; hence ``L`` is an anti-homomorphism: L(c c') = L(c') L(c).
    """

    def __init__(self, left, right, dim: int, L: list, R: list, name: str = "B",
                 verify: bool = True):
        if left.field != right.field:
            raise FieldMismatch("bimodule over different fields")
        self.left = left
        self.right = right
        self.field = left.field
        self.dim = dim
        self.L = L
        self.R = R
        self.name = name
        self._cache: dict = {}
        if len(L) != left.dim or len(R) != right.dim:
            raise DimensionMismatch("one action matrix per basis element required")
        if verify:
            self.verify()

    def __repr__(self):
        return f"Bimodule({self.name}: {_nm(self.left)}-{_nm(self.right)}, dim={self.dim})"

    def verify(self) -> None:
        d = self.dim
        if d == 0:
            return
        for alg, acts, anti in ((self.right, self.R, False), (self.left, self.L, True)):
            if alg.is_zero:
                raise InvalidStructure("nonzero bimodule over the zero category")
            if _combine(self.field, alg.unit, acts, d) != Matrix.identity(self.field, d):
                raise InvalidStructure(f"unit of {alg.name} does not act as identity")
            for i in range(alg.dim):
                for j in range(alg.dim):
                    lhs = matmul(acts[j], acts[i]) if anti else matmul(acts[i], acts[j])
                    if lhs != _combine(self.field, alg.table[i][j], acts, d):
                        raise InvalidStructure(f"action of {alg.name} is not multiplicative")
        for Lc in self.L:
            for Ra in self.R:
                if matmul(Lc, Ra) != matmul(Ra, Lc):
                    raise InvalidStructure("left and right actions do not commute")

    def left_act(self, x: Sequence) -> Matrix:
        return _combine(self.field, x, self.L, self.dim)

    def right_act(self, x: Sequence) -> Matrix:
        return _combine(self.field, x, self.R, self.dim)

    def right_module(self):
        """Underlying right module over the right algebra."""
        if "rm" not in self._cache:
            from .modcat import Module
            self._cache["rm"] = Module(self.right, self.dim, self.R, name=self.name, verify=False)
        return self._cache["rm"]

    def left_module_op(self):
        """Underlying left module, as a right module over the opposite algebra."""
        if "lm" not in self._cache:
            from .modcat import Module
            self._cache["lm"] = Module(self.left.opposite(), self.dim, self.L,
                                       name=self.name + "^op", verify=False)
        return self._cache["lm"]

    def signature(self) -> dict:
        return {"left": _nm(self.left), "right": _nm(self.right), "dim": self.dim}


def _nm(c) -> str:
    return getattr(c, "name", "?")


def zero_bimodule(left, right) -> Bimodule:
    f = left.field
    return Bimodule(left, right, 0, [Matrix(f, [], 0) for _ in range(left.dim)],
                    [Matrix(f, [], 0) for _ in range(right.dim)], name="0", verify=False)


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a, a, a.dim, [a.left_mult(i) for i in range(a.dim)],
                    [a.right_mult(j) for j in range(a.dim)], name=a.name)


def bimodule_from_subspace(a: Algebra, U: list, left, left_embed: Matrix,
                           right, right_embed: Matrix, name: str) -> Bimodule:
    """Sub-bimodule U of A where ``left``/``right`` act through embeddings into A."""
    f = a.field
    if not U:
        return zero_bimodule(left, right)
    Um = Matrix(f, [u[:] for u in U], a.dim)

    def coords(x):
        c = solve_left(Um, Matrix(f, [x], a.dim))
        if c is None:
            raise InvalidStructure(f"{name} is not closed under the actions")
        return c.rows[0]

    L = []
    for c in left_embed.rows:
        L.append(Matrix(f, [coords(a.mul(c, u)) for u in U], len(U)))
    R = []
    for x in right_embed.rows:
        R.append(Matrix(f, [coords(a.mul(u, x)) for u in U], len(U)))
    return Bimodule(left, right, len(U), L, R, name=name)


def restrict_bimodule(b: Bimodule, left_map: Matrix | None = None, new_left=None,
                      right_map: Matrix | None = None, new_right=None) -> Bimodule:
    """Restrict scalars along algebra maps (rows = images of basis elements)."""
    L, R = b.L, b.R
    if left_map is not None:
        L = [_combine(b.field, row, b.L, b.dim) for row in left_map.rows]
    if right_map is not None:
        R = [_combine(b.field, row, b.R, b.dim) for row in right_map.rows]
    return Bimodule(new_left if new_left is not None else b.left,
                    new_right if new_right is not None else b.right, b.dim, L, R,
                    name=b.name)


@dataclass
class IdempotentData:
    """Everything attached to an idempotent e = sum of distinguished idempotents."""
    algebra: Algebra
    e: list
    support: list
    corner: Corner
    ideal: list
    quotient: Quotient
    eA: Bimodule
    Ae: Bimodule
    Abar_A: Bimodule
    A_Abar: Bimodule

    @property
    def eAe(self):
        return self.corner.algebra

    @property
    def Abar(self):
        return self.quotient.algebra


def regular_bimodules(a: Algebra, e) -> IdempotentData:
    """eA, Ae and A/AeA (on both sides) as bimodules."""
    v = check_idempotent(a, e)
    cor = corner(a, v)
    ideal = idempotent_ideal(a, v) if any(v) else []
    q = quotient(a, ideal)
    f = a.field
    ident = Matrix.identity(f, a.dim)
    eAe = cor.algebra
    if eAe.is_zero:
        eA = zero_bimodule(eAe, a)
        Ae = zero_bimodule(a, eAe)
    else:
        eA = bimodule_from_subspace(
            a, independent_rows([x for x in (a.mul(v, a.basis_vec(k)) for k in range(a.dim))
                                 if any(x)], a.dim, f), eAe, cor.embed, a, ident, "eA")
        Ae = bimodule_from_subspace(
            a, independent_rows([x for x in (a.mul(a.basis_vec(k), v) for k in range(a.dim))
                                 if any(x)], a.dim, f), a, ident, eAe, cor.embed, "Ae")
    Abar = q.algebra
    if Abar.is_zero:
        Abar_A = zero_bimodule(Abar, a)
        A_Abar = zero_bimodule(a, Abar)
    else:
        d = Abar.dim
        Lbar = [Abar.left_mult(i) for i in range(d)]
        Rbar = [Abar.right_mult(j) for j in range(d)]
        Rvia = [Abar.right_mult_by(row) for row in q.proj.rows]
        Lvia = [Abar.left_mult_by(row) for row in q.proj.rows]
        Abar_A = Bimodule(Abar, a, d, Lbar, Rvia, name="Abar")
        A_Abar = Bimodule(a, Abar, d, Lvia, Rbar, name="Abar")
    return IdempotentData(a, v, cor.support, cor, ideal, q, eA, Ae, Abar_A, A_Abar)


# ---------------------------------------------------------------------------
# isomorphism search


def algebra_iso(a: Algebra, b: Algebra, budget: int = 20000) -> Matrix | None:
    """Unital algebra isomorphism a -> b (rows = images of a's basis) or None.

    Generators of ``a`` (idempotents and homogeneous block elements) are sent
    to idempotents and to basis elements (or sums of two) of the matching
    blocks of ``b``; every candidate is checked for multiplicativity and
    bijectivity.  ``None`` means no isomorphism among the candidates;
    ``SearchBudgetExceeded`` means the candidate space was too large.
    """
    if a.field != b.field:
        raise FieldMismatch("algebras over different fields")
    if a.dim != b.dim or a.num_idempotents != b.num_idempotents:
        return None
    if a.radical is not None and b.radical is not None and len(a.radical) != len(b.radical):
        return None
    r = a.num_idempotents
    bd_a = [[len(a.block(s, t)) for t in range(r)] for s in range(r)]
    bd_b = [[len(b.block(s, t)) for t in range(r)] for s in range(r)]
    gens = a.generators()
    words, values = a.word_basis()
    Winv = inverse(Matrix(a.field, values, a.dim))
    tried = 0
    for sigma in itertools.permutations(range(r)):
        if any(bd_a[s][t] != bd_b[sigma[s]][sigma[t]] for s in range(r) for t in range(r)):
            continue
        options = []
        for g, (s, t) in gens[r:]:
            blk = b.block(sigma[s], sigma[t])
            cands = [x[:] for x in blk]
            cands += [b.add(x, y) for x, y in itertools.combinations(blk, 2)]
            options.append(cands)
        for choice in itertools.product(*options):
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded(f"more than {budget} candidate maps")
            images = [b.idempotents[sigma[s]] for s in range(r)] + list(choice)
            imgs = []
            for w in words:
                x = b.unit[:]
                for gi in w:
                    x = b.mul(x, images[gi])
                imgs.append(x)
            phi = matmul(Winv, Matrix(a.field, imgs, b.dim))
            if _is_algebra_map(a, b, phi) and inverse(phi) is not None:
                return phi
    return None


def _is_algebra_map(a: Algebra, b: Algebra, phi: Matrix) -> bool:
    if vecmat(a.unit, phi) != b.unit:
        return False
    for i in range(a.dim):
        for j in range(a.dim):
            if vecmat(a.table[i][j], phi) != b.mul(phi.rows[i], phi.rows[j]):
                return False
    return True
