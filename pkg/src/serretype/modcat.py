"""The category mod A of finite-dimensional right modules.

A module stores one matrix per algebra basis element; ``m . a`` is the row
vector ``m @ action[a]``.  A morphism ``f: M -> N`` is a ``dim M x dim N``
matrix with ``m -> m @ f.mat``, so ``g o f`` has matrix ``f.mat @ g.mat``.

Hom spaces are computed in an idempotent-adapted basis: a homomorphism
preserves the pieces ``M e_i`` and only has to intertwine the homogeneous
generators of the algebra.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .algebra import Algebra, Bimodule, ZeroCategory, _combine
from .errors import (
    AlgebraMismatch, DimensionMismatch, InternalInconsistency, InvalidStructure,
    RadicalUnavailable, SearchExhausted,
)
from .linalg import (
    Field, Matrix, SubspaceCoords, complement_rows, det, independent_rows, inverse,
    left_kernel, matmul, null_space_rows, rows_rank, solve_left, unit_vec, vecmat,
)


class Module:
    """A finite-dimensional right module over ``algebra``."""

    def __init__(self, algebra, dim: int, action: list, name: str = "M", verify: bool = True):
        self.algebra = algebra
        self.field: Field = algebra.field
        self.dim = dim
        self.action = action
        self.name = name
        self._cache: dict = {}
        if len(action) != algebra.dim:
            raise DimensionMismatch("need one action matrix per basis element")
        if any(a.nrows != dim or a.ncols != dim for a in action):
            raise DimensionMismatch("action matrices have the wrong size")
        if verify:
            self.verify()

    def __repr__(self):
        return f"Module({self.name}, dim={self.dim})"

    def verify(self) -> None:
        a = self.algebra
        if self.dim == 0:
            return
        if a.is_zero:
            raise InvalidStructure("nonzero module over the zero category")
        if self.act(a.unit) != Matrix.identity(self.field, self.dim):
            raise InvalidStructure("unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                if matmul(self.action[i], self.action[j]) != self.act(a.table[i][j]):
                    raise InvalidStructure(
                        f"action not multiplicative on ({a.labels[i]}, {a.labels[j]})")

    def act(self, x: Sequence) -> Matrix:
        return _combine(self.field, x, self.action, self.dim)

    def same_as(self, other: "Module") -> bool:
        """Exact equality of underlying data."""
        return (self.algebra is other.algebra or self.algebra.same_as(other.algebra)) and \
            self.dim == other.dim and all(x == y for x, y in zip(self.action, other.action))

    def is_zero(self) -> bool:
        return self.dim == 0

    # idempotent-adapted basis -------------------------------------------------
    def adapted(self) -> "_Adapted":
        if "adapted" not in self._cache:
            self._cache["adapted"] = _Adapted(self)
        return self._cache["adapted"]

    def piece(self, i: int) -> list:
        """Basis of M e_i (0-based idempotent position)."""
        return self.adapted().pieces[i]


class _Adapted:
    """Basis of M made of bases of the pieces M e_i, and generator blocks."""

    def __init__(self, m: Module):
        a = m.algebra
        f = m.field
        self.pieces = []
        for e in a.idempotents:
            rows = m.act(e).rows
            self.pieces.append(independent_rows([r for r in rows if any(r)], m.dim, f))
        self.dims = [len(p) for p in self.pieces]
        self.offsets = list(itertools.accumulate([0] + self.dims))
        rows = [r for p in self.pieces for r in p]
        if len(rows) != m.dim:
            raise InternalInconsistency("idempotent pieces do not span the module")
        self.T = Matrix(f, rows, m.dim)
        self.Tinv = inverse(self.T) if m.dim else Matrix(f, [], 0)
        self.blocks = []
        if m.dim == 0:
            self.blocks = [None for _ in a.generators()[a.num_idempotents:]] \
                if not a.is_zero else []
            return
        for g, (s, t) in a.generators()[a.num_idempotents:]:
            G = matmul(matmul(self.T, m.act(g)), self.Tinv)
            o1, o2 = self.offsets[s], self.offsets[t]
            self.blocks.append(G.block(o1, o1 + self.dims[s], o2, o2 + self.dims[t]))

    def split(self, v: Sequence) -> list:
        """Coordinates of the components v e_i in the piece bases."""
        c = vecmat(v, self.Tinv) if self.T.nrows else []
        return [c[self.offsets[i]:self.offsets[i + 1]] for i in range(len(self.dims))]


class Morphism:
    def __init__(self, source: Module, target: Module, mat: Matrix, verify: bool = True):
        self.source = source
        self.target = target
        self.mat = mat
        if mat.nrows != source.dim or mat.ncols != target.dim:
            raise DimensionMismatch(f"matrix {mat.shape} for {source.dim} -> {target.dim}")
        if verify:
            self.verify()

    def __repr__(self):
        return f"Morphism({self.source.name} -> {self.target.name})"

    def verify(self) -> None:
        _same_algebra(self.source, self.target)
        a = self.source.algebra
        if a.is_zero or self.source.dim == 0 or self.target.dim == 0:
            return
        for g, _ in a.generators():
            if matmul(self.source.act(g), self.mat) != matmul(self.mat, self.target.act(g)):
                raise InvalidStructure("matrix does not intertwine the actions")

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def rank(self) -> int:
        return rows_rank(self.mat.rows, self.target.dim, self.source.field)

    def is_mono(self) -> bool:
        return self.rank() == self.source.dim

    def is_epi(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_mono()

    def inverse(self) -> "Morphism":
        inv = inverse(self.mat)
        if inv is None:
            raise InvalidStructure("morphism is not invertible")
        return Morphism(self.target, self.source, inv, verify=False)

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.mat == other.mat

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, self.mat + other.mat, verify=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, self.mat - other.mat, verify=False)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g o f."""
    if f.target.dim != g.source.dim:
        raise DimensionMismatch("morphisms are not composable")
    return Morphism(f.source, g.target, matmul(f.mat, g.mat), verify=False)


def identity(m: Module) -> Morphism:
    return Morphism(m, m, Matrix.identity(m.field, m.dim), verify=False)


def zero_map(m: Module, n: Module) -> Morphism:
    return Morphism(m, n, Matrix.zeros(m.field, m.dim, n.dim), verify=False)


def _same_algebra(m: Module, n: Module) -> None:
    if m.algebra is n.algebra:
        return
    if isinstance(m.algebra, Algebra) and m.algebra.same_as(n.algebra):
        return
    if isinstance(m.algebra, ZeroCategory) and isinstance(n.algebra, ZeroCategory):
        return
    raise AlgebraMismatch(f"{m.name} and {n.name} are modules over different algebras")


# ---------------------------------------------------------------------------
# constructions


def zero_module(a) -> Module:
    return Module(a, 0, [Matrix(a.field, [], 0) for _ in range(a.dim)], name="0", verify=False)


def regular_module(a: Algebra) -> Module:
    return Module(a, a.dim, [a.right_mult(j) for j in range(a.dim)], name="A", verify=False)


def submodule(m: Module, rows: list, name: str = "U") -> tuple[Module, Morphism]:
    """Submodule spanned by ``rows`` (must be closed) and its inclusion."""
    f = m.field
    basis = independent_rows([list(r) for r in rows if any(r)], m.dim, f)
    if not basis:
        z = zero_module(m.algebra)
        return z, Morphism(z, m, Matrix(f, [], m.dim), verify=False)
    sc = SubspaceCoords(basis, m.dim, f)
    acts = []
    for A in m.action:
        mat = sc.matrix([vecmat(u, A) for u in basis])
        if mat is None:
            raise InvalidStructure("subspace is not a submodule")
        acts.append(mat)
    sub = Module(m.algebra, len(basis), acts, name=name, verify=False)
    return sub, Morphism(sub, m, Matrix(f, basis, m.dim), verify=False)


def quotient_module(m: Module, rows: list, name: str = "Q") -> tuple[Module, Morphism]:
    """M / U with the projection; U must be a submodule."""
    f = m.field
    U = independent_rows([list(r) for r in rows if any(r)], m.dim, f)
    comp = complement_rows(U, m.dim, f)
    if not comp:
        z = zero_module(m.algebra)
        return z, Morphism(m, z, Matrix(f, [[] for _ in range(m.dim)], 0), verify=False)
    stack = Matrix(f, [r[:] for r in U] + [r[:] for r in comp], m.dim)
    inv = inverse(stack)
    k = len(U)
    proj = inv.block(0, m.dim, k, m.dim)
    for A in m.action:
        for u in U:
            if any(vecmat(vecmat(u, A), proj)):
                raise InvalidStructure("subspace is not a submodule")
    acts = [matmul(matmul(Matrix(f, [r[:] for r in comp], m.dim), A), proj) for A in m.action]
    q = Module(m.algebra, len(comp), acts, name=name, verify=False)
    return q, Morphism(m, q, proj, verify=False)


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    return submodule(f.source, left_kernel(f.mat), name="ker")


def image(f: Morphism) -> tuple[Module, Morphism, Morphism]:
    """Image with its inclusion into the target and the corestriction."""
    im, inc = submodule(f.target, f.mat.rows, name="im")
    if im.dim == 0:
        return im, inc, zero_map(f.source, im)
    sc = SubspaceCoords(inc.mat.rows, f.target.dim, f.source.field)
    return im, inc, Morphism(f.source, im, sc.matrix(f.mat.rows), verify=False)


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    return quotient_module(f.target, f.mat.rows, name="coker")


def direct_sum(mods: Sequence[Module]) -> tuple[Module, list, list]:
    """Direct sum with injections and projections."""
    mods = list(mods)
    if not mods:
        raise ValueError("empty direct sum")
    a = mods[0].algebra
    for m in mods[1:]:
        _same_algebra(mods[0], m)
    f = mods[0].field
    d = sum(m.dim for m in mods)
    acts = []
    for j in range(a.dim):
        rows = []
        off = 0
        for m in mods:
            for r in m.action[j].rows:
                rows.append([0] * off + r + [0] * (d - off - m.dim))
            off += m.dim
        acts.append(Matrix(f, rows, d))
    s = Module(a, d, acts, name="+".join(m.name for m in mods), verify=False)
    inj, proj = [], []
    off = 0
    for m in mods:
        inj.append(Morphism(m, s, Matrix(f, [unit_vec(d, off + i) for i in range(m.dim)], d),
                            verify=False))
        proj.append(Morphism(s, m, Matrix(f, [[1 if r == off + c else 0 for c in range(m.dim)]
                                              for r in range(d)], m.dim), verify=False))
        off += m.dim
    return s, inj, proj


def direct_sum_maps(maps: Sequence[Morphism], source: Module, target: Module) -> Morphism:
    """Block-diagonal morphism between given direct sums."""
    rows = []
    col = 0
    for g in maps:
        for r in g.mat.rows:
            rows.append([0] * col + r + [0] * (target.dim - col - g.target.dim))
        col += g.target.dim
    return Morphism(source, target, Matrix(source.field, rows, target.dim), verify=False)


def idempotent_projective(a: Algebra, i: int) -> Module:
    """e_i A for the 1-based distinguished idempotent i."""
    e = a.idempotents[i - 1]
    rows = [a.mul(e, a.basis_vec(k)) for k in range(a.dim)]
    m, _ = submodule(regular_module(a), rows, name=f"P{i}")
    return m


def restrict(m: Module, along: Matrix, new_algebra) -> Module:
    """Restriction of scalars along an algebra map (rows = images of basis)."""
    acts = [m.act(row) for row in along.rows]
    return Module(new_algebra, m.dim, acts, name=m.name, verify=False)


# ---------------------------------------------------------------------------
# Hom


class HomSpace:
    """Basis of Hom_A(M, N) with coordinate extraction."""

    def __init__(self, m: Module, n: Module):
        _same_algebra(m, n)
        self.source = m
        self.target = n
        f = m.field
        if m.dim == 0 or n.dim == 0 or m.algebra.is_zero:
            self.mats: list = []
            self.free: list = []
            return
        am, an = m.adapted(), n.adapted()
        r = len(am.dims)
        offs = [0]
        for i in range(r):
            offs.append(offs[-1] + am.dims[i] * an.dims[i])
        nvar = offs[-1]
        eqs = []
        for gm, gn, (g, (s, t)) in zip(am.blocks, an.blocks,
                                       m.algebra.generators()[m.algebra.num_idempotents:]):
            ds_m, dt_m, ds_n, dt_n = am.dims[s], am.dims[t], an.dims[s], an.dims[t]
            if ds_m == 0 and ds_n == 0:
                continue
            for p in range(ds_m):
                for q in range(dt_n):
                    row: dict = {}
                    for rr in range(dt_m):
                        c = gm.rows[p][rr]
                        if c:
                            k = offs[t] + rr * dt_n + q
                            row[k] = row.get(k, 0) + c
                    for rr in range(ds_n):
                        c = gn.rows[rr][q]
                        if c:
                            k = offs[s] + p * ds_n + rr
                            row[k] = row.get(k, 0) - c
                    vec = [0] * nvar
                    for k, c in row.items():
                        vec[k] = f.norm(c)
                    if any(vec):
                        eqs.append(vec)
        basis, free = null_space_rows(eqs, nvar, f)
        self.free = free
        self._offs = offs
        self.mats = [self._to_matrix(v) for v in basis]

    def _to_matrix(self, v: list) -> Matrix:
        am, an = self.source.adapted(), self.target.adapted()
        f = self.source.field
        Fp = [[0] * self.target.dim for _ in range(self.source.dim)]
        for i in range(len(am.dims)):
            base = self._offs[i]
            for p in range(am.dims[i]):
                for q in range(an.dims[i]):
                    Fp[am.offsets[i] + p][an.offsets[i] + q] = v[base + p * an.dims[i] + q]
        Fp = Matrix(f, Fp, self.target.dim)
        return matmul(matmul(am.Tinv, Fp), an.T)

    @property
    def dim(self) -> int:
        return len(self.mats)

    @property
    def basis(self) -> list:
        return [Morphism(self.source, self.target, x, verify=False) for x in self.mats]

    def coords(self, mat: Matrix) -> list:
        """Coordinates of a homomorphism's matrix in this basis."""
        if not self.mats:
            return []
        am, an = self.source.adapted(), self.target.adapted()
        Fp = matmul(matmul(am.T, mat), an.Tinv)
        v = []
        for i in range(len(am.dims)):
            for p in range(am.dims[i]):
                for q in range(an.dims[i]):
                    v.append(Fp.rows[am.offsets[i] + p][an.offsets[i] + q])
        return [v[j] for j in self.free]

    def element(self, coeffs: Sequence) -> Matrix:
        f = self.source.field
        acc = Matrix.zeros(f, self.source.dim, self.target.dim)
        for c, x in zip(coeffs, self.mats):
            if c:
                acc = acc + x.scale(c)
        return acc


def hom_space(m: Module, n: Module) -> HomSpace:
    key = ("hom", id(n))
    hit = m._cache.get(key)
    if hit is not None and hit[0] is n:
        return hit[1]
    h = HomSpace(m, n)
    m._cache[key] = (n, h)
    return h


def hom_dim(m: Module, n: Module) -> int:
    return hom_space(m, n).dim


# ---------------------------------------------------------------------------
# radical, simples, projectives, injectives


def _radical(a) -> list:
    if a.is_zero:
        return []
    if a.radical is None:
        raise RadicalUnavailable(f"no radical basis for {a.name}")
    return a.radical


def radical_submodule(m: Module) -> list:
    """Basis of M J."""
    J = _radical(m.algebra)
    rows = []
    for r in J:
        rows.extend(m.act(r).rows)
    return independent_rows([x for x in rows if any(x)], m.dim, m.field)


def radical_series(m: Module) -> list:
    """Bases of M, MJ, MJ^2, ... down to 0 (the final 0 included)."""
    J = _radical(m.algebra)
    layers = [[unit_vec(m.dim, i) for i in range(m.dim)]]
    while layers[-1]:
        cur = layers[-1]
        rows = []
        for r in J:
            A = m.act(r)
            rows.extend(vecmat(u, A) for u in cur)
        nxt = independent_rows([x for x in rows if any(x)], m.dim, m.field)
        if len(nxt) == len(cur):
            raise InvalidStructure("radical does not act nilpotently")
        layers.append(nxt)
    return layers


def simples(a: Algebra) -> list:
    """The simple modules S_i = e_i A / e_i J, in idempotent order."""
    if a.is_zero:
        return []
    key = "simples"
    if key in a._cache:
        return a._cache[key]
    out = []
    for i in range(1, a.num_idempotents + 1):
        P = idempotent_projective(a, i)
        S, _ = quotient_module(P, radical_submodule(P), name=f"S{i}")
        if radical_submodule(S):
            raise InternalInconsistency("top of a projective is not semisimple")
        S.name = f"S{i}"
        out.append(S)
    a._cache[key] = out
    return out


def _factor_matrix(a: Algebra) -> list:
    """D[j][i] = dim S_j e_i."""
    return [[len(S.piece(i)) for i in range(a.num_idempotents)] for S in simples(a)]


def _layer_factors(a: Algebra, dims_by_piece: list) -> Counter:
    D = _factor_matrix(a)
    r = a.num_idempotents
    out: Counter = Counter()
    rest = list(dims_by_piece)
    # a basic split algebra has D = identity; otherwise peel greedily
    for j in range(r):
        col = [i for i in range(r) if D[j][i]]
        if not col:
            raise InternalInconsistency("simple module with no idempotent piece")
        mult = min(rest[i] // D[j][i] for i in col)
        if mult:
            out[j + 1] += mult
            for i in col:
                rest[i] -= mult * D[j][i]
    if any(rest):
        raise InternalInconsistency("radical layer does not split into simples")
    return out


def composition_factors(m: Module) -> Counter:
    """Multiplicities of the simples S_i (1-based) in M."""
    a = m.algebra
    if m.dim == 0 or a.is_zero:
        return Counter()
    key = "factors"
    if key in m._cache:
        return m._cache[key]
    layers = radical_series(m)
    total: Counter = Counter()
    for top, below in zip(layers, layers[1:]):
        dims = []
        for e in a.idempotents:
            E = m.act(e)
            d_top = rows_rank([vecmat(u, E) for u in top], m.dim, m.field) if top else 0
            d_bel = rows_rank([vecmat(u, E) for u in below], m.dim, m.field) if below else 0
            dims.append(d_top - d_bel)
        total += _layer_factors(a, dims)
    D = _factor_matrix(a)
    if sum(c * sum(D[j - 1]) for j, c in total.items()) != m.dim:
        raise InternalInconsistency("composition factor dimensions do not add up")
    m._cache[key] = total
    return total


def factor_list(m: Module) -> list:
    return sorted(composition_factors(m).elements())


def projective_cover(m: Module) -> tuple[Module, Morphism]:
    """Minimal projective P with an epimorphism P -> M."""
    a = m.algebra
    if m.dim == 0:
        z = zero_module(a)
        return z, zero_map(z, m)
    MJ = radical_submodule(m)
    f = m.field
    pieces, gens = [], []
    span = list(MJ)
    for i in range(a.num_idempotents):
        for u in m.piece(i):
            if span and rows_rank(span + [u], m.dim, f) == rows_rank(span, m.dim, f):
                continue
            if not span and not any(u):
                continue
            gens.append((i, u))
            gen_rows = [vecmat(u, m.act(a.basis_vec(k))) for k in range(a.dim)]
            span = independent_rows(span + gen_rows, m.dim, f)
    for i, _ in gens:
        pieces.append(idempotent_projective(a, i + 1))
    P, inj, _ = direct_sum(pieces)
    rows = []
    for (i, u), Pi in zip(gens, pieces):
        e = a.idempotents[i]
        basis = [a.mul(e, a.basis_vec(k)) for k in range(a.dim)]
        emb = independent_rows([x for x in basis if any(x)], a.dim, f)
        for p in emb:
            rows.append(vecmat(u, m.act(p)))
    epi = Morphism(P, m, Matrix(f, rows, m.dim))
    if not epi.is_epi():
        raise InternalInconsistency("projective cover map is not onto")
    P.name = f"P({m.name})"
    return P, epi


def is_projective(m: Module) -> bool:
    if m.dim == 0:
        return True
    P, _ = projective_cover(m)
    return P.dim == m.dim


def syzygy(m: Module) -> tuple[Module, Morphism, Morphism]:
    """(Omega M, inclusion into the cover, cover epimorphism)."""
    P, epi = projective_cover(m)
    K, inc = kernel(epi)
    return K, inc, epi


def injectives(a: Algebra) -> list:
    """Injective hulls of the simples: linear duals of the left projectives A e_i."""
    if a.is_zero:
        return []
    key = "injectives"
    if key in a._cache:
        return a._cache[key]
    f = a.field
    out = []
    for i, e in enumerate(a.idempotents):
        U = independent_rows([x for x in (a.mul(a.basis_vec(k), e) for k in range(a.dim))
                              if any(x)], a.dim, f)
        sc = SubspaceCoords(U, a.dim, f)
        acts = []
        for k in range(a.dim):
            L = sc.matrix([a.mul(a.basis_vec(k), u) for u in U])
            acts.append(L.T)
        out.append(Module(a, len(U), acts, name=f"I{i + 1}"))
    a._cache[key] = out
    return out


def is_injective(m: Module) -> bool:
    """Injective iff the dual left module is projective (checked over the opposite)."""
    if m.dim == 0:
        return True
    a = m.algebra
    dual = Module(a.opposite(), m.dim, [x.T for x in m.action], verify=False)
    return is_projective(dual)


def projectives(a: Algebra) -> list:
    return [idempotent_projective(a, i) for i in range(1, a.num_idempotents + 1)]


# ---------------------------------------------------------------------------
# Ext^1 and extensions


@dataclass
class Ext1:
    dim: int
    cocycles: list
    omega: Module
    inclusion: Morphism


def ext1(m: Module, n: Module, epi: Morphism | None = None) -> Ext1:
    """Ext^1(M, N) from a projective presentation (minimal unless ``epi`` given)."""
    _same_algebra(m, n)
    if epi is None:
        _, epi = projective_cover(m)
    omega, inc = kernel(epi)
    if omega.dim == 0 or n.dim == 0:
        return Ext1(0, [], omega, inc)
    h_om = hom_space(omega, n)
    h_p = hom_space(epi.source, n)
    images = [h_om.coords(matmul(inc.mat, g)) for g in h_p.mats]
    f = m.field
    img = independent_rows([v for v in images if any(v)], h_om.dim, f)
    comp = complement_rows(img, h_om.dim, f)
    cocycles = [h_om.element(c) for c in comp]
    return Ext1(len(comp), cocycles, omega, inc)


def ext1_dim(m: Module, n: Module, epi: Morphism | None = None) -> int:
    return ext1(m, n, epi).dim


@dataclass
class ShortExactSeq:
    mono: Morphism
    epi: Morphism

    def verify(self) -> bool:
        if self.mono.target.dim != self.epi.source.dim:
            return False
        if not (self.mono.is_mono() and self.epi.is_epi()):
            return False
        if not matmul(self.mono.mat, self.epi.mat).is_zero():
            return False
        return self.mono.source.dim + self.epi.target.dim == self.mono.target.dim


def extension_from_cocycle(m: Module, n: Module, data: Ext1, cocycle: Matrix,
                           epi: Morphism | None = None) -> ShortExactSeq:
    """Pushout of 0 -> Omega -> P -> M -> 0 along a cocycle Omega -> N."""
    if epi is None:
        _, epi = projective_cover(m)
    P = epi.source
    S, inj, proj = direct_sum([P, n])
    rows = [r + [m.field.norm(-x) for x in c]
            for r, c in zip(data.inclusion.mat.rows, cocycle.rows)]
    E, q = quotient_module(S, rows, name="E")
    mono = compose(q, inj[1])
    to_m = matmul(matmul(_section_rows(q), proj[0].mat), epi.mat)
    e_epi = Morphism(E, m, to_m)
    return ShortExactSeq(mono, e_epi)


def _section_rows(q: Morphism) -> Matrix:
    """A linear section of a surjective projection (rows = lifts of basis vectors)."""
    f = q.source.field
    piv_rows = []
    for j in range(q.target.dim):
        lift = solve_left(q.mat, Matrix(f, [unit_vec(q.target.dim, j)], q.target.dim))
        piv_rows.append(lift.rows[0])
    return Matrix(f, piv_rows, q.source.dim)


# ---------------------------------------------------------------------------
# isomorphism


def is_isomorphic(m: Module, n: Module, seed: int = 0, tries: int = 20,
                  grid_bound: int = 4096) -> Morphism | None:
    """An isomorphism M -> N, or None.

    Over the rationals, random combinations of a Hom basis are invertible
    with probability one when an isomorphism exists; over a prime field the
    hom space is enumerated when small, otherwise ``SearchExhausted``.
    """
    _same_algebra(m, n)
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return Morphism(m, n, Matrix(m.field, [], 0), verify=False)
    if m.algebra.radical is not None and composition_factors(m) != composition_factors(n):
        return None
    H = hom_space(m, n)
    if H.dim == 0 or H.dim != hom_dim(n, m) or H.dim != hom_dim(m, m):
        return None
    f = m.field
    rng = random.Random(seed)
    if f.char == 0:
        for _ in range(tries):
            c = [rng.randint(-1000, 1000) for _ in range(H.dim)]
            x = H.element(c)
            if det(x) != 0:
                return Morphism(m, n, x, verify=False)
        return None
    p = f.char
    if p ** H.dim <= grid_bound:
        for c in itertools.product(range(p), repeat=H.dim):
            x = H.element(c)
            if det(x) != 0:
                return Morphism(m, n, x, verify=False)
        return None
    for _ in range(max(tries, 200)):
        x = H.element([rng.randrange(p) for _ in range(H.dim)])
        if det(x) != 0:
            return Morphism(m, n, x, verify=False)
    raise SearchExhausted("hom space too large to enumerate over this prime field")


# ---------------------------------------------------------------------------
# tensor products and Hom modules over bimodules


class TensorData:
    """M (x)_C B presented as a quotient of (+)_i M e_i (x) e_i B."""

    def __init__(self, m: Module, b: Bimodule, result: Module, proj: Matrix,
                 lift: Matrix, bl_T: Matrix, bl_Tinv: Matrix, bl_dims: list, bl_offsets: list,
                 v_offsets: list):
        self.m = m
        self.b = b
        self.result = result
        self.proj = proj
        self.lift = lift
        self.bl_T = bl_T
        self.bl_Tinv = bl_Tinv
        self.bl_dims = bl_dims
        self.bl_offsets = bl_offsets
        self.v_offsets = v_offsets

    def pure(self, mv: Sequence, x: Sequence) -> list:
        """Coordinates of m (x) x in the result."""
        f = self.m.field
        nv = self.proj.nrows
        if nv == 0:
            return [0] * self.result.dim
        mparts = self.m.adapted().split(mv)
        xc = vecmat(x, self.bl_Tinv)
        v = [0] * nv
        for i, mp in enumerate(mparts):
            db = self.bl_dims[i]
            if not mp or db == 0:
                continue
            xp = xc[self.bl_offsets[i]:self.bl_offsets[i] + db]
            base = self.v_offsets[i]
            for p, mc in enumerate(mp):
                if mc:
                    for q, xq in enumerate(xp):
                        if xq:
                            v[base + p * db + q] += mc * xq
        v = [f.norm(t) for t in v]
        return vecmat(v, self.proj)

    def generators(self):
        """Pure tensors u (x) y lifting the result's basis, as (m vector, b vector)."""
        ad = self.m.adapted()
        out = []
        for row in self.lift.rows:
            k = row.index(1)
            i = max(j for j in range(len(self.v_offsets) - 1) if self.v_offsets[j] <= k)
            db = self.bl_dims[i]
            p, q = divmod(k - self.v_offsets[i], db)
            out.append((ad.pieces[i][p], self.bl_T.rows[self.bl_offsets[i] + q]))
        return out


def _left_adapted(b: Bimodule):
    C = b.left
    f = b.field
    pieces = []
    for e in C.idempotents:
        E = b.left_act(e)
        pieces.append(independent_rows([r for r in E.rows if any(r)], b.dim, f))
    dims = [len(p) for p in pieces]
    offs = list(itertools.accumulate([0] + dims))
    rows = [r for p in pieces for r in p]
    T = Matrix(f, rows, b.dim)
    Tinv = inverse(T) if b.dim else Matrix(f, [], 0)
    return pieces, dims, offs, T, Tinv


def tensor_data(m: Module, b: Bimodule) -> TensorData:
    """M (x)_C B with the data needed to evaluate pure tensors."""
    C, A = b.left, b.right
    if not (m.algebra is C or (isinstance(C, Algebra) and C.same_as(m.algebra))
            or (C.is_zero and m.algebra.is_zero)):
        raise AlgebraMismatch("module is not over the bimodule's left algebra")
    key = ("tensor", id(b))
    hit = m._cache.get(key)
    if hit is not None and hit[0] is b:
        return hit[1]
    f = m.field
    if m.dim == 0 or b.dim == 0 or C.is_zero:
        z = zero_module(A)
        td = TensorData(m, b, z, Matrix(f, [], 0), Matrix(f, [], 0), Matrix(f, [], b.dim),
                        Matrix(f, [], 0), [], [0], [0])
        m._cache[key] = (b, td)
        return td
    ad = m.adapted()
    pieces, bdims, boffs, T, Tinv = _left_adapted(b)
    r = C.num_idempotents
    voffs = [0]
    for i in range(r):
        voffs.append(voffs[-1] + ad.dims[i] * bdims[i])
    nv = voffs[-1]
    # generator action on e_i B in the adapted basis: x -> g.x = x L_g
    rels = []
    for gblock, (g, (s, t)) in zip(ad.blocks, C.generators()[r:]):
        if ad.dims[s] == 0 or bdims[t] == 0:
            continue
        Lg = b.left_act(g)
        for p in range(ad.dims[s]):
            mg = gblock.rows[p]          # (m_p . g) in M e_t coordinates
            for q in range(bdims[t]):
                y = T.rows[boffs[t] + q]
                gy = vecmat(vecmat(y, Lg), Tinv)[boffs[s]:boffs[s] + bdims[s]]
                row = [0] * nv
                for pp, c in enumerate(mg):
                    if c:
                        row[voffs[t] + pp * bdims[t] + q] += c
                for qq, c in enumerate(gy):
                    if c:
                        row[voffs[s] + p * bdims[s] + qq] -= c
                row = [f.norm(x) for x in row]
                if any(row):
                    rels.append(row)
    relb = independent_rows(rels, nv, f)
    comp = complement_rows(relb, nv, f)
    if not comp:
        z = zero_module(A)
        td = TensorData(m, b, z, Matrix(f, [[] for _ in range(nv)], 0), Matrix(f, [], nv),
                        T, Tinv, bdims, boffs, voffs)
        m._cache[key] = (b, td)
        return td
    stack = inverse(Matrix(f, [x[:] for x in relb] + [x[:] for x in comp], nv))
    proj = stack.block(0, nv, len(relb), nv)
    lift = Matrix(f, comp, nv)
    acts = []
    for j in range(A.dim):
        Ra = matmul(matmul(T, b.R[j]), Tinv)
        rows = []
        for row in comp:
            k = row.index(1)
            i = max(ii for ii in range(r) if voffs[ii] <= k and ad.dims[ii] * bdims[ii] > 0)
            db = bdims[i]
            p, q = divmod(k - voffs[i], db)
            out = [0] * nv
            for qq in range(db):
                c = Ra.rows[boffs[i] + q][boffs[i] + qq]
                if c:
                    out[voffs[i] + p * db + qq] = c
            rows.append(vecmat(out, proj))
        acts.append(Matrix(f, rows, len(comp)))
    res = Module(A, len(comp), acts, name=f"{m.name}(x){b.name}", verify=False)
    td = TensorData(m, b, res, proj, lift, T, Tinv, bdims, boffs, voffs)
    m._cache[key] = (b, td)
    return td


def tensor_over(m: Module, b: Bimodule) -> Module:
    return tensor_data(m, b).result


class HomModuleData:
    """Hom_A(B, N) as a right C-module, with evaluation of its elements."""

    def __init__(self, b: Bimodule, n: Module):
        A = b.right
        if not (n.algebra is A or (isinstance(A, Algebra) and A.same_as(n.algebra))
                or (A.is_zero and n.algebra.is_zero)):
            raise AlgebraMismatch("module is not over the bimodule's right algebra")
        self.b = b
        self.n = n
        C = b.left
        f = n.field
        if b.dim == 0 or n.dim == 0:
            self.space = None
            self.mats = []
            self.result = zero_module(C)
            return
        bm = Module(A if isinstance(A, Algebra) else n.algebra, b.dim, b.R, name=b.name,
                    verify=False)
        self.space = HomSpace(bm, n)
        self.mats = self.space.mats
        acts = []
        for c in range(C.dim):
            Lc = b.L[c]
            acts.append(Matrix(f, [self.space.coords(matmul(Lc, F)) for F in self.mats],
                               len(self.mats)))
        self.result = Module(C, len(self.mats), acts, name=f"Hom({b.name},{n.name})",
                             verify=False)

    def matrix_of(self, coeffs: Sequence) -> Matrix:
        if self.space is None:
            return Matrix.zeros(self.n.field, self.b.dim, self.n.dim)
        return self.space.element(coeffs)

    def coords_of(self, mat: Matrix) -> list:
        return [] if self.space is None else self.space.coords(mat)


def hom_module_data(b: Bimodule, n: Module) -> HomModuleData:
    key = ("hommod", id(b))
    hit = n._cache.get(key)
    if hit is not None and hit[0] is b:
        return hit[1]
    h = HomModuleData(b, n)
    n._cache[key] = (b, h)
    return h


def hom_module(b: Bimodule, n: Module) -> Module:
    return hom_module_data(b, n).result


# ---------------------------------------------------------------------------
# probes


def probe_family(a) -> list:
    """Projectives, simples, radical layers and truncations, A_A and injectives."""
    if a.is_zero:
        return []
    if "probes" in a._cache:
        return a._cache["probes"]
    mods = []
    P = projectives(a)
    mods.extend(P)
    mods.extend(simples(a))
    for i, Pi in enumerate(P):
        layers = radical_series(Pi)
        for k in range(1, len(layers) - 1):
            sub, _ = submodule(Pi, layers[k], name=f"P{i + 1}J{k}")
            mods.append(sub)
            if k >= 2:
                q, _ = quotient_module(Pi, layers[k], name=f"P{i + 1}/J{k}")
                mods.append(q)
    mods.append(regular_module(a))
    mods.extend(injectives(a))
    out = []
    for m in mods:
        if m.dim and not any(m.same_as(x) for x in out):
            out.append(m)
    a._cache["probes"] = out
    return out
