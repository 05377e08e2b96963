"""Exact dense linear algebra over the rationals and prime fields.

Conventions used everywhere downstream:

* matrices are stored row-major as lists of rows;
* rational entries are Python ints when integral and ``Fraction`` otherwise,
  always in lowest terms; prime field entries are ints in ``[0, p)``;
* ``tensor_mat`` is the Kronecker product with the left index major, so the
  basis vector ``e_i (x) f_j`` sits at position ``i * dim(f) + j``.

The column-oriented operations (``kernel_basis``, ``solve``, ``image_basis``)
follow the usual matrix-times-column-vector reading.  Module theory in this
package acts on row vectors, so the ``row_*`` and ``left_*`` helpers provide
the transposed versions without materialising transposes at every call site.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch


class Field:
    """Exact scalar field. Subclasses define normalisation and inversion."""

    char = 0

    def norm(self, x):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def fmt(self, x) -> str:
        return str(x)


class Rationals(Field):
    char = 0

    def norm(self, x):
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def coerce(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif isinstance(x, bool):
            x = int(x)
        elif not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} to a rational")
        return self.norm(Fraction(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.norm(Fraction(1) / x)

    def fmt(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def norm(self, x):
        return x % self.p

    def coerce(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def fmt(self, x) -> str:
        return f"{x % self.p}/1"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """``'q'`` gives the rationals, ``'fp:5'`` or ``'fp 5'`` gives GF(5)."""
    t = text.strip().lower().replace(":", " ").split()
    if t == ["q"]:
        return QQ
    if len(t) == 2 and t[0] == "fp":
        return GF(int(t[1]))
    raise ValueError(f"unknown field {text!r}")


class Matrix:
    """Immutable-by-convention dense matrix over a fixed field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: list, ncols: int | None = None):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("column count needed for an empty matrix")
            ncols = len(rows[0])
        self.ncols = ncols

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        data = [[field.coerce(x) for x in r] for r in rows]
        if ncols is None and data:
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(field, data, ncols if ncols is not None else 0)

    @classmethod
    def zeros(cls, field: Field, r: int, c: int) -> "Matrix":
        return cls(field, [[0] * c for _ in range(r)], c)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    # basic protocol -----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.rows == other.rows)

    __hash__ = None

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols} over {self.field}>[{body}]"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def copy_rows(self) -> list:
        return [r[:] for r in self.rows]

    # arithmetic ---------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same(self, other)
        n = self.field.norm
        return Matrix(self.field, [[n(a + b) for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same(self, other)
        n = self.field.norm
        return Matrix(self.field, [[n(a - b) for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        n = self.field.norm
        return Matrix(self.field, [[n(-a) for a in r] for r in self.rows], self.ncols)

    def scale(self, s) -> "Matrix":
        n = self.field.norm
        s = self.field.coerce(s) if not isinstance(s, int) else n(s)
        return Matrix(self.field, [[n(s * a) for a in r] for r in self.rows], self.ncols)

    @property
    def T(self) -> "Matrix":
        return transpose(self)

    def row(self, i: int) -> list:
        return self.rows[i]

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [self.rows[i][:] for i in idx], self.ncols)

    def take_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[r[j] for j in idx] for r in self.rows], len(idx))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.field, [r[c0:c1] for r in self.rows[r0:r1]], c1 - c0)

    def flat(self) -> list:
        return [x for r in self.rows for x in r]


def _check_same(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")


def transpose(m: Matrix) -> Matrix:
    return Matrix(m.field, [list(c) for c in zip(*m.rows)] if m.nrows else
                  [[] for _ in range(m.ncols)], m.nrows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    n = a.field.norm
    brows = b.rows
    nc = b.ncols
    out = []
    for r in a.rows:
        acc = [0] * nc
        for k, x in enumerate(r):
            if x:
                bk = brows[k]
                for j in range(nc):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
        out.append([n(v) for v in acc])
    return Matrix(a.field, out, nc)


def vecmat(v: Sequence, m: Matrix) -> list:
    """Row vector times matrix."""
    n = m.field.norm
    acc = [0] * m.ncols
    for k, x in enumerate(v):
        if x:
            for j, y in enumerate(m.rows[k]):
                if y:
                    acc[j] += x * y
    return [n(t) for t in acc]


def direct_sum_mat(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    rows = [r + [0] * b.ncols for r in a.rows]
    rows += [[0] * a.ncols + r for r in b.rows]
    return Matrix(a.field, rows, a.ncols + b.ncols)


def tensor_mat(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, left index major."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    n = a.field.norm
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([n(x * y) if x and y else 0 for x in ra for y in rb])
    return Matrix(a.field, rows, a.ncols * b.ncols)


def hstack(mats: Sequence[Matrix], field: Field | None = None, nrows: int | None = None) -> Matrix:
    if not mats:
        return Matrix(field, [[] for _ in range(nrows or 0)], 0)
    f = mats[0].field
    r = mats[0].nrows
    for m in mats:
        if m.field != f:
            raise FieldMismatch("hstack over different fields")
        if m.nrows != r:
            raise DimensionMismatch("hstack row counts differ")
    return Matrix(f, [sum((m.rows[i] for m in mats), []) for i in range(r)],
                  sum(m.ncols for m in mats))


def vstack(mats: Sequence[Matrix], field: Field | None = None, ncols: int | None = None) -> Matrix:
    if not mats:
        return Matrix(field, [], ncols or 0)
    f = mats[0].field
    c = mats[0].ncols
    for m in mats:
        if m.field != f:
            raise FieldMismatch("vstack over different fields")
        if m.ncols != c:
            raise DimensionMismatch("vstack column counts differ")
    return Matrix(f, [r[:] for m in mats for r in m.rows], c)


# elimination -----------------------------------------------------------

def _eliminate(rows: list, ncols: int, field: Field) -> tuple[list, list]:
    """In-place Gauss-Jordan elimination; returns (nonzero rows, pivots)."""
    norm = field.norm
    inv = field.inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        x = pr[c]
        if x != 1:
            s = inv(x)
            pr = [norm(v * s) if v else 0 for v in pr]
            rows[r] = pr
        nz = [j for j in range(c, ncols) if pr[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if f != 0:
                for j in nz:
                    ri[j] = norm(ri[j] - f * pr[j])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list, int]:
    """Reduced row echelon form, pivot columns and rank."""
    rows, piv = _eliminate(m.copy_rows(), m.ncols, m.field)
    reduced = rows + [[0] * m.ncols for _ in range(m.nrows - len(rows))]
    return Matrix(m.field, reduced, m.ncols), piv, len(piv)


def rank(m: Matrix) -> int:
    return len(_eliminate(m.copy_rows(), m.ncols, m.field)[1])


def _null_rows(rows: list, pivots: list, ncols: int, field: Field) -> list:
    """Null space vectors of a reduced system, one per free column."""
    norm = field.norm
    pset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, p in zip(rows, pivots):
            if r[f]:
                v[p] = norm(-r[f])
        out.append(v)
    return out


def kernel_basis(m: Matrix) -> Matrix:
    """Columns spanning {x : m x = 0}."""
    rows, piv = _eliminate(m.copy_rows(), m.ncols, m.field)
    vecs = _null_rows(rows, piv, m.ncols, m.field)
    return Matrix(m.field, [list(c) for c in zip(*vecs)] if vecs else
                  [[] for _ in range(m.ncols)], len(vecs))


def null_space_rows(rows: list, ncols: int, field: Field) -> tuple[list, list]:
    """Kernel of the linear system given by ``rows`` (each row one equation).

    Returns ``(basis, free)``: every basis vector has a 1 in exactly one free
    column and 0 in the others, so the coordinates of a kernel element are
    its entries at ``free``.
    """
    red, piv = _eliminate([r[:] for r in rows], ncols, field)
    pset = set(piv)
    free = [c for c in range(ncols) if c not in pset]
    return _null_rows(red, piv, ncols, field), free


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Canonical x with a x = b (zero at free coordinates), or None."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.nrows != b.nrows:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    aug = [ra + rb for ra, rb in zip(a.rows, b.rows)]
    rows, piv = _eliminate(aug, a.ncols + b.ncols, a.field)
    x = [[0] * b.ncols for _ in range(a.ncols)]
    for r, p in zip(rows, piv):
        if p >= a.ncols:
            return None
        x[p] = r[a.ncols:]
    return Matrix(a.field, x, b.ncols)


def image_basis(m: Matrix) -> Matrix:
    """Independent columns of m spanning its column space (pivot columns)."""
    _, piv, _ = rref(m)
    return m.take_cols(piv)


def inverse(m: Matrix) -> Matrix | None:
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Matrix(m.field, [], 0)
    return solve(m, Matrix.identity(m.field, n)) if rank(m) == n else None


def det(m: Matrix):
    if not m.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    f = m.field
    rows = m.copy_rows()
    n = m.nrows
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d = f.norm(d * rows[c][c])
        s = f.inv(rows[c][c])
        for i in range(c + 1, n):
            t = rows[i][c]
            if t:
                t = f.norm(t * s)
                rows[i] = [f.norm(x - t * y) for x, y in zip(rows[i], rows[c])]
    return f.norm(d)


# row-vector helpers ------------------------------------------------------

def row_reduce(rows: list, ncols: int, field: Field) -> tuple[list, list]:
    """Echelon basis (rref rows) of the span of ``rows`` and its pivots."""
    return _eliminate([r[:] for r in rows], ncols, field)


def independent_rows(rows: list, ncols: int, field: Field) -> list:
    """Greedy sub-list of ``rows`` that is a basis of their span.

    Unlike ``row_reduce`` this keeps the original vectors, which matters when
    they carry meaning (paths, products of basis elements).
    """
    kept = []
    ech: list = []
    epiv: list = []
    norm = field.norm
    for v in rows:
        w = v[:]
        for r, p in zip(ech, epiv):
            if w[p]:
                f = w[p]
                w = [norm(x - f * y) if y else x for x, y in zip(w, r)]
        p = next((j for j, x in enumerate(w) if x != 0), None)
        if p is None:
            continue
        s = field.inv(w[p])
        w = [norm(x * s) if x else 0 for x in w]
        for k, r in enumerate(ech):
            if r[p]:
                f = r[p]
                ech[k] = [norm(x - f * y) if y else x for x, y in zip(r, w)]
        ech.append(w)
        epiv.append(p)
        kept.append(v)
    return kept


def rows_rank(rows: list, ncols: int, field: Field) -> int:
    return len(_eliminate([r[:] for r in rows], ncols, field)[1])


def left_kernel(m: Matrix) -> list:
    """Rows v with v m = 0, as a list of vectors (a basis)."""
    t = transpose(m)
    rows, piv = _eliminate(t.copy_rows(), t.ncols, m.field)
    return _null_rows(rows, piv, t.ncols, m.field)


def solve_left(a: Matrix, b: Matrix) -> Matrix | None:
    """Some x with x a = b, or None."""
    xt = solve(transpose(a), transpose(b))
    return None if xt is None else transpose(xt)


def complement_rows(basis: list, n: int, field: Field) -> list:
    """Standard basis vectors completing ``basis`` (independent rows) to a basis."""
    red, piv = _eliminate([r[:] for r in basis], n, field)
    pset = set(piv)
    return [[1 if j == i else 0 for j in range(n)] for i in range(n) if i not in pset]


def in_row_space(v: Sequence, rows: list, field: Field) -> bool:
    if not rows:
        return all(x == 0 for x in v)
    n = len(v)
    return rows_rank(rows + [list(v)], n, field) == rows_rank(rows, n, field)


def zero_vec(n: int) -> list:
    return [0] * n


def unit_vec(n: int, i: int) -> list:
    v = [0] * n
    v[i] = 1
    return v


class SubspaceCoords:
    """Coordinates with respect to a fixed basis of a subspace (rows of ``basis``).

    The basis is inverted once on a set of pivot columns, so each lookup is a
    single vector-matrix product followed by an optional membership check.
    """

    def __init__(self, basis: list, ncols: int, field: Field):
        self.basis = basis
        self.ncols = ncols
        self.field = field
        self.k = len(basis)
        if self.k == 0:
            self.piv = []
            self.inv = Matrix(field, [], 0)
            return
        red, piv = _eliminate([r[:] for r in basis], ncols, field)
        if len(piv) != self.k:
            raise DimensionMismatch("basis rows are not independent")
        self.piv = piv
        sub = Matrix(field, [[r[p] for p in piv] for r in basis], self.k)
        self.inv = inverse(sub)

    def coords(self, v: Sequence, check: bool = True) -> list | None:
        """Coordinates of v, or None when v is outside the subspace."""
        if self.k == 0:
            return [] if not check or not any(v) else None
        c = vecmat([v[p] for p in self.piv], self.inv)
        if check:
            back = vecmat(c, Matrix(self.field, self.basis, self.ncols))
            if back != [self.field.norm(x) for x in v]:
                return None
        return c

    def matrix(self, rows: list) -> Matrix | None:
        out = []
        for r in rows:
            c = self.coords(r)
            if c is None:
                return None
            out.append(c)
        return Matrix(self.field, out, self.k)
