"""Algebra builders and independent oracles shared by the test modules."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy

from serretype import (
    GF, QQ, ground_field, path_algebra, product_algebra, regular_bimodule, triangular_algebra,
)
from serretype.linalg import rank


def linear(n: int, field=QQ, relations=()):
    verts = list(range(1, n + 1))
    arrows = [(chr(ord("a") + i), i + 1, i + 2) for i in range(n - 1)]
    return path_algebra(verts, arrows, list(relations), field, name=f"kA{n}")


def kxk(field=QQ):
    k = ground_field(field)
    return product_algebra(k, k)


def kxkxk(field=QQ):
    k = ground_field(field)
    return product_algebra(product_algebra(k, k), k)


def t2(field=QQ):
    k = ground_field(field)
    return triangular_algebra(k, k, regular_bimodule(k))


def dual_numbers(field=QQ):
    return path_algebra([1], [("x", 1, 1)], ["x*x"], field, name="k[x]/x^2")


def battery() -> dict:
    """The eight algebras used by the classification and battery criteria."""
    return {
        "kA2": linear(2), "kA3": linear(3), "kA4": linear(4), "kxk": kxk(), "kxkxk": kxkxk(),
        "T2": t2(), "kA2/F2": linear(2, GF(2)), "k[x]/x^2": dual_numbers(),
    }


# ---------------------------------------------------------------------------
# oracles that do not use the package's own linear algebra


def _sym(x):
    return sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sympy.Integer(x)


def sym_matrix(m):
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: _sym(m.rows[i][j]))


def hom_dim_oracle(m, n) -> int:
    """dim Hom_A(M, N) over Q from the commutation equations A_b X = X B_b."""
    if m.dim == 0 or n.dim == 0:
        return 0
    eqs = []
    for b in range(m.algebra.dim):
        A, B = sym_matrix(m.action[b]), sym_matrix(n.action[b])
        # vec(A X - X B) = (A (x) I - I (x) B^T) vec(X) in row-major order
        eqs.append(sympy.kronecker_product(A, sympy.eye(n.dim))
                   - sympy.kronecker_product(sympy.eye(m.dim), B.T))
    big = sympy.Matrix.vstack(*eqs)
    return m.dim * n.dim - big.rank()


def rank_mod_p_brute(rows: list, p: int) -> int:
    """Rank over F_p by counting the vectors in the row span."""
    if not rows:
        return 0
    span = set()
    for coeffs in product(range(p), repeat=len(rows)):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p
                       for j in range(len(rows[0]))))
    size, k = len(span), 0
    while p ** k < size:
        k += 1
    return k


def dim_vector(m) -> list:
    return [rank(m.act(e)) for e in m.algebra.idempotents]


def euler_form(x: list, y: list, arrows: list) -> int:
    """<x, y> = sum x_i y_i - sum over arrows i -> j of x_i y_j."""
    return sum(a * b for a, b in zip(x, y)) - sum(x[s - 1] * y[t - 1] for _, s, t in arrows)


def linear_type_oracle(n: int, I: tuple):
    """Type of the Serre subcategory generated by the simples I in mod kA_n.

    Down-sets {1..k} give (2, -1), up-sets {k..n} give (1, -2), every other
    proper subset gives (1, -1); the trivial choices split.
    """
    I = set(I)
    if not I or len(I) == n:
        return "infinite"
    if I == set(range(1, len(I) + 1)):
        return (2, -1)
    if I == set(range(n - len(I) + 1, n + 1)):
        return (1, -2)
    return (1, -1)
