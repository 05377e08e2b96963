import pytest

from serretype import QQ, GF, algebra_iso, path_algebra, structure_algebra
from serretype.algebra import regular_bimodules
from serretype.errors import (
    InfiniteDimensional, InvalidStructure, MalformedRelation, NotDistinguishedSum, NotIdempotent,
)

from algebras import dual_numbers, kxk, kxkxk, linear, t2


def count_paths(n_vertices: int, arrows: list, zero_words: list, max_len: int = 8) -> int:
    """Paths avoiding every monomial relation as a consecutive subword."""
    total = n_vertices
    frontier = [(name,) for name, _, _ in arrows]
    ends = {name: (s, t) for name, s, t in arrows}
    for _ in range(max_len):
        good = [w for w in frontier
                if not any(tuple(z) == w[i:i + len(z)] for z in zero_words
                           for i in range(len(w) - len(z) + 1))]
        total += len(good)
        frontier = [w + (b,) for w in good for b, (s, _) in ends.items() if s == ends[w[-1]][1]]
    return total


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_linear_quiver_dimension(n):
    arrows = [(chr(ord("a") + i), i + 1, i + 2) for i in range(n - 1)]
    assert linear(n).dim == count_paths(n, arrows, []) == n * (n + 1) // 2


def test_monomial_relations_dimension():
    arrows = [("a", 1, 2), ("b", 2, 3), ("c", 3, 4)]
    a = linear(4, relations=["a*b", "b*c"])
    assert a.dim == count_paths(4, arrows, [("a", "b"), ("b", "c")]) == 7
    two_cycle = path_algebra([1, 2], [("a", 1, 2), ("b", 2, 1)], ["a*b", "b*a"], QQ)
    assert two_cycle.dim == count_paths(2, [("a", 1, 2), ("b", 2, 1)], [("a", "b"), ("b", "a")])


def test_free_cycle_is_rejected():
    with pytest.raises(InfiniteDimensional):
        path_algebra([1], [("x", 1, 1)], [], QQ)


def test_malformed_input():
    with pytest.raises(MalformedRelation):
        path_algebra([1, 2], [("a", 1, 2)], ["a*z"], QQ)
    with pytest.raises(MalformedRelation):
        path_algebra([1, 2], [("a", 1, 3)], [], QQ)


def test_small_algebras():
    assert dual_numbers().dim == 2
    assert kxk().num_idempotents == 2 and kxkxk().num_idempotents == 3
    assert t2().dim == 3


def test_isomorphism_search():
    assert algebra_iso(t2(), linear(2)) is not None
    assert algebra_iso(linear(2).opposite(), linear(2)) is not None
    assert algebra_iso(kxk(), linear(2)) is None
    assert algebra_iso(t2(GF(5)), linear(2, GF(5))) is not None


def test_non_associative_table_rejected():
    # (x x) x = y x = x but x (x x) = x y = 0
    prods = {(0, 0): [1, 0, 0], (0, 1): [0, 1, 0], (0, 2): [0, 0, 1], (1, 0): [0, 1, 0],
             (2, 0): [0, 0, 1], (1, 1): [0, 0, 1], (2, 1): [0, 1, 0]}
    with pytest.raises(InvalidStructure):
        structure_algebra(QQ, ["u", "x", "y"], prods, [1, 0, 0], [[1, 0, 0]])


def test_regular_bimodules_dimensions():
    a = linear(2)
    d = regular_bimodules(a, [1, 0, 0])
    # e1 A = span{e1, a}, A e1 = span{e1}, A / A e1 A = k
    assert (d.eA.dim, d.Ae.dim, d.Abar.dim, d.eAe.dim) == (2, 1, 1, 1)
    d2 = regular_bimodules(a, [0, 1, 0])
    assert (d2.eA.dim, d2.Ae.dim, d2.Abar.dim, d2.eAe.dim) == (1, 2, 1, 1)


def test_idempotent_validation():
    a = linear(2)
    with pytest.raises(NotIdempotent):
        regular_bimodules(a, [1, 1, 1])
    with pytest.raises(NotDistinguishedSum):
        regular_bimodules(a, [1, 0, 1])


def test_degenerate_idempotents():
    a = linear(3)
    zero = regular_bimodules(a, [0] * a.dim)
    assert zero.eAe.is_zero and zero.Abar.dim == a.dim
    full = regular_bimodules(a, a.unit)
    assert full.Abar.is_zero and full.eAe.dim == a.dim
