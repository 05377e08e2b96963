from itertools import combinations

import pytest

from serretype import QQ, ground_field, triangular_algebra
from serretype.algebra import zero_bimodule
from serretype.errors import InvalidStructure, SearchBudgetExceeded
from serretype.serre import from_simples
from serretype.typeclass import AMBIENT, INF, TYPE_LIST, classify, classify_all, remark54_check

from algebras import dual_numbers, kxk, linear, linear_type_oracle, t2


def _pair(res):
    return "infinite" if res.infinite else res.pair


def test_t2_types_and_orientation():
    a = t2()
    r1, r2 = classify(from_simples(a, (1,))), classify(from_simples(a, (2,)))
    assert r1.pair == (1, -2) and r2.pair == (2, -1)
    for r in (r1, r2):
        assert len(r.F_chain) == len(r.G_chain) == r.m + r.n + 1
        assert r.checks == {"in_type_list": True, "inner_functors_exact": True}
        for side in ("left", "right"):
            assert all(w["witness"] for w in r.stop_reasons[side]["missing"])
        assert all(adj["grade"] == "certified" for adj in r.adjunctions)
        assert r.ambient == AMBIENT == "type in mod A"


@pytest.mark.parametrize("n", [2, 3])
def test_linear_quivers_match_the_oracle(n):
    rows = classify_all(linear(n))
    assert len(rows) == 2 ** n
    for r in rows:
        assert _pair(r) == linear_type_oracle(n, r.simple_set), r.simple_set


def test_interior_vertex_has_type_one_minus_one():
    r = classify(from_simples(linear(3), (2,)))
    assert r.pair == (1, -1)
    assert set(r.stop_reasons) == {"left", "right"}


@pytest.mark.parametrize("build", [kxk, dual_numbers])
def test_semisimple_and_local_algebras_are_infinite(build):
    a = build()
    for k in range(a.num_idempotents + 1):
        for I in combinations(range(1, a.num_idempotents + 1), k):
            r = classify(from_simples(a, I))
            assert r.infinite and (r.m, r.n) == (INF, INF)
            assert r.split_certificate["split"]
            assert r.type_json() == "infinite"


def test_type_list_contents():
    assert len(TYPE_LIST) == 7 and (INF, -INF) in TYPE_LIST


def test_classify_all_cap():
    with pytest.raises(SearchBudgetExceeded):
        classify_all(linear(3), cap=2)


def test_remark54_on_t2_and_kA2():
    for a in (t2(), linear(2)):
        rep = remark54_check(a)
        assert rep["iso_i_-2_j_1"]["grade"] in ("certified", "probed")
        assert rep["all_pairs_certified"] and rep["blocked_at_both_ends"]
        assert len(rep["merged"]) == 7
        assert list(rep["F_indices"].values()) == [1, 0, -1, -2, -3, -4, -5]
        assert list(rep["G_indices"].values()) == [4, 3, 2, 1, 0, -1, -2]


def test_remark54_rejects_other_shapes():
    k = ground_field(QQ)
    with pytest.raises(InvalidStructure):
        remark54_check(triangular_algebra(k, k, zero_bimodule(k, k)))
    with pytest.raises(InvalidStructure):
        remark54_check(linear(3))


def test_as_dict_is_plain():
    d = classify(from_simples(t2(), (1,))).as_dict()
    assert d["type"] == {"m": 1, "n": 2}
    assert [f["name"] for f in d["chains"]["F"]] == ["F_1", "i", "F_-1", "F_-2"]
