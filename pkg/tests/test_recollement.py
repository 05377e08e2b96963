from dataclasses import replace

import pytest

from serretype.errors import HypothesisViolated, NotGiraud
from serretype.functors import eval_obj
from serretype.modcat import is_isomorphic, probe_family
from serretype.recollement import (
    adjoint_by_cokernel, adjoint_by_kernel, check_adjoint_pair, crosscheck_adjoints, descend,
    extend_left_recollement, left_recollement_from_torsion, prop31_battery, prop32_battery,
    recollement_at, right_recollement_from_torsion, split_check, verify_recollement,
    verify_right_recollement,
)
from serretype.torsion import Full, Killed, torsion_pair

from algebras import dual_numbers, kxk, linear, t2

SMALL = {"kA2": lambda: linear(2), "kA3": lambda: linear(3), "T2": t2, "kxk": kxk,
         "k[x]/x^2": dual_numbers}


def _subsets(r):
    return [[i + 1 for i in range(r) if mask >> i & 1] for mask in range(2 ** r)]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_every_idempotent_gives_a_verified_recollement(name):
    a = SMALL[name]()
    for idx in _subsets(a.num_idempotents):
        rep = verify_recollement(recollement_at(a, idx, ladder=False))
        assert rep["verified"], (idx, rep)


def test_swapping_j_push_for_j_shriek_breaks_the_adjunction():
    rec = recollement_at(t2(), [2], ladder=False)
    res = check_adjoint_pair(rec.j_pull, rec.j_shriek)
    assert res["grade"] == "failed"
    assert res["witness"]["hom_bijection"] is not None
    broken = replace(rec.right(), j_push=rec.j_shriek)
    assert not verify_right_recollement(broken)["verified"]


def test_adjoint_by_kernel_on_kA2():
    a = linear(2)
    rec = recollement_at(a, [1], ladder=False)
    P1 = probe_family(a)[0]
    K, inc = adjoint_by_kernel(rec.j_push, P1)
    C, proj = adjoint_by_cokernel(rec.j_shriek, P1)
    assert inc.is_mono() and proj.is_epi()
    assert is_isomorphic(descend(rec.data, K), eval_obj(rec.i_shriek, P1)) is not None
    assert is_isomorphic(descend(rec.data, C), eval_obj(rec.i_pull, P1)) is not None
    with pytest.raises(NotGiraud):
        adjoint_by_kernel(rec.j_shriek, P1)
    with pytest.raises(NotGiraud):
        adjoint_by_cokernel(rec.j_push, P1)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_crosscheck_adjoints(name):
    a = SMALL[name]()
    for idx in _subsets(a.num_idempotents):
        assert crosscheck_adjoints(recollement_at(a, idx, ladder=False))["grade"] == "probed"


def test_recollements_from_torsion_pairs():
    a = linear(3)
    for idx in ([1], [2], [1, 3]):
        e = tuple(a.idempotent_sum(idx).coeffs)
        r = right_recollement_from_torsion(torsion_pair(a, Killed(e)))
        assert verify_right_recollement(r)["verified"]
        l = left_recollement_from_torsion(torsion_pair(a, Full(e), Killed(e)))
        rec, rep = extend_left_recollement(l)
        assert rep["verified"]
    with pytest.raises(HypothesisViolated):
        right_recollement_from_torsion(torsion_pair(a, Full(e)))


@pytest.mark.parametrize("name", ["kA2", "kA3", "T2"])
def test_extension_of_left_recollements(name):
    a = SMALL[name]()
    for idx in _subsets(a.num_idempotents)[1:-1]:
        rec, rep = extend_left_recollement(recollement_at(a, idx, ladder=False).left())
        assert rep["verified"]
        assert all(t + q == d for t, d, q in rep["torsion_pair"]["t_decompositions"])


@pytest.mark.parametrize("name", sorted(SMALL))
def test_batteries_are_consistent(name):
    a = SMALL[name]()
    for idx in _subsets(a.num_idempotents):
        rec = recollement_at(a, idx, ladder=False)
        for bat in (prop31_battery(rec), prop32_battery(rec)):
            assert bat["consistent"] and bat["witness_exact"] and bat["witness_perp"]


def test_battery_truth_values_on_t2():
    # at e2 the right recollement has exact i^!, at e1 it does not
    r2 = prop31_battery(recollement_at(t2(), [2], ladder=False))
    r1 = prop31_battery(recollement_at(t2(), [1], ladder=False))
    assert set(r2["conditions"].values()) == {True}
    assert set(r1["conditions"].values()) == {False}
    l2 = prop32_battery(recollement_at(t2(), [2], ladder=False))
    l1 = prop32_battery(recollement_at(t2(), [1], ladder=False))
    assert set(l2["conditions"].values()) == {False}
    assert set(l1["conditions"].values()) == {True}


def test_split_reports():
    for idx in ([1], [2]):
        rep = split_check(recollement_at(kxk(), idx, ladder=False))
        assert rep.split and set(rep.isos) == {"i^*=i^!", "j_!=j_*"}
        assert all(sum(d["dims"]) == len(d["matrix"]) for d in rep.decompositions)
    rep = split_check(recollement_at(t2(), [2], ladder=False))
    assert not rep.split and rep.witness["functor"] == "i^*"
    assert rep.witness["exactness"]["witness"]["kernel_dim"] > 0
