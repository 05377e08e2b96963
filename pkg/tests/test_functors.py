import pytest

from serretype.algebra import regular_bimodules
from serretype.errors import AlgebraMismatch
from serretype.functors import (
    HomF, Tensor, canonical_adjunction, compose, eval_mor, eval_obj, identity_functor, is_exact,
    is_fully_faithful, left_adjoint, natural_iso, right_adjoint,
)
from serretype.modcat import compose as compose_mor, hom_space, probe_family
from serretype.recollement import recollement_at

from algebras import dual_numbers, kxk, linear, t2

# (exact, fully faithful) for the six functors of T2 at each idempotent
T2_PATTERN = {
    1: {"i^*": (True, False), "i_*": (True, True), "i^!": (False, False),
        "j_!": (True, True), "j^*": (True, False), "j_*": (True, True)},
    2: {"i^*": (False, False), "i_*": (True, True), "i^!": (True, False),
        "j_!": (True, True), "j^*": (True, False), "j_*": (True, True)},
}


@pytest.mark.parametrize("idx", [1, 2])
def test_t2_exactness_and_full_faithfulness(idx):
    rec = recollement_at(t2(), [idx])
    for name, f in rec.functors().items():
        ex = is_exact(f)
        assert (ex.exact, is_fully_faithful(f).holds) == T2_PATTERN[idx][name], name
        if not ex.exact:
            assert ex.witness is not None and ex.witness["simple"] in (1, 2)


def test_exactness_witness_is_a_real_failure():
    rec = recollement_at(t2(), [2])
    w = is_exact(rec.i_pull).witness
    K, P, S = w["sequence"]
    assert K + S == P
    assert w["kernel_dim"] > 0


def test_t2_ladder_shape():
    l1 = recollement_at(t2(), [1]).ladder
    l2 = recollement_at(t2(), [2]).ladder
    assert l1["i_-2"] is None and l1["i_2"] is not None
    assert l2["i_-2"] is not None and l2["i_2"] is None
    assert l1["j_-2"] is not None and l2["j_-2"] is not None


@pytest.mark.parametrize("idx", [1, 2])
def test_unit_and_counit_isos_of_a_recollement(idx):
    rec = recollement_at(t2(), [idx])
    C, B = rec.C, rec.B
    assert natural_iso(compose(rec.j_pull, rec.j_shriek), identity_functor(C)) is not None
    assert natural_iso(compose(rec.j_pull, rec.j_push), identity_functor(C)) is not None
    assert natural_iso(compose(rec.i_pull, rec.i_push), identity_functor(B)) is not None
    assert natural_iso(compose(rec.i_shriek, rec.i_push), identity_functor(B)) is not None
    assert natural_iso(rec.j_shriek, rec.j_push) is None


def test_composites():
    rec = recollement_at(t2(), [1])
    # two tensor forms collapse to one tensor form
    assert compose(rec.j_pull, rec.j_shriek).kind == "tensor"
    mixed = compose(rec.j_pull, rec.j_push)
    assert mixed.kind == "composite"
    with pytest.raises(AlgebraMismatch):
        right_adjoint(mixed)
    with pytest.raises(AlgebraMismatch):
        compose(rec.j_push, rec.i_push)


def test_adjoint_existence_follows_projectivity():
    rec = recollement_at(t2(), [2])
    assert left_adjoint(rec.i_pull) is None
    assert right_adjoint(rec.i_shriek) is not None
    assert right_adjoint(rec.i_pull).right.kind == "hom"


def _all_bimodules():
    for a in (linear(2), linear(3), t2(), kxk(), dual_numbers()):
        for k in range(1, a.num_idempotents + 1):
            d = regular_bimodules(a, a.idempotent_sum([k]).coeffs)
            for b in (d.eA, d.Ae, d.Abar_A, d.A_Abar):
                if not b.left.is_zero and not b.right.is_zero:
                    yield b


def test_canonical_adjunctions_satisfy_triangle_identities():
    n = 0
    for b in _all_bimodules():
        cert = canonical_adjunction(b).certify(naturality=True)
        assert cert["grade"] == "certified" and not cert["failures"]
        n += 1
    assert n > 0


def test_dual_adjunctions_are_certified():
    for b in _all_bimodules():
        t, h = Tensor(b), HomF(b)
        la = left_adjoint(t)
        if la is not None:
            assert la.certificate["grade"] == "certified"
        ra = right_adjoint(h)
        if ra is not None:
            assert ra.certificate["grade"] == "certified"


@pytest.mark.parametrize("idx", [1, 2])
def test_functoriality_on_probe_morphisms(idx):
    rec = recollement_at(linear(3), [idx])
    probes = probe_family(rec.A)
    for name in ("i^*", "j^*", "i^!"):
        F = rec.functors()[name]
        for x in probes:
            for y in probes:
                for z in probes:
                    for f in hom_space(x, y).basis[:1]:
                        for g in hom_space(y, z).basis[:1]:
                            lhs = eval_mor(F, compose_mor(g, f))
                            rhs = compose_mor(eval_mor(F, g), eval_mor(F, f))
                            assert lhs.mat == rhs.mat


def test_tensor_with_regular_bimodule_is_identity():
    a = linear(3)
    d = regular_bimodules(a, [0] * a.dim)
    F = Tensor(d.A_Abar)
    for m in probe_family(a):
        assert eval_obj(F, m).dim == m.dim
