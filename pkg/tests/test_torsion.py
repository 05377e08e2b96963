import pytest

from serretype.errors import HypothesisViolated, NotATorsionPair
from serretype.modcat import probe_family, simples
from serretype.torsion import (
    Full, Generated, Killed, RightPerp, is_cohereditary, is_hereditary, lemma34_split,
    strongly_hereditary_witness, t_decompose, torsion_pair, ttf_triple,
)

from algebras import kxk, kxkxk, linear

E1, E2 = (1, 0, 0), (0, 1, 0)

# dim t(M) on the kA2 probes P1, P2, S1, A, I2, worked out by hand
T_DIMS = [
    (Killed(E1), [1, 1, 0, 2, 1], "certified", "certified"),
    (Killed(E2), [0, 0, 1, 0, 0], "certified", "false"),
    (Full(E1), [2, 0, 1, 2, 2], "false", "probed"),
    (Full(E2), [1, 1, 0, 2, 1], "certified", "probed"),
]


@pytest.mark.parametrize("spec,dims,her,coh", T_DIMS, ids=lambda x: getattr(x, "describe", str)())
def test_kA2_torsion_parts_and_heredity(spec, dims, her, coh):
    a = linear(2)
    tp = torsion_pair(a, spec)
    assert [m.name for m in probe_family(a)] == ["P1", "P2", "S1", "A", "I2"]
    assert [len(tp.t(m)) for m in probe_family(a)] == dims
    assert is_hereditary(tp).grade == her
    assert is_cohereditary(tp).grade == coh


def test_torsion_part_of_P1_is_the_arrow():
    a = linear(2)
    P1 = probe_family(a)[0]
    assert torsion_pair(a, Killed(E1)).t(P1) == [[0, 1]]


def test_generated_classes_agree_with_idempotent_classes():
    a = linear(2)
    S1, S2 = simples(a)
    for gen, killed in ((S1, E2), (S2, E1)):
        g = torsion_pair(a, Generated((gen,)))
        k = torsion_pair(a, Killed(killed))
        for m in probe_family(a):
            assert len(g.t(m)) == len(k.t(m))


def test_heredity_witness_names_a_failing_module():
    v = is_hereditary(torsion_pair(linear(2), Full(E1)))
    assert not v.holds and v.witness is not None
    c = is_cohereditary(torsion_pair(linear(2), Killed(E2)))
    assert not c.holds and c.witness is not None


def test_t_decompositions_are_exact():
    a = linear(3)
    for idx in ([1], [2], [3], [1, 3], [2, 3]):
        e = tuple(a.idempotent_sum(idx).coeffs)
        for spec in (Killed(e), Full(e)):
            tp = torsion_pair(a, spec)
            for m in probe_family(a):
                seq = t_decompose(tp, m)
                assert seq.verify()
                assert tp.in_torsion(seq.mono.source) and tp.in_free(seq.epi.target)


def test_bad_pair_is_rejected():
    a = linear(2)
    with pytest.raises(NotATorsionPair):
        torsion_pair(a, Killed(E2), Killed(E2))


@pytest.mark.parametrize("e,dims", [
    (E1, [[1, 2, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0], [2, 3, 1, 0], [1, 2, 1, 0]]),
    (E2, [[0, 2, 2, 0], [0, 1, 2, 1], [1, 1, 0, 0], [0, 3, 4, 1], [0, 2, 2, 0]]),
])
def test_four_term_sequences(e, dims):
    a = linear(2)
    tr = ttf_triple(a, e)
    got = [strongly_hereditary_witness(tr.second, m).dims() for m in probe_family(a)]
    assert got == dims


def test_ttf_triple_classes():
    tr = ttf_triple(linear(2), E1)
    T, G, F = tr.classes
    assert isinstance(T, Full) and isinstance(G, Killed) and isinstance(F, RightPerp)


@pytest.mark.parametrize("first,second", [((1, 0), (0, 1)), ((0, 1), (1, 0))])
def test_product_splits_into_its_factors(first, second):
    k = kxk()
    up, vp = torsion_pair(k, Killed(first)), torsion_pair(k, Killed(second))
    for m in probe_family(k):
        sp = lemma34_split(up, vp, m)
        assert sp.iso.is_iso() and sp.m_u.dim + sp.m_v.dim == m.dim
        assert sp.checks["U_equals_W"] and sp.checks["inclusion_matches"]


def test_split_on_three_factors():
    a = kxkxk()
    up = torsion_pair(a, Killed((1, 1, 0)))
    vp = torsion_pair(a, Killed((0, 0, 1)))
    for m in probe_family(a):
        sp = lemma34_split(up, vp, m)
        assert sp.m_u.dim + sp.m_v.dim == m.dim


def test_split_hypotheses_fail_on_a_linear_quiver():
    a = linear(2)
    tr = ttf_triple(a, E1)
    with pytest.raises(HypothesisViolated):
        lemma34_split(tr.first, tr.second, probe_family(a)[0])
