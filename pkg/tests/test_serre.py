from itertools import combinations

import pytest

from serretype.errors import InvalidStructure
from serretype.functors import eval_obj
from serretype.modcat import (
    cokernel, ext1, extension_from_cocycle, hom_space, image, kernel, probe_family,
)
from serretype.serre import contains, contains_by_factors, descend, from_modules, from_simples

from algebras import dim_vector, dual_numbers, linear, t2


def _in_support(m, I) -> bool:
    return all(d == 0 for i, d in enumerate(dim_vector(m), start=1) if i not in I)


def _subsets(r):
    for k in range(r + 1):
        yield from combinations(range(1, r + 1), k)


@pytest.mark.parametrize("build", [lambda: linear(3), lambda: linear(3, relations=["a*b"]), t2])
def test_membership_matches_dimension_vector_support(build):
    a = build()
    probes = probe_family(a)
    for I in _subsets(a.num_idempotents):
        s = from_simples(a, I)
        for m in probes:
            assert contains(s, m) == contains_by_factors(s, m) == _in_support(m, I)


def test_closure_under_kernels_cokernels_and_extensions():
    a = linear(3)
    probes = probe_family(a)
    for I in _subsets(3):
        s = from_simples(a, I, verify=False)
        inside = [m for m in probes if contains(s, m)]
        for m in inside:
            for n in inside:
                for f in hom_space(m, n).basis:
                    assert contains(s, kernel(f)[0]) and contains(s, cokernel(f)[0])
                    assert contains(s, image(f)[0])
                data = ext1(m, n)
                for c in data.cocycles:
                    seq = extension_from_cocycle(m, n, data, c)
                    assert contains(s, seq.mono.target)


def test_quotient_functor_kills_exactly_the_subcategory():
    a = linear(3)
    for I in _subsets(3):
        s = from_simples(a, I)
        for m in probe_family(a):
            assert (eval_obj(s.Q, m).dim == 0) == contains(s, m)


def test_descend_round_trip():
    a = linear(3)
    s = from_simples(a, (1, 2))
    for m in probe_family(a):
        if contains(s, m):
            back = eval_obj(s.inclusion, descend(s, m))
            assert back.dim == m.dim and dim_vector(back) == dim_vector(m)
        else:
            with pytest.raises(InvalidStructure):
                descend(s, m)


def test_generated_subcategory_and_bad_indices():
    a = linear(3)
    S = [m for m in probe_family(a) if m.name == "S2"]
    assert from_modules(a, S).simple_set == (2,)
    with pytest.raises(InvalidStructure):
        from_simples(a, (4,))


def test_degenerate_subcategories():
    d = dual_numbers()
    everything = from_simples(d, (1,))
    nothing = from_simples(d, ())
    assert everything.quotient_algebra.is_zero and nothing.sub_algebra.is_zero
    assert all(contains(everything, m) for m in probe_family(d))
    assert not any(contains(nothing, m) for m in probe_family(d))
