"""Serre subcategories of mod A, indexed by sets of simple modules.

The subcategory for a set I of simples consists of the modules whose
composition factors all lie in I.  With e the sum of the idempotents outside
I it equals mod A/AeA (embedded by restriction) and the quotient category is
mod eAe, reached by ``M -> M e = M (x)_A Ae``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .algebra import Algebra, IdempotentData, regular_bimodules
from .errors import AlgebraMismatch, CertificationFailed, InvalidStructure
from .functors import FunctorExpr, Tensor, eval_obj, is_exact, is_fully_faithful
from .modcat import Module, composition_factors, is_isomorphic, probe_family


@dataclass
class SerreSubcat:
    algebra: Algebra
    simple_set: tuple
    e: list
    data: IdempotentData
    certificates: dict = dc_field(default_factory=dict)
    _f: dict = dc_field(default_factory=dict, repr=False)

    @property
    def complement(self) -> tuple:
        return tuple(i for i in range(1, self.algebra.num_idempotents + 1)
                     if i not in self.simple_set)

    @property
    def sub_algebra(self):
        """A/AeA, or the zero category when the subcategory is {0}."""
        return self.data.Abar

    @property
    def quotient_algebra(self):
        """eAe, or the zero category when the subcategory is everything."""
        return self.data.eAe

    @property
    def inclusion(self) -> FunctorExpr:
        if "i" not in self._f:
            self._f["i"] = Tensor(self.data.Abar_A, name="i")
        return self._f["i"]

    @property
    def Q(self) -> FunctorExpr:
        if "Q" not in self._f:
            self._f["Q"] = Tensor(self.data.Ae, name="Q")
        return self._f["Q"]

    def label(self) -> str:
        return "{" + ",".join(str(i) for i in self.simple_set) + "}"


def from_simples(a: Algebra, simple_set: Iterable[int], verify: bool = True) -> SerreSubcat:
    """The Serre subcategory generated by the simples with the given 1-based indices."""
    I = tuple(sorted(set(int(i) for i in simple_set)))
    r = a.num_idempotents
    if any(not 1 <= i <= r for i in I):
        raise InvalidStructure(f"simple indices must lie in 1..{r}")
    comp = [j for j in range(1, r + 1) if j not in I]
    e = a.idempotent_sum(comp).coeffs
    s = SerreSubcat(a, I, e, regular_bimodules(a, e))
    if verify:
        s.certificates = verify_serre(s)
    return s


def from_modules(a: Algebra, mods: Iterable[Module], verify: bool = True) -> SerreSubcat:
    """Smallest Serre subcategory containing the given modules."""
    I = set()
    for m in mods:
        I.update(composition_factors(m).keys())
    return from_simples(a, I, verify)


def contains(s: SerreSubcat, m: Module) -> bool:
    """M lies in the subcategory iff M e = 0."""
    if m.algebra is not s.algebra and not s.algebra.same_as(m.algebra):
        raise AlgebraMismatch("module over a different algebra")
    if m.dim == 0:
        return True
    return m.act(s.e).is_zero()


def contains_by_factors(s: SerreSubcat, m: Module) -> bool:
    return set(composition_factors(m).keys()) <= set(s.simple_set)


def descend(s: SerreSubcat, m: Module) -> Module:
    """The A/AeA-module whose restriction is M (M must lie in the subcategory)."""
    if not contains(s, m):
        raise InvalidStructure(f"{m.name} is not annihilated by e")
    Abar = s.data.Abar
    if Abar.is_zero:
        from .modcat import zero_module
        return zero_module(Abar)
    for x in s.data.ideal:
        if not m.act(x).is_zero():
            raise InvalidStructure("module is not annihilated by AeA")
    acts = [m.act(row) for row in s.data.quotient.section.rows]
    return Module(Abar, m.dim, acts, name=f"{m.name}|bar")


def verify_serre(s: SerreSubcat) -> dict:
    """Certificates for the quotient functor and the inclusion."""
    a = s.algebra
    probes = probe_family(a)
    Q, i = s.Q, s.inclusion
    q_exact = is_exact(Q)
    if not q_exact.exact:
        raise CertificationFailed("quotient functor is not exact")
    sub_probes = probe_family(s.sub_algebra)
    for n in sub_probes:
        if eval_obj(Q, eval_obj(i, n)).dim != 0:
            raise CertificationFailed("Q o i does not vanish")
    agree = all(contains(s, m) == contains_by_factors(s, m) for m in probes)
    if not agree:
        raise CertificationFailed("membership tests disagree")
    kernel_ok = 0
    for m in probes:
        if eval_obj(Q, m).dim == 0:
            if not contains(s, m):
                raise CertificationFailed("Ker Q contains a module outside the subcategory")
            if is_isomorphic(eval_obj(i, descend(s, m)), m) is None:
                raise CertificationFailed("module in Ker Q is not in the image of i")
            kernel_ok += 1
    ff = is_fully_faithful(i)
    if not ff.holds:
        raise CertificationFailed("inclusion is not fully faithful")
    return {"Q_exact": q_exact.as_dict(), "Qi_zero": "probed", "membership_tests_agree": agree,
            "image_equals_kernel": {"grade": "probed", "modules": kernel_ok},
            "inclusion_fully_faithful": ff.as_dict()}
