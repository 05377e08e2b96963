"""Torsion pairs in mod A given by idempotent ideals or by generators.

Torsion classes are described by a spec:

* ``Killed(e)``: modules annihilated by AeA (equivalently M e = 0);
* ``Full(e)``: modules with M AeA = M;
* ``Generated(mods)``: the torsion class generated by some modules;
* ``RightPerp(spec)``: modules receiving no nonzero map from the class.

Verdicts are graded ``certified`` (exact criterion), ``probed`` (checked on
the probe family) or ``false`` (with a witness).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, regular_bimodules
from .errors import HypothesisViolated, NotATorsionPair, SplitLiftFailed
from .functors import Verdict, canonical_adjunction
from .linalg import Matrix, hstack, independent_rows, left_kernel, solve_left, vecmat
from .modcat import (
    Module, Morphism, ShortExactSeq, cokernel, composition_factors, compose, direct_sum,
    ext1_dim, hom_dim, hom_space, image, injectives, kernel, probe_family, projectives,
    quotient_module, radical_series, simples, submodule,
)


@dataclass(frozen=True)
class Killed:
    e: tuple

    def describe(self) -> str:
        return "killed by AeA"


@dataclass(frozen=True)
class Full:
    e: tuple

    def describe(self) -> str:
        return "M.AeA = M"


@dataclass(frozen=True, eq=False)
class Generated:
    mods: tuple

    def describe(self) -> str:
        return f"generated by {len(self.mods)} modules"


@dataclass(frozen=True)
class RightPerp:
    spec: object

    def describe(self) -> str:
        return f"right perpendicular of ({self.spec.describe()})"


def _ideal(a: Algebra, e: tuple) -> list:
    key = ("ideal", e)
    if key not in a._cache:
        a._cache[key] = regular_bimodules(a, list(e)).ideal if any(e) else []
    return a._cache[key]


def torsion_submodule(a: Algebra, spec, m: Module) -> list:
    """Basis of the largest submodule of M lying in the class ``spec``."""
    f = m.field
    if m.dim == 0:
        return []
    if isinstance(spec, Killed):
        I = _ideal(a, spec.e)
        if not I:
            return [[1 if i == j else 0 for j in range(m.dim)] for i in range(m.dim)]
        big = hstack([m.act(x) for x in I], f, m.dim)
        return left_kernel(big)
    if isinstance(spec, Full):
        I = _ideal(a, spec.e)
        rows = [r for x in I for r in m.act(x).rows]
        return independent_rows([r for r in rows if any(r)], m.dim, f)
    if isinstance(spec, Generated):
        return _trace_fixpoint(spec.mods, m)
    raise NotATorsionPair(f"{spec!r} is not a torsion class spec")


def _trace_fixpoint(gens: tuple, m: Module) -> list:
    """t(M) for the torsion class generated by ``gens``: iterate traces in quotients."""
    f = m.field
    U: list = []
    for _ in range(m.dim + 1):
        Q, proj = quotient_module(m, U)
        if Q.dim == 0:
            return independent_rows(U, m.dim, f) if U else \
                [[1 if i == j else 0 for j in range(m.dim)] for i in range(m.dim)]
        rows = []
        for g in gens:
            for h in hom_space(g, Q).mats:
                rows.extend(h.rows)
        trace = independent_rows([r for r in rows if any(r)], Q.dim, f)
        if not trace:
            return U
        lift = _lift_rows(proj, trace)
        new = independent_rows(U + lift, m.dim, f)
        if len(new) == len(U):
            return U
        U = new
    return U


def _lift_rows(p: Morphism, rows: list) -> list:
    out = []
    for r in rows:
        x = solve_left(p.mat, Matrix(p.source.field, [r], p.target.dim))
        out.append(x.rows[0])
    return out


def in_class(a: Algebra, spec, m: Module) -> bool:
    if m.dim == 0:
        return True
    if isinstance(spec, RightPerp):
        return len(torsion_submodule(a, spec.spec, m)) == 0
    return len(torsion_submodule(a, spec, m)) == m.dim


@dataclass
class TorsionPair:
    algebra: Algebra
    torsion: object
    free: object
    checked: dict = dc_field(default_factory=dict)

    def t(self, m: Module) -> list:
        return torsion_submodule(self.algebra, self.torsion, m)

    def in_torsion(self, m: Module) -> bool:
        return in_class(self.algebra, self.torsion, m)

    def in_free(self, m: Module) -> bool:
        return in_class(self.algebra, self.free, m)


def torsion_pair(a: Algebra, torsion, free=None, verify: bool = True) -> TorsionPair:
    """Torsion pair with the given torsion spec (torsionfree defaults to its perp)."""
    tp = TorsionPair(a, torsion, free if free is not None else RightPerp(torsion))
    if verify:
        tp.checked = verify_torsion_pair(tp)
    return tp


def verify_torsion_pair(tp: TorsionPair) -> dict:
    """Hom(T, F) = 0 and existence of t-decompositions on probes."""
    probes = probe_family(tp.algebra)
    T_side, F_side = [], []
    for m in probes:
        seq = t_decompose(tp, m)
        T_side.append(seq.mono.source)
        F_side.append(seq.epi.target)
    T_side += [m for m in probes if tp.in_torsion(m)]
    F_side += [m for m in probes if tp.in_free(m)]
    for x in T_side:
        for y in F_side:
            if x.dim and y.dim and hom_dim(x, y):
                raise NotATorsionPair(f"nonzero map from {x.name} to {y.name}")
    return {"grade": "probed", "probes": len(probes)}


def t_decompose(tp: TorsionPair, m: Module) -> ShortExactSeq:
    """0 -> t(M) -> M -> M/t(M) -> 0 with both ends checked for class membership."""
    rows = tp.t(m)
    tm, inc = submodule(m, rows, name=f"t({m.name})")
    q, proj = quotient_module(m, rows, name=f"{m.name}/t")
    if not tp.in_torsion(tm):
        raise NotATorsionPair(f"t({m.name}) is not in the torsion class")
    if not tp.in_free(q):
        raise NotATorsionPair(f"{m.name}/t({m.name}) is not torsionfree")
    seq = ShortExactSeq(inc, proj)
    if not seq.verify():
        raise NotATorsionPair("t-decomposition is not exact")
    return seq


# ---------------------------------------------------------------------------
# heredity


def _support(a: Algebra, e) -> list:
    return a.distinguished_support(list(e))


def is_hereditary(tp: TorsionPair) -> Verdict:
    """Is the torsion class closed under submodules?"""
    a, spec = tp.algebra, tp.torsion
    if isinstance(spec, Killed):
        return Verdict("certified", "annihilation passes to submodules")
    if isinstance(spec, Full):
        supp = set(_support(a, spec.e))
        for j in sorted(supp):
            P = projectives(a)[j - 1]
            bad = set(composition_factors(P)) - supp
            if bad:
                return Verdict("false", "eA has a composition factor outside supp e",
                               _full_witness(a, tp, P, j))
        return Verdict("certified", "every eA factor lies in supp e, so the class is Serre")
    return _probe_closure(tp, sub=True)


def _full_witness(a: Algebra, tp: TorsionPair, P: Module, j: int) -> dict:
    layers = radical_series(P)
    for k in range(1, len(layers) - 1):
        q, proj = quotient_module(P, layers[k + 1])
        bottom = [vecmat(r, proj.mat) for r in layers[k]]
        sub, _ = submodule(q, bottom)
        if tp.in_torsion(q) and not tp.in_torsion(sub):
            return {"module": f"P{j}/rad^{k + 1}", "dims": [sub.dim, q.dim],
                    "failure": "submodule of a torsion module is not torsion"}
    return {"module": f"P{j}"}


def is_cohereditary(tp: TorsionPair) -> Verdict:
    """Is the torsionfree class closed under quotients?"""
    a, spec = tp.algebra, tp.free
    if isinstance(spec, Killed):
        return Verdict("certified", "annihilation passes to quotients")
    if isinstance(spec, RightPerp) and isinstance(spec.spec, Killed):
        inside = set(range(1, a.num_idempotents + 1)) - set(_support(a, spec.spec.e))
        for j in sorted(set(range(1, a.num_idempotents + 1)) - inside):
            I = injectives(a)[j - 1]
            bad = set(composition_factors(I)) & inside
            if bad:
                return Verdict("false", "an injective hull outside the class has a factor in it",
                               _perp_witness(a, tp, I, j))
        return Verdict("certified", "injective hulls of torsionfree simples avoid the class")
    return _probe_closure(tp, sub=False)


def _perp_witness(a: Algebra, tp: TorsionPair, I: Module, j: int) -> dict:
    for S in simples(a):
        for h in hom_space(S, I).basis:
            if h.is_mono():
                Q, _ = quotient_module(I, h.mat.rows)
                if not tp.in_free(Q):
                    return {"module": f"I{j}/soc", "dims": [I.dim, Q.dim],
                            "failure": "quotient of a torsionfree module is not torsionfree"}
    return {"module": f"I{j}", "dim": I.dim}


def _probe_closure(tp: TorsionPair, sub: bool) -> Verdict:
    probes = probe_family(tp.algebra)
    member = tp.in_torsion if sub else tp.in_free
    n = 0
    for x in probes:
        for y in probes:
            for h in hom_space(x, y).basis:
                n += 1
                if sub and member(y):
                    k, _ = kernel(h)
                    im, _, _ = image(h)
                    for cand in (k, im) if member(x) else (im,):
                        if not member(cand):
                            return Verdict("false", "submodule leaves the torsion class",
                                           {"module": cand.name, "dim": cand.dim})
                if not sub and member(x):
                    c, _ = cokernel(h) if member(y) else (None, None)
                    im, _, _ = image(h)
                    for cand in ([c] if c is not None else []) + [im]:
                        if not member(cand):
                            return Verdict("false", "quotient leaves the torsionfree class",
                                           {"module": cand.name, "dim": cand.dim})
    return Verdict("probed", f"closure checked on images and kernels of {n} probe maps")


# ---------------------------------------------------------------------------
# strongly hereditary witness


@dataclass
class FourTerm:
    """0 -> B1 -> M -> C -> B2 -> 0."""
    b1: Morphism
    zeta: Morphism
    c_to_b2: Morphism
    checks: dict

    def dims(self) -> list:
        return [self.b1.source.dim, self.zeta.source.dim, self.zeta.target.dim,
                self.c_to_b2.target.dim]


def strongly_hereditary_witness(tp: TorsionPair, m: Module) -> FourTerm:
    """0 -> t(M) -> M -> j_*j^*M -> B2 -> 0 with C in the (Hom, Ext^1)-perpendicular."""
    a = tp.algebra
    if not isinstance(tp.torsion, Killed):
        raise HypothesisViolated("witness is built for idempotent-killed torsion classes")
    if not is_hereditary(tp).holds:
        raise HypothesisViolated("torsion class is not hereditary")
    data = regular_bimodules(a, list(tp.torsion.e))
    adj = canonical_adjunction(data.Ae)
    zeta = adj.unit(m)
    K, kin = kernel(zeta)
    C = zeta.target
    B2, q = cokernel(zeta)
    rows = tp.t(m)
    tmod, tinc = submodule(m, rows)
    same = independent_rows(kin.mat.rows + tinc.mat.rows, m.dim, m.field)
    ok_kernel = K.dim == tmod.dim and len(same) == K.dim
    if not tp.in_torsion(B2):
        raise HypothesisViolated("cokernel of the unit is not torsion")
    torsion_probes = [S for i, S in enumerate(simples(a)) if tp.in_torsion(S)]
    perp = all(hom_dim(S, C) == 0 and ext1_dim(S, C) == 0 for S in torsion_probes)
    checks = {"kernel_is_torsion_part": ok_kernel, "cokernel_torsion": True,
              "C_perp_le1": perp, "torsion_simples": len(torsion_probes)}
    if not (ok_kernel and perp):
        raise HypothesisViolated(f"strongly hereditary witness fails: {checks}")
    return FourTerm(kin, zeta, q, checks)


# ---------------------------------------------------------------------------
# TTF triples and the splitting lemma


@dataclass
class TTFTriple:
    algebra: Algebra
    e: tuple
    first: TorsionPair      # (T, G)
    second: TorsionPair     # (G, F)

    @property
    def classes(self) -> tuple:
        return self.first.torsion, self.first.free, self.second.free


def ttf_triple(a: Algebra, e) -> TTFTriple:
    """(T, G, F) with T = {M AeA = M}, G = {M AeA = 0} and F its perp."""
    ev = tuple(e.coeffs if hasattr(e, "coeffs") else e)
    first = torsion_pair(a, Full(ev), Killed(ev))
    second = torsion_pair(a, Killed(ev), RightPerp(Killed(ev)))
    return TTFTriple(a, ev, first, second)


@dataclass
class Split:
    m_u: Module
    m_v: Module
    iso: Morphism          # m_U (+) m^V -> M
    checks: dict


def lemma34_split(up: TorsionPair, vp: TorsionPair, m: Module) -> Split:
    """Split M into its U-part and V-part for pairs (U, V) and (V, W).

    Needs U closed under submodules and W closed under quotients; the
    composite V-part -> M -> M/U-part is inverted to produce the section.
    """
    a = up.algebra
    probes = probe_family(a)
    for x in probes:
        if up.in_free(x) != vp.in_torsion(x):
            raise HypothesisViolated("the two pairs do not share their middle class")
    her, coh = is_hereditary(up), is_cohereditary(vp)
    if not her.holds or not coh.holds:
        raise HypothesisViolated(f"closure hypotheses fail: {her.grade}, {coh.grade}")
    s_u = t_decompose(up, m)
    s_v = t_decompose(vp, m)
    mU, incU = s_u.mono.source, s_u.mono
    incV = s_v.mono
    to_quot = compose(s_u.epi, incV)
    if not to_quot.is_iso():
        raise SplitLiftFailed(f"V-part of {m.name} does not map isomorphically onto M/U-part")
    section = compose(incV, to_quot.inverse())
    S, inj, proj = direct_sum([mU, s_u.epi.target])
    f = m.field
    mat = Matrix(f, incU.mat.rows + section.mat.rows, m.dim)
    iso = Morphism(S, m, mat)
    if not iso.is_iso():
        raise SplitLiftFailed("assembled map is not an isomorphism")
    recon = compose(s_u.epi, iso)
    checks = {
        "inclusion_matches": compose(iso, inj[0]).mat == incU.mat,
        "projection_matches": recon.mat == proj[1].mat,
        "U_equals_W": all(up.in_torsion(x) == vp.in_free(x) for x in probes),
        "hereditary": her.grade, "cohereditary": coh.grade,
    }
    if not all(v for k, v in checks.items() if isinstance(v, bool)):
        raise SplitLiftFailed(f"split checks fail: {checks}")
    return Split(mU, s_u.epi.target, iso, checks)
