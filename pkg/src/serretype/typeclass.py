"""Type (m, -n) of a Serre subcategory of mod A.

Starting from the inclusion i and the quotient functor Q, both adjoint
sequences are extended one step at a time on the left and on the right.  A
side stops as soon as one of the two current end functors lacks an adjoint;
that functor's non-exactness is recorded as the witness.  Once
h = m + n + 1 reaches 5 the type is reported as (+inf, -inf), backed by an
explicit splitting of the canonical recollement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import Algebra, algebra_iso
from .errors import InvalidStructure, SearchBudgetExceeded, SplitExpectedButFailed
from .functors import (
    FunctorExpr, HomF, Tensor, is_exact, left_adjoint, restrict_left, restrict_right,
    right_adjoint,
)
from .recollement import canonical_recollement, check_adjoint_pair, split_check
from .serre import SerreSubcat, from_simples

INF = math.inf
AMBIENT = "type in mod A"
TYPE_LIST = frozenset({(0, 0), (0, -1), (1, -1), (0, -2), (1, -2), (2, -1), (INF, -INF)})
CAP_H = 5


def describe(f: FunctorExpr) -> dict:
    """Bimodule dimension signature of a normal form."""
    b = f.b
    return {"name": f.name, "kind": f.kind, "bimodule_dim": b.dim,
            "source_dim": f.source.dim, "target_dim": f.target.dim}


@dataclass
class TypeResult:
    simple_set: tuple
    m: float
    n: float
    F_chain: list                  # F_m, ..., F_0 = i, ..., F_-n
    G_chain: list                  # G_m, ..., G_0 = Q, ..., G_-n
    stop_reasons: dict = dc_field(default_factory=dict)
    adjunctions: list = dc_field(default_factory=list)
    split_certificate: dict | None = None
    checks: dict = dc_field(default_factory=dict)
    ambient: str = AMBIENT

    @property
    def pair(self) -> tuple:
        return (self.m, -self.n)

    @property
    def infinite(self) -> bool:
        return self.m == INF

    def type_json(self):
        if self.infinite:
            return "infinite"
        return {"m": int(self.m), "n": int(self.n)}

    def as_dict(self) -> dict:
        return {
            "simples": list(self.simple_set), "ambient": self.ambient, "type": self.type_json(),
            "chains": {"F": [describe(f) for f in self.F_chain],
                       "G": [describe(g) for g in self.G_chain]},
            "stop_reasons": self.stop_reasons, "adjunctions": self.adjunctions,
            "split_certificate": self.split_certificate, "checks": self.checks,
        }


def _stop_witness(f: FunctorExpr, label: str) -> dict:
    ex = is_exact(f)
    if ex.exact:
        raise InvalidStructure(f"{label} is exact yet has no adjoint on this side")
    return {"functor": label, "name": f.name, "criterion": ex.criterion, "witness": ex.witness}


def _cert_summary(adj) -> dict:
    c = adj.certificate or {}
    return {"left": adj.left.name, "right": adj.right.name, "kind": adj.kind,
            "grade": c.get("grade"), "hom_pairs": c.get("hom_pairs")}


def classify(s: SerreSubcat, seed: int = 0, cap_h: int = CAP_H) -> TypeResult:
    """Extend both adjoint sequences until a side is blocked or h reaches the cap."""
    F, G = [s.inclusion], [s.Q]
    m = n = 0
    adjs: list = []
    stops: dict = {}
    left_open = right_open = True
    while (left_open or right_open) and m + n + 1 < cap_h:
        if left_open:
            lf, lg = left_adjoint(F[0]), left_adjoint(G[0])
            if lf is not None and lg is not None:
                m += 1
                for adj, chain, tag in ((lf, F, "F"), (lg, G, "G")):
                    adj.left.name = f"{tag}_{m}"
                    chain.insert(0, adj.left)
                    adjs.append(_cert_summary(adj))
            else:
                left_open = False
                stops["left"] = {"missing": [_stop_witness(x, f"{t}_{m}")
                                             for x, a, t in ((F[0], lf, "F"), (G[0], lg, "G"))
                                             if a is None]}
        if right_open and m + n + 1 < cap_h:
            rf, rg = right_adjoint(F[-1]), right_adjoint(G[-1])
            if rf is not None and rg is not None:
                n += 1
                for adj, chain, tag in ((rf, F, "F"), (rg, G, "G")):
                    adj.right.name = f"{tag}_-{n}"
                    chain.append(adj.right)
                    adjs.append(_cert_summary(adj))
            else:
                right_open = False
                stops["right"] = {"missing": [_stop_witness(x, f"{t}_-{n}")
                                              for x, a, t in ((F[-1], rf, "F"), (G[-1], rg, "G"))
                                              if a is None]}
    res = TypeResult(s.simple_set, m, n, F, G, stops, adjs)
    if m + n + 1 >= cap_h:
        res.m = res.n = INF
        res.split_certificate = _split_certificate(s, seed)
        res.stop_reasons = {"cap": {"h": m + n + 1, "reached": cap_h}}
    res.checks = {"in_type_list": res.pair in TYPE_LIST,
                  "inner_functors_exact": _inner_exact(F) and _inner_exact(G)}
    return res


def _inner_exact(chain: list) -> bool:
    return all(is_exact(f, witness=False).exact for f in chain[1:-1])


def _split_certificate(s: SerreSubcat, seed: int) -> dict:
    rec = canonical_recollement(s.algebra, s.e, ladder=False)
    rep = split_check(rec, seed)
    if not rep.split:
        raise SplitExpectedButFailed(f"h reached the cap for {s.label()} but the recollement "
                                     f"does not split: {rep.witness}")
    return {"split": True, "isos": {k: v["grade"] for k, v in rep.isos.items()},
            "decompositions": [{"module": d["module"], "dims": d["dims"]}
                               for d in rep.decompositions]}


def classify_all(a: Algebra, cap: int = 12, seed: int = 0) -> list:
    """classify for every set of simples, in order of size then lexicographically."""
    r = a.num_idempotents
    if r > cap:
        raise SearchBudgetExceeded(f"{r} simples exceed the cap of {cap}")
    rows = []
    for k in range(r + 1):
        for I in combinations(range(1, r + 1), k):
            rows.append(classify(from_simples(a, I, verify=False), seed))
    return rows


# ---------------------------------------------------------------------------
# the T_2(R) ladder where i_-2 is isomorphic to j_1


def remark54_check(a: Algebra, seed: int = 0) -> dict:
    """Merge the two adjoint sequences of a triangular algebra T_2(R) into one.

    Picks the idempotent e for which i^! has a right adjoint i_-2,
    identifies A/AeA with eAe, checks i_-2 = j_1 after that identification,
    and certifies the 7-term sequence (i_1, i_0, i_-1, i_-2, j_0, j_-1, j_-2).
    """
    if a.num_idempotents != 2:
        raise InvalidStructure("expected exactly two distinguished idempotents")
    for idx in (2, 1):
        rec = canonical_recollement(a, a.idempotent_sum([idx]), ladder=True)
        if rec.ladder.get("i_-2") is not None:
            break
    else:
        raise InvalidStructure("i^! has no right adjoint for either idempotent")
    Abar, eAe = rec.B, rec.C
    off = a.dim - Abar.dim - eAe.dim
    if off == 0 or off != eAe.dim:
        raise InvalidStructure("off-diagonal bimodule is not the regular one")
    phi = algebra_iso(Abar, eAe)
    if phi is None:
        raise InvalidStructure("the two corners are not isomorphic")
    d = rec.data
    j1 = Tensor(restrict_left(d.eA, phi, Abar), "j_1")
    j0 = Tensor(restrict_right(d.Ae, phi, Abar), "j_0")
    jm1 = HomF(j0.b, "j_-1")
    step = right_adjoint(jm1)
    if step is None:
        raise InvalidStructure("j_-1 has no right adjoint")
    jm2 = step.right
    jm2.name = "j_-2"
    i1, i0, im1, im2 = (rec.ladder[k] for k in ("i_1", "i_0", "i_-1", "i_-2"))
    i1.name, i0.name, im1.name, im2.name = "i_1", "i_0", "i_-1", "i_-2"

    from .functors import natural_iso
    iso = natural_iso(im2, j1, seed=seed)
    if iso is None:
        raise InvalidStructure("i_-2 is not isomorphic to j_1")
    merged = [i1, i0, im1, im2, j0, jm1, jm2]
    pairs = [check_adjoint_pair(x, y, seed) for x, y in zip(merged, merged[1:])]
    left_end = left_adjoint(i1)
    right_end = right_adjoint(jm2)
    ends = {
        "left": None if left_end is not None else _stop_witness(i1, "i_1"),
        "right": None if right_end is not None else _stop_witness(jm2, "j_-2"),
    }
    names = [f.name for f in merged]
    return {
        "idempotent": idx,
        "corner_iso": phi.rows,
        "iso_i_-2_j_1": {"grade": iso.grade, "route": iso.route,
                         "bimodule_map": iso.bimodule_map.rows
                         if iso.bimodule_map is not None else None,
                         "naturality": iso.checked},
        "merged": [describe(f) for f in merged],
        "F_indices": dict(zip(names, range(1, -6, -1))),
        "G_indices": dict(zip(names, range(4, -3, -1))),
        "adjacent_pairs": pairs,
        "all_pairs_certified": all(p["grade"] in ("certified", "probed") for p in pairs),
        "ends": ends,
        "blocked_at_both_ends": left_end is None and right_end is None,
    }
