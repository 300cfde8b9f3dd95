"""Non-inner automorphisms of order p for small-coclass p-groups.

H denotes the full preimage in G of the order-p part of the second-center
quotient; the rings D = Der(G, H) and D1 = Der(G, H1) control the
automorphisms that move every element within its H-coset.  Under the
centralizer condition C_G(Phi(G)) <= Phi(G) these rings are small and
well-behaved, which pins the structure of Aut_H(G); for coclass-2 groups of
odd order the same machinery produces an explicit non-inner automorphism of
order p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import HypothesisFailed
from .derivations import (
    DerivationRing,
    aut_from_derivation,
    enumerate_derivations,
)
from .fullness import check_corollary47, is_full_wrt
from .groups import (
    FiniteGroup,
    Subgroup,
    minimal_generating_set,
    quotient,
    subgroup_closure,
    whole_subgroup,
)
from .rings import (
    adjoint_group,
    is_right_p_nil,
    power_ideal,
    quotient_ring,
)
from .structure import (
    abelian_invariants,
    center,
    centralizer,
    centralizer_of_frattini_in_frattini,
    exponent_of,
    frattini,
    is_normal,
    is_strongly_frattinian,
    nilpotency_class,
    omega,
    omega_set,
    structure_profile,
    upper_central_series,
)


# -- the H tower -----------------------------------------------------------------------


@dataclass
class HTower:
    H: Subgroup
    H_i: list[Subgroup]            # H_i[k] = Omega_{k+1}(H)
    D: Optional[DerivationRing]    # Der(G, H), when H is abelian
    D1: Optional[DerivationRing]   # Der(G, H_1)
    h_abelian: bool


def compute_H_tower(G: FiniteGroup) -> HTower:
    """H = preimage of the order-p part of zeta_2/zeta_1, with its omega chain."""
    p = G.prime()
    ucs = upper_central_series(G)
    z1 = ucs[1] if len(ucs) > 1 else ucs[0]
    z2 = ucs[min(2, len(ucs) - 1)]
    Q, proj = quotient(G, z1)
    z2q = proj.push(z2)
    om = omega(z2q, 1)
    H = proj.preimage(om)
    levels = []
    k = 1
    while True:
        Hk = omega(H, k)
        levels.append(Hk)
        if Hk.mask == H.mask:
            break
        k += 1
    h_abelian = H.is_abelian()
    D = enumerate_derivations(G, H) if (h_abelian and is_normal(G, H)) else None
    D1 = enumerate_derivations(G, levels[0]) if (levels[0].is_abelian()
                                                 and is_normal(G, levels[0])) else None
    return HTower(H, levels, D, D1, h_abelian)


# -- verdicts -------------------------------------------------------------------------


@dataclass
class CheckVerdict:
    name: str
    status: str                    # "pass" | "fail" | "skipped"
    reason: str = ""
    details: dict = field(default_factory=dict)

    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "reason": self.reason,
                "details": self.details}


def check_lemma32(G: FiniteGroup) -> CheckVerdict:
    """H centralizes Phi(G); under C_G(Phi) <= Phi it is moreover abelian."""
    tower = compute_H_tower(G)
    phi = frattini(G)
    cphi = centralizer(G, phi)
    h_in_cphi = (tower.H.mask & cphi.mask) == tower.H.mask
    details = {"H": list(tower.H.members), "H_in_C_Phi": bool(h_in_cphi)}
    if not h_in_cphi:
        return CheckVerdict("lemma32", "fail", "H does not centralize Phi(G)", details)
    if (cphi.mask & phi.mask) == cphi.mask:
        details["condition"] = True
        details["H_abelian"] = tower.h_abelian
        if not tower.h_abelian:
            return CheckVerdict("lemma32", "fail",
                                "C_G(Phi) <= Phi holds but H is not abelian", details)
    else:
        details["condition"] = False
    return CheckVerdict("lemma32", "pass", "", details)


def check_lemma33(G: FiniteGroup) -> CheckVerdict:
    """D^2 <= Hom(G, Z(G)); D1^3 = 0; D/D1 right p-nil of exponent <= p^min(r,s)."""
    if not centralizer_of_frattini_in_frattini(G):
        return CheckVerdict("lemma33", "skipped", "C_G(Phi(G)) <= Phi(G) fails")
    tower = compute_H_tower(G)
    if tower.D is None or tower.D1 is None:
        return CheckVerdict("lemma33", "fail", "H tower rings unavailable",
                            {"h_abelian": tower.h_abelian})
    D, D1 = tower.D, tower.D1
    details: dict = {"size_D": len(D), "size_D1": len(D1)}

    d_squared = power_ideal(D.ring, 2)
    homs = set(D.hom_subset(center(G)))
    sq_ok = all(int(i) in homs for i in d_squared.members)
    details["D2_in_Hom_G_center"] = bool(sq_ok)

    d1_cubed = power_ideal(D1.ring, 3)
    cube_ok = d1_cubed.order == 1
    details["D1_cubed_trivial"] = bool(cube_ok)

    emb = []
    for d in D1.elements:
        j = D.index_of(d.values)
        assert j is not None
        emb.append(j)
    ideal = Subgroup(D.ring.additive, emb)
    quot, _ = quotient_ring(D.ring, ideal)
    pnil_ok = is_right_p_nil(quot)
    details["D_mod_D1_right_p_nil"] = bool(pnil_ok)

    prof = structure_profile(G)
    p = G.prime()
    bound = p ** min(prof.r, prof.s)
    exp_quot = quot.additive.exponent()
    details["exp_D_mod_D1"] = int(exp_quot)
    details["exp_bound"] = int(bound)
    exp_ok = exp_quot <= bound

    ok = sq_ok and cube_ok and pnil_ok and exp_ok
    return CheckVerdict("lemma33", "pass" if ok else "fail",
                        "" if ok else "one of the ring conditions fails", details)


def check_theorem31(G: FiniteGroup) -> CheckVerdict:
    """Class bounds for Aut_H(G) and Aut_{H1}(G), and the omega regularity."""
    if not centralizer_of_frattini_in_frattini(G):
        return CheckVerdict("theorem31", "skipped", "C_G(Phi(G)) <= Phi(G) fails")
    tower = compute_H_tower(G)
    if tower.D is None or tower.D1 is None:
        return CheckVerdict("theorem31", "fail", "H tower rings unavailable")
    p = G.prime()
    prof = structure_profile(G)
    details: dict = {}

    view = adjoint_group(tower.D.ring)
    aut_h = view.group
    cls_h = nilpotency_class(aut_h) if aut_h.order > 1 else 0
    bound = min(prof.r, prof.s) + 1
    details["class_Aut_H"] = cls_h
    details["bound"] = bound
    ok1 = cls_h <= bound

    view1 = adjoint_group(tower.D1.ring)
    aut_h1 = view1.group
    cls_h1 = nilpotency_class(aut_h1) if aut_h1.order > 1 else 0
    details["class_Aut_H1"] = cls_h1
    ok2 = cls_h1 <= 2

    ok3 = True
    if p > 2:
        whole = whole_subgroup(aut_h)
        # ring indices of D whose values stay inside H_i, restricted to units
        exp_ah = aut_h.exponent()
        max_i = 0
        e = exp_ah
        while e > 1:
            e //= p
            max_i += 1
        omega_results = []
        for i in range(1, max_i + 1):
            om_sub = omega(whole, i)
            om_set = set(omega_set(whole, i))
            target = tower.H_i[min(i, len(tower.H_i)) - 1]
            aut_hi_local = set()
            for local, ring_idx in enumerate(view.to_ring):
                vals = tower.D.elements[int(ring_idx)].values
                if all((target.mask >> int(v)) & 1 for v in np.unique(vals)):
                    aut_hi_local.add(local)
            agree = (set(om_sub.members) == om_set == aut_hi_local)
            omega_results.append({
                "i": i,
                "omega_subgroup": len(om_sub),
                "omega_set": len(om_set),
                "aut_Hi": len(aut_hi_local),
                "agree": bool(agree),
            })
            ok3 &= agree
        details["omega_levels"] = omega_results
    ok = ok1 and ok2 and ok3
    return CheckVerdict("theorem31", "pass" if ok else "fail",
                        "" if ok else "a class bound or omega level fails", details)


# -- Theorem 5.1 -----------------------------------------------------------------------


@dataclass
class BerkovichWitness:
    sigma: np.ndarray
    order: int
    branch: str
    inner_compared: int            # automorphisms the witness was checked against
    counts: dict

    def to_json(self) -> dict:
        return {
            "branch": self.branch,
            "witness": {
                "sigma": [int(v) for v in self.sigma],
                "order": self.order,
                "certificate_size": self.inner_compared,
            },
            "counts": self.counts,
        }


@dataclass
class Refusal:
    reason: str

    def to_json(self) -> dict:
        return {"refused": True, "reason": self.reason}


@dataclass
class Inconclusive:
    reason: str
    searched: list

    def to_json(self) -> dict:
        return {"inconclusive": True, "reason": self.reason, "searched": self.searched}


def _inner_vectors(G: FiniteGroup) -> dict[bytes, int]:
    """Distinct conjugation maps, keyed by their image vector."""
    out: dict[bytes, int] = {}
    for g in G.elements():
        vec = np.ascontiguousarray(G.conjugation_vector(g), dtype=np.int64)
        out.setdefault(vec.tobytes(), g)
    return out


def _vector_order(G: FiniteGroup, vec: np.ndarray) -> int:
    eye = np.arange(G.order)
    acc = vec.copy()
    k = 1
    while not np.array_equal(acc, eye):
        acc = vec[acc]
        k += 1
    return k


def _order_p_noninner(G: FiniteGroup, vectors: list[np.ndarray],
                      inner: dict[bytes, int]) -> Optional[np.ndarray]:
    """Lowest-index non-inner automorphism of order p in the list."""
    p = G.prime()
    for vec in vectors:
        v = np.ascontiguousarray(vec, dtype=np.int64)
        if v.tobytes() in inner:
            continue
        if _vector_order(G, v) == p:
            return v
    return None


def verify_theorem51(G: FiniteGroup) -> Union[BerkovichWitness, Refusal, Inconclusive]:
    """Produce a non-inner automorphism of order p for a coclass-2 group, odd p.

    Branches mirror the proof: (a) the generator-count criterion, (b) a
    bounded direct search when the group is not strongly frattinian, and
    (c) the main count through the exact sequence for Der(G, H1).
    """
    p = G.prime()
    if p == 2:
        return Refusal("p = 2 is out of scope")
    prof = structure_profile(G)
    if prof.coclass != 2:
        return Refusal(f"coclass {prof.coclass}, not 2")

    ucs = upper_central_series(G)
    z1 = ucs[1]
    tower = compute_H_tower(G)
    Q, proj = quotient(G, z1)
    h_bar = proj.push(tower.H)
    d_g = prof.dG
    d_zeta = len(abelian_invariants(center(G)))
    d_h_bar = len(abelian_invariants(h_bar)) if h_bar.order > 1 else 0
    counts: dict = {
        "dG": d_g, "d_center": d_zeta, "d_H_mod_Z1": d_h_bar,
        "product": d_g * d_zeta,
    }
    inner = _inner_vectors(G)

    if d_g * d_zeta != d_h_bar:
        omega_z = omega(center(G), 1)
        ring = enumerate_derivations(G, omega_z)
        vectors = []
        for d in ring.elements:
            sigma = aut_from_derivation(d)
            if sigma is not None:
                vectors.append(np.asarray(sigma.image, dtype=np.int64))
        found = _order_p_noninner(G, vectors, inner)
        if found is None:
            return Inconclusive(
                "generator-count criterion holds but no witness found in "
                "Aut over the order-p part of the center (finding)",
                [f"Omega_1(center), {len(vectors)} automorphisms"])
        return BerkovichWitness(found, p, "unequal_d_condition", len(inner), counts)

    if not is_strongly_frattinian(G):
        searched = []
        modules = [("Omega_1(center)", omega(center(G), 1)),
                   ("H_1", tower.H_i[0]),
                   ("H", tower.H)]
        seen_masks = set()
        for name, N in modules:
            if N.mask in seen_masks:
                continue
            seen_masks.add(N.mask)
            if not (N.is_abelian() and is_normal(G, N)):
                searched.append(f"{name}: skipped (not an abelian normal module)")
                continue
            ring = enumerate_derivations(G, N)
            vectors = []
            for d in ring.elements:
                sigma = aut_from_derivation(d)
                if sigma is not None:
                    vectors.append(np.asarray(sigma.image, dtype=np.int64))
            searched.append(f"{name}: {len(vectors)} automorphisms")
            found = _order_p_noninner(G, vectors, inner)
            if found is not None:
                counts["searched"] = searched
                return BerkovichWitness(found, p, "strongly_frattinian_reduction_inapplicable",
                                        len(inner), counts)
        return Inconclusive("not strongly frattinian; bounded search found no witness",
                            searched)

    # main branch: d(G) = 2, cyclic center of order p, strongly frattinian
    H1 = tower.H_i[0]
    Z = center(G)
    if len(abelian_invariants(Z)) != 1:
        return Refusal("strongly frattinian but center is not cyclic (unexpected)")
    Z1 = omega(Z, 1)
    hom_g_z1 = enumerate_derivations(G, Z1)
    counts["hom_GZ1"] = len(hom_g_z1)

    Qz, projz = quotient(G, Z1)
    h1_bar = projz.push(H1)
    hom_quot = enumerate_derivations(Qz, h1_bar)
    counts["hom_quot"] = len(hom_quot)

    cor = check_corollary47(G)
    h1_entry = None
    for entry in cor.modules:
        if set(entry["A"]) == set(H1.members):
            h1_entry = entry
    counts["corollary47_applies"] = cor.applies
    counts["corollary47_H1_exact"] = bool(h1_entry and h1_entry["exact"])

    D1 = enumerate_derivations(G, H1)
    counts["derG_H1"] = len(D1)
    view = adjoint_group(D1.ring)
    counts["aut_H1"] = len(view)

    aut_vectors = []
    for local in range(len(view.members)):
        ring_idx = int(view.to_ring[local])
        sigma = aut_from_derivation(D1.elements[ring_idx])
        assert sigma is not None, "adjoint members must be invertible derivations"
        aut_vectors.append(np.asarray(sigma.image, dtype=np.int64))

    inner_in_aut = [vec for vec in aut_vectors if vec.tobytes() in inner]
    counts["inner_part"] = len(inner_in_aut)

    zeta3 = ucs[min(3, len(ucs) - 1)]
    induced_by_zeta3 = set()
    for g in zeta3.members:
        induced_by_zeta3.add(
            np.ascontiguousarray(G.conjugation_vector(g), dtype=np.int64).tobytes())
    counts["zeta3_induced"] = len(induced_by_zeta3)
    counts["inner_part_equals_zeta3_induced"] = (
        {v.tobytes() for v in inner_in_aut} == induced_by_zeta3)

    found = _order_p_noninner(G, aut_vectors, inner)
    if found is None:
        return Inconclusive("main branch found no non-inner element of order p "
                            "in Aut_H1(G) (finding)", ["Aut_H1(G)"])
    orders = sorted({_vector_order(G, v) for v in aut_vectors if v.tobytes() !=
                     np.ascontiguousarray(np.arange(G.order), dtype=np.int64).tobytes()})
    counts["aut_H1_element_orders"] = orders
    return BerkovichWitness(found, p, "coclass2_main", len(inner), counts)
