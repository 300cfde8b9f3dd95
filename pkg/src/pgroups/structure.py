"""Named subgroups and numeric invariants of finite p-groups.

Everything here is a pure function of an immutable FiniteGroup; expensive
intermediates (commutator table, element orders, the subgroup lattice) are
cached on the group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .errors import (
    CrossCheckFailed,
    LatticeCapExceeded,
    NotNilpotent,
    NotPPower,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    minimal_generating_set,
    quotient,
    subgroup_closure,
    trivial_like,
    whole_subgroup,
)

LATTICE_CAP = 243  # 3**5; purely-non-abelian detection is "unknown" beyond this


# -- centralizers and friends ----------------------------------------------------

def center(G: FiniteGroup) -> Subgroup:
    if "center" not in G._cache:
        eq = G.mul == G.mul.T
        members = np.flatnonzero(eq.all(axis=1))
        G._cache["center"] = Subgroup(G, map(int, members), _validated=True)
    return G._cache["center"]


def centralizer(G: FiniteGroup, S: Union[Subgroup, int, Iterable[int]]) -> Subgroup:
    if isinstance(S, Subgroup):
        elems = S.member_array()
    elif isinstance(S, (int, np.integer)):
        elems = np.array([int(S)])
    else:
        elems = np.asarray(sorted(set(map(int, S))), dtype=np.int64)
    ok = np.ones(G.order, dtype=bool)
    for s in elems:
        ok &= G.mul[:, s] == G.mul[s, :]
    return Subgroup(G, map(int, np.flatnonzero(ok)), _validated=True)


def normalizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    mem = S.member_array()
    out = []
    for g in G.elements():
        conj = G.mul[G.mul[G.inv[g], mem], g]
        if all((S.mask >> int(c)) & 1 for c in conj):
            out.append(g)
    return Subgroup(G, out, _validated=True)


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    mem = S.member_array()
    for g in G.elements():
        conj = G.mul[G.mul[G.inv[g], mem], g]
        for c in conj:
            if not (S.mask >> int(c)) & 1:
                return False
    return True


# -- central series -----------------------------------------------------------------

def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    """[1 = Z_0, Z_1, ..., Z_c = G]; raises NotNilpotent if it stalls."""
    if "ucs" in G._cache:
        return G._cache["ucs"]
    comm = G.commutator_table()
    series = [trivial_like(G)]
    while not series[-1].is_whole():
        mask = series[-1].mask
        in_prev = np.zeros(G.order, dtype=bool)
        for m in series[-1].members:
            in_prev[m] = True
        nxt = np.flatnonzero(in_prev[comm].all(axis=1))
        new = Subgroup(G, map(int, nxt), _validated=True)
        if new.order == series[-1].order:
            raise NotNilpotent(f"upper central series stuck at order {new.order}")
        series.append(new)
    G._cache["ucs"] = series
    return series


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """[G = gamma_1, gamma_2, ..., 1]; raises NotNilpotent if it stalls."""
    if "lcs" in G._cache:
        return G._cache["lcs"]
    comm = G.commutator_table()
    series = [whole_subgroup(G)]
    while not series[-1].is_trivial():
        mem = series[-1].member_array()
        gens = np.unique(comm[np.ix_(mem, np.arange(G.order))])
        new = subgroup_closure(G, map(int, gens))
        if new.order == series[-1].order:
            raise NotNilpotent(f"lower central series stuck at order {new.order}")
        series.append(new)
    G._cache["lcs"] = series
    return series


def nilpotency_class(G: FiniteGroup) -> int:
    return len(upper_central_series(G)) - 1


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    if "derived" not in G._cache:
        comm = G.commutator_table()
        G._cache["derived"] = subgroup_closure(G, map(int, np.unique(comm)))
    return G._cache["derived"]


# -- Frattini and maximal subgroups ---------------------------------------------------

def _agemo_gens(G: FiniteGroup, q: int) -> set[int]:
    return {G.power(x, q) for x in G.elements()}


def power_subgroup(G: FiniteGroup, q: int) -> Subgroup:
    """<x^q : x in G> for a p-power q."""
    p = G.prime()
    m = q
    while m > 1 and m % p == 0:
        m //= p
    if m != 1:
        raise NotPPower(q)
    return subgroup_closure(G, _agemo_gens(G, q))


def frattini(G: FiniteGroup) -> Subgroup:
    """Intersection of all maximal subgroups, cross-checked against <G^p, [G,G]>."""
    if "frattini" in G._cache:
        return G._cache["frattini"]
    p = G.prime()
    phi0 = subgroup_closure(G, _agemo_gens(G, p) | set(derived_subgroup(G).members))
    inter = (1 << G.order) - 1
    for M in maximal_subgroups(G):
        inter &= M.mask
    if inter != phi0.mask:
        raise CrossCheckFailed(
            "Frattini via maximal-subgroup intersection != <G^p, [G,G]>")
    G._cache["frattini"] = phi0
    return phi0


def _quotient_coordinates(G: FiniteGroup, N: Subgroup) -> tuple[list[int], np.ndarray, int]:
    """Coordinates of the elementary abelian quotient G/N.

    Returns (basis preimages, coordinate matrix of shape (|G|, d), p).
    """
    p = G.prime()
    Q, proj = quotient(G, N)
    gens = minimal_generating_set(Q)
    d = len(gens)
    # coordinates in the quotient by brute scan over exponent tuples
    coord_of = {Q.identity: (0,) * d}
    frontier = [Q.identity]
    while frontier:
        nxt = []
        for x in frontier:
            cx = coord_of[x]
            for i, g in enumerate(gens):
                y = int(Q.mul[x, g])
                if y not in coord_of:
                    cy = list(cx)
                    cy[i] = (cy[i] + 1) % p
                    coord_of[y] = tuple(cy)
                    nxt.append(y)
        frontier = nxt
    coords = np.zeros((G.order, d), dtype=np.int64)
    for x in G.elements():
        coords[x] = coord_of[int(proj.image[x])]
    basis_pre = []
    for g in gens:
        basis_pre.append(int(np.flatnonzero(proj.image == g)[0]))
    return basis_pre, coords, p


def maximal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All index-p subgroups, as preimages of hyperplanes of G/Phi(G)."""
    if G.order == 1:
        return []
    if "maximals" in G._cache:
        return G._cache["maximals"]
    p = G.prime()
    phi0 = subgroup_closure(G, _agemo_gens(G, p) | set(derived_subgroup(G).members))
    _, coords, p = _quotient_coordinates(G, phi0)
    d = coords.shape[1]
    out = []
    for func in _normalized_functionals(d, p):
        vals = coords @ np.array(func, dtype=np.int64) % p
        members = np.flatnonzero(vals == 0)
        out.append(Subgroup(G, map(int, members), _validated=True))
    out.sort(key=lambda S: S.mask)
    G._cache["maximals"] = out
    return out


def _normalized_functionals(d: int, p: int):
    """Nonzero functionals on F_p^d up to scaling: first nonzero entry is 1."""
    from itertools import product
    for lead in range(d):
        for rest in product(range(p), repeat=d - lead - 1):
            yield (0,) * lead + (1,) + rest


# -- omega and abelian invariants ---------------------------------------------------

def omega_set(H: Subgroup, n: int) -> tuple[int, ...]:
    """Raw element set of members of H with order dividing p^n."""
    G = H.parent
    if G.order == 1:
        return tuple(H.members)
    p = G.prime()
    q = p ** n
    orders = G.element_orders()
    return tuple(x for x in H.members if q % int(orders[x]) == 0)


def omega(H: Subgroup, n: int) -> Subgroup:
    """Subgroup generated by the elements of H of order dividing p^n."""
    return subgroup_closure(H.parent, omega_set(H, n))


def exponent_of(H: Subgroup) -> int:
    orders = H.parent.element_orders()
    return int(max(orders[x] for x in H.members))


def abelian_invariants(H: Subgroup) -> tuple[int, ...]:
    """Invariant factors (largest first) of an abelian subgroup."""
    A, _ = H.as_group()
    from .groups import _abelian_invariants_table
    return tuple(_abelian_invariants_table(A))


def min_gens_abelian(H: Subgroup) -> int:
    """d(H) for abelian H, via the invariant-factor decomposition."""
    return len(abelian_invariants(H))


# -- subgroup lattice -----------------------------------------------------------------

def subgroup_lattice(G: FiniteGroup, *, cap: int = LATTICE_CAP) -> list[Subgroup]:
    """Every subgroup of G, by the cyclic-extension method.

    Subgroups of order p^(k+1) are obtained from those of order p^k by
    adjoining a normalizing element x with x^p inside (prime order mod the
    subgroup); deduplicated by bitmask.
    """
    if G.order > cap:
        raise LatticeCapExceeded(G.order, cap)
    if "lattice" not in G._cache:
        p = G.prime()
        level = {trivial_like(G).mask}
        all_masks = set(level)
        while level:
            nxt = set()
            for mask in level:
                S = Subgroup(G, mask, _validated=True)
                N = normalizer(G, S)
                mem = S.member_array()
                for x in N.members:
                    if (mask >> x) & 1:
                        continue
                    if not (mask >> G.power(x, p)) & 1:
                        continue
                    # union of cosets S * x^k, closed since x normalizes S
                    new_mask = mask
                    xi = x
                    for _ in range(p - 1):
                        for m in map(int, G.mul[mem, xi]):
                            new_mask |= 1 << m
                        xi = int(G.mul[xi, x])
                    if new_mask not in all_masks:
                        all_masks.add(new_mask)
                        nxt.add(new_mask)
            level = nxt
        subs = [Subgroup(G, m, _validated=True) for m in sorted(all_masks)]
        G._cache["lattice"] = subs
    return G._cache["lattice"]


def purely_nonabelian(G: FiniteGroup, *, lattice_cap: int = LATTICE_CAP) -> Optional[bool]:
    """True iff G has no nontrivial abelian direct factor; None above the cap.

    A nontrivial abelian direct factor exists iff some cyclic central subgroup
    has a normal complement.  Two shortcuts settle most groups before the
    lattice search: an order-p central element outside Phi(G) spans a direct
    factor, and if the whole center lies inside Phi(G) no cyclic central
    subgroup can avoid it.
    """
    if G.order == 1:
        return False
    Z = center(G)
    if Z.is_whole():
        return False  # abelian groups are never purely non-abelian
    from .groups import _frattini_mask
    phi_mask = _frattini_mask(G)
    p = G.prime()
    orders = G.element_orders()
    omega_z = [x for x in Z.members if int(orders[x]) in (1, p)]
    if any(not (phi_mask >> x) & 1 for x in omega_z):
        return False  # Lemma-style splitting: <z> x M for a maximal M avoiding z
    if all((phi_mask >> x) & 1 for x in Z.members):
        return True  # a cyclic direct summand would meet G outside Phi(G)
    try:
        lattice = subgroup_lattice(G, cap=lattice_cap)
    except LatticeCapExceeded:
        return None
    # distinct cyclic central subgroups
    cyclics = {}
    for z in Z.members:
        if z == G.identity:
            continue
        C = subgroup_closure(G, [z])
        cyclics[C.mask] = C
    by_order: dict[int, list[Subgroup]] = {}
    for S in lattice:
        by_order.setdefault(S.order, []).append(S)
    identity_mask = 1 << G.identity
    for C in cyclics.values():
        want = G.order // C.order
        for S in by_order.get(want, []):
            if (S.mask & C.mask) == identity_mask and is_normal(G, S):
                return False
    return True


# -- powerfulness and the frattinian conditions --------------------------------------

def is_powerful(G: FiniteGroup) -> bool:
    """gamma_2(G) <= G^p for odd p; gamma_2(G) <= G^4 for p = 2."""
    p = G.prime()
    q = 4 if p == 2 else p
    target = power_subgroup(G, q)
    return derived_subgroup(G) <= target


def centralizer_of_frattini_in_frattini(G: FiniteGroup) -> bool:
    """C_G(Phi(G)) <= Phi(G)."""
    phi = frattini(G)
    return centralizer(G, phi) <= phi


def is_strongly_frattinian(G: FiniteGroup) -> bool:
    """C_G(Z(Phi(G))) = Phi(G)."""
    phi = frattini(G)
    phi_group, to_parent = phi.as_group()
    zphi_local = center(phi_group)
    zphi = Subgroup(G, [int(to_parent[x]) for x in zphi_local.members], _validated=True)
    return centralizer(G, zphi).mask == phi.mask


# -- the profile -----------------------------------------------------------------------

@dataclass
class StructureProfile:
    """The numeric invariants the theorem hypotheses quantify over."""

    p: int
    n: int                       # |G| = p^n
    nilpotency_class: int
    coclass: int
    dG: int
    exponent: int
    r: int                       # p^r = exp(G / gamma_2(G))
    s: int                       # p^s = exp(center)
    is_powerful: bool
    is_purely_nonabelian: Optional[bool]
    is_strongly_frattinian: bool
    cgphi_in_phi: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "class": self.nilpotency_class,
            "coclass": self.coclass,
            "dG": self.dG,
            "exponent": self.exponent,
            "r": self.r,
            "s": self.s,
            "is_powerful": self.is_powerful,
            "is_purely_nonabelian": self.is_purely_nonabelian,
            "is_strongly_frattinian": self.is_strongly_frattinian,
            "cgphi_in_phi": self.cgphi_in_phi,
        }


def _log_p(x: int, p: int) -> int:
    k = 0
    while x > 1:
        if x % p:
            raise NotPPower(x)
        x //= p
        k += 1
    return k


def structure_profile(G: FiniteGroup, *, lattice_cap: int = LATTICE_CAP) -> StructureProfile:
    key = ("profile", lattice_cap)
    if key in G._cache:
        return G._cache[key]
    p = G.prime()
    n = _log_p(G.order, p)
    cls = nilpotency_class(G)
    gamma2 = derived_subgroup(G)
    Gbar, _ = quotient(G, gamma2)
    r = _log_p(Gbar.exponent(), p)
    s = _log_p(exponent_of(center(G)), p)
    prof = StructureProfile(
        p=p,
        n=n,
        nilpotency_class=cls,
        coclass=n - cls,
        dG=len(minimal_generating_set(G)),
        exponent=G.exponent(),
        r=r,
        s=s,
        is_powerful=is_powerful(G),
        is_purely_nonabelian=purely_nonabelian(G, lattice_cap=lattice_cap),
        is_strongly_frattinian=is_strongly_frattinian(G),
        cgphi_in_phi=centralizer_of_frattini_in_frattini(G),
    )
    G._cache[key] = prof
    return prof
