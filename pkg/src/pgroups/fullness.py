"""Fullness of p-groups and exactness of the derivation restriction sequence.

A group is full with respect to a maximal subgroup C when every other
maximal subgroup M carries a non-normal index-p^2 subgroup K whose
intersection with C is normal and contains G^p.  For an elementary abelian
rank-2 normal non-central module A, fullness with respect to C_G(A) is
equivalent to surjectivity of the map Der(G, A) -> Hom(G/Z1, A/Z1); the
constructive half goes through an explicit scaling homomorphism alpha and a
closed-form derivation on the decomposition g = k x^j y^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import (
    DecompositionFailed,
    HypothesisFailed,
    NoSolution,
    NotCocycle,
    NotMaximal,
    NotWellDefined,
)
from .derivations import Derivation, DerivationRing, enumerate_derivations
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    minimal_generating_set,
    quotient,
    subgroup_closure,
)
from .structure import (
    center,
    centralizer,
    derived_subgroup,
    is_normal,
    is_powerful,
    lower_central_series,
    maximal_subgroups,
    power_subgroup,
    purely_nonabelian,
    subgroup_lattice,
    upper_central_series,
)


# -- fullness -------------------------------------------------------------------------


@dataclass
class MaximalRecord:
    M: Subgroup
    K: Subgroup
    checks: dict

    def to_json(self) -> dict:
        return {
            "M": list(self.M.members),
            "K": list(self.K.members),
            "checks": dict(self.checks),
        }


@dataclass
class FullnessWitness:
    C: Subgroup
    records: list[MaximalRecord]

    @property
    def is_full(self) -> bool:
        return True

    def record_for(self, M: Subgroup) -> MaximalRecord:
        for rec in self.records:
            if rec.M.mask == M.mask:
                return rec
        raise KeyError("no record for that maximal subgroup")

    def to_json(self) -> dict:
        return {"full": True, "C": list(self.C.members),
                "witnesses": [r.to_json() for r in self.records]}


@dataclass
class NotFull:
    C: Subgroup
    failing_M: Optional[Subgroup]
    reason: str

    @property
    def is_full(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"full": False, "C": list(self.C.members),
                "failing_M": list(self.failing_M.members) if self.failing_M else None,
                "reason": self.reason}


def is_full_wrt(G: FiniteGroup, C: Subgroup) -> Union[FullnessWitness, NotFull]:
    """Decide Definition-style fullness of G with respect to the maximal C.

    The K-search enumerates maximal subgroups of each M (hyperplanes over
    M/Phi(M)), lowest bitmask first, and records the first K passing all four
    checks.  Cyclic groups have no second maximal subgroup and are reported
    not full, matching the convention that full groups are never powerful.
    """
    maxes = maximal_subgroups(G)
    if all(M.mask != C.mask for M in maxes):
        raise NotMaximal(f"subgroup of order {C.order}")
    others = [M for M in maxes if M.mask != C.mask]
    if not others:
        return NotFull(C, None, "cyclic group: no maximal subgroup other than C")
    p = G.prime()
    Gp = power_subgroup(G, p)
    records = []
    for M in others:
        rec = _find_k(G, M, C, Gp)
        if rec is None:
            return NotFull(C, M, "no subgroup K of M passes all four checks")
        records.append(rec)
    return FullnessWitness(C, records)


def _find_k(G: FiniteGroup, M: Subgroup, C: Subgroup, Gp: Subgroup) -> Optional[MaximalRecord]:
    m_group, to_parent = M.as_group()
    candidates = []
    for km in maximal_subgroups(m_group):
        K = Subgroup(G, [int(to_parent[x]) for x in km.members], _validated=True)
        candidates.append(K)
    candidates.sort(key=lambda S: S.mask)
    p = G.prime()
    for K in candidates:
        checks = {"index_p2": K.order * p * p == G.order}
        checks["non_normal"] = not is_normal(G, K)
        KC = Subgroup(G, K.mask & C.mask, _validated=True)
        checks["KcapC_normal"] = is_normal(G, KC)
        checks["contains_Gp"] = (Gp.mask & KC.mask) == Gp.mask
        if all(checks.values()):
            return MaximalRecord(M, K, checks)
    return None


@dataclass
class Prop42Verdict:
    applies: bool
    reason: str
    full_wrt_all: Optional[bool] = None
    per_maximal: list = field(default_factory=list)
    quotient_agrees: Optional[bool] = None

    def passed(self) -> bool:
        return (not self.applies) or (bool(self.full_wrt_all) and bool(self.quotient_agrees))

    def to_json(self) -> dict:
        return {
            "applies": self.applies,
            "reason": self.reason,
            "full_wrt_all": self.full_wrt_all,
            "per_maximal": self.per_maximal,
            "quotient_agrees": self.quotient_agrees,
        }


def check_prop42(G: FiniteGroup) -> Prop42Verdict:
    """2-generated and not powerful implies full with respect to every maximal.

    Also verifies the quotient criterion: fullness passes to G / gamma_3 G^p
    and back, for every maximal subgroup.
    """
    d = len(minimal_generating_set(G))
    powerful = is_powerful(G)
    if d != 2 or powerful:
        return Prop42Verdict(False, f"d(G)={d}, powerful={powerful}: hypothesis not met")
    p = G.prime()
    lcs = lower_central_series(G)
    gamma3 = lcs[2] if len(lcs) > 2 else lcs[-1]
    N = subgroup_closure(G, set(gamma3.members) | set(power_subgroup(G, p).members))
    Q, proj = quotient(G, N)
    per_maximal = []
    all_full = True
    quot_agree = True
    for C in maximal_subgroups(G):
        res = is_full_wrt(G, C)
        qres = is_full_wrt(Q, proj.push(C))
        per_maximal.append({
            "C": list(C.members),
            "full": res.is_full,
            "quotient_full": qres.is_full,
        })
        all_full &= res.is_full
        quot_agree &= (res.is_full == qres.is_full)
    return Prop42Verdict(True, "d(G)=2 and not powerful", all_full, per_maximal, quot_agree)


# -- the lifting machinery ---------------------------------------------------------------


def alpha_hom(G: FiniteGroup, K: Subgroup, C: Subgroup, y: int, x: int) -> dict[int, int]:
    """The homomorphism K -> Z_p defined by [k, y] = x^alpha(k) mod K.

    Verified to be a homomorphism with kernel exactly K cap C; raises
    DecompositionFailed when some [k, y] falls outside <x> K.
    """
    p = G.prime()
    alpha: dict[int, int] = {}
    for k in K.members:
        c = G.commutator(k, y)
        val = None
        for a in range(p):
            xa_inv = G.inverse(G.power(x, a))
            if (K.mask >> int(G.mul[xa_inv, c])) & 1:
                val = a
                break
        if val is None:
            raise DecompositionFailed(
                f"[{k}, {y}] lies outside <x>K", {"k": int(k), "y": int(y), "x": int(x)})
        alpha[int(k)] = val
    for k1 in K.members:
        for k2 in K.members:
            if alpha[int(G.mul[k1, k2])] != (alpha[k1] + alpha[k2]) % p:
                raise DecompositionFailed(
                    "alpha is not a homomorphism", {"k1": int(k1), "k2": int(k2)})
    kernel = {k for k, a in alpha.items() if a == 0}
    if kernel != set(K.members) & set(_mask_members(C.mask)):
        raise DecompositionFailed("kernel of alpha is not K cap C", {})
    return alpha


def _mask_members(mask: int):
    x = 0
    while mask:
        if mask & 1:
            yield x
        mask >>= 1
        x += 1


def scale_z(G: FiniteGroup, K: Subgroup, u: int, alpha: dict[int, int],
            Z1: Optional[Subgroup] = None) -> int:
    """Solve [k, u] = z^alpha(k) on one k with alpha(k) != 0, then verify on all K.

    Raises NoSolution when the law cannot be satisfied (a theorem-violation
    finding for hypothesis-satisfying inputs).
    """
    p = G.prime()
    k0 = next((k for k, a in alpha.items() if a != 0), None)
    if k0 is None:
        z = G.identity
    else:
        c0 = G.commutator(k0, u)
        a0 = alpha[k0]
        inv_a0 = pow(a0, -1, p)
        z = G.power(c0, inv_a0)
    for k, a in alpha.items():
        if G.commutator(k, u) != G.power(z, a):
            raise NoSolution(
                "[k, u] != z^alpha(k)", {"k": int(k), "u": int(u), "z": int(z)})
    if Z1 is not None and z not in Z1:
        raise NoSolution("z escapes Z1", {"z": int(z)})
    return z


def lemma46_style_derivation(G: FiniteGroup, K: Subgroup, x: int, y: int,
                             u: int, z: int, A: Subgroup) -> Derivation:
    """The closed-form derivation g = k x^j y^i -> z^j u^i.

    Well-definedness is re-verified by exhaustive decomposition and the
    cocycle law is checked on all pairs; violations raise NotWellDefined or
    NotCocycle with the offending data.
    """
    p = G.prime()
    n = G.order
    values = np.full(n, -1, dtype=np.int64)
    for j in range(p):
        xj = G.power(x, j)
        zj = G.power(z, j)
        for i in range(p):
            gi = G.mul[xj, G.power(y, i)]
            val = int(G.mul[zj, G.power(u, i)])
            for k in K.members:
                g = int(G.mul[k, gi])
                if values[g] < 0:
                    values[g] = val
                elif values[g] != val:
                    raise NotWellDefined(
                        f"element {g} decomposes with conflicting values",
                        {"g": g, "values": [int(values[g]), val]})
    if (values < 0).any():
        missing = int(np.flatnonzero(values < 0)[0])
        raise NotWellDefined(f"element {missing} has no decomposition k x^j y^i",
                             {"g": missing})
    d = Derivation(G, A, values)
    if not d.satisfies_cocycle_law():
        pair = _first_cocycle_violation(d)
        raise NotCocycle(f"cocycle law fails at {pair}", {"pair": list(pair)})
    return d


def _first_cocycle_violation(d: Derivation) -> tuple[int, int]:
    G = d.group
    v = d.values
    for xx in G.elements():
        for yy in G.elements():
            lhs = int(v[G.mul[xx, yy]])
            rhs = int(G.mul[G.conjugate(int(v[xx]), yy), v[yy]])
            if lhs != rhs:
                return (xx, yy)
    raise AssertionError("no violation found")


# -- exactness for a rank-2 module ----------------------------------------------------------


@dataclass
class ModuleContext:
    """Shared data for one (G, A) exactness instance."""

    G: FiniteGroup
    A: Subgroup
    Z1: Subgroup
    C: Subgroup
    Q: FiniteGroup                 # G / Z1
    proj: GroupHom
    Aq: Subgroup                   # A / Z1 inside Q
    hom_ring: DerivationRing       # Der(Q, Aq) = Hom(G/Z1, A/Z1)


def module_context(G: FiniteGroup, A: Subgroup, *, require_pna: bool = True) -> ModuleContext:
    """Validate the Theorem-4.3 hypotheses and precompute the quotient data."""
    p = G.prime()
    if A.order != p * p:
        raise HypothesisFailed(f"|A| = {A.order}, expected p^2 = {p * p}")
    orders = G.element_orders()
    if any(int(orders[a]) > p for a in A.members):
        raise HypothesisFailed("A is not elementary abelian")
    if not A.is_abelian():
        raise HypothesisFailed("A is not abelian")
    if not is_normal(G, A):
        raise HypothesisFailed("A is not normal")
    Z = center(G)
    if (A.mask & ~Z.mask) == 0:
        raise HypothesisFailed("A is central")
    Z1 = Subgroup(G, A.mask & Z.mask, _validated=True)
    if Z1.order != p:
        raise HypothesisFailed(f"|A cap Z(G)| = {Z1.order}, expected {p}")
    if require_pna:
        pna = purely_nonabelian(G)
        if pna is None:
            raise HypothesisFailed("purely-non-abelian flag unknown at this order")
        if not pna:
            raise HypothesisFailed("G is not purely non-abelian")
    C = centralizer(G, A)
    if C.order * p != G.order:
        raise HypothesisFailed(f"C_G(A) has index {G.order // C.order}, expected {p}")
    Q, proj = quotient(G, Z1)
    Aq = proj.push(A)
    hom_ring = enumerate_derivations(Q, Aq)
    return ModuleContext(G, A, Z1, C, Q, proj, Aq, hom_ring)


@dataclass
class LiftResult:
    f_values: np.ndarray
    derivation: Derivation
    branch: str                    # "zero" | "M_ne_C" | "M_eq_C"

    def to_json(self) -> dict:
        return {"branch": self.branch,
                "f": [int(v) for v in self.f_values],
                "derivation": [int(v) for v in self.derivation.values]}


def lift_homomorphism(ctx: ModuleContext, f_values,
                      witness: Optional[FullnessWitness] = None) -> LiftResult:
    """Lift f in Hom(G/Z1, A/Z1) to a derivation G -> A, following the case
    split on M = ker f against C."""
    G, Q, proj = ctx.G, ctx.Q, ctx.proj
    f_values = np.asarray(f_values, dtype=np.int64)
    p = G.prime()
    if (f_values == Q.identity).all():
        zero = Derivation(G, ctx.A, np.full(G.order, G.identity, dtype=np.int64))
        return LiftResult(f_values, zero, "zero")
    if witness is None:
        res = is_full_wrt(G, ctx.C)
        if not res.is_full:
            raise HypothesisFailed(f"G is not full with respect to C_G(A): {res.reason}")
        witness = res

    ker_q = np.flatnonzero(f_values == Q.identity)
    M_members = [x for x in G.elements() if int(f_values[proj.image[x]]) == Q.identity]
    M = Subgroup(G, M_members, _validated=True)

    if M.mask != ctx.C.mask:
        rec = witness.record_for(M)
        K = rec.K
        y = next(c for c in ctx.C.members if c not in M)
        target = int(f_values[proj.image[y]])
        u = next(a for a in ctx.A.members
                 if a not in ctx.Z1 and int(proj.image[a]) == target)
        from .groups import _frattini_mask
        phi_mask = _frattini_mask(G)
        x = next(g for g in G.elements() if (phi_mask >> g) & 1 and g not in K)
        alpha = alpha_hom(G, K, ctx.C, y, x)
        z = scale_z(G, K, u, alpha, ctx.Z1)
        d = lemma46_style_derivation(G, K, x, y, u, z, ctx.A)
        branch = "M_ne_C"
    else:
        t = next(g for g in G.elements() if g not in ctx.C)
        target = int(f_values[proj.image[t]])
        u = next(a for a in ctx.A.members
                 if a not in ctx.Z1 and int(proj.image[a]) == target)
        # u^(1 + t + ... + t^(p-1)) must vanish before the formula makes sense
        acc = G.identity
        tk = G.identity
        for _ in range(p):
            acc = int(G.mul[acc, G.conjugate(u, tk)])
            tk = int(G.mul[tk, t])
        if acc != G.identity:
            raise NotCocycle("u^(1+t+...+t^(p-1)) != 1 in the M = C branch",
                             {"u": int(u), "t": int(t), "value": int(acc)})
        values = np.full(G.order, -1, dtype=np.int64)
        for i in range(p):
            ti = G.power(t, i)
            val = G.identity
            tk = G.identity
            for _ in range(i):
                val = int(G.mul[val, G.conjugate(u, tk)])
                tk = int(G.mul[tk, t])
            for m in ctx.C.members:
                g = int(G.mul[ti, m])
                if values[g] < 0:
                    values[g] = val
                elif values[g] != val:
                    raise NotWellDefined(f"element {g} decomposes two ways in t^i m",
                                         {"g": g})
        d = Derivation(G, ctx.A, values)
        if not d.satisfies_cocycle_law():
            pair = _first_cocycle_violation(d)
            raise NotCocycle(f"cocycle law fails at {pair}", {"pair": list(pair)})
        branch = "M_eq_C"

    induced = _tilde_values(ctx, d)
    if not np.array_equal(induced, f_values):
        raise NotCocycle("lifted derivation does not induce f", {})
    return LiftResult(f_values, d, branch)


def _tilde_values(ctx: ModuleContext, d: Derivation) -> np.ndarray:
    """The induced map on G/Z1, checked to be constant on cosets."""
    G, Q, proj = ctx.G, ctx.Q, ctx.proj
    out = np.full(Q.order, -1, dtype=np.int64)
    pim = np.asarray(proj.image, dtype=np.int64)
    vals = pim[d.values]
    for x in G.elements():
        q = int(pim[x])
        if out[q] < 0:
            out[q] = vals[x]
        elif out[q] != vals[x]:
            raise AssertionError("tilde image not constant on cosets")
    return out


@dataclass
class Theorem43Verdict:
    exact: bool
    full: bool
    agree: bool
    counts: dict
    branches: dict
    non_liftable_f: Optional[list]
    fullness: Union[FullnessWitness, NotFull]

    def passed(self) -> bool:
        return self.agree

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "full": self.full,
            "agree": self.agree,
            "counts": self.counts,
            "branches": self.branches,
            "non_liftable_f": self.non_liftable_f,
            "fullness": self.fullness.to_json(),
        }


def check_theorem43(G: FiniteGroup, A: Subgroup, *, require_pna: bool = True) -> Theorem43Verdict:
    """Decide exactness and fullness independently and compare.

    Exactness is established twice: by the counting identity
    |Der(G,A)| = |Hom(G,Z1)| * |Hom(G/Z1, A/Z1)| and by explicit
    surjectivity of the tilde map; the two must agree.  When the group is
    full, every f is additionally lifted constructively.
    """
    ctx = module_context(G, A, require_pna=require_pna)
    der_a = enumerate_derivations(G, A)
    hom_gz1 = enumerate_derivations(G, ctx.Z1)

    tilde_of = {}
    for i, d in enumerate(der_a.elements):
        w = _tilde_values(ctx, d)
        tilde_of[i] = ctx.hom_ring.index_of(w)
        assert tilde_of[i] is not None
    image = set(tilde_of.values())
    surjective = len(image) == len(ctx.hom_ring)
    count_exact = len(der_a) == len(hom_gz1) * len(ctx.hom_ring)
    if surjective != count_exact:
        raise AssertionError(
            "surjectivity and the counting identity disagree; implementation bug")
    exact = surjective

    fullness = is_full_wrt(G, ctx.C)
    full = fullness.is_full

    branches: dict[str, int] = {}
    if full:
        witness = fullness
        for j in range(len(ctx.hom_ring)):
            f_values = ctx.hom_ring.elements[j].values
            lifted = lift_homomorphism(ctx, f_values, witness)
            branches[lifted.branch] = branches.get(lifted.branch, 0) + 1

    non_liftable = None
    if not exact:
        missing = sorted(set(range(len(ctx.hom_ring))) - image)
        if missing:
            non_liftable = [int(v) for v in ctx.hom_ring.elements[missing[0]].values]

    p = G.prime()
    counts = {
        "der_G_A": len(der_a),
        "hom_G_Z1": len(hom_gz1),
        "hom_quot": len(ctx.hom_ring),
        "tilde_image": len(image),
        "p4": p ** 4,
    }
    return Theorem43Verdict(exact, full, exact == full, counts, branches,
                            non_liftable, fullness)


@dataclass
class Corollary47Verdict:
    applies: bool
    reason: str
    modules: list = field(default_factory=list)

    def passed(self) -> bool:
        return (not self.applies) or all(m["exact"] for m in self.modules)

    def to_json(self) -> dict:
        return {"applies": self.applies, "reason": self.reason, "modules": self.modules}


def enumerate_elementary_normal_in_zeta2(G: FiniteGroup) -> list[Subgroup]:
    """Nontrivial elementary abelian normal subgroups inside the second center."""
    p = G.prime()
    ucs = upper_central_series(G)
    zeta2 = ucs[min(2, len(ucs) - 1)]
    orders = G.element_orders()
    seed = [x for x in zeta2.members if int(orders[x]) <= p]
    W = subgroup_closure(G, seed)
    w_group, to_parent = W.as_group()
    out = []
    for sub in subgroup_lattice(w_group, cap=w_group.order):
        if sub.order == 1:
            continue
        members = [int(to_parent[x]) for x in sub.members]
        S = Subgroup(G, members, _validated=True)
        if any(int(orders[m]) > p for m in S.members):
            continue
        if not S.is_abelian():
            continue
        if not (S.mask & zeta2.mask) == S.mask:
            continue
        if not is_normal(G, S):
            continue
        out.append(S)
    out.sort(key=lambda S: (S.order, S.mask))
    return out


def check_corollary47(G: FiniteGroup) -> Corollary47Verdict:
    """Full with respect to all maximals + cyclic center: every elementary
    abelian normal A inside the second center yields an exact sequence.

    Rank >= 2 modules mod Z1 are decomposed into rank-1 pieces, each lifted
    through the Theorem-4.3 machinery, and the sum of lifts is verified to
    induce f; surjectivity is also confirmed by direct enumeration.
    """
    from .structure import abelian_invariants
    Z = center(G)
    invs = abelian_invariants(Z)
    if len(invs) > 1:
        return Corollary47Verdict(False, "center is not cyclic")
    for C in maximal_subgroups(G):
        if not is_full_wrt(G, C).is_full:
            return Corollary47Verdict(False, "G is not full w.r.t. all maximal subgroups")

    p = G.prime()
    modules = []
    for A in enumerate_elementary_normal_in_zeta2(G):
        entry: dict = {"A": list(A.members), "rank": 0, "exact": None, "mode": None}
        Z1 = Subgroup(G, A.mask & Z.mask, _validated=True)
        entry["Z1"] = list(Z1.members)
        if (A.mask & ~Z.mask) == 0:
            entry["mode"] = "central"
            entry["exact"] = True        # A/Z1 trivial: the tilde target vanishes
            entry["rank"] = 0
            modules.append(entry)
            continue
        rank_quot = _log(A.order // Z1.order, p)
        entry["rank"] = rank_quot
        Q, proj = quotient(G, Z1)
        Aq = proj.push(A)
        hom_ring = enumerate_derivations(Q, Aq)
        der_a = enumerate_derivations(G, A)
        ctx_cache: dict[int, tuple] = {}

        basis = _coset_basis(G, A, Z1)
        ok = True
        for f in hom_ring.elements:
            pieces = _decompose_hom(Q, Aq, proj, f.values, basis, Z1, G, p)
            total = np.full(G.order, G.identity, dtype=np.int64)
            for (Ai_members, fi_values) in pieces:
                Ai = subgroup_closure(G, list(Z1.members) + list(Ai_members))
                key = Ai.mask
                if key not in ctx_cache:
                    ctx = module_context(G, Ai, require_pna=False)
                    w = is_full_wrt(G, ctx.C)
                    if not w.is_full:
                        raise HypothesisFailed("component module is not full")
                    ctx_cache[key] = (ctx, w)
                ctx, w = ctx_cache[key]
                fi_on_ctx = _transport_hom(ctx, fi_values, Q, proj)
                lifted = lift_homomorphism(ctx, fi_on_ctx, w)
                total = G.mul[total, lifted.derivation.values].astype(np.int64)
            d = Derivation(G, A, total)
            if not d.satisfies_cocycle_law():
                ok = False
                break
            if der_a.index_of(total) is None:
                ok = False
                break
            induced = np.full(Q.order, -1, dtype=np.int64)
            pim = np.asarray(proj.image, dtype=np.int64)
            vals = pim[total]
            for x in G.elements():
                q = int(pim[x])
                if induced[q] < 0:
                    induced[q] = vals[x]
                elif induced[q] != vals[x]:
                    ok = False
            if ok and not np.array_equal(induced, f.values):
                ok = False
            if not ok:
                break
        # independent surjectivity count
        image = set()
        for d in der_a.elements:
            w = np.full(Q.order, -1, dtype=np.int64)
            pim = np.asarray(proj.image, dtype=np.int64)
            vals = pim[d.values]
            for x in G.elements():
                q = int(pim[x])
                if w[q] < 0:
                    w[q] = vals[x]
            image.add(w.tobytes())
        surjective = len(image) == len(hom_ring)
        entry["mode"] = "decomposed" if rank_quot >= 2 else "rank1"
        entry["exact"] = bool(ok and surjective)
        entry["count_der"] = len(der_a)
        entry["count_hom"] = len(hom_ring)
        modules.append(entry)
    return Corollary47Verdict(True, "hypotheses hold", modules)


def _log(x: int, p: int) -> int:
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


def _coset_basis(G: FiniteGroup, A: Subgroup, Z1: Subgroup) -> list[int]:
    """Representatives of a basis of A/Z1 (greedy, lowest element index)."""
    basis = []
    span = Z1
    for a in A.members:
        if a not in span:
            basis.append(int(a))
            span = subgroup_closure(G, list(span.members) + [a])
            if span.mask == A.mask:
                break
    return basis


def _decompose_hom(Q, Aq, proj, f_values, basis, Z1, G, p):
    """Split f: Q -> A/Z1 into components along the basis of A/Z1."""
    coords_of = {}
    for exps in np.ndindex(*([p] * len(basis))):
        g = G.identity
        for b, e in zip(basis, exps):
            g = int(G.mul[g, G.power(b, int(e))])
        q = int(proj.image[g])
        if q not in coords_of:
            coords_of[q] = exps
    pieces = []
    for i, b in enumerate(basis):
        fi = np.empty(Q.order, dtype=np.int64)
        for x in range(Q.order):
            e = coords_of[int(f_values[x])][i]
            gi = G.power(b, int(e))
            fi[x] = int(proj.image[gi])
        pieces.append(((b,), fi))
    return pieces


def _transport_hom(ctx: ModuleContext, fi_values: np.ndarray, Q_outer, proj_outer):
    """Re-express a component hom on the context's own quotient.

    All contexts share Z1, so the quotient groups coincide element-for-element
    and the vector can be reused directly.
    """
    return fi_values
