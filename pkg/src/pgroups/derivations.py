"""Derivation rings Der(G, A) and the automorphism groups they encode.

For an abelian normal subgroup A of G (a G-module via conjugation), a
derivation is a map d: G -> A with d(xy) = d(x)^y d(y).  Derivations
correspond to endomorphisms x -> x*d(x), which makes the full enumeration
feasible: assign images over a minimal generating set, extend by closure,
keep the consistent ones.  Addition is pointwise, multiplication is
(d1 d2)(x) = d2(d1(x)), and the adjoint group of the resulting ring is
isomorphic to Aut_A(G), the automorphisms moving every element within its
A-coset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    NotAbelian,
    NotInAutA,
    NotInvariant,
    NotNormal,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    generation_tree,
    minimal_generating_set,
    quotient,
)
from .rings import FiniteRing
from .structure import is_normal


class Derivation:
    """A total map G -> A satisfying the cocycle law, stored as a value vector."""

    __slots__ = ("group", "module", "values")

    def __init__(self, group: FiniteGroup, module: Subgroup, values):
        self.group = group
        self.module = module
        self.values = np.ascontiguousarray(values, dtype=np.int64)
        self.values.setflags(write=False)

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def key(self) -> bytes:
        return self.values.tobytes()

    def satisfies_cocycle_law(self) -> bool:
        """Exhaustive check of d(xy) = d(x)^y * d(y) over all pairs."""
        G = self.group
        v = self.values
        m = G.mul
        lhs = v[m]                                   # d(xy)
        ys = np.arange(G.order)
        for x in G.elements():
            dx = int(v[x])
            conj = m[m[G.inv[ys], dx], ys]           # y -> y^-1 d(x) y
            if not np.array_equal(lhs[x], m[conj, v]):
                return False
        return True

    def endomorphism_vector(self) -> np.ndarray:
        """The map x -> x * d(x)."""
        G = self.group
        return G.mul[np.arange(G.order), self.values]

    def is_zero(self) -> bool:
        return bool((self.values == self.group.identity).all())

    def __eq__(self, other):
        return (isinstance(other, Derivation) and other.group is self.group
                and np.array_equal(other.values, self.values))

    def __hash__(self):
        return hash((id(self.group), self.key()))

    def __repr__(self):
        return f"Derivation(G order {self.group.order}, A order {self.module.order})"


class DerivationRing:
    """The ring of all derivations G -> A, fully materialized.

    The element list is built eagerly; the FiniteRing tables (with their
    exhaustive axiom validation) are built on first access to .ring, since
    witness searches only need the elements.
    """

    def __init__(self, group: FiniteGroup, module: Subgroup,
                 elements: list[Derivation]):
        self.group = group
        self.module = module
        self.elements = elements
        self._index = {d.key(): i for i, d in enumerate(elements)}
        self._ring: Optional[FiniteRing] = None

    @property
    def ring(self) -> FiniteRing:
        if self._ring is None:
            self._ring = _build_ring(self.group, self.elements)
        return self._ring

    def __len__(self):
        return len(self.elements)

    def index_of(self, values) -> Optional[int]:
        key = np.ascontiguousarray(values, dtype=np.int64).tobytes()
        return self._index.get(key)

    def zero_index(self) -> int:
        G = self.group
        idx = self.index_of(np.full(G.order, G.identity, dtype=np.int64))
        assert idx is not None
        return idx

    def hom_subset(self, target: Subgroup) -> list[int]:
        """Indices of derivations that are homomorphisms into the target subgroup."""
        G = self.group
        out = []
        for i, d in enumerate(self.elements):
            v = d.values
            if not all((target.mask >> int(a)) & 1 for a in np.unique(v)):
                continue
            if np.array_equal(v[G.mul], G.mul[np.ix_(v, v)]):
                out.append(i)
        return out

    def __repr__(self):
        return (f"DerivationRing(|G|={self.group.order}, |A|={self.module.order}, "
                f"size={len(self.elements)})")


def enumerate_derivations(G: FiniteGroup, A: Subgroup) -> DerivationRing:
    """Build Der(G, A) completely; raises NotAbelian / NotNormal on a bad module."""
    if A.parent is not G:
        raise ValueError("module must be a subgroup of G")
    if not A.is_abelian():
        mem = A.members
        for a in mem:
            for b in mem:
                if G.mul[a, b] != G.mul[b, a]:
                    raise NotAbelian(int(a), int(b))
    if not is_normal(G, A):
        mem = A.member_array()
        for g in G.elements():
            for c in map(int, G.mul[G.mul[G.inv[g], mem], g]):
                if not (A.mask >> c) & 1:
                    raise NotNormal(g, int(mem[0]))

    gens = minimal_generating_set(G)
    if not gens:  # trivial group: only the zero derivation
        zero = Derivation(G, A, np.array([G.identity]))
        return DerivationRing(G, A, [zero])

    tree = generation_tree(G, gens)
    n = G.order
    gm = G.mul
    arange = np.arange(n)
    found: list[np.ndarray] = []
    for assignment in itertools.product(A.members, repeat=len(gens)):
        images = [int(gm[g, a]) for g, a in zip(gens, assignment)]
        phi = np.empty(n, dtype=np.int64)
        phi[G.identity] = G.identity
        ok = True
        for y, x, i in tree:
            phi[y] = gm[phi[x], images[i]]
        for i, g in enumerate(gens):
            if not np.array_equal(phi[gm[:, g]], gm[phi, images[i]]):
                ok = False
                break
        if ok:
            found.append(phi)

    derivations = []
    for phi in found:
        values = gm[G.inv[arange], phi]
        derivations.append(Derivation(G, A, values))

    return DerivationRing(G, A, derivations)


def _build_ring(G: FiniteGroup, derivations: list[Derivation]) -> FiniteRing:
    """Ring tables over derivation indices, keyed by values on the generators.

    A derivation is determined by its generator values, so table entries are
    resolved through the encoded generator tuple rather than whole vectors.
    """
    m = len(derivations)
    if m == 1:
        return FiniteRing.make_ring(np.array([[0]]), np.array([[0]]))
    gens = np.array(minimal_generating_set(G), dtype=np.int64)
    vals = np.stack([d.values for d in derivations]).astype(np.int64)
    n = G.order

    def encode(mat: np.ndarray) -> np.ndarray:
        key = np.zeros(mat.shape[0], dtype=np.int64)
        for c in range(mat.shape[1]):
            key = key * n + mat[:, c]
        return key

    gen_vals = vals[:, gens]                      # m x d
    index = {int(k): i for i, k in enumerate(encode(gen_vals))}
    add = np.empty((m, m), dtype=np.int64)
    mul = np.empty((m, m), dtype=np.int64)
    gm = G.mul
    for i in range(m):
        vi = vals[i]
        summed = gm[gen_vals[i][None, :], gen_vals].astype(np.int64)  # m x d
        composed = vals[:, vi[gens]]                                   # m x d
        for j, k in enumerate(encode(summed)):
            add[i, j] = index[int(k)]
        for j, k in enumerate(encode(composed)):
            mul[i, j] = index[int(k)]
    return FiniteRing.make_ring(add, mul, max_order=max(m, 1))


def aut_from_derivation(d: Derivation) -> Optional[GroupHom]:
    """x -> x * d(x) as an automorphism, or None when it is not bijective."""
    phi = d.endomorphism_vector()
    if len(np.unique(phi)) != d.group.order:
        return None
    return GroupHom(d.group, d.group, phi)


def derivation_from_aut(sigma: GroupHom, A: Subgroup) -> Derivation:
    """d(x) = x^-1 sigma(x); raises NotInAutA if some value escapes A."""
    G = sigma.source
    if sigma.target is not G:
        raise ValueError("expected an automorphism of G")
    values = G.mul[G.inv[np.arange(G.order)], sigma.image]
    for x, v in enumerate(map(int, values)):
        if not (A.mask >> v) & 1:
            raise NotInAutA(x)
    return Derivation(G, A, values)


@dataclass
class AutNView:
    """Aut_N(G): automorphisms with x^-1 sigma(x) in N for every x."""

    group: FiniteGroup
    N: Subgroup
    automorphisms: list[np.ndarray]    # image vectors, deterministic order
    method: str

    def __len__(self):
        return len(self.automorphisms)

    def vector_set(self) -> set[bytes]:
        return {np.ascontiguousarray(a).tobytes() for a in self.automorphisms}

    def composition_group(self) -> FiniteGroup:
        """The abstract group under left-to-right composition."""
        vecs = self.automorphisms
        index = {np.ascontiguousarray(v).tobytes(): i for i, v in enumerate(vecs)}
        m = len(vecs)
        table = np.empty((m, m), dtype=np.int64)
        for i, vi in enumerate(vecs):
            for j, vj in enumerate(vecs):
                table[i, j] = index[np.ascontiguousarray(vj[vi]).tobytes()]
        return FiniteGroup.from_cayley_table(table, max_order=max(m, 1))


def aut_n(G: FiniteGroup, N: Subgroup, *, method: str = "auto") -> AutNView:
    """Compute Aut_N(G) either through Der(G, N)'s adjoint group or by search.

    method: "derivation" needs N abelian and normal; "search" assigns
    generator images inside their N-cosets and keeps the automorphisms whose
    displacements all land in N; "auto" picks the first that applies.
    """
    if method not in ("auto", "derivation", "search"):
        raise ValueError(f"unknown method {method!r}")
    use_derivation = method == "derivation"
    if method == "auto":
        use_derivation = A_is_admissible(G, N)
    if use_derivation:
        ring = enumerate_derivations(G, N)
        vecs = []
        for d in ring.elements:
            sigma = aut_from_derivation(d)
            if sigma is not None:
                vecs.append(np.asarray(sigma.image, dtype=np.int64))
        return AutNView(G, N, vecs, "derivation")
    return _aut_n_search(G, N)


def A_is_admissible(G: FiniteGroup, N: Subgroup) -> bool:
    return N.is_abelian() and is_normal(G, N)


def _aut_n_search(G: FiniteGroup, N: Subgroup) -> AutNView:
    gens = minimal_generating_set(G)
    if not gens:
        return AutNView(G, N, [np.array([G.identity])], "search")
    tree = generation_tree(G, gens)
    gm = G.mul
    vecs = []
    coset_lists = []
    for g in gens:
        coset_lists.append([int(gm[g, a]) for a in N.members])
    for images in itertools.product(*coset_lists):
        phi = np.empty(G.order, dtype=np.int64)
        phi[G.identity] = G.identity
        for y, x, i in tree:
            phi[y] = gm[phi[x], images[i]]
        ok = True
        for i, g in enumerate(gens):
            if not np.array_equal(phi[gm[:, g]], gm[phi, images[i]]):
                ok = False
                break
        if not ok:
            continue
        if len(np.unique(phi)) != G.order:
            continue
        disp = gm[G.inv[np.arange(G.order)], phi]
        if all((N.mask >> int(v)) & 1 for v in np.unique(disp)):
            vecs.append(phi)
    return AutNView(G, N, vecs, "search")


def verify_automorphism_correspondence(G: FiniteGroup, A: Subgroup) -> dict:
    """Check the isomorphism between Aut_A(G) and the adjoint group of Der(G, A).

    Computes both sides independently (derivation enumeration vs direct
    generator-image search), matches the two element sets through
    sigma -> x^-1 sigma(x), and verifies the correspondence turns composition
    into the circle operation on every pair.
    """
    from .rings import adjoint_group, nilpotency_degree
    from .structure import nilpotency_class

    ring = enumerate_derivations(G, A)
    view = adjoint_group(ring.ring)
    direct = _aut_n_search(G, A)

    # each adjoint member must give an automorphism, and vice versa
    adjoint_vecs = {}
    for local, ring_idx in enumerate(view.to_ring):
        sigma = aut_from_derivation(ring.elements[int(ring_idx)])
        if sigma is None:
            return {"verified": False, "reason": "non-bijective adjoint member"}
        adjoint_vecs[np.ascontiguousarray(sigma.image, dtype=np.int64).tobytes()] = \
            int(ring_idx)
    direct_keys = direct.vector_set()
    sets_match = set(adjoint_vecs) == direct_keys

    # sigma |-> delta_sigma is multiplicative: delta_(sigma then tau) =
    # delta_sigma circle delta_tau
    morphism_ok = True
    vecs = [np.ascontiguousarray(v, dtype=np.int64) for v in direct.automorphisms]
    for vs in vecs:
        ds = ring.index_of(G.mul[G.inv[np.arange(G.order)], vs])
        for vt in vecs:
            dt = ring.index_of(G.mul[G.inv[np.arange(G.order)], vt])
            composed = vt[vs]              # apply sigma, then tau
            dc = ring.index_of(G.mul[G.inv[np.arange(G.order)], composed])
            if dc is None or ds is None or dt is None:
                morphism_ok = False
                break
            circ = ring.ring.circle(ds, dt)
            if circ != dc:
                morphism_ok = False
                break
        if not morphism_ok:
            break

    invertible = sum(1 for d in ring.elements if aut_from_derivation(d) is not None)
    adj_group = view.group
    return {
        "der_size": len(ring),
        "aut_size": len(direct),
        "adjoint_size": len(view),
        "invertible_derivations": invertible,
        "sets_match": bool(sets_match),
        "morphism_ok": bool(morphism_ok),
        "verified": bool(sets_match and morphism_ok
                         and len(direct) == len(view) == invertible),
        "nilpotency_degree": nilpotency_degree(ring.ring),
        "adjoint_class": nilpotency_class(adj_group) if adj_group.order > 1 else 0,
    }


@dataclass
class RestrictionSequence:
    """The sequence 0 -> Der(G,B) -> Der(G,A) -> Der(G/B, A/B) with its maps."""

    der_b: DerivationRing
    der_a: DerivationRing
    der_q: DerivationRing
    quotient_group: FiniteGroup
    projection: GroupHom
    embedding: np.ndarray          # index map Der(G,B) -> Der(G,A)
    tilde: np.ndarray              # index map Der(G,A) -> Der(G/B, A/B)
    exact_at_b: bool
    exact_at_a: bool
    tilde_surjective: bool


def restriction_sequence(G: FiniteGroup, A: Subgroup, B: Subgroup) -> RestrictionSequence:
    """Build and verify the restriction sequence for B <= A, B normal in G.

    Raises NotInvariant when some derivation in Der(G, A) moves B outside B.
    """
    if not (B.mask & A.mask) == B.mask:
        raise ValueError("B must be contained in A")
    der_a = enumerate_derivations(G, A)
    for i, d in enumerate(der_a.elements):
        for b in B.members:
            if not (B.mask >> int(d.values[b])) & 1:
                raise NotInvariant(i, int(b))
    der_b = enumerate_derivations(G, B)
    Q, proj = quotient(G, B)
    a_image = proj.push(A)
    der_q = enumerate_derivations(Q, a_image)

    embedding = np.empty(len(der_b), dtype=np.int64)
    for i, d in enumerate(der_b.elements):
        j = der_a.index_of(d.values)
        assert j is not None, "Der(G,B) must embed into Der(G,A)"
        embedding[i] = j

    tilde = np.empty(len(der_a), dtype=np.int64)
    pim = np.asarray(proj.image, dtype=np.int64)
    for i, d in enumerate(der_a.elements):
        w = np.full(Q.order, -1, dtype=np.int64)
        vals = pim[d.values]
        for x in G.elements():
            q = int(pim[x])
            if w[q] < 0:
                w[q] = vals[x]
            elif w[q] != vals[x]:
                raise AssertionError("tilde map not constant on cosets")
        j = der_q.index_of(w)
        assert j is not None, "image of tilde must be a derivation of the quotient"
        tilde[i] = j

    _check_ring_hom(der_b.ring, der_a.ring, embedding)
    _check_ring_hom(der_a.ring, der_q.ring, tilde)

    exact_at_b = len(set(map(int, embedding))) == len(der_b)
    kernel = {i for i in range(len(der_a)) if int(tilde[i]) == der_q.zero_index()}
    image = set(map(int, embedding))
    exact_at_a = kernel == image
    tilde_surjective = len(set(map(int, tilde))) == len(der_q)
    return RestrictionSequence(der_b, der_a, der_q, Q, proj, embedding, tilde,
                               exact_at_b, exact_at_a, tilde_surjective)


def _check_ring_hom(src: FiniteRing, dst: FiniteRing, index_map: np.ndarray) -> None:
    f = np.asarray(index_map, dtype=np.int64)
    if not np.array_equal(f[src.add], dst.add[np.ix_(f, f)]):
        raise AssertionError("map does not respect ring addition")
    if not np.array_equal(f[src.mul], dst.mul[np.ix_(f, f)]):
        raise AssertionError("map does not respect ring multiplication")
