"""Dense-table finite groups and the primitive operations everything else builds on.

Elements of a group of order n are the integers 0..n-1; the whole runtime
representation is one n x n multiplication table plus identity and inverse
tables.  Every constructor validates the group axioms in full (exhaustive at
the default size cap of 729), so downstream code never re-checks them.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAbelian,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    NotNormal,
    NotPPower,
    NotSubgroup,
    NotSubgroupMember,
    SizeCapExceeded,
)

INDEX_DTYPE = np.int16
DEFAULT_MAX_ORDER = 729  # 3**6; keeps all-pairs/all-triples scans cheap


def _as_index_table(table) -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"table must be square, got shape {arr.shape}")
    return arr


class FiniteGroup:
    """A finite group given by its Cayley table over element indices.

    Instances are immutable after construction and safe to share across
    workers; all operations are pure lookups.
    """

    def __init__(self, mul: np.ndarray, identity: int, inv: np.ndarray,
                 labels: Optional[Sequence[str]] = None):
        # Internal constructor: callers must pass already-validated tables.
        self.mul = np.ascontiguousarray(mul, dtype=INDEX_DTYPE)
        self.mul.setflags(write=False)
        self.order = int(mul.shape[0])
        self.identity = int(identity)
        self.inv = np.ascontiguousarray(inv, dtype=INDEX_DTYPE)
        self.inv.setflags(write=False)
        self.labels = list(labels) if labels is not None else None
        self._cache: dict = {}

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_cayley_table(cls, table, labels: Optional[Sequence[str]] = None,
                          *, max_order: int = DEFAULT_MAX_ORDER) -> "FiniteGroup":
        """Validate a square index table and wrap it as a group.

        Raises NotClosed / NoIdentity / NoInverse / NotAssociative with the
        first offending element or triple.
        """
        arr = _as_index_table(table)
        n = arr.shape[0]
        if n == 0:
            raise ValueError("empty table")
        if n > max_order:
            raise SizeCapExceeded(n, max_order)

        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            r, c = map(int, bad[0])
            raise NotClosed(r, c, int(arr[r, c]), n)

        eye = np.arange(n)
        identity = -1
        for e in range(n):
            if np.array_equal(arr[e], eye) and np.array_equal(arr[:, e], eye):
                identity = e
                break
        if identity < 0:
            raise NoIdentity()

        inv = np.full(n, -1, dtype=np.int64)
        for x in range(n):
            for y in np.flatnonzero(arr[x] == identity):
                if arr[y, x] == identity:
                    inv[x] = y
                    break
            if inv[x] < 0:
                raise NoInverse(x)

        small = arr.astype(INDEX_DTYPE)
        for x in range(n):
            lhs = small[small[x]]      # (x*y)*z over all y, z
            rhs = small[x][small]      # x*(y*z)
            if not np.array_equal(lhs, rhs):
                y, z = map(int, np.argwhere(lhs != rhs)[0])
                raise NotAssociative(x, y, z)

        return cls(small, identity, inv, labels)

    # -- basic operations -------------------------------------------------------

    def multiply(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def inverse(self, x: int) -> int:
        return int(self.inv[x])

    def conjugate(self, x: int, y: int) -> int:
        """y^-1 * x * y."""
        m = self.mul
        return int(m[m[self.inv[y], x], y])

    def commutator(self, x: int, y: int) -> int:
        """x^-1 * y^-1 * x * y."""
        m = self.mul
        return int(m[m[self.inv[x], self.inv[y]], m[x, y]])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(x), -k)
        acc = self.identity
        base = x
        while k:
            if k & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        return int(self.element_orders()[x])

    def element_orders(self) -> np.ndarray:
        """Orders of all elements (cached)."""
        if "orders" not in self._cache:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            for x in range(n):
                acc, k = x, 1
                while acc != self.identity:
                    acc = int(self.mul[acc, x])
                    k += 1
                orders[x] = k
            orders.setflags(write=False)
            self._cache["orders"] = orders
        return self._cache["orders"]

    def exponent(self) -> int:
        exp = 1
        for o in map(int, np.unique(self.element_orders())):
            exp = exp * o // gcd(exp, o)
        return exp

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def commutator_table(self) -> np.ndarray:
        """n x n table of commutators [x, y] (cached)."""
        if "comm" not in self._cache:
            m = self.mul
            t1 = m[np.ix_(self.inv, self.inv)]      # x^-1 * y^-1
            comm = m[t1, m]                          # (x^-1 y^-1)(x y)
            comm.setflags(write=False)
            self._cache["comm"] = comm
        return self._cache["comm"]

    def conjugation_vector(self, g: int) -> np.ndarray:
        """The permutation x -> g^-1 x g as an index vector."""
        m = self.mul
        return m[m[self.inv[g]], g]

    def elements(self) -> range:
        return range(self.order)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    # -- prime structure ----------------------------------------------------------

    def prime(self) -> int:
        """The prime p for a p-group; raises NotPPower otherwise."""
        n = self.order
        if n == 1:
            raise NotPPower(1)
        p = 2
        while n % p:
            p += 1
        m = n
        while m % p == 0:
            m //= p
        if m != 1:
            raise NotPPower(self.order)
        return p


def trivial_like(G: FiniteGroup) -> "Subgroup":
    return Subgroup(G, (G.identity,), _validated=True)


class Subgroup:
    """Subgroup of a fixed parent group, stored as a bitmask over element indices."""

    __slots__ = ("parent", "mask", "_members")

    def __init__(self, parent: FiniteGroup, members: Iterable[int] | int,
                 *, _validated: bool = False):
        self.parent = parent
        if isinstance(members, int):
            mask = members
        else:
            mask = 0
            for x in members:
                x = int(x)
                if not 0 <= x < parent.order:
                    raise NotSubgroupMember(x)
                mask |= 1 << x
        self.mask = mask
        self._members: Optional[tuple] = None
        if not _validated:
            self._validate()

    def _validate(self) -> None:
        mem = self.members
        G = self.parent
        if G.identity not in set(mem):
            raise NotSubgroup("missing the identity")
        mask = self.mask
        for a in mem:
            if not (mask >> int(G.inv[a])) & 1:
                raise NotSubgroup(f"inverse of {a} missing")
            for b in mem:
                if not (mask >> int(G.mul[a, b])) & 1:
                    raise NotSubgroup(f"product {a}*{b} escapes")

    @property
    def members(self) -> tuple:
        if self._members is None:
            out = []
            mask = self.mask
            x = 0
            while mask:
                if mask & 1:
                    out.append(x)
                mask >>= 1
                x += 1
            self._members = tuple(out)
        return self._members

    def member_array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def contains_all(self, xs: Iterable[int]) -> bool:
        return all((self.mask >> int(x)) & 1 for x in xs)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def index(self) -> int:
        return self.parent.order // self.order

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def __le__(self, other: "Subgroup") -> bool:
        return (self.mask & other.mask) == self.mask

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.mask == self.mask)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.order})"

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """Reindex as a standalone group; returns (group, to_parent index map)."""
        mem = self.member_array()
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[mem] = np.arange(len(mem))
        table = pos[self.parent.mul[np.ix_(mem, mem)]]
        labels = [self.parent.label(int(x)) for x in mem] if self.parent.labels else None
        ident = int(pos[self.parent.identity])
        inv = pos[self.parent.inv[mem]]
        return FiniteGroup(table.astype(INDEX_DTYPE), ident, inv, labels), mem

    def is_abelian(self) -> bool:
        mem = self.member_array()
        sub = self.parent.mul[np.ix_(mem, mem)]
        return bool(np.array_equal(sub, sub.T))


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing gens, by breadth-first closure."""
    cur = np.unique(np.asarray(sorted({G.identity, *map(int, gens)}), dtype=np.int64))
    if cur.size and (cur[0] < 0 or cur[-1] >= G.order):
        raise NotSubgroupMember(int(cur[0] if cur[0] < 0 else cur[-1]))
    while True:
        prods = np.unique(G.mul[np.ix_(cur, cur)])
        if prods.size == cur.size:
            break
        cur = prods.astype(np.int64)
    return Subgroup(G, map(int, cur), _validated=True)


def whole_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, range(G.order), _validated=True)


class GroupHom:
    """A homomorphism between table groups, stored as an image vector."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, image,
                 *, _validated: bool = False):
        self.source = source
        self.target = target
        self.image = np.ascontiguousarray(image, dtype=INDEX_DTYPE)
        self.image.setflags(write=False)
        if len(self.image) != source.order:
            raise ValueError("image vector length does not match source order")
        if not _validated:
            self._validate()

    def _validate(self) -> None:
        img = self.image
        lhs = img[self.source.mul]
        rhs = self.target.mul[np.ix_(img, img)]
        if not np.array_equal(lhs, rhs):
            x, y = map(int, np.argwhere(lhs != rhs)[0])
            raise NotHomomorphism(x, y)

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def kernel(self) -> Subgroup:
        members = np.flatnonzero(self.image == self.target.identity)
        return Subgroup(self.source, map(int, members), _validated=True)

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.target, map(int, np.unique(self.image)), _validated=True)

    def is_bijective(self) -> bool:
        return len(np.unique(self.image)) == self.source.order == self.target.order

    def is_automorphism(self) -> bool:
        return self.source is self.target and self.is_bijective()

    def preimage(self, sub: Subgroup) -> Subgroup:
        if sub.parent is not self.target:
            raise ValueError("subgroup lives in a different group")
        members = [x for x in self.source.elements() if int(self.image[x]) in sub]
        return Subgroup(self.source, members, _validated=True)

    def push(self, sub: Subgroup) -> Subgroup:
        if sub.parent is not self.source:
            raise ValueError("subgroup lives in a different group")
        members = np.unique(self.image[sub.member_array()])
        return Subgroup(self.target, map(int, members), _validated=True)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupHom) and other.source is self.source
                and other.target is self.target
                and np.array_equal(other.image, self.image))

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.image.tobytes()))

    def __repr__(self) -> str:
        return f"GroupHom({self.source.order} -> {self.target.order})"


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Coset group G/N with its canonical projection; raises NotNormal."""
    if N.parent is not G:
        raise ValueError("subgroup lives in a different group")
    mem = N.member_array()
    mask = N.mask
    for g in G.elements():
        conj = G.mul[G.mul[G.inv[g], mem], g]
        for c in conj:
            if not (mask >> int(c)) & 1:
                raise NotNormal(g, int(mem[0]))

    coset_id = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in G.elements():
        if coset_id[x] < 0:
            coset_id[G.mul[x, mem]] = len(reps)
            reps.append(x)
    reps_a = np.array(reps, dtype=np.int64)
    qtable = coset_id[G.mul[np.ix_(reps_a, reps_a)]]
    labels = [G.label(int(r)) + "*N" for r in reps] if G.labels else None
    Q = FiniteGroup.from_cayley_table(qtable, labels, max_order=G.order)
    proj = GroupHom(G, Q, coset_id)
    return Q, proj


# -- generation and homomorphism enumeration -------------------------------------


def _frattini_mask(G: FiniteGroup) -> int:
    """<G^p, gamma_2(G)> as a bitmask (p-groups only)."""
    p = G.prime()
    comm = G.commutator_table()
    gens = set(map(int, np.unique(comm)))
    gens.update(G.power(x, p) for x in G.elements())
    return subgroup_closure(G, gens).mask


def minimal_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """Preimages of a basis of G/Phi(G), first-found in element-index order."""
    if G.order == 1:
        return ()
    span = Subgroup(G, _frattini_mask(G), _validated=True)
    gens: list[int] = []
    for x in G.elements():
        if x not in span:
            gens.append(x)
            span = subgroup_closure(G, [*span.members, x])
            if span.is_whole():
                break
    return tuple(gens)


def generation_tree(G: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """BFS spanning tree of the Cayley graph on gens.

    Returns (element, parent, generator-position) triples in discovery order,
    excluding the identity; every element is reached exactly once.
    """
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    frontier = [G.identity]
    tree: list[tuple[int, int, int]] = []
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = int(G.mul[x, g])
                if not seen[y]:
                    seen[y] = True
                    tree.append((y, x, i))
                    nxt.append(y)
        frontier = nxt
    if not seen.all():
        raise ValueError("generators do not generate the group")
    return tree


def extend_generator_images(G: FiniteGroup, T: FiniteGroup,
                            gens: Sequence[int], images: Sequence[int],
                            tree: Optional[list] = None) -> Optional[np.ndarray]:
    """Extend gens -> images to a homomorphism G -> T, or None if inconsistent.

    The candidate map is built along a spanning tree and then every edge
    (x, x*g_i) is checked, which suffices for multiplicativity.
    """
    if tree is None:
        tree = generation_tree(G, gens)
    phi = np.empty(G.order, dtype=np.int64)
    phi[G.identity] = T.identity
    tm = T.mul
    for y, x, i in tree:
        phi[y] = tm[phi[x], images[i]]
    for i, g in enumerate(gens):
        if not np.array_equal(phi[G.mul[:, g]], tm[phi, images[i]]):
            return None
    return phi


def all_homs(G: FiniteGroup, T: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms G -> T for abelian T, including the zero map.

    Enumerated by assigning images to a minimal generating set and keeping
    consistent extensions.
    """
    if not T.is_abelian():
        bad = np.argwhere(T.mul != T.mul.T)[0]
        raise NotAbelian(int(bad[0]), int(bad[1]))
    if G.order == 1:
        return [GroupHom(G, T, np.array([T.identity]), _validated=True)]
    gens = minimal_generating_set(G)
    tree = generation_tree(G, gens)
    out = []
    for images in itertools.product(range(T.order), repeat=len(gens)):
        phi = extend_generator_images(G, T, gens, images, tree)
        if phi is not None:
            out.append(GroupHom(G, T, phi))
    return out


def hom_count_abelian(G: FiniteGroup, T: FiniteGroup) -> int:
    """|Hom(G, T)| for abelian T, via abelianization and invariant factors.

    Independent oracle for all_homs: reduces to Hom(B, T) where
    B = G / ([G,G] * G^exp(T)) and both abelian groups are decomposed by an
    element-order census.
    """
    if not T.is_abelian():
        bad = np.argwhere(T.mul != T.mul.T)[0]
        raise NotAbelian(int(bad[0]), int(bad[1]))
    e = T.exponent()
    comm = G.commutator_table()
    gens = set(map(int, np.unique(comm)))
    gens.update(G.power(x, e) for x in G.elements())
    N = subgroup_closure(G, gens)
    B, _ = quotient(G, N)
    out = 1
    for a in _abelian_invariants_table(B):
        for b in _abelian_invariants_table(T):
            out *= gcd(a, b)
    return out


def _abelian_invariants_table(A: FiniteGroup) -> list[int]:
    """Invariant factors of an abelian group from its element-order census.

    For each prime p, the number of elements of order dividing p^k is
    p^(sum_i min(lambda_i, k)), which determines the partition lambda of the
    p-part; per-prime parts are then zipped into invariant factors.
    """
    if A.order == 1:
        return []
    n = A.order
    primes = []
    m, q = n, 2
    while m > 1:
        if m % q == 0:
            primes.append(q)
            while m % q == 0:
                m //= q
        q += 1
    orders = np.asarray(A.element_orders(), dtype=np.int64)
    per_prime: dict[int, list[int]] = {}
    for p in primes:
        ms = [0]
        k = 1
        while True:
            cnt = int(np.count_nonzero((p ** k) % orders == 0))
            mk = cnt.bit_length() - 1 if p == 2 else round(np.log(cnt) / np.log(p))
            if mk == ms[-1]:
                break
            ms.append(mk)
            k += 1
        geq = [ms[i] - ms[i - 1] for i in range(1, len(ms))]  # #parts >= i
        lam: list[int] = []
        for i in range(len(geq), 0, -1):
            below = geq[i] if i < len(geq) else 0
            lam.extend([i] * (geq[i - 1] - below))
        per_prime[p] = sorted((p ** k for k in lam), reverse=True)
    width = max(len(v) for v in per_prime.values())
    invs = []
    for i in range(width):
        f = 1
        for parts in per_prime.values():
            if i < len(parts):
                f *= parts[i]
        invs.append(f)
    return invs
