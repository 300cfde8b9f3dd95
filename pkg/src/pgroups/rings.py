"""Finite associative rings (not necessarily unital) on dense tables.

A ring shares one element index space between its abelian additive table and
its multiplicative table.  The circle composition x*y = x + y + xy turns the
ring into a monoid with identity 0; the adjoint group collects its invertible
elements, and a ring is radical when that is everything.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .errors import (
    NotAbelianAdd,
    NotAssociativeMul,
    NotDistributive,
    NotIdeal,
    NotPRing,
    NotRadical,
    PGroupsError,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    INDEX_DTYPE,
    FiniteGroup,
    Subgroup,
    subgroup_closure,
)


class FiniteRing:
    """A finite ring given by additive and multiplicative Cayley tables."""

    def __init__(self, additive: FiniteGroup, mul: np.ndarray):
        # Internal constructor: use make_ring for validated construction.
        self.additive = additive
        self.order = additive.order
        self.add = additive.mul
        self.zero = additive.identity
        self.neg = additive.inv
        self.mul = np.ascontiguousarray(mul, dtype=INDEX_DTYPE)
        self.mul.setflags(write=False)
        self._cache: dict = {}

    @classmethod
    def make_ring(cls, add_table, mul_table, *,
                  max_order: int = DEFAULT_MAX_ORDER) -> "FiniteRing":
        """Validate all ring axioms exhaustively and build the ring.

        Raises NotAbelianAdd / NotAssociativeMul / NotDistributive.
        """
        add_arr = np.asarray(add_table, dtype=np.int64)
        mul_arr = np.asarray(mul_table, dtype=np.int64)
        if add_arr.shape != mul_arr.shape:
            raise ValueError(
                f"tables must have the same shape, got {add_arr.shape} and {mul_arr.shape}")
        try:
            additive = FiniteGroup.from_cayley_table(add_arr, max_order=max_order)
        except PGroupsError as exc:
            raise NotAbelianAdd(str(exc)) from exc
        if not additive.is_abelian():
            bad = np.argwhere(additive.mul != additive.mul.T)[0]
            raise NotAbelianAdd(f"elements {int(bad[0])} and {int(bad[1])} do not commute")

        n = additive.order
        bad = np.argwhere((mul_arr < 0) | (mul_arr >= n))
        if len(bad):
            r, c = map(int, bad[0])
            raise NotAssociativeMul(r, c, int(mul_arr[r, c]))  # out-of-range entry
        mul = mul_arr.astype(INDEX_DTYPE)
        for x in range(n):
            lhs = mul[mul[x]]
            rhs = mul[x][mul]
            if not np.array_equal(lhs, rhs):
                y, z = map(int, np.argwhere(lhs != rhs)[0])
                raise NotAssociativeMul(x, y, z)

        add = additive.mul
        for x in range(n):
            # x * (y + z) == x*y + x*z
            lhs = mul[x][add]
            rhs = add[np.ix_(mul[x], mul[x])]
            if not np.array_equal(lhs, rhs):
                y, z = map(int, np.argwhere(lhs != rhs)[0])
                raise NotDistributive("left", x, y, z)
            # (y + z) * x == y*x + z*x
            lhs = mul[:, x][add]
            rhs = add[np.ix_(mul[:, x], mul[:, x])]
            if not np.array_equal(lhs, rhs):
                y, z = map(int, np.argwhere(lhs != rhs)[0])
                raise NotDistributive("right", x, y, z)
        return cls(additive, mul)

    # -- elementary operations ----------------------------------------------------

    def plus(self, x: int, y: int) -> int:
        return int(self.add[x, y])

    def times(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def circle(self, x: int, y: int) -> int:
        """x + y + x*y."""
        return int(self.add[self.add[x, y], self.mul[x, y]])

    def circle_row(self, x: int) -> np.ndarray:
        return self.add[self.add[x], self.mul[x]]

    def adjoint_power(self, x: int, m: int) -> int:
        """m-th circle power of x (m >= 0)."""
        if m < 0:
            raise ValueError("adjoint powers are non-negative here")
        acc = self.zero
        for _ in range(m):
            acc = self.circle(acc, x)
        return acc

    def additive_order(self, x: int) -> int:
        return self.additive.element_order(x)

    def scalar(self, k: int, x: int) -> int:
        """k copies of x under addition."""
        return self.additive.power(x, k)

    def prime(self) -> int:
        n = self.order
        if n == 1:
            raise NotPRing(1)
        p = 2
        while n % p:
            p += 1
        m = n
        while m % p == 0:
            m //= p
        if m != 1:
            raise NotPRing(self.order)
        return p

    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __repr__(self):
        return f"FiniteRing(order={self.order})"


class AdjointGroupView:
    """Invertible elements of the circle monoid, wrapped as a FiniteGroup."""

    def __init__(self, ring: FiniteRing, members: tuple[int, ...],
                 group: FiniteGroup, to_ring: np.ndarray):
        self.ring = ring
        self.members = members
        self.mask = 0
        for m in members:
            self.mask |= 1 << m
        self.group = group
        self.to_ring = to_ring          # adjoint index -> ring index
        self.from_ring = {int(r): i for i, r in enumerate(to_ring)}

    def __len__(self):
        return len(self.members)

    def ring_indices(self, sub: Subgroup) -> tuple[int, ...]:
        """Map a subgroup of the adjoint group back to ring element indices."""
        return tuple(int(self.to_ring[x]) for x in sub.members)


def adjoint_group(R: FiniteRing) -> AdjointGroupView:
    """Elements with a two-sided circle inverse, found by exhaustive search."""
    if "adjoint" not in R._cache:
        members = []
        for x in R.elements():
            row = R.circle_row(x)
            ok = False
            for y in map(int, np.flatnonzero(row == R.zero)):
                if R.circle(y, x) == R.zero:
                    ok = True
                    break
            if ok:
                members.append(x)
        mem = np.array(members, dtype=np.int64)
        pos = np.full(R.order, -1, dtype=np.int64)
        pos[mem] = np.arange(len(mem))
        circ = R.add[R.add[np.ix_(mem, mem)], R.mul[np.ix_(mem, mem)]]
        table = pos[circ]
        group = FiniteGroup.from_cayley_table(table, max_order=R.order)
        R._cache["adjoint"] = AdjointGroupView(R, tuple(members), group, mem)
    return R._cache["adjoint"]


def is_radical(R: FiniteRing) -> bool:
    return len(adjoint_group(R)) == R.order


def power_ideal(R: FiniteRing, n: int) -> Subgroup:
    """R^n: additive subgroup generated by all products of n elements."""
    if n < 1:
        raise ValueError("power ideals start at n = 1")
    cur = np.arange(R.order, dtype=np.int64)
    for _ in range(n - 1):
        prods = np.unique(R.mul[np.ix_(cur, np.arange(R.order))])
        cur = subgroup_closure(R.additive, map(int, prods)).member_array()
    return Subgroup(R.additive, map(int, cur), _validated=True)


def nilpotency_degree(R: FiniteRing) -> Optional[int]:
    """Least n with R^(n+1) = 0, or None when R is not nilpotent."""
    prev = power_ideal(R, 1)
    n = 1
    while True:
        nxt = power_ideal(R, n + 1)
        if nxt.order == 1:
            return n
        if nxt.mask == prev.mask:
            return None
        prev = nxt
        n += 1


def _p_torsion(R: FiniteRing) -> np.ndarray:
    p = R.prime()
    orders = R.additive.element_orders()
    return np.flatnonzero(np.asarray(orders) <= p)


def is_right_p_nil(R: FiniteRing) -> bool:
    """Every x with p*x = 0 satisfies y*x = 0 for all y."""
    if R.order == 1:
        return True
    tor = _p_torsion(R)
    return bool((R.mul[:, tor] == R.zero).all())


def is_left_p_nil(R: FiniteRing) -> bool:
    """Every x with p*x = 0 satisfies x*y = 0 for all y."""
    if R.order == 1:
        return True
    tor = _p_torsion(R)
    return bool((R.mul[tor, :] == R.zero).all())


def is_p_nil(R: FiniteRing) -> bool:
    return is_right_p_nil(R) and is_left_p_nil(R)


def omega_additive(R: FiniteRing, n: int) -> Subgroup:
    """{x : p^n * x = 0} as a subgroup of the additive group."""
    p = R.prime()
    q = p ** n
    orders = np.asarray(R.additive.element_orders(), dtype=np.int64)
    members = np.flatnonzero(q % orders == 0)
    return Subgroup(R.additive, map(int, members), _validated=True)


def omega_set_adjoint(R: FiniteRing, n: int) -> tuple[int, ...]:
    """{x : circle power x^(p^n) = 0}; requires a radical ring."""
    if not is_radical(R):
        view = adjoint_group(R)
        missing = next(x for x in R.elements() if not (view.mask >> x) & 1)
        raise NotRadical(missing)
    p = R.prime()
    q = p ** n
    out = []
    for x in R.elements():
        if R.adjoint_power(x, q) == R.zero:
            out.append(x)
    return tuple(out)


def omega_adjoint(R: FiniteRing, n: int) -> Subgroup:
    """Subgroup of the adjoint group generated by omega_set_adjoint(R, n)."""
    view = adjoint_group(R)
    if len(view) != R.order:
        missing = next(x for x in R.elements() if not (view.mask >> x) & 1)
        raise NotRadical(missing)
    local = [view.from_ring[x] for x in omega_set_adjoint(R, n)]
    return subgroup_closure(view.group, local)


# -- derived constructions ---------------------------------------------------------

def subring_closure(R: FiniteRing, elements: Iterable[int]) -> "FiniteRing":
    """Smallest subring containing the elements, reindexed as its own ring."""
    cur = sorted({R.zero, *map(int, elements)})
    while True:
        arr = np.array(cur, dtype=np.int64)
        more = set(map(int, np.unique(R.add[np.ix_(arr, arr)])))
        more |= set(map(int, np.unique(R.mul[np.ix_(arr, arr)])))
        more |= set(map(int, R.neg[arr]))
        more |= set(cur)
        if len(more) == len(cur):
            break
        cur = sorted(more)
    arr = np.array(cur, dtype=np.int64)
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[arr] = np.arange(len(arr))
    add = pos[R.add[np.ix_(arr, arr)]]
    mul = pos[R.mul[np.ix_(arr, arr)]]
    return FiniteRing.make_ring(add, mul)


def quotient_ring(R: FiniteRing, ideal: Subgroup) -> tuple["FiniteRing", np.ndarray]:
    """R / I for an additive subgroup that is a two-sided ideal.

    Returns the quotient and the coset projection vector; raises NotIdeal.
    """
    if ideal.parent is not R.additive:
        raise ValueError("ideal must be a subgroup of the additive group")
    mem = ideal.member_array()
    for x in R.elements():
        for prod in map(int, R.mul[x, mem]):
            if not (ideal.mask >> prod) & 1:
                raise NotIdeal(x, int(mem[0]))
        for prod in map(int, R.mul[mem, x]):
            if not (ideal.mask >> prod) & 1:
                raise NotIdeal(int(mem[0]), x)
    coset_id = np.full(R.order, -1, dtype=np.int64)
    reps = []
    for x in R.elements():
        if coset_id[x] < 0:
            coset_id[R.add[x, mem]] = len(reps)
            reps.append(x)
    reps_a = np.array(reps, dtype=np.int64)
    add = coset_id[R.add[np.ix_(reps_a, reps_a)]]
    mul = coset_id[R.mul[np.ix_(reps_a, reps_a)]]
    return FiniteRing.make_ring(add, mul), coset_id


# -- ready-made rings ----------------------------------------------------------------

def null_ring(group: FiniteGroup) -> FiniteRing:
    """The zero-multiplication ring on an abelian group."""
    if not group.is_abelian():
        raise NotAbelianAdd("null rings need an abelian additive group")
    n = group.order
    mul = np.full((n, n), group.identity, dtype=np.int64)
    return FiniteRing.make_ring(group.mul, mul)


def cyclic_group(n: int) -> FiniteGroup:
    """Z/nZ under addition."""
    idx = np.arange(n, dtype=np.int64)
    return FiniteGroup.from_cayley_table((idx[:, None] + idx[None, :]) % n)


def residue_ring(n: int) -> FiniteRing:
    """Z/nZ with the usual multiplication."""
    idx = np.arange(n, dtype=np.int64)
    return FiniteRing.make_ring((idx[:, None] + idx[None, :]) % n,
                                (idx[:, None] * idx[None, :]) % n)


def scaled_residue_ring(p: int, k: int) -> FiniteRing:
    """pZ / p^k Z: elements {0, p, 2p, ...} inside Z/p^k Z, reindexed by i -> p*i."""
    q = p ** k
    vals = np.arange(0, q, p, dtype=np.int64)
    n = len(vals)
    add = ((vals[:, None] + vals[None, :]) % q) // p
    mul = ((vals[:, None] * vals[None, :]) % q) // p
    return FiniteRing.make_ring(add, mul)


def strictly_upper_ring(p: int, size: int = 3) -> FiniteRing:
    """Strictly upper-triangular size x size matrices over Z/pZ."""
    import itertools
    slots = [(i, j) for i in range(size) for j in range(i + 1, size)]
    mats = list(itertools.product(range(p), repeat=len(slots)))
    index = {m: i for i, m in enumerate(mats)}

    def to_mat(t):
        M = np.zeros((size, size), dtype=np.int64)
        for (i, j), v in zip(slots, t):
            M[i, j] = v
        return M

    def to_tuple(M):
        return tuple(int(M[i, j]) % p for (i, j) in slots)

    n = len(mats)
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    full = [to_mat(t) for t in mats]
    for a in range(n):
        for b in range(n):
            add[a, b] = index[to_tuple(full[a] + full[b])]
            mul[a, b] = index[to_tuple(full[a] @ full[b])]
    return FiniteRing.make_ring(add, mul)
