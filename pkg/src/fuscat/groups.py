"""Finite groups given by multiplication tables, and their subgroups.

Elements are the integers ``0 .. order-1`` with ``0`` the identity. A
:class:`Subgroup` is a sorted tuple of element indices plus a bitmask, which
makes subset tests and hashing cheap.
"""

from __future__ import annotations

import hashlib
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT
from .errors import (
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotASubgroup,
    NotBijective,
    OrderCapExceeded,
)


def prime_power(n: int):
    """Return ``(p, k)`` with ``n == p**k`` and ``k >= 1``, or ``None``."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


class FiniteGroup:
    """A finite group stored as a validated Cayley table.

    ``table[i][j]`` is the product of elements ``i`` and ``j``. Use
    :func:`from_cayley_table` or :func:`from_permutations` to build one from
    untrusted data; the constructor itself assumes a valid table with the
    identity at index 0.
    """

    def __init__(self, table, prime=None, name=None, labels=None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.identity = 0
        self.prime = prime
        self.name = name
        self.labels = labels
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(0)
        self.inverse = tuple(inv)
        self._orders = None
        self._whole = None

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteGroup{label} order={self.order}>"

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, x: int, a: int) -> int:
        """``x a x^-1``."""
        t = self.table
        return t[t[x][a]][self.inverse[x]]

    def element_order(self, a: int) -> int:
        if self._orders is None:
            orders = []
            for g in range(self.order):
                k, x = 1, g
                while x != 0:
                    x = self.table[x][g]
                    k += 1
                orders.append(k)
            self._orders = tuple(orders)
        return self._orders[a]

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_order(a)):
            x = self.table[x][a]
        return x

    def whole(self) -> "Subgroup":
        if self._whole is None:
            self._whole = Subgroup(self, range(self.order))
        return self._whole

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def closure(self, gens: Iterable[int]) -> "Subgroup":
        """Subgroup generated by ``gens``."""
        gens = [g for g in dict.fromkeys(gens) if g != 0]
        t = self.table
        seen = {0}
        queue = [0]
        for x in queue:
            row = t[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return Subgroup(self, seen)

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        """Validated subgroup with exactly the given elements."""
        elems = set(elements)
        if not elems or any(not 0 <= e < self.order for e in elems):
            raise NotASubgroup("elements out of range or empty")
        if 0 not in elems:
            raise NotASubgroup("missing identity")
        t = self.table
        for a in elems:
            for b in elems:
                if t[a][b] not in elems:
                    raise NotASubgroup(f"not closed: {a}*{b} = {t[a][b]}")
        return Subgroup(self, elems)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.table).encode())
        return h.hexdigest()


class Subgroup:
    """A subgroup of a :class:`FiniteGroup`, stored canonically."""

    __slots__ = ("parent", "elements", "mask", "_hash", "_set")

    def __init__(self, parent: FiniteGroup, elements: Iterable[int]):
        self.parent = parent
        self.elements = tuple(sorted(set(elements)))
        self.mask = reduce(lambda m, e: m | (1 << e), self.elements, 0)
        self._hash = hash((id(parent), self.mask))
        self._set = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def key(self):
        return (len(self.elements), self.elements)

    def sort_key(self):
        return self.key

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return (self.mask >> x) & 1 == 1

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.mask == other.mask
            and self.parent is other.parent
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subgroup{list(self.elements)}"

    def issubset(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def is_trivial(self) -> bool:
        return self.mask == 1

    def as_set(self) -> frozenset:
        if self._set is None:
            self._set = frozenset(self.elements)
        return self._set

    def is_abelian(self) -> bool:
        t = self.parent.table
        return all(t[a][b] == t[b][a] for a, b in combinations(self.elements, 2))

    def conjugate(self, x: int) -> "Subgroup":
        """``x S x^-1``."""
        G = self.parent
        return Subgroup(G, (G.conj(x, a) for a in self.elements))

    def is_p_group(self, p: int) -> bool:
        return p_part(self.order, p) == self.order


# -- construction ----------------------------------------------------------


def from_cayley_table(table, prime=None, name=None) -> FiniteGroup:
    """Validate a square multiplication table and return the group.

    The identity is moved to index 0 (by swapping labels) if needed;
    ``group.labels[i]`` is the row of the input table for element ``i``.
    """
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"table is not a rectangular integer array: {exc}")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"table must be square and non-empty, got shape {arr.shape}")
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        i, j = bad[0]
        raise MalformedTable(f"entry ({i}, {j}) = {arr[i, j]} out of range")
    ar = np.arange(n)
    ids = [e for e in range(n) if (arr[e] == ar).all() and (arr[:, e] == ar).all()]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]
    perm = np.arange(n)
    if e != 0:
        perm[0], perm[e] = e, 0  # old label of each new index (an involution)
        arr = perm[arr[np.ix_(perm, perm)]]
    for a in range(n):
        row = np.flatnonzero(arr[a] == 0)
        col = np.flatnonzero(arr[:, a] == 0)
        if len(row) == 0 or len(col) == 0 or not np.intersect1d(row, col).size:
            raise NoInverse(f"element {a} has no two-sided inverse")
    for a in range(n):
        lhs = arr[arr[a]]  # (a*b)*c over all b, c
        rhs = arr[a][arr]  # a*(b*c)
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            b, c = diff[0]
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    return FiniteGroup(arr.tolist(), prime=prime, name=name, labels=perm.tolist())


def _check_perm(p, degree):
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise NotBijective(f"{list(p)} is not a permutation of 0..{degree - 1}")


def cycles_to_perm(degree: int, cycles: Sequence[Sequence[int]]) -> tuple:
    """``[(0, 1, 2), (3, 4)]`` -> image tuple."""
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return tuple(img)


def from_permutations(degree: int, generators, prime=None, name=None, cap=None) -> FiniteGroup:
    """Close permutations (image tuples) under composition.

    The product ``a*b`` is the composite "apply ``b``, then ``a``". Elements
    are indexed in lexicographic order of their image tuples, so the
    identity gets index 0; ``group.labels`` keeps the permutations.
    """
    cap = DEFAULT.perm_order_cap if cap is None else cap
    gens = [tuple(int(x) for x in g) for g in generators]
    for g in gens:
        _check_perm(g, degree)
    ident = tuple(range(degree))
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = tuple(x[i] for i in g)  # x after g
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > cap:
                    raise OrderCapExceeded(f"closure exceeds {cap} elements")
    perms = sorted(seen)
    index = {q: i for i, q in enumerate(perms)}
    table = [[index[tuple(a[i] for i in b)] for b in perms] for a in perms]
    return FiniteGroup(table, prime=prime, name=name, labels=perms)


def from_elements(elements: Sequence, mul, prime=None, name=None) -> FiniteGroup:
    """Group on an explicit element list with ``elements[0]`` the identity."""
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return from_cayley_table(table, prime=prime, name=name)


# -- subgroup lattice ------------------------------------------------------


def _as_subgroup(G) -> Subgroup:
    return G.whole() if isinstance(G, FiniteGroup) else G


def cyclic_subgroup(G: FiniteGroup, a: int) -> Subgroup:
    return G.closure([a])


def all_subgroups(G, cap=None) -> list:
    """Every subgroup of ``G`` (a FiniteGroup or a Subgroup), canonically sorted.

    Breadth-first: extend each known subgroup by one cyclic subgroup and close.
    """
    cap = DEFAULT.subgroup_cap if cap is None else cap
    H = _as_subgroup(G)
    if H.order > cap:
        raise OrderCapExceeded(f"|G| = {H.order} exceeds subgroup cap {cap}")
    parent = H.parent
    cyclic = {}
    for x in H.elements:
        c = parent.closure([x])
        cyclic.setdefault(c.mask, x)
    triv = parent.trivial()
    found = {triv.mask: triv}
    gens_of = {triv.mask: ()}
    frontier = [triv]
    while frontier:
        nxt = []
        for S in frontier:
            for cmask, g in cyclic.items():
                if cmask & ~S.mask == 0:
                    continue
                gens = gens_of[S.mask] + (g,)
                T = parent.closure(gens)
                if T.mask not in found:
                    found[T.mask] = T
                    gens_of[T.mask] = gens
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=Subgroup.sort_key)


def normalizer(ambient, Q: Subgroup) -> Subgroup:
    A = _as_subgroup(ambient)
    _check_same(A, Q)
    G = A.parent
    return Subgroup(G, (x for x in A.elements if all(G.conj(x, q) in Q for q in Q.elements)))


def centralizer(ambient, Q: Subgroup) -> Subgroup:
    A = _as_subgroup(ambient)
    _check_same(A, Q)
    t = A.parent.table
    return Subgroup(A.parent, (x for x in A.elements if all(t[x][q] == t[q][x] for q in Q.elements)))


def center(Q) -> Subgroup:
    Q = _as_subgroup(Q)
    return centralizer(Q, Q)


def _check_same(A: Subgroup, Q: Subgroup):
    if A.parent is not Q.parent:
        raise NotASubgroup("subgroups of different groups")


def product(A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup generated by ``A`` and ``B`` (equal to ``AB`` when one normalizes the other)."""
    if A.issubset(B):
        return B
    if B.issubset(A):
        return A
    return A.parent.closure(A.elements + B.elements)


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(A.parent, (x for x in A.elements if x in B))


def is_normal(N: Subgroup, G: Subgroup) -> bool:
    return N.issubset(G) and normalizer(G, N) == G


def minimal_generators(Q: Subgroup) -> tuple:
    """A short generating sequence for ``Q``.

    Exhaustive over small sizes when affordable, otherwise greedy by
    descending element order.
    """
    G = Q.parent
    elems = [x for x in Q.elements if x != 0]
    if not elems:
        return ()
    by_order = sorted(elems, key=lambda x: (-G.element_order(x), x))
    for k in range(1, len(elems) + 1):
        n_combos = 1
        for i in range(k):
            n_combos = n_combos * (len(elems) - i) // (i + 1)
        if n_combos > 5000:
            break
        for combo in combinations(by_order, k):
            if G.closure(combo).mask == Q.mask:
                return combo
    gens = []
    cur = G.trivial()
    while cur.mask != Q.mask:
        g = next(x for x in by_order if x not in cur)
        gens.append(g)
        cur = G.closure(gens)
    return tuple(gens)


def sylow_p_subgroup(G, p: int) -> Subgroup:
    """One Sylow ``p``-subgroup, grown one factor ``p`` at a time inside normalizers."""
    H = _as_subgroup(G)
    parent = H.parent
    target = p_part(H.order, p)
    S = parent.trivial()
    while S.order < target:
        N = normalizer(H, S)
        g = next(
            x for x in N.elements
            if x not in S and parent.power(x, p) in S
        )
        S = parent.closure(S.elements + (g,))
    return S


def o_p(G, p: int) -> Subgroup:
    """Largest normal ``p``-subgroup: the intersection of the conjugates of one Sylow."""
    from .automorphisms import AutGroup  # local: avoid import cycle

    if isinstance(G, AutGroup):
        G = G.group
    H = _as_subgroup(G)
    S = sylow_p_subgroup(H, p)
    mask = S.mask
    for x in H.elements:
        mask &= S.conjugate(x).mask
    return Subgroup(H.parent, (e for e in S.elements if (mask >> e) & 1))
