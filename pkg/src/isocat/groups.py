"""Immutable finite-group arithmetic on dense Cayley tables.

Element ids are dense integers 0..n-1 with the identity at 0 for every
table produced by coset enumeration; nothing below assumes a particular
group order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class NotAGroup(Exception):
    """A multiplication table violates one of the group axioms."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GroupTable:
    """A finite group as an immutable n x n multiplication table."""

    name: str
    n: int
    mul: np.ndarray          # (n, n) int16, mul[x, y] = x*y
    identity: int
    inv: np.ndarray          # (n,) int16
    gen_ids: tuple[int, ...]

    def order(self) -> int:
        return self.n

    def m(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def elements(self) -> range:
        return range(self.n)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def __repr__(self) -> str:  # pragma: no cover
        return f"GroupTable({self.name!r}, n={self.n})"


def from_cayley(name: str, mul, gen_ids=()) -> GroupTable:
    """Validate a multiplication table and return the finished GroupTable.

    Raises NotAGroup on a missing identity, a missing inverse, or an
    associativity failure; the first offending triple is reported.
    """
    table = np.asarray(mul, dtype=np.int16)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise NotAGroup(f"{name}: table is not square: shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise NotAGroup(f"{name}: empty table")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup(f"{name}: entries must lie in [0, {n})")

    ids = np.arange(n, dtype=np.int16)
    two_sided = (table == ids[None, :]).all(axis=1) & (table.T == ids[None, :]).all(axis=1)
    hits = np.flatnonzero(two_sided)
    if hits.size != 1:
        raise NotAGroup(f"{name}: no two-sided identity")
    e = int(hits[0])

    inv = np.full(n, -1, dtype=np.int16)
    gx, gy = np.nonzero(table == e)
    inv[gx] = gy
    if (inv < 0).any():
        x = int(np.flatnonzero(inv < 0)[0])
        raise NotAGroup(f"{name}: element {x} has no inverse")
    if (table[ids, inv] != e).any() or (table[inv, ids] != e).any():
        raise NotAGroup(f"{name}: inverses are not two-sided")

    # exhaustive associativity over all n^3 triples
    lhs = table[table, :]    # lhs[x, y, z] = (x*y)*z
    rhs = table[:, table]    # rhs[x, y, z] = x*(y*z)
    if not np.array_equal(lhs, rhs):
        x, y, z = (int(v) for v in np.argwhere(lhs != rhs)[0])
        raise NotAGroup(
            f"{name}: associativity fails at ({x}*{y})*{z} != {x}*({y}*{z})"
        )

    return GroupTable(
        name=name,
        n=n,
        mul=_freeze(table),
        identity=e,
        inv=_freeze(inv),
        gen_ids=tuple(int(g) for g in gen_ids),
    )


def element_order(G: GroupTable, x: int) -> int:
    """Least k >= 1 with x^k = e."""
    k, cur = 1, x
    while cur != G.identity:
        cur = G.m(cur, x)
        k += 1
    return k


def element_orders(G: GroupTable) -> np.ndarray:
    """Orders of all elements at once."""
    n = G.n
    orders = np.zeros(n, dtype=np.int64)
    cur = np.arange(n)
    ids = np.arange(n)
    k = 1
    while (orders == 0).any():
        orders[(orders == 0) & (cur == G.identity)] = k
        cur = G.mul[cur, ids]
        k += 1
    return orders


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class OrderList:
    """Counts of elements of each order d, indexed by the sorted divisors of |G|."""

    divisors: tuple[int, ...]
    counts: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.counts) + "]"

    @classmethod
    def parse(cls, text: str, n: int) -> "OrderList":
        counts = tuple(int(t) for t in text.strip().strip("[]").replace("-", ",").split(","))
        divs = tuple(divisors(n))
        if len(counts) != len(divs) or sum(counts) != n:
            raise ValueError(f"bad order list {text!r} for order {n}")
        return cls(divisors=divs, counts=counts)


def order_list(G: GroupTable) -> OrderList:
    orders = element_orders(G)
    divs = divisors(G.n)
    counts = tuple(int((orders == d).sum()) for d in divs)
    return OrderList(divisors=tuple(divs), counts=counts)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a parent table: sorted member ids plus the generators used."""

    parent: GroupTable
    members: tuple[int, ...]
    gens: tuple[int, ...]

    def order(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)


def closure(G: GroupTable, gens) -> tuple[int, ...]:
    """Members of the subgroup generated by gens, sorted."""
    seen = {G.identity}
    frontier = [G.identity]
    gset = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gset:
                y = G.m(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def subgroup(G: GroupTable, gens) -> Subgroup:
    """Subgroup generated by gens; redundant generators are dropped."""
    minimal: list[int] = []
    cur: tuple[int, ...] = (G.identity,)
    for g in gens:
        if int(g) not in cur:
            minimal.append(int(g))
            cur = closure(G, minimal)
    return Subgroup(parent=G, members=cur, gens=tuple(minimal))


def conjugate(G: GroupTable, g: int, x: int) -> int:
    """g * x * g^-1."""
    return int(G.mul[G.mul[g, x], G.inv[g]])


def is_normal(G: GroupTable, H: Subgroup) -> bool:
    members = np.fromiter(H.members, dtype=np.int64)
    mask = np.zeros(G.n, dtype=bool)
    mask[members] = True
    conj = G.mul[G.mul[:, members], G.inv[:, None]]   # (n, |H|)
    return bool(mask[conj].all())


def abelian_type(H: Subgroup):
    """Invariant factors of an abelian subgroup, ascending; None if non-abelian."""
    G = H.parent
    members = H.members
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if G.m(x, y) != G.m(y, x):
                return None
    orders = [element_order(G, x) for x in members]
    return _invariant_factors(orders)


def _invariant_factors(orders: list[int]) -> tuple[int, ...]:
    size = len(orders)
    if size == 1:
        return ()
    primes = set()
    for o in orders:
        o0, p = o, 2
        while o0 > 1:
            if o0 % p == 0:
                primes.add(p)
                while o0 % p == 0:
                    o0 //= p
            p += 1
    per_prime: dict[int, list[int]] = {}
    for p in sorted(primes):
        p_orders = [o for o in orders if _is_ppower(o, p)]
        # logs[k] = log_p #{x : x^(p^k) = e} restricted to the Sylow p-subgroup
        logs = []
        k = 0
        while True:
            cnt = sum(1 for o in p_orders if p**k % o == 0)
            logs.append(_ilog(cnt, p))
            if cnt == len(p_orders):
                break
            k += 1
        # logs[k] - logs[k-1] = number of factors of order >= p^k
        facs = []
        for k in range(1, len(logs)):
            n_ge = logs[k] - logs[k - 1]
            n_ge_next = logs[k + 1] - logs[k] if k + 1 < len(logs) else 0
            facs.extend([p**k] * (n_ge - n_ge_next))
        per_prime[p] = sorted(facs, reverse=True)
    depth = max(len(v) for v in per_prime.values())
    invariants = []
    for j in range(depth):
        d = 1
        for p, facs in per_prime.items():
            if j < len(facs):
                d *= facs[j]
        invariants.append(d)
    return tuple(sorted(invariants))


def _is_ppower(o: int, p: int) -> bool:
    if o == 1:
        return True
    while o % p == 0:
        o //= p
    return o == 1


def _ilog(n: int, p: int) -> int:
    k = 0
    while p**k < n:
        k += 1
    if p**k != n:
        raise ValueError(f"{n} is not a power of {p}")
    return k


# ---------------------------------------------------------------------------
# candidate subgroups for the twisting pipeline


CANDIDATE_TYPES = ((2, 2), (4, 4), (2, 2, 2, 2))


def enumerate_candidate_subgroups(G: GroupTable):
    """All normal subgroups of type C2xC2, C4xC4 or C2^4, with their types.

    Deterministic: results sorted by member tuples.  Klein subgroups come
    from commuting involution pairs, C4xC4 from commuting order-4 pairs,
    and elementary-abelian rank 4 from a canonical-generator DFS.
    """
    orders = element_orders(G)
    involutions = [int(x) for x in np.flatnonzero(orders == 2)]
    order4 = [int(x) for x in np.flatnonzero(orders == 4)]

    found: dict[frozenset[int], tuple[Subgroup, tuple[int, ...]]] = {}

    def keep(gens, typ):
        H = subgroup(G, gens)
        key = frozenset(H.members)
        if key not in found and is_normal(G, H):
            found[key] = (H, typ)

    for i, x in enumerate(involutions):
        for y in involutions[i + 1:]:
            if G.m(x, y) == G.m(y, x):
                keep([x, y], (2, 2))

    for i, a in enumerate(order4):
        pa = closure(G, [a])
        for b in order4[i + 1:]:
            if b in pa or G.m(a, b) != G.m(b, a):
                continue
            H = subgroup(G, [a, b])
            if len(H.members) == 16 and abelian_type(H) == (4, 4):
                key = frozenset(H.members)
                if key not in found and is_normal(G, H):
                    found[key] = (H, (4, 4))

    # rank-4 elementary abelian: extend by the least involution outside the
    # current span so that every subgroup is produced by exactly one chain
    def extend(cur_members: tuple[int, ...], gens: list[int]):
        if len(cur_members) == 16:
            keep(gens, (2, 2, 2, 2))
            return
        cur_set = set(cur_members)
        for x in involutions:
            if x in cur_set or x < gens[-1]:
                continue
            if any(G.m(x, m) != G.m(m, x) for m in gens):
                continue
            coset = [G.m(x, m) for m in cur_members]
            if x != min(coset):
                continue
            extend(tuple(sorted(cur_set | set(coset))), gens + [x])

    for x in involutions:
        extend((G.identity, x), [x])

    ordered = sorted(found.values(), key=lambda pair: pair[0].members)
    return ordered


# ---------------------------------------------------------------------------
# structural invariants


def center_members(G: GroupTable) -> tuple[int, ...]:
    central = (G.mul == G.mul.T).all(axis=1)
    return tuple(int(x) for x in np.flatnonzero(central))


def derived_members(G: GroupTable) -> tuple[int, ...]:
    comm = G.mul[G.mul, G.inv[G.mul.T]]      # comm[x, y] = x y x^-1 y^-1
    return closure(G, set(int(c) for c in np.unique(comm)))


def conjugacy_classes(G: GroupTable) -> list[tuple[int, ...]]:
    conj = G.mul[G.mul[:, np.arange(G.n)], G.inv[:, None]]   # conj[g, x]
    seen = np.zeros(G.n, dtype=bool)
    classes = []
    for x in range(G.n):
        if seen[x]:
            continue
        cls = tuple(sorted(int(v) for v in np.unique(conj[:, x])))
        for v in cls:
            seen[v] = True
        classes.append(cls)
    return classes


def centralizer_orders(G: GroupTable) -> np.ndarray:
    return (G.mul == G.mul.T).sum(axis=1)


def quotient_table(G: GroupTable, N: Subgroup) -> tuple[GroupTable, np.ndarray]:
    """Quotient G/N as a GroupTable plus the id -> coset-id projection.

    Coset ids follow the least member of each coset; N must be normal.
    """
    members = np.fromiter(N.members, dtype=np.int64)
    rep_of = np.full(G.n, -1, dtype=np.int64)
    reps = []
    for x in range(G.n):
        if rep_of[x] >= 0:
            continue
        coset = np.unique(G.mul[x, members])
        rep_of[coset] = len(reps)
        reps.append(int(coset.min()))
    k = len(reps)
    reps_arr = np.asarray(reps)
    qmul = rep_of[G.mul[np.ix_(reps_arr, reps_arr)]]
    Q = from_cayley(f"{G.name}/N", qmul)
    return Q, rep_of


def abelianization_type(G: GroupTable) -> tuple[int, ...]:
    D = subgroup(G, derived_members(G))
    Q, _ = quotient_table(G, D)
    orders = [element_order(Q, x) for x in Q.elements()]
    return _invariant_factors(orders)


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants; equality is necessary, never sufficient."""

    order_list: tuple[int, ...]
    center_order: int
    derived_order: int
    abelianization: tuple[int, ...]
    class_sizes: tuple[int, ...]
    order_centralizer: tuple[tuple[int, int], ...]


def fingerprint(G: GroupTable) -> Fingerprint:
    orders = element_orders(G)
    cents = centralizer_orders(G)
    classes = conjugacy_classes(G)
    return Fingerprint(
        order_list=order_list(G).counts,
        center_order=len(center_members(G)),
        derived_order=len(derived_members(G)),
        abelianization=abelianization_type(G),
        class_sizes=tuple(sorted(len(c) for c in classes)),
        order_centralizer=tuple(sorted((int(o), int(c)) for o, c in zip(orders, cents))),
    )


def relabel(G: GroupTable, perm) -> GroupTable:
    """Transport the table along a permutation of element ids (test helper)."""
    p = np.asarray(perm, dtype=np.int64)
    new_mul = np.empty_like(G.mul)
    new_mul[p[:, None], p[None, :]] = p[G.mul]
    return from_cayley(G.name + "'", new_mul, tuple(int(p[g]) for g in G.gen_ids))
