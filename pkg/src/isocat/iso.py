"""Sound isomorphism decision for Cayley-table groups of small order.

are_isomorphic runs a pruned but complete backtracking search over images of
a greedy generating sequence; every witness it returns is re-verified on all
n^2 pairs.  brute_force_isomorphic is the independent oracle: exhaustive
generator-image search with no invariant-based candidate filtering (batched
with numpy so the order-16 battery stays fast).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .groups import (
    GroupTable, centralizer_orders, closure, conjugacy_classes, element_orders,
    fingerprint,
)


class SizeLimit(Exception):
    pass


@dataclass(frozen=True)
class IsoWitness:
    """A verified isomorphism as an id permutation: image[x] in H."""

    mapping: tuple[int, ...]


def generating_sequence(G: GroupTable) -> list[int]:
    """Greedy minimal generating sequence: repeatedly add the least element
    that grows the generated subgroup fastest."""
    gens: list[int] = []
    cur = (G.identity,)
    while len(cur) < G.n:
        best_x, best_size, best_cl = -1, 0, None
        cur_set = set(cur)
        for x in G.elements():
            if x in cur_set:
                continue
            cl = closure(G, gens + [x])
            if len(cl) > best_size:
                best_x, best_size, best_cl = x, len(cl), cl
        gens.append(best_x)
        cur = best_cl
    return gens


def _element_profiles(G: GroupTable):
    orders = element_orders(G)
    cents = centralizer_orders(G)
    class_size = np.zeros(G.n, dtype=np.int64)
    for cls in conjugacy_classes(G):
        for x in cls:
            class_size[x] = len(cls)
    return [(int(orders[x]), int(cents[x]), int(class_size[x])) for x in G.elements()]


def _verify_witness(G: GroupTable, H: GroupTable, mapping: np.ndarray) -> bool:
    if sorted(mapping.tolist()) != list(range(G.n)):
        return False
    return bool((mapping[G.mul] == H.mul[mapping[:, None], mapping[None, :]]).all())


def are_isomorphic(G: GroupTable, H: GroupTable,
                   use_prefilter: bool = True) -> IsoWitness | None:
    """A verified witness, or None after exhausting the (complete) search."""
    if G.n != H.n:
        return None
    if use_prefilter and fingerprint(G) != fingerprint(H):
        return None

    gens = generating_sequence(G)
    prof_G = _element_profiles(G)
    prof_H = _element_profiles(H)
    candidates = [sorted(h for h in H.elements() if prof_H[h] == prof_G[g])
                  for g in gens]
    if any(not c for c in candidates):
        return None

    n = G.n
    e_G, e_H = G.identity, H.identity

    def extend(level: int, mapping: np.ndarray, els: list[int]) -> np.ndarray | None:
        if level == len(gens):
            if len(els) == n and _verify_witness(G, H, mapping):
                return mapping
            return None
        g_new = gens[level]
        for h_new in candidates[level]:
            m2 = mapping.copy()
            if m2[g_new] >= 0:
                if m2[g_new] != h_new:
                    continue
            m2[g_new] = h_new
            # close the partial map under products, detecting contradictions
            els2 = list(els)
            if g_new not in els:
                els2.append(g_new)
            used = set(int(m2[x]) for x in els2)
            if len(used) != len(els2):
                continue
            frontier = list(els2)
            ok = True
            while frontier and ok:
                nxt = []
                for x in frontier:
                    for y in els2:
                        for a, b in ((x, y), (y, x)):
                            z = G.m(a, b)
                            img = H.m(int(m2[a]), int(m2[b]))
                            if m2[z] < 0:
                                if img in used:
                                    ok = False
                                    break
                                m2[z] = img
                                used.add(img)
                                els2.append(z)
                                nxt.append(z)
                            elif m2[z] != img:
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                frontier = nxt
            if not ok:
                continue
            res = extend(level + 1, m2, els2)
            if res is not None:
                return res
        return None

    init = np.full(n, -1, dtype=np.int64)
    init[e_G] = e_H
    res = extend(0, init, [e_G])
    return IsoWitness(tuple(int(v) for v in res)) if res is not None else None


BRUTE_FORCE_LIMIT = 16


def brute_force_isomorphic(G: GroupTable, H: GroupTable) -> bool:
    """Exhaustive generator-image search, no invariant pruning; order <= 16."""
    if G.n != H.n:
        return False
    if G.n > BRUTE_FORCE_LIMIT or H.n > BRUTE_FORCE_LIMIT:
        raise SizeLimit(f"brute force capped at order {BRUTE_FORCE_LIMIT}")

    gens = generating_sequence(G)
    k = len(gens)
    n = G.n

    # word for every element of G over the generating sequence (BFS order)
    words: list[list[int] | None] = [None] * n
    words[G.identity] = []
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = G.m(x, g)
                if words[y] is None:
                    words[y] = words[x] + [gi]
                    nxt.append(y)
        frontier = nxt

    # all |H|^k image tuples at once
    tuples = np.indices((n,) * k).reshape(k, -1).T        # (n^k, k)
    t = len(tuples)
    images = np.empty((t, n), dtype=np.int64)
    images[:, G.identity] = H.identity
    order_of_discovery = sorted(range(n), key=lambda x: len(words[x]))
    for x in order_of_discovery:
        w = words[x]
        if not w:
            continue
        col = np.full(t, H.identity, dtype=np.int64)
        for gi in w:
            col = H.mul[col, tuples[:, gi]]
        images[:, x] = col

    bijective = (np.sort(images, axis=1) == np.arange(n)[None, :]).all(axis=1)
    cand = np.flatnonzero(bijective)
    if cand.size == 0:
        return False
    sub = images[cand]
    hom = np.ones(len(sub), dtype=bool)
    for x in range(n):
        lhs = sub[:, G.mul[x]]
        rhs = H.mul[sub[:, x][:, None], sub]
        hom &= (lhs == rhs).all(axis=1)
        if not hom.any():
            return False
    return bool(hom.any())
