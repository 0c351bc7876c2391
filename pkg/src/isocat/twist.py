"""1-cochains, the factor eta(g,h), and the twisted group construction.

Exponent conventions: a cocycle on a modulus-m dual takes zeta_m exponents;
its solving 1-cochains xi_g need zeta_(2m), so xi tables are mod 2m and the
duality pairing embeds as exponent 2*(sigma . n).  The factor eta(g,h) is
recovered from the cochain ratio and, for the rank-2 types, cross-checked
against the closed form; a disagreement aborts the build.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cocycles import (
    AbelianBasis, CocycleRep, TYPE_2222, action_matrices, cocycle_value,
    dual_characters,
)
from .groups import GroupTable, from_cayley


class NotInvariant(Exception):
    """The coboundary equation has no solution for some g (pipeline bug)."""


class OddNumerator(Exception):
    """A closed-form eta numerator came out odd (convention violation)."""


class NoSuchElement(Exception):
    """A cochain ratio is not the evaluation of any element of N."""


class EtaMethodDisagreement(Exception):
    """Closed-form and ratio-method eta differ; neither is trusted."""


@dataclass(frozen=True)
class TwistedGroup:
    group: GroupTable
    source: GroupTable
    basis: AbelianBasis
    cocycle: CocycleRep


def _dual_index_data(B: AbelianBasis):
    m = B.modulus
    duals = np.array(dual_characters(B), dtype=np.int64)      # (nd, r)
    weights = m ** np.arange(B.rank - 1, -1, -1, dtype=np.int64)
    add = ((duals[:, None, :] + duals[None, :, :]) % m) @ weights
    return duals, weights, add


def _omega_matrix(B: AbelianBasis, w: CocycleRep, duals: np.ndarray) -> np.ndarray:
    nd = len(duals)
    W = np.empty((nd, nd), dtype=np.int64)
    for i, s in enumerate(duals):
        for j, t in enumerate(duals):
            W[i, j] = cocycle_value(w, s, t)
    return W


def _xi_row_rank2(A: np.ndarray, kappa: int, duals: np.ndarray, mod2m: int) -> np.ndarray:
    # closed form: xi_g(sigma) = zeta_2m ^ (-kappa (k m s1^2 + l n s2^2 + 2 l m s1 s2))
    k, l = int(A[0, 0]), int(A[0, 1])
    m_, n = int(A[1, 0]), int(A[1, 1])
    s1, s2 = duals[:, 0], duals[:, 1]
    q = k * m_ * s1 * s1 + l * n * s2 * s2 + 2 * l * m_ * s1 * s2
    return (-kappa * q) % mod2m


def _xi_row_rank4(A: np.ndarray, lam: np.ndarray, duals: np.ndarray) -> np.ndarray:
    # quadratic solution of the coboundary equation, then the lexicographically
    # least shift by a character (exponents mod 4, characters contribute {0,2})
    lam_u = np.triu(lam)
    M = (A.T @ lam_u @ A - lam_u) % 2
    diag = np.diag(M)
    q = (duals @ diag + 2 * np.einsum("di,ij,dj->d", duals, np.triu(M, 1), duals)) % 4
    best = None
    for shift in duals:                      # shifts are evaluations at n in N
        cand = (q + 2 * (duals @ shift)) % 4
        key = tuple(int(v) for v in cand)
        if best is None or key < best:
            best = key
    return np.array(best, dtype=np.int64)


def xi_table(G: GroupTable, B: AbelianBasis, w: CocycleRep,
             actions: np.ndarray | None = None) -> np.ndarray:
    """xi_g for all g as exponents mod 2m, shape (n, #duals).

    Verifies the coboundary equation exhaustively; the choice depends on g
    only through A(g), so the normalizations xi_(gn) = xi_g and xi_e = 1
    hold by construction.
    """
    A = action_matrices(G, B) if actions is None else actions
    duals, weights, add = _dual_index_data(B)
    m = w.modulus
    mod2m = 2 * m
    lam = np.asarray(w.lam, dtype=np.int64) if w.type == TYPE_2222 else None

    rows: dict[bytes, np.ndarray] = {}
    X = np.empty((G.n, len(duals)), dtype=np.int64)
    for g in range(G.n):
        key = A[g].tobytes()
        row = rows.get(key)
        if row is None:
            if w.type == TYPE_2222:
                row = _xi_row_rank4(A[g], lam, duals)
            else:
                row = _xi_row_rank2(A[g], w.k, duals, mod2m)
            rows[key] = row
        X[g] = row

    # exhaustive check: d(xi_g)(s,t) = omega(s^g, t^g) - omega(s,t) for all g,s,t
    W = _omega_matrix(B, w, duals)
    didx = np.einsum("gij,dj->gdi", A, duals) % m @ weights      # (n, nd)
    lhs = (X[:, :, None] + X[:, None, :] - X[np.arange(G.n)[:, None, None], add[None]]) % mod2m
    rhs = (2 * (W[didx[:, :, None], didx[:, None, :]] - W[None])) % mod2m
    if not np.array_equal(lhs, rhs):
        g = int(np.argwhere((lhs != rhs).any(axis=(1, 2)))[0][0])
        raise NotInvariant(f"coboundary equation unsolvable at g={g} for {w}")
    return X


def xi(G: GroupTable, B: AbelianBasis, w: CocycleRep, g: int) -> dict:
    """The 1-cochain at g as a map (dual exponent vector) -> exponent mod 2m."""
    X = xi_table(G, B, w)
    return {tuple(s): int(v) for s, v in zip(dual_characters(B), X[g])}


def _eta_coords_ratio(G: GroupTable, B: AbelianBasis, w: CocycleRep,
                      A: np.ndarray, X: np.ndarray):
    """eta coordinates for all pairs via the cochain ratio, with full
    character verification; returns (n, n, r) coordinates mod m."""
    duals, weights, add = _dual_index_data(B)
    m = w.modulus
    mod2m = 2 * m
    n = G.n
    didx = np.einsum("gij,dj->gdi", A, duals) % m @ weights      # sigma^g index
    gh = G.mul.astype(np.int64)

    # F[g, h, d] = xi_g(s_d) + xi_h(s_d^g) - xi_gh(s_d)
    F = np.empty((n, n, len(duals)), dtype=np.int64)
    for g in range(n):
        F[g] = (X[g][None, :] + X[:, didx[g]] - X[gh[g]]) % mod2m

    if (F % 2 != 0).any():
        raise OddNumerator("cochain ratio exponent is odd; convention violation")
    half = F // 2                                               # pairing exponents mod m
    basis_idx = [int(v) for v in (np.eye(B.rank, dtype=np.int64) @ weights)]
    coords = np.stack([half[:, :, bi] % m for bi in basis_idx], axis=-1)
    # the ratio must be a character: F(s) = 2 * (s . eta) for every dual s
    expect = (2 * (np.tensordot(coords, duals.T, axes=([2], [0])) % m)) % mod2m
    if not np.array_equal(expect, F % mod2m):
        raise NoSuchElement("cochain ratio is not an evaluation at any element of N")
    return coords


def _eta_coords_closed(G: GroupTable, B: AbelianBasis, w: CocycleRep, A: np.ndarray):
    """Closed-form eta for the rank-2 types, vectorized over all pairs."""
    m = B.modulus
    k, l = A[:, 0, 0].astype(np.int64), A[:, 0, 1].astype(np.int64)
    m_, n_ = A[:, 1, 0].astype(np.int64), A[:, 1, 1].astype(np.int64)
    gh = G.mul.astype(np.int64)
    kg, lg, mg, ng = k[:, None], l[:, None], m_[:, None], n_[:, None]
    ah, bh, ch, dh = k[None, :], l[None, :], m_[None, :], n_[None, :]
    p, q_, r, s = k[gh], l[gh], m_[gh], n_[gh]
    e1 = -kg * mg - ah * ch * kg * kg - bh * dh * mg * mg - 2 * bh * ch * kg * mg + p * r
    e2 = -lg * ng - ah * ch * lg * lg - bh * dh * ng * ng - 2 * bh * ch * lg * ng + q_ * s
    if (e1 % 2 != 0).any() or (e2 % 2 != 0).any():
        raise OddNumerator("closed-form eta numerator is odd; convention violation")
    c1 = (w.k * (e1 // 2)) % m
    c2 = (w.k * (e2 // 2)) % m
    return np.stack([c1, c2], axis=-1)


def eta_table(G: GroupTable, B: AbelianBasis, w: CocycleRep,
              actions: np.ndarray | None = None) -> np.ndarray:
    """eta(g, h) as element ids, shape (n, n).

    Ratio method everywhere; for the rank-2 types the closed form is computed
    as well and any disagreement aborts.
    """
    A = action_matrices(G, B) if actions is None else actions
    X = xi_table(G, B, w, actions=A)
    coords = _eta_coords_ratio(G, B, w, A, X)
    if w.type != TYPE_2222:
        closed = _eta_coords_closed(G, B, w, A)
        if not np.array_equal(coords, closed):
            bad = np.argwhere((coords != closed).any(axis=-1))[0]
            raise EtaMethodDisagreement(
                f"eta({bad[0]},{bad[1]}): ratio {coords[bad[0], bad[1]]} "
                f"vs closed {closed[bad[0], bad[1]]}")
    elem = np.empty((G.n, G.n), dtype=np.int64)
    lut = {}
    for x, vec in B.coords.items():
        lut[tuple(vec)] = x
    m = B.modulus
    weights = m ** np.arange(B.rank - 1, -1, -1, dtype=np.int64)
    flat = (coords % m) @ weights
    idx_lut = np.empty(m ** B.rank, dtype=np.int64)
    for vec, x in lut.items():
        idx_lut[int(np.dot(vec, weights))] = x
    return idx_lut[flat]


def eta(G: GroupTable, B: AbelianBasis, w: CocycleRep, g: int, h: int) -> int:
    return int(eta_table(G, B, w)[g, h])


def twisted_group(G: GroupTable, B: AbelianBasis, w: CocycleRep,
                  actions: np.ndarray | None = None) -> TwistedGroup:
    """The group with product g~ . h~ = (eta(g,h) g h)~ on G's element ids."""
    et = eta_table(G, B, w, actions=actions)
    mul = G.mul.astype(np.int64)
    twisted_mul = mul[et, mul]
    name = f"{G.name}^w[{'x'.join(map(str, w.type))}#{w.index}]"
    H = from_cayley(name, twisted_mul, G.gen_ids)
    return TwistedGroup(group=H, source=G, basis=B, cocycle=w)


def twist_relations(G: GroupTable, B: AbelianBasis, w: CocycleRep,
                    elements=None) -> list[tuple[int, int, int]]:
    """Triples (i, j, k) with i~ . j~ = k~ over the chosen element ids."""
    T = twisted_group(G, B, w)
    ids = list(G.gen_ids if elements is None else elements)
    return [(i, j, int(T.group.mul[i, j])) for i in ids for j in ids]
