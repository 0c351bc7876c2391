"""Dual characters, non-degenerate 2-cocycle representatives, invariance tests.

Phases are integer exponents of a fixed root of unity, never floats: a
cocycle on the dual of C2xC2 or C2^4 takes values in <zeta_2>, on C4xC4 in
<zeta_4>.  The 1-cochains solving the invariance coboundary live one level
up (zeta_4 resp. zeta_8); see twist.py.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .groups import GroupTable, Subgroup, abelian_type, element_order

TYPE_2x2 = (2, 2)
TYPE_4x4 = (4, 4)
TYPE_2222 = (2, 2, 2, 2)
SUPPORTED_TYPES = (TYPE_2x2, TYPE_4x4, TYPE_2222)


class UnsupportedType(Exception):
    pass


class TypeMismatch(Exception):
    pass


class NotNormal(Exception):
    pass


# ---------------------------------------------------------------------------
# bases and coordinates


@dataclass(frozen=True)
class AbelianBasis:
    """An ordered basis of an abelian subgroup realizing its standard type.

    coords maps element id -> coordinate tuple; all factor orders are equal
    (2 or 4) for the supported types, exposed as .modulus.
    """

    subgroup: Subgroup
    type: tuple[int, ...]
    basis: tuple[int, ...]
    coords: dict

    @property
    def modulus(self) -> int:
        return self.type[0]

    @property
    def rank(self) -> int:
        return len(self.type)

    def element_of(self, coord) -> int:
        key = tuple(c % self.modulus for c in coord)
        lookup = self.__dict__.get("_elem_lookup")
        if lookup is None:
            lookup = {v: k for k, v in self.coords.items()}
            self.__dict__["_elem_lookup"] = lookup
        return lookup[key]


def _coords_from_basis(G: GroupTable, members, basis, factors, full=True):
    coords = {}
    for vec in itertools.product(*(range(f) for f in factors)):
        x = G.identity
        for b, e in zip(basis, vec):
            for _ in range(e):
                x = G.m(x, b)
        if x in coords:
            return None
        coords[x] = vec
    if full and set(coords) != set(members):
        return None
    return coords


def basis_from_generators(N: Subgroup, gens) -> AbelianBasis:
    """Basis with prescribed generators, e.g. a verdict-table row's [f1f4, f2]."""
    t = abelian_type(N)
    if t not in SUPPORTED_TYPES:
        raise UnsupportedType(f"abelian type {t} is not in the pipeline")
    gens = tuple(int(g) for g in gens)
    if len(gens) != len(t):
        raise TypeMismatch(f"expected {len(t)} generators for type {t}")
    G = N.parent
    for g, f in zip(gens, t):
        if element_order(G, g) != f:
            raise TypeMismatch(f"generator {g} does not have order {f}")
    coords = _coords_from_basis(G, N.members, gens, t)
    if coords is None:
        raise TypeMismatch(f"generators {gens} do not decompose the subgroup")
    return AbelianBasis(subgroup=N, type=t, basis=gens, coords=coords)


def standard_basis(N: Subgroup, t: tuple[int, ...] | None = None) -> AbelianBasis:
    """Deterministic basis: smallest element ids first among valid choices."""
    actual = abelian_type(N)
    if actual not in SUPPORTED_TYPES:
        raise UnsupportedType(f"abelian type {actual} is not in the pipeline")
    if t is not None and tuple(t) != actual:
        raise TypeMismatch(f"subgroup has type {actual}, not {t}")
    t = actual
    G = N.parent
    chosen: list[int] = []
    for f in t:
        pick = None
        for x in N.members:
            if x == G.identity or x in chosen:
                continue
            if element_order(G, x) != f:
                continue
            if _coords_from_basis(G, N.members, chosen + [x],
                                  t[:len(chosen) + 1], full=False) is None:
                continue
            pick = x
            break
        assert pick is not None, "abelian type guarantees a basis extension"
        chosen.append(pick)
    coords = _coords_from_basis(G, N.members, chosen, t)
    assert coords is not None
    return AbelianBasis(subgroup=N, type=t, basis=tuple(chosen), coords=coords)


def dual_characters(B: AbelianBasis) -> list[tuple[int, ...]]:
    """All exponent vectors of the dual group, in mixed-radix order."""
    return list(itertools.product(*(range(f) for f in B.type)))


def pairing_exponent(B: AbelianBasis, sigma, n_coord) -> int:
    """<sigma, n> = zeta_m ^ (sigma . n) for the uniform factor order m."""
    return sum(s * c for s, c in zip(sigma, n_coord)) % B.modulus


# ---------------------------------------------------------------------------
# cocycle representatives


@dataclass(frozen=True)
class CocycleRep:
    """A representative 2-cocycle on the dual of one of the supported types.

    type (2,2):      omega(s,t) = zeta_2^(k s1 t2),  k in {0,1}
    type (4,4):      omega(s,t) = zeta_4^(k s1 t2),  k in 0..3
    type (2,2,2,2):  omega(s,t) = zeta_2^(sum lam_ij s_i t_j, i<j),
                     lam a symmetric 0/1 matrix with zero diagonal
    index: 1-based position among the non-degenerate representatives of the
    type (0 for degenerate test reps).
    """

    type: tuple[int, ...]
    k: int = 1
    lam: tuple[tuple[int, ...], ...] | None = None
    index: int = 0

    @property
    def modulus(self) -> int:
        """Modulus of the cocycle's phase exponents (2 except for C4xC4)."""
        return 4 if self.type == TYPE_4x4 else 2

    def lam_upper(self) -> list[tuple[int, int, int]]:
        assert self.lam is not None
        return [(i, j, self.lam[i][j]) for i in range(4) for j in range(i + 1, 4)]

    def describe(self) -> str:
        if self.type == TYPE_2222:
            terms = [f"s{i + 1}t{j + 1}" for i, j, v in self.lam_upper() if v]
            return f"(-1)^({'+'.join(terms)})"
        z = "zeta4" if self.type == TYPE_4x4 else "-1"
        return f"({z})^({self.k}*s1t2)" if self.k != 1 else f"({z})^(s1t2)"


def _f2_rank(rows: list[int]) -> int:
    """Rank of 0/1 row bitmasks over F2."""
    rank = 0
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
            rank += 1
    return rank


def rank4_symmetric_matrices() -> list[tuple[tuple[int, ...], ...]]:
    """All full-rank symmetric zero-diagonal 4x4 F2 matrices, ordered by the
    binary value of the upper triangle (lam12, lam13, lam14, lam23, lam24, lam34)."""
    out = []
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    for bits in range(64):
        m = [[0] * 4 for _ in range(4)]
        for pos, (i, j) in enumerate(pairs):
            v = (bits >> (5 - pos)) & 1
            m[i][j] = m[j][i] = v
        rows = [sum(m[i][j] << (3 - j) for j in range(4)) for i in range(4)]
        if _f2_rank(rows) == 4:
            out.append(tuple(tuple(r) for r in m))
    return out


def nondegenerate_reps(t) -> list[CocycleRep]:
    t = tuple(t)
    if t == TYPE_2x2:
        return [CocycleRep(type=t, k=1, index=1)]
    if t == TYPE_4x4:
        return [CocycleRep(type=t, k=1, index=1), CocycleRep(type=t, k=3, index=2)]
    if t == TYPE_2222:
        return [CocycleRep(type=t, k=1, lam=lam, index=i + 1)
                for i, lam in enumerate(rank4_symmetric_matrices())]
    raise UnsupportedType(f"no non-degenerate cocycles on the dual of {t}")


def cocycle_value(w: CocycleRep, sigma, tau) -> int:
    """Exponent of omega(sigma, tau) in zeta_[w.modulus]."""
    if w.type == TYPE_2222:
        e = sum(v * sigma[i] * tau[j] for i, j, v in w.lam_upper())
        return e % 2
    return (w.k * sigma[0] * tau[1]) % w.modulus


def bicharacter_value(w: CocycleRep, sigma, tau) -> int:
    """beta(sigma, tau) = omega(sigma, tau) / omega(tau, sigma), as an exponent."""
    return (cocycle_value(w, sigma, tau) - cocycle_value(w, tau, sigma)) % w.modulus


def is_nondegenerate(w: CocycleRep) -> bool:
    """True iff the radical of the associated bicharacter is trivial."""
    if w.type == TYPE_2222:
        rows = [sum(w.lam[i][j] << (3 - j) for j in range(4)) for i in range(4)]
        return _f2_rank(rows) == 4
    return w.k % 2 == 1


# ---------------------------------------------------------------------------
# the conjugation action on the dual


def action_matrices(G: GroupTable, B: AbelianBasis) -> np.ndarray:
    """A(g) for every g, shape (n, r, r), entries canonical mod the factor order.

    Convention: conjugating the group-side basis, g b_i g^-1 has coordinate
    vector c_i; the dual-action matrix is A(g) = (c_1 | ... | c_r)^T, so that
    sigma^g = A(g) sigma on exponent vectors.
    """
    n = G.n
    r = B.rank
    coords_arr = np.full((n, r), -1, dtype=np.int64)
    for x, vec in B.coords.items():
        coords_arr[x] = vec
    basis = np.fromiter(B.basis, dtype=np.int64)
    conj = G.mul[G.mul[:, basis], G.inv[:, None]]        # (n, r): g b_i g^-1
    rows = coords_arr[conj]                              # [g, i, :] = coord of g b_i g^-1
    if (rows < 0).any():
        raise NotNormal(f"{B.subgroup.members} is not normal in {G.name}")
    return np.ascontiguousarray(rows) % B.modulus


def det2x2_mod(A: np.ndarray, m: int) -> np.ndarray:
    return (A[..., 0, 0] * A[..., 1, 1] - A[..., 0, 1] * A[..., 1, 0]) % m


def action_matrix(G: GroupTable, B: AbelianBasis, g: int) -> np.ndarray:
    return action_matrices(G, B)[g]


def _invariant_given_actions(A: np.ndarray, B: AbelianBasis, w: CocycleRep) -> bool:
    if w.type in (TYPE_2x2, TYPE_4x4):
        return bool((det2x2_mod(A, B.modulus) == 1).all())
    # C2^4: the six-lambda product equation for every pair (i, j) and every g,
    # i.e. A(g)^T Lam A(g) = Lam over F2
    lam = np.asarray(w.lam, dtype=np.int64)
    lhs = np.einsum("gki,kl,glj->gij", A, lam, A) % 2
    return bool((lhs == lam[None]).all())


def is_g_invariant(G: GroupTable, B: AbelianBasis, w: CocycleRep,
                   actions: np.ndarray | None = None) -> bool:
    """Evaluate the type-specific invariance condition over every g in G."""
    A = action_matrices(G, B) if actions is None else actions
    return _invariant_given_actions(A, B, w)


def invariant_rep_indices(G: GroupTable, B: AbelianBasis,
                          actions: np.ndarray | None = None) -> list[int]:
    """Indices (1-based) of the non-degenerate reps that are G-invariant."""
    A = action_matrices(G, B) if actions is None else actions
    return [w.index for w in nondegenerate_reps(B.type)
            if _invariant_given_actions(A, B, w)]
