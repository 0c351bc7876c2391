"""Group description files and their realization by coset enumeration.

File format (UTF-8, line based, ``#`` comments):

    group <name>
    gens <k>
    prod <i> <j> = <word>     # f_i * f_j equals <word>
    rel <word>                # <word> equals the identity

A word is ``e`` or juxtaposed tokens like ``f1f2f5``.  Comment lines of the
form ``# note: ...`` are transcription annotations; they are collected and
surfaced rather than dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import GroupTable, closure, from_cayley

Word = tuple[int, ...]   # signed 1-based generator indices; empty = identity


class ParseError(Exception):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnknownGenerator(ParseError):
    pass


class Overflow(Exception):
    """Coset enumeration hit its coset bound (bad transcription or infinite group)."""


@dataclass(frozen=True)
class Presentation:
    name: str
    num_gens: int
    relators: tuple[Word, ...]
    # raw product-table cells (i, j) -> word, kept for report echoing
    products: dict = field(default_factory=dict, compare=False)
    annotations: tuple[str, ...] = ()


def parse_word(text: str, num_gens: int, line: int) -> Word:
    text = text.strip()
    if text in ("e", "1"):
        return ()
    out = []
    i = 0
    while i < len(text):
        if text[i] != "f":
            raise ParseError(f"unexpected character {text[i]!r} in word {text!r}", line)
        i += 1
        j = i
        while j < len(text) and text[j].isdigit():
            j += 1
        if j == i:
            raise ParseError(f"missing generator index in word {text!r}", line)
        idx = int(text[i:j])
        if not 1 <= idx <= num_gens:
            raise UnknownGenerator(f"generator f{idx} not declared (gens {num_gens})", line)
        out.append(idx)
        i = j
    return tuple(out)


def word_inverse(w: Word) -> Word:
    return tuple(-g for g in reversed(w))


def parse_group_file(text: str) -> Presentation:
    name = None
    num_gens = None
    relators: list[Word] = []
    products: dict[tuple[int, int], Word] = {}
    annotations: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            note = line[1:].strip()
            if note.lower().startswith("note:"):
                annotations.append(note[5:].strip())
            continue
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "group":
            if len(fields) < 2:
                raise ParseError("missing group name", lineno)
            name = " ".join(fields[1:])
        elif kind == "gens":
            if len(fields) != 2 or not fields[1].isdigit():
                raise ParseError("expected: gens <k>", lineno)
            num_gens = int(fields[1])
            if not 1 <= num_gens <= 8:
                raise ParseError(f"gens must be in 1..8, got {num_gens}", lineno)
        elif kind == "prod":
            if num_gens is None:
                raise ParseError("prod before gens", lineno)
            if len(fields) != 5 or fields[3] != "=":
                raise ParseError("expected: prod <i> <j> = <word>", lineno)
            i, j = int(fields[1]), int(fields[2])
            if not (1 <= i <= num_gens and 1 <= j <= num_gens):
                raise UnknownGenerator(f"prod indices {i} {j} out of range", lineno)
            w = parse_word(fields[4], num_gens, lineno)
            products[(i, j)] = w
            # relator f_i f_j w^-1; vacuous cells are kept, they cost nothing
            relators.append((i, j) + word_inverse(w))
        elif kind == "rel":
            if num_gens is None:
                raise ParseError("rel before gens", lineno)
            if len(fields) != 2:
                raise ParseError("expected: rel <word>", lineno)
            relators.append(parse_word(fields[1], num_gens, lineno))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)

    if name is None:
        raise ParseError("missing 'group' line", 0)
    if num_gens is None:
        raise ParseError("missing 'gens' line", 0)
    return Presentation(
        name=name,
        num_gens=num_gens,
        relators=tuple(relators),
        products=products,
        annotations=tuple(annotations),
    )


# ---------------------------------------------------------------------------
# Todd-Coxeter (HLT with deductions and coincidence processing)


@dataclass
class CosetTable:
    """Transition table over signed generators; row per coset."""

    num_gens: int
    table: list[list[int]]            # live, compressed rows
    complete: bool

    def num_cosets(self) -> int:
        return len(self.table)


DEFAULT_MAX_COSETS = 100_000


def _letter(g: int) -> int:
    # signed generator -> column: +i -> 2(i-1), -i -> 2(i-1)+1
    return 2 * (g - 1) if g > 0 else 2 * (-g - 1) + 1


def _inv_letter(x: int) -> int:
    return x ^ 1


def todd_coxeter(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate cosets of the trivial subgroup; raises Overflow at the bound."""
    ncols = 2 * P.num_gens
    rows: list[list[int]] = [[-1] * ncols]
    rep: list[int] = [0]                      # union-find for coincidences
    rel_words = [[_letter(g) for g in w] for w in P.relators if w]

    def find(a: int) -> int:
        while rep[a] != a:
            rep[a] = rep[rep[a]]
            a = rep[a]
        return a

    def define(a: int, x: int) -> int:
        if len(rows) >= max_cosets:
            raise Overflow(f"{P.name}: coset bound {max_cosets} reached")
        b = len(rows)
        rows.append([-1] * ncols)
        rep.append(b)
        rows[a][x] = b
        rows[b][_inv_letter(x)] = a
        return b

    def coincidence(a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            rep[b] = a
            for x in range(ncols):
                c = rows[b][x]
                if c < 0:
                    continue
                c = find(c)
                # undo b's entry, transplant onto a
                d = rows[a][x]
                if d < 0:
                    rows[a][x] = c
                    if rows[c][_inv_letter(x)] < 0:
                        rows[c][_inv_letter(x)] = a
                    else:
                        queue.append((find(rows[c][_inv_letter(x)]), a))
                else:
                    queue.append((find(d), c))

    def scan_and_fill(a: int, word: list[int]) -> None:
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            # scan forward as far as possible
            while i <= j and rows[f][word[i]] >= 0:
                f = find(rows[f][word[i]])
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            # scan backward
            while j >= i and rows[b][_inv_letter(word[j])] >= 0:
                b = find(rows[b][_inv_letter(word[j])])
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:   # deduction closes the gap
                rows[f][word[i]] = b
                rows[b][_inv_letter(word[i])] = f
                return
            f = define(f, word[i])
            i += 1

    a = 0
    while a < len(rows):
        if find(a) != a:
            a += 1
            continue
        for word in rel_words:
            scan_and_fill(a, word)
            if find(a) != a:
                break
        if find(a) == a:
            for x in range(ncols):
                if rows[a][x] < 0:
                    define(a, x)
                elif find(a) != a:
                    break
        a += 1

    live = [c for c in range(len(rows)) if find(c) == c]
    index = {c: k for k, c in enumerate(live)}
    packed = [[index[find(rows[c][x])] for x in range(ncols)] for c in live]
    complete = all(all(v >= 0 for v in row) for row in packed)
    return CosetTable(num_gens=P.num_gens, table=packed, complete=complete)


def realize(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> GroupTable:
    """Realize a presentation as a GroupTable via the regular coset action."""
    ct = todd_coxeter(P, max_cosets)
    assert ct.complete, "trivial-subgroup enumeration always completes when it closes"
    n = ct.num_cosets()
    rows = ct.table

    # shortest word per coset, BFS from 0 in generator order
    words: list[list[int] | None] = [None] * n
    words[0] = []
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for g in range(P.num_gens):
                d = rows[c][2 * g]
                if words[d] is None:
                    words[d] = words[c] + [2 * g]
                    nxt.append(d)
        frontier = nxt
    assert all(w is not None for w in words)

    mul = np.empty((n, n), dtype=np.int16)
    for b in range(n):
        cur = np.arange(n)
        for x in words[b]:
            col = np.array([rows[c][x] for c in range(n)])
            cur = col[cur]
        mul[:, b] = cur
    gen_ids = tuple(rows[0][2 * g] for g in range(P.num_gens))
    return from_cayley(P.name, mul, gen_ids)


# ---------------------------------------------------------------------------
# product-table emission


def _frattini_members(G: GroupTable, members: tuple[int, ...]) -> tuple[int, ...]:
    ms = list(members)
    sq = {G.m(x, x) for x in ms}
    comm = {G.m(G.m(x, y), G.inv[G.m(y, x)]) for x in ms for y in ms}
    gens = sorted((sq | comm) & set(ms))
    return _closure_within(G, members, gens)


def _closure_within(G: GroupTable, members, gens) -> tuple[int, ...]:
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.m(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def pc_generators(G: GroupTable) -> list[int]:
    """A polycyclic generating sequence along an index-2 subgroup chain.

    Only valid for 2-groups; deterministic (lexicographically least chain).
    """
    assert G.n & (G.n - 1) == 0, "2-groups only"
    chain = [tuple(range(G.n))]
    while len(chain[-1]) > 1:
        cur = chain[-1]
        phi = _frattini_members(G, cur)
        cosets: dict[int, list[int]] = {}
        rep_of = {}
        for x in cur:
            c = min(G.m(x, p) for p in phi)
            rep_of[x] = c
            cosets.setdefault(c, []).append(x)
        reps = sorted(cosets)                      # F2-space of Phi-cosets
        # coordinates of each coset over a greedy basis of the Frattini quotient
        coord: dict[int, tuple[int, ...]] = {G.identity: ()}
        for r in reps:
            if r in coord:
                continue
            grown = {}
            for known, vec in coord.items():
                grown[known] = vec + (0,)
                grown[rep_of[G.m(known, r)]] = vec + (1,)
            coord = grown
        d = len(next(iter(coord.values())))
        assert len(coord) == len(reps) == 2 ** d
        # index-2 subgroups = kernels of nonzero functionals; pick the lex-least
        best = None
        for f in range(1, 2 ** d):
            fun = [(f >> k) & 1 for k in range(d)]
            sub = []
            for r in reps:
                if sum(v * c for v, c in zip(coord[r], fun)) % 2 == 0:
                    sub.extend(cosets[r])
            sub_t = tuple(sorted(sub))
            if best is None or sub_t < best:
                best = sub_t
        chain.append(best)
    gens = []
    for top, bottom in zip(chain, chain[1:]):
        gens.append(min(set(top) - set(bottom)))
    return gens


def pc_normal_form(G: GroupTable, gens: list[int], x: int) -> tuple[int, ...]:
    """Exponent vector of x over a pc generating sequence (all exponents 0/1)."""
    sub_members = [closure(G, gens[i:]) for i in range(len(gens))] + [(G.identity,)]
    exps = []
    for i, f in enumerate(gens):
        if x in sub_members[i + 1]:
            exps.append(0)
        else:
            exps.append(1)
            x = G.m(G.inv[f], x)
    assert x == G.identity
    return tuple(exps)


def product_table_text(G: GroupTable, name: str | None = None,
                       annotations: tuple[str, ...] = ()) -> str:
    """Serialize a 2-group as a full generator product table in file format."""
    gens = pc_generators(G)
    k = len(gens)

    def word(x: int) -> str:
        exps = pc_normal_form(G, gens, x)
        if not any(exps):
            return "e"
        return "".join(f"f{i + 1}" for i, e in enumerate(exps) if e)

    lines = [f"group {name or G.name}", f"gens {k}"]
    lines += [f"# note: {a}" for a in annotations]
    for i in range(k):
        for j in range(k):
            lines.append(f"prod {i + 1} {j + 1} = {word(G.m(gens[i], gens[j]))}")
    return "\n".join(lines) + "\n"
