"""Corpus classification: candidate subgroups, twists, partners, pairs."""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import cocycles, twist
from .groups import (
    GroupTable, OrderList, Subgroup, closure, enumerate_candidate_subgroups,
    fingerprint, order_list,
)
from .iso import are_isomorphic
from .presentation import ParseError, Presentation, parse_group_file, realize


class PartnerNotFound(Exception):
    """A non-isomorphic twist matched nothing in its bucket (incomplete corpus)."""


class InvariantViolation(Exception):
    """A structural invariant failed mid-classification (never expected)."""


class CorpusError(Exception):
    pass


TYPE_NAMES = {
    (2, 2): "C2xC2",
    (4, 4): "C4xC4",
    (2, 2, 2, 2): "C2xC2xC2xC2",
}


@dataclass(frozen=True)
class ClassificationRecord:
    subgroup_words: tuple[str, ...]
    subgroup_members: tuple[int, ...]
    type: tuple[int, ...]
    invariant: object                 # bool, or sorted list of rep indices
    twist_isomorphic: bool | None     # None when nothing to twist
    partner: str | None
    partner_index: int | None


@dataclass(frozen=True)
class GroupResult:
    name: str
    order_list: tuple[int, ...]
    rigid: bool
    records: tuple[ClassificationRecord, ...]
    annotations: tuple[str, ...] = ()
    generator_words: tuple = ()       # raw (i, j, word) cells for report echo


@dataclass(frozen=True)
class Report:
    buckets: tuple                    # ((order_list, (GroupResult, ...)), ...)
    pairs: tuple                      # ((name_a, name_b), ...)


def element_words(G: GroupTable) -> list[str]:
    """A display word over f1..fk for every element id.

    Uses exponent normal forms when the declared generators form an index-2
    chain (every corpus table does), shortest products otherwise.
    """
    gens = list(G.gen_ids)
    k = len(gens)
    chain_ok = all(
        len(closure(G, gens[i:])) == 2 ** (k - i) for i in range(k)
    ) and 2 ** k == G.n
    words = [None] * G.n
    if chain_ok:
        subs = [set(closure(G, gens[i:])) for i in range(k)] + [{G.identity}]
        for x in G.elements():
            cur, parts = x, []
            for i, f in enumerate(gens):
                if cur not in subs[i + 1]:
                    parts.append(f"f{i + 1}")
                    cur = G.m(int(G.inv[f]), cur)
            words[x] = "".join(parts) if parts else "e"
        return words
    words[G.identity] = "e"
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = G.m(x, g)
                if words[y] is None:
                    words[y] = (words[x] if words[x] != "e" else "") + f"f{i + 1}"
                    nxt.append(y)
        frontier = nxt
    return words


_fp_cache: dict[bytes, object] = {}


def cached_fingerprint(G: GroupTable):
    key = G.mul.tobytes()
    fp = _fp_cache.get(key)
    if fp is None:
        fp = fingerprint(G)
        _fp_cache[key] = fp
    return fp


def _twist_reps(t, invariant):
    if t == (2, 2):
        return cocycles.nondegenerate_reps(t) if invariant else []
    if t == (4, 4):
        return cocycles.nondegenerate_reps(t) if invariant else []
    return [w for w in cocycles.nondegenerate_reps(t) if w.index in invariant]


def classify_group(G: GroupTable, bucket: list[GroupTable],
                   words: list[str] | None = None) -> list[ClassificationRecord]:
    """One record per candidate subgroup; twists built for invariant cocycles.

    bucket must contain every corpus group sharing G's order list, G included,
    in corpus order; partners are reported by bucket name and 1-based index.
    """
    if G.is_abelian():
        return []
    if words is None:
        words = element_words(G)
    src_ol = order_list(G).counts
    fp_G = cached_fingerprint(G)
    records = []
    for N, t in enumerate_candidate_subgroups(G):
        B = cocycles.standard_basis(N, t)
        A = cocycles.action_matrices(G, B)
        if t == (2, 2, 2, 2):
            invariant = cocycles.invariant_rep_indices(G, B, actions=A)
        else:
            invariant = cocycles.is_g_invariant(
                G, B, cocycles.nondegenerate_reps(t)[0], actions=A)
        reps = _twist_reps(t, invariant)
        verdicts = []
        partners = []
        for w in reps:
            T = twist.twisted_group(G, B, w, actions=A)
            if order_list(T.group).counts != src_ol:
                raise InvariantViolation(
                    f"{G.name}: twist by {w} changed the order list "
                    f"{src_ol} -> {order_list(T.group).counts}")
            iso_to_source = are_isomorphic(G, T.group) is not None
            verdicts.append(iso_to_source)
            if not iso_to_source:
                hit = None
                for idx, Hg in enumerate(bucket, 1):
                    if cached_fingerprint(Hg) != cached_fingerprint(T.group):
                        continue
                    if are_isomorphic(T.group, Hg) is not None:
                        hit = (Hg.name, idx)
                        break
                if hit is None:
                    raise PartnerNotFound(
                        f"{G.name}: twist by {w} on {B.basis} matches no "
                        f"bucket member")
                partners.append(hit)
        if verdicts and len(set(verdicts)) != 1:
            raise InvariantViolation(
                f"{G.name}: cocycles on one subgroup disagree about "
                f"twist-isomorphism: {verdicts}")
        if partners and len(set(partners)) != 1:
            raise InvariantViolation(
                f"{G.name}: cocycles on one subgroup found different "
                f"partners: {partners}")
        records.append(ClassificationRecord(
            subgroup_words=tuple(words[b] for b in B.basis),
            subgroup_members=N.members,
            type=t,
            invariant=invariant,
            twist_isomorphic=verdicts[0] if verdicts else None,
            partner=partners[0][0] if partners else None,
            partner_index=partners[0][1] if partners else None,
        ))
    return records


# ---------------------------------------------------------------------------
# corpus orchestration


_FILE_RE = re.compile(r"^([0-9]+(?:-[0-9]+)*)_(\d+)\.grp$")


@dataclass(frozen=True)
class CorpusEntry:
    path: Path
    order_key: tuple[int, ...]
    index: int
    presentation: Presentation
    group: GroupTable


def load_corpus(directory) -> list[CorpusEntry]:
    directory = Path(directory)
    entries = []
    files = sorted(p for p in directory.iterdir() if p.suffix == ".grp")
    if not files:
        raise CorpusError(f"no .grp files in {directory}")
    for path in files:
        m = _FILE_RE.match(path.name)
        if not m:
            raise CorpusError(f"{path.name}: name must be <orderlist>_<index>.grp")
        claimed = tuple(int(x) for x in m.group(1).split("-"))
        index = int(m.group(2))
        try:
            pres = parse_group_file(path.read_text())
            G = realize(pres)
        except ParseError as exc:
            raise CorpusError(f"{path.name}: {exc}") from exc
        ol = order_list(G).counts
        if ol != claimed:
            raise CorpusError(
                f"{path.name}: realized order list {ol} contradicts the name")
        entries.append(CorpusEntry(path=path, order_key=claimed, index=index,
                                   presentation=pres, group=G))
    entries.sort(key=lambda e: (e.order_key, e.index))
    return entries


def bucket_by_order_list(entries) -> dict:
    buckets: dict[tuple[int, ...], list[CorpusEntry]] = {}
    for e in entries:
        buckets.setdefault(e.order_key, []).append(e)
    return dict(sorted(buckets.items()))


def _classify_entry(task):
    entry, bucket_groups = task
    G = entry.group
    words = element_words(G)
    gen_cells = tuple(
        (i, j, "".join(f"f{t}" for t in entry.presentation.products.get((i, j), ())) or "e")
        for i in range(1, entry.presentation.num_gens + 1)
        for j in range(1, entry.presentation.num_gens + 1)
    )
    records = classify_group(G, bucket_groups, words=words)
    rigid = all(r.twist_isomorphic in (None, True) for r in records)
    return GroupResult(
        name=G.name,
        order_list=entry.order_key,
        rigid=rigid,
        records=tuple(records),
        annotations=entry.presentation.annotations,
        generator_words=gen_cells,
    )


def classify_corpus(directory, jobs: int = 1) -> Report:
    entries = load_corpus(directory)
    buckets = bucket_by_order_list(entries)

    tasks = []
    shortcut: dict[str, GroupResult] = {}
    for key, members in buckets.items():
        group_list = [e.group for e in members]
        for e in members:
            if len(members) == 1 or e.group.is_abelian():
                shortcut[e.group.name] = GroupResult(
                    name=e.group.name, order_list=key, rigid=True, records=(),
                    annotations=e.presentation.annotations,
                    generator_words=(),
                )
            else:
                tasks.append((e, group_list))

    results: dict[str, GroupResult] = dict(shortcut)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for res in pool.map(_classify_entry, tasks, chunksize=4):
                results[res.name] = res
    else:
        for task in tasks:
            res = _classify_entry(task)
            results[res.name] = res

    out_buckets = []
    pairs = set()
    partner_map: dict[str, set[str]] = {}
    for key, members in buckets.items():
        group_results = tuple(results[e.group.name] for e in members)
        out_buckets.append((key, group_results))
        for gr in group_results:
            for rec in gr.records:
                if rec.twist_isomorphic is False:
                    pairs.add(tuple(sorted((gr.name, rec.partner))))
                    partner_map.setdefault(gr.name, set()).add(rec.partner)
    for a, b in sorted(pairs):
        if a == b:
            raise InvariantViolation(f"group {a} paired with itself")
        if a not in partner_map.get(b, ()) or b not in partner_map.get(a, ()):
            raise InvariantViolation(f"pair ({a}, {b}) is not mutual")
    return Report(buckets=tuple(out_buckets), pairs=tuple(sorted(pairs)))
