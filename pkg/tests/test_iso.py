import numpy as np
import pytest

from isocat.groups import fingerprint, relabel
from isocat.iso import (
    IsoWitness, SizeLimit, are_isomorphic, brute_force_isomorphic,
    generating_sequence,
)
from isocat.presentation import parse_group_file, realize

from battery import ORDER8, ORDER16
from conftest import corpus_group


def bat8():
    return {n: realize(parse_group_file(t)) for n, t in ORDER8.items()}


def test_identity_witness():
    G = corpus_group("1-19-44-0-0-0-0_5")
    w = are_isomorphic(G, G)
    assert w is not None


def test_witness_is_a_verified_homomorphism():
    g = bat8()
    w = are_isomorphic(g["D8"], g["D8"])
    m = np.array(w.mapping)
    H = g["D8"]
    assert (m[H.mul] == H.mul[m[:, None], m[None, :]]).all()
    assert sorted(w.mapping) == list(range(8))


def test_relabeling_yields_witnesses():
    G = corpus_group("1-31-32-0-0-0-0_5")
    rng = np.random.default_rng(17)
    for _ in range(20):
        H = relabel(G, rng.permutation(G.n))
        assert are_isomorphic(G, H) is not None


def test_known_non_isomorphic_pairs():
    g = bat8()
    assert are_isomorphic(g["D8"], g["Q8"]) is None
    assert are_isomorphic(g["C4xC2"], g["C2^3"]) is None
    assert brute_force_isomorphic(g["D8"], g["Q8"]) is False


def test_two_presentations_of_c2_cubed():
    a = realize(parse_group_file(ORDER8["C2^3"]))
    b = realize(parse_group_file(
        "group V8\ngens 3\nrel f3f3\nrel f2f2\nrel f1f1\n"
        "rel f2f1f2f1\nrel f3f1f3f1\nrel f3f2f3f2\n"))
    assert are_isomorphic(a, b) is not None
    assert brute_force_isomorphic(a, b) is True


def test_generating_sequence_generates():
    G = corpus_group("1-19-44-0-0-0-0_5")
    gens = generating_sequence(G)
    from isocat.groups import closure

    assert len(closure(G, gens)) == G.n
    assert len(gens) <= 6


def test_brute_force_size_limit():
    G = corpus_group("1-19-44-0-0-0-0_5")
    with pytest.raises(SizeLimit):
        brute_force_isomorphic(G, G)


def test_order_mismatch_is_immediate():
    g = bat8()
    c16 = realize(parse_group_file(ORDER16["C16"]))
    assert are_isomorphic(g["C8"], c16) is None


def test_prefilter_never_contradicts_search():
    groups = {**bat8(), **{n: realize(parse_group_file(t)) for n, t in ORDER16.items()}}
    names = list(groups)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            A, B = groups[a], groups[b]
            if A.n != B.n:
                continue
            if fingerprint(A) != fingerprint(B):
                assert are_isomorphic(A, B, use_prefilter=False) is None
