import pytest

from isocat.groups import order_list
from isocat.iso import are_isomorphic
from isocat.presentation import (
    Overflow, ParseError, UnknownGenerator, parse_group_file, parse_word,
    product_table_text, realize, todd_coxeter, word_inverse,
)

from conftest import CORPUS, DATA, corpus_group, load_group


def test_parse_word():
    assert parse_word("e", 3, 1) == ()
    assert parse_word("f1f2f5", 6, 1) == (1, 2, 5)
    assert word_inverse((1, 2)) == (-2, -1)
    with pytest.raises(ParseError):
        parse_word("f1x", 3, 1)
    with pytest.raises(UnknownGenerator):
        parse_word("f9", 3, 1)


def test_parse_group_file_c2():
    p = parse_group_file("group C2\ngens 1\nprod 1 1 = e\n")
    assert p.name == "C2" and p.num_gens == 1
    assert realize(p).n == 2


def test_parse_group_file_gw_listing():
    p = parse_group_file((DATA / "gw_listing.grp").read_text())
    assert p.num_gens == 6
    assert len(p.relators) == 17


def test_parse_group_file_product_table():
    p = parse_group_file((CORPUS / "1-19-44-0-0-0-0_5.grp").read_text())
    assert p.num_gens == 6
    assert len(p.products) == 36
    assert p.products[(1, 1)] == (5,)          # f1*f1 = f5
    assert p.products[(2, 1)] == (1, 2, 5)     # f2*f1 = f1f2f5


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_group_file("group X\ngens 2\nprod 1 3 = f1\n")
    assert "line 3" in str(err.value)
    with pytest.raises(ParseError):
        parse_group_file("gens 1\n")
    with pytest.raises(ParseError):
        parse_group_file("group X\nprod 1 1 = e\n")
    with pytest.raises(ParseError):
        parse_group_file("group X\ngens 1\nfrobnicate\n")


def test_annotations_are_surfaced():
    text = "group X\ngens 1\n# note: cell (1,1) repaired\nprod 1 1 = e\n"
    p = parse_group_file(text)
    assert p.annotations == ("cell (1,1) repaired",)


def test_vacuous_relators_are_harmless():
    text = ("group V\ngens 2\nprod 1 1 = e\nprod 2 2 = e\n"
            "prod 1 2 = f1f2\nprod 2 1 = f1f2\n")
    G = realize(parse_group_file(text))
    assert G.n == 4 and G.is_abelian()


def test_todd_coxeter_counts():
    assert todd_coxeter(parse_group_file("group C2\ngens 1\nprod 1 1 = e\n")).num_cosets() == 2
    p = parse_group_file((DATA / "gw_listing.grp").read_text())
    assert todd_coxeter(p).num_cosets() == 64


def test_todd_coxeter_overflow_on_free_group():
    with pytest.raises(Overflow):
        todd_coxeter(parse_group_file("group F1\ngens 1\n"), max_cosets=100)


def test_realize_c64():
    G = realize(parse_group_file("group C64\ngens 1\nrel " + "f1" * 64 + "\n"))
    assert G.n == 64
    assert order_list(G).counts == (1, 1, 2, 4, 8, 16, 32)


def test_realize_izumi_kosaki_fixture():
    G = load_group(DATA / "izumi_kosaki.grp")
    assert G.n == 64
    assert order_list(G).counts == (1, 19, 44, 0, 0, 0, 0)


def test_realize_pair2_fixture():
    G = load_group(DATA / "pair_g3.grp")
    assert G.n == 64
    assert order_list(G).counts == (1, 31, 32, 0, 0, 0, 0)


def test_realize_is_deterministic():
    text = (CORPUS / "1-19-44-0-0-0-0_5.grp").read_text()
    a = realize(parse_group_file(text))
    b = realize(parse_group_file(text))
    assert (a.mul == b.mul).all()
    assert a.gen_ids == b.gen_ids


@pytest.mark.parametrize("stem", [
    "1-1-2-4-8-16-32_1",        # C64, synthesized
    "1-63-0-0-0-0-0_1",         # C2^6, synthesized
    "1-7-24-32-0-0-0_5",        # C8xC4xC2, transcribed with a printed table
])
def test_abelian_corpus_entries_realize_abelian(stem):
    assert corpus_group(stem).is_abelian()


@pytest.mark.parametrize("stem", ["1-19-44-0-0-0-0_5", "1-31-32-0-0-0-0_6"])
def test_product_table_round_trip(stem):
    G = corpus_group(stem)
    text = product_table_text(G, name="roundtrip")
    H = realize(parse_group_file(text))
    assert H.n == G.n
    assert are_isomorphic(G, H) is not None
