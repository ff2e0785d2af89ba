"""Coset enumeration, rewriting, and presentation surgery."""

import pytest

from hyper4.grouppres import (
    abelianization,
    character_coset_table,
    format_presentation,
    parse_presentation,
    quotient,
    reidemeister_schreier,
    schreier_rewrite,
    tietze_simplify,
    todd_coxeter,
    transversal_words,
)
from hyper4.pairing import build_side_pairings, fundamental_group
from hyper4.words import parse_word


def _orientation_signs(pairing_set):
    return {p.letter: (1 if p.matrix.det() == 1 else -1) for p in pairing_set.pairings}


def test_abelianization_free_group():
    pres = parse_presentation("gens: a b c\n")
    ab = abelianization(pres)
    assert ab.rank == 3 and ab.torsion == ()


def test_abelianization_dihedral():
    pres = parse_presentation("gens: c e\nc^3\ne^2\nEcec\n")
    ab = abelianization(pres)
    assert (ab.rank, ab.torsion) == (0, (2,))
    assert str(ab) == "Z/2"


def test_abelianization_free_abelian():
    pres = parse_presentation("gens: a b c\nabAB\nacAC\nbcBC\n")
    ab = abelianization(pres)
    assert (ab.rank, ab.torsion) == (3, ())
    assert str(ab) == "Z^3"


def test_todd_coxeter_orders():
    assert todd_coxeter(parse_presentation("gens: a\na\n")).index == 1
    assert todd_coxeter(parse_presentation("gens: a\na^6\n")).index == 6
    assert todd_coxeter(parse_presentation("gens: c e\nc^3\ne^2\nEcec\n")).index == 6
    assert todd_coxeter(parse_presentation("gens: r s\nr^4\ns^2\nsrsr\n")).index == 8


def test_todd_coxeter_subgroup_index():
    z6 = parse_presentation("gens: a\na^6\n")
    table = todd_coxeter(z6, [parse_word("aa")])
    assert table.index == 2


def test_todd_coxeter_limit():
    # Z has no finite coset table over the trivial subgroup
    table = todd_coxeter(parse_presentation("gens: a\n"), limit=50)
    assert not table.complete


def test_coset_table_follow():
    d3 = parse_presentation("gens: c e\nc^3\ne^2\nEcec\n")
    table = todd_coxeter(d3)
    for relator in d3.relators:
        for coset in range(table.index):
            assert table.follow(coset, relator) == coset


def test_character_table_orientation():
    ps = build_side_pairings("14FF28")
    pres = fundamental_group(ps)
    table = character_coset_table(pres, _orientation_signs(ps))
    assert table.complete and table.index == 2
    assert [str(w) for w in transversal_words(table)] == ["1", "e"]


def test_character_table_rejects_inconsistent_signs():
    pres = parse_presentation("gens: a\na^3\n")
    # a^3 = 1 is incompatible with a -> -1
    with pytest.raises(ValueError):
        character_coset_table(pres, {"a": -1})


def test_schreier_rewrite_round_trip():
    ps = build_side_pairings("14FF28")
    pres = fundamental_group(ps)
    table = character_coset_table(pres, _orientation_signs(ps))
    rewritten = schreier_rewrite(table, parse_word("aa"))
    assert [name for name, _ in rewritten.letters] == ["a0", "a0"]
    # a word leaving the subgroup cannot be rewritten
    with pytest.raises(ValueError):
        schreier_rewrite(table, parse_word("e"))


def test_reidemeister_schreier_shape():
    ps = build_side_pairings("14FF28")
    pres = fundamental_group(ps)
    table = character_coset_table(pres, _orientation_signs(ps))
    sub = reidemeister_schreier(pres, table)
    # two copies of each generator, every relator at both cosets, one tree edge
    assert len(sub.generators) == 24
    assert len(sub.relators) == 2 * len(pres.relators) + 1
    assert str(abelianization(sub)) == "Z^5"


def test_quotient_appends_relators():
    pres = parse_presentation("gens: a\n")
    q = quotient(pres, [parse_word("a") ** 6])
    assert todd_coxeter(q).index == 6


def test_tietze_keeps_infinite_cyclic():
    # b dies, the conjugation relator then collapses: the group is Z, not trivial
    pres = parse_presentation("gens: a b\nb\nabA\n")
    simp = tietze_simplify(pres)
    ab = abelianization(simp)
    assert (ab.rank, ab.torsion) == (1, ())
    assert len(simp.generators) == 1
    assert simp.relators == ()


def test_tietze_preserves_abelianization():
    ps = build_side_pairings("14FF28")
    pres = fundamental_group(ps)
    simp = tietze_simplify(pres)
    a0, a1 = abelianization(pres), abelianization(simp)
    assert (a0.rank, a0.torsion) == (a1.rank, a1.torsion) == (0, (2,) * 6)
    assert len(simp.generators) <= len(pres.generators)


def test_presentation_text_round_trip():
    text = "gens: a b\nb\nabA\n"
    pres = parse_presentation(text)
    assert format_presentation(pres) == text
    spaced = parse_presentation("gens: a b\na^2 b^-3\n")
    assert str(spaced.relators[0]) == "aaBBB"


def test_parse_presentation_requires_gens_line():
    with pytest.raises(ValueError):
        parse_presentation("a^2\n")
