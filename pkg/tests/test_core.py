import pytest

from conftest import P
from nanophrases import (
    AB_SWAP,
    Alphabet,
    AlphabetMismatch,
    EtalePhrase,
    HomotopyData,
    Nanophrase,
    NanophraseError,
    NotGaussError,
    canonical_form,
    concat_components,
    fresh_letters,
    is_isomorphic,
    orbit_decomposition,
    rename,
    validate,
)

XY = Alphabet(["x", "y"], {"x": "x", "y": "y"})


def test_validate_examples():
    assert validate(EtalePhrase(["AB", "AB"], {"A": "a", "B": "b"})).valid
    v = validate(EtalePhrase(["AB", "A"], {"A": "a", "B": "b"}))
    assert not v.valid and v.letter == "B" and v.count == 1
    assert validate(EtalePhrase(["", ""], {})).valid


def test_nanophrase_rejects_non_gauss():
    with pytest.raises(NotGaussError):
        Nanophrase(["AB", "A"], {"A": "a", "B": "b"})
    with pytest.raises(NotGaussError):
        Nanophrase(["AAA"], {"A": "a"})


def test_projection_must_be_in_alphabet():
    with pytest.raises(NanophraseError):
        Nanophrase(["AA"], {"A": "z"})
    with pytest.raises(NanophraseError):
        Nanophrase(["AA"], {})


def test_alphabet_validation():
    with pytest.raises(NanophraseError):
        Alphabet(["a", "b"], {"a": "b", "b": "b"})
    with pytest.raises(NanophraseError):
        Alphabet(["a", "a"], {"a": "a"})
    with pytest.raises(NanophraseError):
        Alphabet(["a"], {"a": "q"})
    assert AB_SWAP.tau("a") == "b" and not AB_SWAP.is_fixed("a")


def test_canonical_form_examples():
    cf = canonical_form(Nanophrase(["BA", "BA"], {"B": "x", "A": "y"}, XY))
    assert cf.shape == (1, 2, 0, 1, 2) and cf.projections == ("x", "y")
    assert cf.words() == ((1, 2), (1, 2)) and cf.k == 2 and cf.n_letters == 2
    c1 = canonical_form(P("AB|BA ; A=a B=a"))
    c2 = canonical_form(P("BA|AB ; A=a B=a"))
    assert c1 == c2 and c1.words() == ((1, 2), (2, 1)) and c1.projections == ("a", "a")


def test_canonical_form_invariant_under_renaming():
    p = P("ABC|CB|A ; A=a B=b C=a")
    q = rename(p, {"A": 7, "B": "zz", "C": ("t", 1)})
    assert canonical_form(p) == canonical_form(q)


def test_is_isomorphic_examples():
    p = P("A|A ; A=a")
    assert is_isomorphic(p, p)
    assert not is_isomorphic(p, P("A|A ; A=b"))
    assert is_isomorphic(P("AB|AB ; A=a B=b"), P("BA|BA ; B=a A=b"))
    with pytest.raises(AlphabetMismatch):
        is_isomorphic(p, Nanophrase(["A", "A"], {"A": "x"}, XY))


def test_concat_components_examples():
    assert canonical_form(concat_components(P("ABA|B ; A=a B=b"), 1)) == canonical_form(P("ABAB ; A=a B=b"))
    assert canonical_form(concat_components(P("A|B|AB ; A=a B=b"), 2)) == canonical_form(P("A|BAB ; A=a B=b"))
    assert concat_components(Nanophrase.empty(2), 1) == Nanophrase.empty(1)
    with pytest.raises(IndexError):
        concat_components(Nanophrase.empty(2), 2)
    with pytest.raises(IndexError):
        concat_components(Nanophrase.empty(2), 0)


def test_orbit_decomposition_examples():
    d = orbit_decomposition(AB_SWAP)
    assert d.two_orbits == (("a", "b"),) and d.l == 1 and d.m == 0 and d.representatives == ("a",)
    d = orbit_decomposition(Alphabet(["c"], {"c": "c"}))
    assert d.l == 0 and d.m == 1
    d = orbit_decomposition(Alphabet(["a", "b", "c"], {"a": "b", "b": "a", "c": "c"}))
    assert d.two_orbits == (("a", "b"),) and d.fixed_orbits == ("c",)
    assert d.orbit_of("a") == d.orbit_of("b") == 1 and d.orbit_of("c") == 2
    assert d.sign("a") == 1 and d.sign("b") == -1 and d.sign("c") == 1


def test_orbit_representative_is_earlier_symbol():
    d = orbit_decomposition(Alphabet(["c", "x", "d", "y"], {"c": "c", "x": "y", "y": "x", "d": "d"}))
    assert d.representatives == ("x", "c", "d") and d.fixed_orbits == ("c", "d")
    assert d.orbit_of("x") == 1 and d.orbit_of("c") == 2 and d.orbit_of("d") == 3


def test_homotopy_data_diagonal_flag():
    assert HomotopyData(AB_SWAP).is_diagonal
    assert HomotopyData(AB_SWAP, [("a", "a", "a"), ("b", "b", "b")]).is_diagonal
    assert not HomotopyData(AB_SWAP, [("a", "a", "a")]).is_diagonal
    with pytest.raises(NanophraseError):
        HomotopyData(AB_SWAP, [("a", "a", "q")])


def test_entry_count_is_twice_letters():
    p = P("AB|CA|BC ; A=a B=b C=a")
    assert len(p) == 2 * p.n_letters == 6


def test_fresh_letters():
    assert fresh_letters("AB", 2) == ["C", "D"]
    assert fresh_letters(set("ABCDEFGHIJKLMNOPQRSTUVWXYZ"), 2) == ["L0", "L1"]


def test_phrases_are_immutable_and_hashable():
    p = P("AB|AB ; A=a B=b")
    with pytest.raises(AttributeError):
        p.words = ()
    assert len({p, P("AB|AB ; A=a B=b")}) == 1
