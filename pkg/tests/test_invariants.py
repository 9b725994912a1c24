import pytest

from conftest import P
from nanophrases import (
    AB_SWAP,
    Alphabet,
    EtalePhrase,
    HomotopyData,
    Nanophrase,
    NanophraseError,
    UnsupportedHomotopyData,
    canonical_form,
    desingularize,
    etale_homotopic,
    gamma,
    length_parity,
    pairing,
    pi_normalize,
    signature,
    signature_difference,
    t_invariant,
)

ABC = Alphabet(["a", "b", "c"], {"a": "b", "b": "a", "c": "c"})
D0 = HomotopyData(AB_SWAP)


def test_pi_normalize_examples():
    assert pi_normalize([("a", 1), ("b", 1)], AB_SWAP).is_identity()
    assert pi_normalize([("c", 1), ("c", 1)], ABC).is_identity()
    assert pi_normalize([("a", 1), ("a", 1), ("b", 1), ("b", 1)], AB_SWAP).is_identity()


def test_pi_normal_form_shape():
    z = pi_normalize([("a", 1), ("a", 1), ("c", 1), ("b", 1), ("c", -1)], ABC)
    assert z.syllables == ((1, 2), (2, 1), (1, -1), (2, 1))
    assert str(z) == "z1^2 z2 z1^-1 z2"
    assert (z * pi_normalize([("c", 1), ("a", 1)], ABC)).syllables == ((1, 2), (2, 1))
    with pytest.raises(ValueError):
        pi_normalize([("a", 2)], AB_SWAP)
    with pytest.raises(NanophraseError):
        pi_normalize([("q", 1)], AB_SWAP)


def test_abelianization():
    z = pi_normalize([("a", 1), ("c", 1), ("a", 1), ("c", 1), ("c", 1)], ABC)
    assert z.abelianize(2).exponents == (2, 1)


def test_gamma_examples():
    g = gamma(P("A|A ; A=a"))
    assert g == (pi_normalize([("a", 1)], AB_SWAP), pi_normalize([("b", 1)], AB_SWAP))
    assert all(x.is_identity() for x in gamma(Nanophrase.empty(3)))
    (g,) = gamma(P("ABAB ; A=a B=b"))
    assert g.is_identity()


def test_t_examples():
    assert all(t.is_zero() for t in t_invariant(P("AB|AB ; A=a B=b")))
    t1, t2 = t_invariant(P("ABA|B ; A=a B=b"))
    assert t1.entries == {(1, 1): -1} and t2.is_zero()
    (t,) = t_invariant(P("ABAB ; A=a B=b"))
    assert t.is_zero()


def test_t_mod_two_on_fixed_orbits():
    (t,) = t_invariant(Nanophrase(["ABAB"], {"A": "c", "B": "a"}, ABC))
    # T(A) at (2,1) is +1 mod 2, T(B) at (1,2) is -1 -> 1 mod 2
    assert t.entries == {(1, 2): 1, (2, 1): 1}
    assert t.to_json() == {"(1,2)": 1, "(2,1)": 1}


def test_t_rejects_non_diagonal_data():
    data = HomotopyData(AB_SWAP, [("a", "a", "a")])
    with pytest.raises(UnsupportedHomotopyData):
        t_invariant(P("AA ; A=a"), data)
    with pytest.raises(UnsupportedHomotopyData):
        signature(P("AA ; A=a"), data)


def test_pairing_examples():
    assert [p.exponents for p in pairing(P("A|A ; A=a"))] == [(1,)]
    assert [p.exponents for p in pairing(P("AB|AB ; A=a B=a"))] == [(2,)]
    assert pairing(P("AB|BA ; A=a B=b"))[0].is_identity()


def test_pairing_order():
    p = P("A|B|AC|BC ; A=a B=b C=a")
    # pairs (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)
    assert [x.exponents for x in pairing(p)] == [(0,), (1,), (0,), (0,), (-1,), (1,)]


def test_length_parity_examples():
    assert length_parity(P("ABA|B ; A=a B=b")) == (1, 1)
    assert length_parity(P("AB|AB ; A=a B=b")) == (0, 0)
    assert length_parity(P("0|ABAB ; A=a B=b")) == (0, 0)


def test_desingularize_examples():
    w = P("ABAB ; A=a B=b")
    assert canonical_form(desingularize(w)) == canonical_form(w)
    d = desingularize(EtalePhrase(["ABA"], {"A": "a", "B": "b"}))
    assert len(d) == 2 and d.words[0][0] == d.words[0][1] == ("A", 1, 2)
    d = desingularize(EtalePhrase(["AAA"], {"A": "b"}))
    a12, a13, a23 = ("A", 1, 2), ("A", 1, 3), ("A", 2, 3)
    assert d.words == ((a12, a13, a12, a23, a13, a23),)
    assert set(d.projection.values()) == {"b"}
    with pytest.raises(NanophraseError):
        desingularize(EtalePhrase(["A", "A"], {"A": "a"}))


def test_etale_homotopic_examples():
    v = etale_homotopic(EtalePhrase(["ABA"], {"A": "a", "B": "b"}), EtalePhrase(["CC"], {"C": "a"}), D0)
    assert v.equivalent
    assert etale_homotopic(EtalePhrase([""], {}), EtalePhrase([""], {}), D0).equivalent
    assert etale_homotopic(EtalePhrase(["A"], {"A": "a"}), EtalePhrase([""], {}), D0).equivalent


def test_signature_examples():
    diff = signature_difference(signature(P("A|A ; A=a")), signature(Nanophrase.empty(2)))
    assert diff["invariant"] == "pairing"
    s1, s2 = signature(P("ABA|B ; A=a B=b")), signature(P("A|BAB ; A=a B=b"))
    assert s1.t != s2.t
    s1, s2 = signature(P("ABA|B ; A=a B=a")), signature(P("A|BAB ; A=a B=a"))
    assert signature_difference(s1, s2)["invariant"] == "t"
    assert signature_difference(s1, s1) is None


def test_signature_json():
    s = signature(P("ABA|B ; A=a B=b")).to_json()
    assert s == {
        "k": 2,
        "parities": [1, 1],
        "gamma": [[[1, -1]], [[1, 1]]],
        "t": [{"(1,1)": -1}, {}],
        "pairing": [[-1]],
    }
