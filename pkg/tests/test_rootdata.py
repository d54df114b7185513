from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dynquant.rootdata import NotReduced, UnsupportedType, WeylWord, build_root_datum

TYPES = ["A1", "A2", "B2", "G2", "A3", "A4"]
datums = st.sampled_from(TYPES).map(build_root_datum)


@st.composite
def datum_word_weight(draw):
    datum = draw(datums)
    letters = draw(st.lists(st.integers(1, datum.rank), max_size=6))
    lam = tuple(draw(st.integers(-6, 6)) for _ in range(datum.rank))
    return datum, WeylWord(tuple(letters)), lam


@given(datum_word_weight(), st.lists(st.integers(1, 4), max_size=4))
def test_dot_action_composes(dwl, more):
    datum, w, lam = dwl
    v = WeylWord(tuple(i for i in more if i <= datum.rank))
    assert datum.dot(w + v, lam) == datum.dot(w, datum.dot(v, lam))


@given(datum_word_weight())
def test_dot_is_conjugated_linear_action(dwl):
    datum, w, lam = dwl
    shifted = tuple(a + r for a, r in zip(lam, datum.rho))
    expect = tuple(a - r for a, r in zip(datum.act(w, shifted), datum.rho))
    assert datum.dot(w, lam) == expect


@given(datum_word_weight())
def test_reflection_preserves_form(dwl):
    datum, w, lam = dwl
    mu = tuple(reversed(lam))
    assert datum.pairing(datum.act(w, lam), datum.act(w, mu)) == datum.pairing(lam, mu)


@given(datum_word_weight())
def test_reduced_words_are_braid_equivalent(dwl):
    datum, w, _ = dwl
    nf = datum.normal_form(w)
    assert datum.is_reduced(nf)
    words = datum.reduced_words(nf)
    assert nf in words
    for u in list(words)[:6]:
        assert len(u) == len(nf)
        assert datum.braid_equivalent(u, nf)
        assert datum.element_key(u) == datum.element_key(w)


@pytest.mark.parametrize("name,order,longest", [
    ("A1", 2, 1), ("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6), ("A3", 24, 6),
])
def test_group_orders(name, order, longest):
    datum = build_root_datum(name)
    assert len(datum._elements) == order
    assert datum.length(datum.longest_element()) == longest


def test_a2_reduced_words_of_longest():
    datum = build_root_datum("A2")
    assert datum.reduced_words(WeylWord.parse("121")) == {WeylWord.parse("121"), WeylWord.parse("212")}
    assert not datum.is_reduced(WeylWord.parse("11"))
    assert not datum.braid_equivalent(WeylWord.parse("12"), WeylWord.parse("21"))


def test_weyl_word_parsing():
    assert str(WeylWord.parse("")) == "e"
    assert WeylWord.parse("e") == WeylWord(())
    assert WeylWord.parse("2 1").letters == (2, 1)
    assert WeylWord.parse("121").letters == (1, 2, 1)
    with pytest.raises(ValueError):
        WeylWord.parse("1x")


def test_cartan_and_form():
    B2 = build_root_datum("B2")
    for i, ai in enumerate(B2.simple_roots):
        for j, aj in enumerate(B2.simple_roots):
            assert 2 * B2.pairing(ai, aj) / B2.pairing(ai, ai) == B2.cartan[i][j]


def _kostant_a2(a, b):
    return min(a, b) + 1 if a >= 0 and b >= 0 else 0


def _kostant_brute(roots, beta):
    # generating-function coefficient by direct enumeration of multiplicities
    def rec(k, rest):
        if k == len(roots):
            return int(not any(rest))
        total, m = 0, 0
        while all(x >= 0 for x in rest):
            total += rec(k + 1, rest)
            rest = tuple(x - y for x, y in zip(rest, roots[k]))
            m += 1
        return total
    return rec(0, tuple(beta))


@given(st.integers(0, 6), st.integers(0, 6))
def test_kostant_a2_closed_form(a, b):
    assert build_root_datum("A2").kostant_count((a, b)) == _kostant_a2(a, b)


@pytest.mark.parametrize("name,rootlist", [
    ("B2", [(1, 0), (0, 1), (1, 1), (1, 2)]),
    ("G2", [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)]),
])
def test_kostant_rank2_against_handwritten_roots(name, rootlist):
    datum = build_root_datum(name)
    roots = sorted(tuple(int(x) for x in r) for r in datum.positive_roots)
    expected = sorted(rootlist) if sorted(rootlist) == roots else sorted(tuple(reversed(r)) for r in rootlist)
    assert roots == expected
    for a in range(4):
        for b in range(4):
            assert datum.kostant_count((a, b)) == _kostant_brute(roots, (a, b))


def test_unsupported_type():
    with pytest.raises(UnsupportedType):
        build_root_datum("E8")
    with pytest.raises(UnsupportedType):
        build_root_datum("A9")


def test_rho_pairs_to_one_with_simple_coroots():
    for name in TYPES:
        datum = build_root_datum(name)
        for i in range(datum.rank):
            assert datum.coroot_pairing(datum.rho, i) == 1
