import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dynquant.rootdata import build_root_datum
from dynquant.scalars import NonIntegralExponent, ParseError, PoleAtPoint, ZeroDenominator, scalar_field

FIELDS = {
    (t, m): build_root_datum(t).field(m)
    for t in ("A1", "A2") for m in ("classical", "quantum")
}

field_keys = st.sampled_from(sorted(FIELDS))
seeds = st.integers(0, 10 ** 9)


def draw(key, seed, n=3):
    F = FIELDS[key]
    rng = random.Random(seed)
    return F, [F.random(rng) for _ in range(n)]


@given(field_keys, seeds)
def test_field_axioms(key, seed):
    F, (a, b, c) = draw(key, seed)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a and a * F.one == a
    assert a - a == F.zero
    if not a.is_zero:
        assert a * (F.one / a) == F.one


@given(field_keys, seeds)
def test_parse_print_round_trip(key, seed):
    F, (a,) = draw(key, seed, 1)
    assert F.parse(F.format(a)) == a


@given(field_keys, seeds, st.lists(st.integers(-3, 3), min_size=2, max_size=2),
       st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_shift_composes(key, seed, mu, nu):
    F, (a,) = draw(key, seed, 1)
    mu, nu = mu[:F.rank], nu[:F.rank]
    total = [x + y for x, y in zip(mu, nu)]
    assert F.shift(F.shift(a, mu), nu) == F.shift(a, total)


@given(field_keys, seeds)
def test_subst_affine_is_a_homomorphism(key, seed):
    F, (a, b) = draw(key, seed, 2)
    datum = build_root_datum(key[0])
    from dynquant.rootdata import WeylWord
    w = WeylWord((1,))
    lhs = datum.dot_substitute(w, a * b + a)
    rhs = datum.dot_substitute(w, a) * datum.dot_substitute(w, b) + datum.dot_substitute(w, a)
    assert lhs == rhs


def test_quantum_integers():
    F = FIELDS[("A1", "quantum")]
    q = F.q
    assert F.qint(2) == q + F.one / q
    assert F.qint(3) == q * q + F.one + F.one / (q * q)
    assert F.qint(-2) == -F.qint(2)
    assert F.qfactorial(3) == F.qint(2) * F.qint(3)
    assert F.qbinomial(4, 2) == F.qfactorial(4) / (F.qfactorial(2) * F.qfactorial(2))
    # [λ+1] against its definition
    lam = F.qpow(0, [1])
    assert F.qint(1, [1]) == (lam * q - F.one / (lam * q)) / (q - F.one / q)


def test_classical_qint_is_affine():
    F = FIELDS[("A1", "classical")]
    assert F.qint(2, [1]) == F.affine(2, [1])


def test_canonical_form_equality():
    F = FIELDS[("A1", "classical")]
    lam = F.lam(0)
    assert (lam * lam - F.one) / (lam - F.one) == lam + F.one


def test_errors():
    F = FIELDS[("A1", "quantum")]
    with pytest.raises(ZeroDenominator):
        F.one / F.zero
    with pytest.raises(ParseError):
        F.parse("q^(")
    with pytest.raises(NonIntegralExponent):
        F.qpow(Fraction(1, 3))
    C = FIELDS[("A1", "classical")]
    with pytest.raises(PoleAtPoint):
        C.evaluate(C.one / C.lam(0), [0])


def test_evaluation_exact():
    C = FIELDS[("A1", "classical")]
    x = (C.lam(0) + C(2)) / (C.lam(0) + C(1))
    assert C.evaluate(x, [Fraction(1, 2)]) == Fraction(5, 3)
    Q = FIELDS[("A1", "quantum")]
    assert Q.evaluate(Q.qint(2), [0], q=Fraction(2)) == Fraction(5, 2)


def test_two_weight_sets_are_independent():
    F = scalar_field("classical", 1, 2, nsets=2)
    assert F.lam(0, 0) != F.lam(0, 1)
    assert F.shift(F.lam(0, 1), [1], s=0) == F.lam(0, 1)
