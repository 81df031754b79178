from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grobstrata import ConfigError, MonomialOrder
from grobstrata.oracle import (
    divide,
    format_xpoly,
    is_reduced_groebner,
    parse_xpoly,
    s_polynomial,
    xpoly_from_json,
    xpoly_to_json,
)
from support import FIXTURES, family_at, full_point, pipeline, stratum_point

GRLEX = MonomialOrder.grlex(3)


def test_divide_examples():
    g = parse_xpoly("xy - z", 3)
    q, r = divide(parse_xpoly("x^2y", 3), [g], GRLEX)
    assert r == parse_xpoly("xz", 3)
    assert q == [parse_xpoly("x", 3)]
    q, r = divide(g, [g], GRLEX)
    assert q == [{(0, 0, 0): 1}] and r == {}
    f = parse_xpoly("z^2 + y", 3)
    q, r = divide(f, [g], GRLEX)
    assert q == [{}] and r == f


def test_divide_rejects_non_monic():
    with pytest.raises(ValueError):
        divide(parse_xpoly("x", 3), [parse_xpoly("2xy", 3)], GRLEX)


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(
        st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5).filter(bool).map(Fraction), max_size=6
    )
)
def test_division_identity(f):
    G = [parse_xpoly("xy - z", 3), parse_xpoly("z^2 - x", 3)]
    q, r = divide(f, G, GRLEX)
    total = dict(r)
    for qi, g in zip(q, G):
        for a, c in qi.items():
            for b, d in g.items():
                e = tuple(x + y for x, y in zip(a, b))
                total[e] = total.get(e, 0) + c * d
    assert {e: c for e, c in total.items() if c} == f
    leads = [(1, 1, 0), (0, 0, 2)]
    assert not any(all(x <= y for x, y in zip(l, e)) for e in r for l in leads)


def test_monomial_basis_is_groebner():
    corners = [(3, 0, 0), (2, 1, 0), (1, 0, 1), (0, 0, 2)]
    ok, cert = is_reduced_groebner([{c: 1} for c in corners], corners, GRLEX, skip_coprime=False)
    assert ok and cert["failed"] is None


def test_single_generator_is_groebner():
    o = MonomialOrder.grlex(2)
    ok, _ = is_reduced_groebner([parse_xpoly("xy - x", 2)], [(1, 1)], o)
    assert ok


def test_failing_s_pair():
    o = MonomialOrder.grlex(2)
    G = [parse_xpoly("xy - x", 2), parse_xpoly("y^2 - x", 2)]
    ok, cert = is_reduced_groebner(G, [(1, 1), (0, 2)], o)
    assert not ok and cert["failed"] == "s_pair"
    assert cert["remainder"]


def test_leading_and_tail_failures():
    o = MonomialOrder.grlex(2)
    ok, cert = is_reduced_groebner([parse_xpoly("xy", 2)], [(2, 0)], o)
    assert not ok and cert["failed"] == "leading"
    ok, cert = is_reduced_groebner([parse_xpoly("x^2 - x y", 2), parse_xpoly("xy", 2)], [(2, 0), (1, 1)], o)
    assert not ok and cert["failed"] == "tail"


def test_coprime_pairs_recorded():
    ok, cert = is_reduced_groebner([{(1, 0): 1}, {(0, 1): 1}], [(1, 0), (0, 1)], MonomialOrder.lex(2))
    assert ok and cert["coprime_skipped"] == [[0, 1]]


def test_parse_and_format():
    f = parse_xpoly("x^2 - 3/2*x*y + z", 3)
    assert f == {(2, 0, 0): 1, (1, 1, 0): Fraction(-3, 2), (0, 0, 1): 1}
    assert format_xpoly(f, GRLEX) == "x^2 - 3/2*x*y + z"
    assert parse_xpoly(format_xpoly(f, GRLEX), 3) == f
    assert parse_xpoly("x1*x4 + 2", 4) == {(1, 0, 0, 1): 1, (0, 0, 0, 0): 2}
    with pytest.raises(ConfigError):
        parse_xpoly("x + w", 3)
    with pytest.raises(ConfigError):
        parse_xpoly("", 3)


def test_json_round_trip():
    f = parse_xpoly("x^2 - 3/2*x*y + z", 3)
    assert xpoly_from_json(xpoly_to_json(f, GRLEX)) == f


def test_s_polynomial():
    f, g = parse_xpoly("xy - z", 3), parse_xpoly("xz - y", 3)
    assert s_polynomial(f, g, GRLEX) == parse_xpoly("y^2 - z^2", 3)


@pytest.mark.parametrize("name", list(FIXTURES))
def test_stratum_points_accepted_and_perturbations_rejected(name):
    si, _, ep = pipeline(name)
    rng = random.Random(11)
    eliminated = sorted(ep.substitutions)
    for _ in range(5):
        pt = full_point(ep, stratum_point(ep, rng))
        G = family_at(si, pt)
        ok, cert = is_reduced_groebner(G, si.ss, si.order)
        assert ok, cert
        # remainders do not depend on the order of the basis
        shuffled = G[::-1]
        for f in G:
            for h in G:
                s = s_polynomial(f, h, si.order)
                assert divide(s, G, si.order)[1] == divide(s, shuffled, si.order)[1]
        pt[rng.choice(eliminated)] += rng.choice([-2, -1, 1, 2])
        assert not is_reduced_groebner(family_at(si, pt), si.ss, si.order)[0]
