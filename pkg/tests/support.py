"""Shared fixtures and helpers for the test-suite."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

import sympy as sp

from grobstrata import MonomialOrder, build_scheme, eliminate, tangent_report, universal_family

# name -> (corners, order kind, mode)
FIXTURES = {
    "ex1": ([(1, 1, 0), (1, 0, 1)], "grlex", "full"),
    "delta1": ([(3, 0, 0), (2, 1, 0), (1, 0, 1), (0, 0, 2)], "grlex", "full"),
    "delta0": ([(2, 0, 0), (1, 0, 1), (0, 0, 2)], "grlex", "full"),
    "delta2": ([(2, 0, 0), (1, 0, 1), (0, 1, 2), (0, 0, 3)], "grlex", "full"),
    "ex5": ([(2, 0, 0), (1, 1, 0), (0, 4, 0), (1, 0, 2)], "lex", "homogeneous"),
}


def order_of(name: str) -> MonomialOrder:
    corners, kind, _ = FIXTURES[name]
    return getattr(MonomialOrder, kind)(len(corners[0]))


@lru_cache(maxsize=None)
def pipeline(name: str, nu_rule: str = "min", relations: str = "closure"):
    corners, _, mode = FIXTURES[name]
    si = build_scheme(corners, order_of(name), mode=mode, nu_rule=nu_rule, relations=relations)
    tr = tangent_report(si)
    ep = eliminate(si, tr)
    return si, tr, ep


def to_sympy(p, symbols: dict) -> sp.Expr:
    return sp.Add(
        *[
            sp.Rational(c.numerator, c.denominator) * sp.Mul(*[symbols[v] ** e for v, e in m])
            for m, c in p.terms.items()
        ]
    )


def _solve_one(gens, point, v, symbols):
    """Rational value of ``v`` making every generator vanish with the other coordinates fixed."""
    x = symbols[v]
    subs = {symbols[w]: sp.Rational(c.numerator, c.denominator) for w, c in point.items() if w != v}
    polys = [sp.Poly(sp.expand(to_sympy(g, symbols).subs(subs)), x) for g in gens]
    if any(p.is_zero for p in polys) and all(p.is_zero for p in polys):
        return point[v]
    g = polys[0]
    for p in polys[1:]:
        g = sp.gcd(g, p)
    if g.degree() < 1:
        return None
    for r in sp.roots(g, filter="Q"):
        return Fraction(int(sp.numer(r)), int(sp.denom(r)))
    return None


def stratum_point(ep, rng: random.Random, tries: int = 200) -> dict:
    """A random rational point of the residual scheme."""
    symbols = {v: sp.Symbol(f"s{i}") for i, v in enumerate(ep.residual_vars)}
    for _ in range(tries):
        point = {v: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for v in ep.residual_vars}
        if not ep.residual_gens:
            return point
        order = list(ep.residual_vars)
        rng.shuffle(order)
        for v in order:
            val = _solve_one(ep.residual_gens, point, v, symbols)
            if val is None:
                continue
            point[v] = val
            if all(g.evaluate(point) == 0 for g in ep.residual_gens):
                return point
    raise AssertionError("could not sample a point of the stratum")


def full_point(ep, point: dict) -> dict:
    """Extend a residual point through the substitution maps."""
    out = dict(point)
    for t, p in ep.substitutions.items():
        out[t] = p.evaluate(point)
    return out


def family_at(si, point: dict) -> list:
    return universal_family(si).specialize(point)
