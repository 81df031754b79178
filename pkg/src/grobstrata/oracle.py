"""Buchberger-criterion oracle for reduced Gröbner bases.

Polynomials in the x-variables are dicts ``{exponent: coefficient}``.  The
divisors are monic, so division never inverts a coefficient and works over
any coefficient ring whose elements support ``+``, ``-``, ``*`` and truth
testing: ``Fraction`` for concrete bases, :class:`~grobstrata.poly.Poly`
for symbolic ones.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from grobstrata.errors import ConfigError
from grobstrata.monomials import Exponent, MonomialOrder, divides, lcm, sub
from grobstrata.standard_set import StandardSet, validate_corners

XPoly = dict  # dict[Exponent, coefficient]


def clean(f: XPoly) -> XPoly:
    return {e: c for e, c in f.items() if c}


def leading_exponent(f: XPoly, order: MonomialOrder) -> Exponent:
    return max(f, key=order.key)


def _add_multiple(target: dict, g: XPoly, coeff, shift: Exponent) -> None:
    """``target -= coeff * x^shift * g`` in place."""
    for e, c in g.items():
        m = tuple(a + b for a, b in zip(e, shift))
        v = target.get(m, 0) - coeff * c
        if v:
            target[m] = v
        else:
            target.pop(m, None)


def divide(f: XPoly, G: Sequence[XPoly], order: MonomialOrder) -> tuple[list, XPoly]:
    """Multivariate division by monic ``G``, always reducing the largest reducible monomial.

    Returns ``(quotients, remainder)`` with ``f = sum q_i g_i + r`` and no
    monomial of ``r`` divisible by a leading monomial of ``G``.
    """
    leads = []
    for g in G:
        lead = leading_exponent(g, order)
        if g[lead] != 1:
            raise ValueError("divisors must be monic")
        leads.append(lead)
    work = clean(dict(f))
    quotients: list = [{} for _ in G]
    remainder: dict = {}
    while work:
        m = leading_exponent(work, order)
        c = work[m]
        for i, lead in enumerate(leads):
            if divides(lead, m):
                shift = sub(m, lead)
                quotients[i][shift] = quotients[i].get(shift, 0) + c
                _add_multiple(work, G[i], c, shift)
                break
        else:
            remainder[m] = c
            del work[m]
    return [clean(q) for q in quotients], remainder


def s_polynomial(f: XPoly, g: XPoly, order: MonomialOrder) -> XPoly:
    lf, lg = leading_exponent(f, order), leading_exponent(g, order)
    m = lcm(lf, lg)
    out: dict = {}
    _add_multiple(out, f, -1, sub(m, lf))
    _add_multiple(out, g, 1, sub(m, lg))
    return out


def is_reduced_groebner(
    G: Sequence[XPoly],
    corners,
    order: MonomialOrder,
    skip_coprime: bool = True,
) -> tuple[bool, dict]:
    """Check that monic ``G`` is the reduced Gröbner basis with leading exponents ``corners``.

    The certificate names the first failing condition: ``leading`` (the
    leading exponents are not the corners), ``tail`` (a non-leading monomial
    lies in the monomial ideal) or ``s_pair`` (a non-zero remainder).
    """
    ss = corners if isinstance(corners, StandardSet) else validate_corners(corners, order.n)
    G = [clean(dict(g)) for g in G]
    cert: dict = {"coprime_skipped": []}
    if any(not g for g in G):
        return False, {**cert, "failed": "leading", "detail": "zero polynomial in basis"}
    leads = [leading_exponent(g, order) for g in G]
    if sorted(leads) != sorted(ss.corners) or len(set(leads)) != len(leads):
        return False, {**cert, "failed": "leading", "detail": [list(e) for e in leads]}
    for g, lead in zip(G, leads):
        if g[lead] != 1:
            return False, {**cert, "failed": "leading", "detail": f"{list(lead)} is not monic"}
        for e in g:
            if e != lead and not ss.in_delta(e):
                return False, {**cert, "failed": "tail", "detail": [list(lead), list(e)]}
    for i, j in combinations(range(len(G)), 2):
        if skip_coprime and all(a == 0 or b == 0 for a, b in zip(leads[i], leads[j])):
            cert["coprime_skipped"].append([i, j])
            continue
        _, r = divide(s_polynomial(G[i], G[j], order), G, order)
        if r:
            return False, {
                **cert,
                "failed": "s_pair",
                "pair": [list(leads[i]), list(leads[j])],
                "remainder": {",".join(map(str, e)): str(c) for e, c in sorted(r.items())},
            }
    return True, {**cert, "failed": None}


def xpoly_from_json(terms: list) -> XPoly:
    out: dict = {}
    for t in terms:
        e = tuple(int(c) for c in t["exp"])
        out[e] = out.get(e, 0) + Fraction(str(t["coeff"]))
    return clean(out)


def xpoly_to_json(f: XPoly, order: MonomialOrder) -> list:
    return [{"coeff": str(f[e]), "exp": list(e)} for e in sorted(f, key=order.key, reverse=True)]


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"(x\d+|[a-z])(?:\^(\d+))?")
_COEFF = re.compile(r"\d+(?:/\d+)?")


def parse_xpoly(text: str, n: int) -> XPoly:
    """Parse ``"x^2 - 3/2*x*y + z"``.

    Variables are ``x, y, z`` for ``n <= 3`` and ``x1 .. xn`` otherwise;
    factors may be joined by ``*`` or written side by side.
    """
    names = ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]
    index = {name: i for i, name in enumerate(names)}
    s = text.replace(" ", "")
    if not s:
        raise ConfigError("empty polynomial")
    out: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ConfigError(f"cannot parse polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).replace("*", "")
        pos = m.end()
        coeff = Fraction(1)
        c = _COEFF.match(body)
        if c:
            coeff = Fraction(c.group(0))
            body = body[c.end():]
        e = [0] * n
        k = 0
        while k < len(body):
            f = _FACTOR.match(body, k)
            if not f or f.group(1) not in index:
                raise ConfigError(f"unknown factor in {text!r} at {body[k:]!r}")
            e[index[f.group(1)]] += int(f.group(2) or 1)
            k = f.end()
        key = tuple(e)
        out[key] = out.get(key, 0) + sign * coeff
    return clean(out)


def format_xpoly(f: XPoly, order: MonomialOrder) -> str:
    names = ["x", "y", "z"][: order.n] if order.n <= 3 else [f"x{i + 1}" for i in range(order.n)]
    if not f:
        return "0"
    parts = []
    for e in sorted(f, key=order.key, reverse=True):
        c = f[e]
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return text + "".join(f" {s} {b}" for s, b in parts[1:])
