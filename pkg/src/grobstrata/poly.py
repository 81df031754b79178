"""Sparse polynomials over Q in the parameter variables ``T[alpha; beta]``.

A monomial is a tuple of ``(TVar, exponent)`` pairs sorted by the natural
tuple order of the variables; a :class:`Poly` maps monomials to non-zero
``Fraction`` coefficients.  Polys are treated as immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple

from grobstrata.errors import NoWeightFound
from grobstrata.monomials import Exponent, MonomialOrder, format_exponent


class TVar(NamedTuple):
    """The coefficient of ``x^beta`` in the basis element with leading exponent ``alpha``."""

    alpha: Exponent
    beta: Exponent

    def __str__(self) -> str:
        return f"T[{format_exponent(self.alpha)};{format_exponent(self.beta)}]"

    def multidegree(self) -> tuple:
        return tuple(a - b for a, b in zip(self.alpha, self.beta))


Monomial = tuple  # tuple[tuple[TVar, int], ...]
ONE: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[m] = c
        self.terms: dict = clean

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def var(cls, v: TVar) -> "Poly":
        return cls._raw({((v, 1),): Fraction(1)})

    @classmethod
    def const(cls, c) -> "Poly":
        c = _coerce(c)
        return cls._raw({ONE: c} if c else {})

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, Iterable[tuple[TVar, int]]]]) -> "Poly":
        out: dict = {}
        for c, mono in pairs:
            m = tuple(sorted((v, e) for v, e in mono if e))
            out[m] = out.get(m, Fraction(0)) + _coerce(c)
        return cls(out)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((mono_degree(m) for m in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    def linear_component(self) -> "Poly":
        """Sum of the total-degree-one terms."""
        return Poly._raw({m: c for m, c in self.terms.items() if mono_degree(m) == 1})

    def linear_coefficients(self) -> dict:
        return {m[0][0]: c for m, c in self.terms.items() if mono_degree(m) == 1}

    def nonlinear_part(self) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if mono_degree(m) != 1})

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def degree_in(self, v: TVar) -> int:
        return max((e for m in self.terms for w, e in m if w == v), default=0)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _coerce(c)
        if not c:
            return Poly.zero()
        return Poly._raw({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if not self.terms or not other.terms:
            return Poly.zero()
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def add_scaled(self, other: "Poly", c) -> "Poly":
        """``self + c * other`` without building the intermediate product."""
        c = _coerce(c)
        if not c:
            return self
        out = dict(self.terms)
        for m, v in other.terms.items():
            s = out.get(m, 0) + c * v
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    def substitute(self, bindings: Mapping[TVar, "Poly"]) -> "Poly":
        """Replace every bound variable by its image, simultaneously and once."""
        if not bindings or not self.terms:
            return self
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = bindings[v] ** e
            return powers[key]

        out = Poly.zero()
        for m, c in self.terms.items():
            kept = []
            factor = Poly.const(c)
            for v, e in m:
                if v in bindings:
                    factor = factor * power(v, e)
                else:
                    kept.append((v, e))
            if kept:
                factor = factor * Poly._raw({tuple(kept): Fraction(1)})
            out = out + factor
        return out

    def evaluate(self, point: Mapping[TVar, object]) -> Fraction:
        """Value at ``point``; variables missing from ``point`` count as zero."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                x = point.get(v, 0)
                if not x:
                    val = 0
                    break
                val *= _coerce(x) ** e
            total += val
        return total

    def multidegrees(self) -> set:
        out = set()
        for m in self.terms:
            deg = None
            for v, e in m:
                d = tuple(e * x for x in v.multidegree())
                deg = d if deg is None else tuple(a + b for a, b in zip(deg, d))
            out.add(deg)
        return out

    # -- output -------------------------------------------------------------

    def sorted_terms(self, rank: Callable[[TVar], object] | None = None) -> list:
        """Terms ordered by descending total degree, then by variable rank."""
        rank = rank or (lambda v: v)

        def key(item):
            m, _ = item
            return (-mono_degree(m), [(rank(v), -e) for v, e in m])

        return sorted(self.terms.items(), key=key)

    def render(self, names: Mapping[TVar, str] | None = None, rank=None, mul: str = "*") -> str:
        if not self.terms:
            return "0"
        names = names or {}
        order_key = rank or (lambda v: v)
        parts = []
        for m, c in self.sorted_terms(rank):
            factors = []
            for v, e in sorted(m, key=lambda f: order_key(f[0])):
                name = names.get(v, str(v))
                factors.append(name if e == 1 else f"{name}^{e}")
            body = mul.join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}{mul}{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.render()})"

    def to_json(self, rank=None) -> list:
        return [
            {
                "coeff": str(c),
                "monomial": [
                    {"alpha": list(v.alpha), "beta": list(v.beta), "exp": e} for v, e in m
                ],
            }
            for m, c in self.sorted_terms(rank)
        ]

    @classmethod
    def from_json(cls, data: list) -> "Poly":
        return cls.from_pairs(
            (
                Fraction(t["coeff"]),
                [(TVar(tuple(f["alpha"]), tuple(f["beta"])), int(f["exp"])) for f in t["monomial"]],
            )
            for t in data
        )


def linear_component(p: Poly) -> Poly:
    return p.linear_component()


def substitute(p: Poly, bindings: Mapping[TVar, Poly]) -> Poly:
    return p.substitute(bindings)


@dataclass(frozen=True)
class WeightW:
    """A positive integer vector ``w``; ``u(alpha) = alpha . w`` and ``W(T[a;b]) = u(a) - u(b)``."""

    w: tuple

    def u(self, a: Exponent) -> int:
        return sum(x * y for x, y in zip(a, self.w))

    def of_var(self, v: TVar) -> int:
        return self.u(v.alpha) - self.u(v.beta)

    def of_monomial(self, m: Monomial) -> int:
        return sum(e * self.of_var(v) for v, e in m)


def build_weight(order: MonomialOrder, pts: Iterable[Exponent], max_rounds: int = 64) -> WeightW:
    """Find positive ``w`` with ``a < b  <=>  a.w < b.w`` on the finite set ``pts``.

    Collapses the order's defining rows into ``w = sum M^(m-i) u_i`` and
    doubles ``M`` until ``w`` is positive and separates ``pts``.
    """
    ordered = order.sorted(pts)
    rows = order.weight_rows()
    m = len(rows)
    M = 2
    for _ in range(max_rounds):
        w = tuple(sum(M ** (m - 1 - i) * rows[i][j] for i in range(m)) for j in range(order.n))
        if all(c > 0 for c in w):
            vals = [sum(a * b for a, b in zip(p, w)) for p in ordered]
            if all(x < y for x, y in zip(vals, vals[1:])):
                return WeightW(w)
        M *= 2
    raise NoWeightFound(f"no positive weight separates {len(ordered)} exponents under {order}")


def is_w_homogeneous(p: Poly, weight: WeightW) -> bool:
    return len({weight.of_monomial(m) for m in p.terms}) <= 1
