"""Exponent vectors and monomial orders.

Exponents are plain tuples of non-negative ints; ``(1, 0, 2)`` stands for
``x*z**2``.  A :class:`MonomialOrder` turns an exponent into a sort key so
that ``a < b`` in the order iff ``order.key(a) < order.key(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from grobstrata.errors import ConfigError, DimensionMismatch, OrderTieError

Exponent = tuple  # tuple[int, ...]

KINDS = ("lex", "grlex", "grevlex", "matrix")


def exponent(coords: Iterable[int]) -> Exponent:
    e = tuple(int(c) for c in coords)
    if any(c < 0 for c in e):
        raise ConfigError(f"negative exponent in {e}")
    return e


def _check_dims(a: Exponent, b: Exponent) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension mismatch: {a} vs {b}")


def degree(a: Exponent) -> int:
    return sum(a)


def add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Exponent, b: Exponent) -> Exponent:
    """Componentwise difference; may have negative entries."""
    return tuple(x - y for x, y in zip(a, b))


def unit(n: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(n))


def add_unit(a: Exponent, i: int) -> Exponent:
    return a[:i] + (a[i] + 1,) + a[i + 1:]


def sub_unit(a: Exponent, i: int) -> Exponent | None:
    """``a - e_i`` or None when that leaves the positive orthant."""
    if a[i] == 0:
        return None
    return a[:i] + (a[i] - 1,) + a[i + 1:]


def is_nonnegative(a: Exponent) -> bool:
    return all(c >= 0 for c in a)


def divides(a: Exponent, b: Exponent) -> bool:
    """True iff ``x^a`` divides ``x^b``."""
    _check_dims(a, b)
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list[Exponent]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_upto(n: int, d: int) -> list[Exponent]:
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def format_exponent(a: Exponent) -> str:
    return "(" + ",".join(str(c) for c in a) + ")"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponents of length ``n``.

    ``priority`` lists variable indices from most to least significant and
    defaults to ``x_1 > x_2 > ... > x_n``.  It applies to the lex, grlex and
    grevlex kinds; a ``matrix`` order is given entirely by its integer
    ``rows`` and compares ``(a.u_1, ..., a.u_m)`` lexicographically.
    """

    kind: str
    n: int
    rows: tuple = ()
    priority: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown order kind {self.kind!r}")
        if self.n < 1:
            raise ConfigError("number of variables must be positive")
        if self.kind == "matrix":
            rows = tuple(tuple(int(c) for c in r) for r in self.rows)
            if not rows or any(len(r) != self.n for r in rows):
                raise ConfigError("matrix order needs rows of length n")
            object.__setattr__(self, "rows", rows)
            if self.priority:
                raise ConfigError("priority does not apply to matrix orders")
        else:
            if self.rows:
                raise ConfigError(f"rows only apply to matrix orders, not {self.kind}")
            prio = tuple(self.priority) if self.priority else tuple(range(self.n))
            if sorted(prio) != list(range(self.n)):
                raise ConfigError(f"priority {prio} is not a permutation of 0..{self.n - 1}")
            object.__setattr__(self, "priority", prio)

    @classmethod
    def lex(cls, n: int, priority: Sequence[int] = ()) -> "MonomialOrder":
        return cls("lex", n, priority=tuple(priority))

    @classmethod
    def grlex(cls, n: int, priority: Sequence[int] = ()) -> "MonomialOrder":
        return cls("grlex", n, priority=tuple(priority))

    @classmethod
    def grevlex(cls, n: int, priority: Sequence[int] = ()) -> "MonomialOrder":
        return cls("grevlex", n, priority=tuple(priority))

    @classmethod
    def matrix(cls, rows: Sequence[Sequence[int]]) -> "MonomialOrder":
        rows = tuple(tuple(r) for r in rows)
        return cls("matrix", len(rows[0]) if rows else 0, rows=rows)

    @classmethod
    def from_spec(cls, spec: dict | str, n: int) -> "MonomialOrder":
        """Build an order from ``{"kind": ..., "rows": ..., "priority": ...}``."""
        if isinstance(spec, str):
            spec = {"kind": spec}
        kind = spec.get("kind")
        if kind == "matrix":
            order = cls.matrix(spec.get("rows") or [])
            if order.n != n:
                raise DimensionMismatch(f"matrix order has {order.n} columns, expected {n}")
            return order
        return cls(kind, n, priority=tuple(spec.get("priority") or ()))

    def to_spec(self) -> dict:
        if self.kind == "matrix":
            return {"kind": "matrix", "rows": [list(r) for r in self.rows]}
        return {"kind": self.kind, "priority": list(self.priority)}

    def _permuted(self, a: Exponent) -> tuple:
        return tuple(a[i] for i in self.priority)

    def key(self, a: Exponent) -> tuple:
        if len(a) != self.n:
            raise DimensionMismatch(f"exponent {a} has length {len(a)}, order expects {self.n}")
        if self.kind == "lex":
            return self._permuted(a)
        if self.kind == "grlex":
            return (sum(a),) + self._permuted(a)
        if self.kind == "grevlex":
            return (sum(a),) + tuple(-c for c in reversed(self._permuted(a)))
        return tuple(sum(u * c for u, c in zip(row, a)) for row in self.rows)

    def compare(self, a: Exponent, b: Exponent) -> int:
        """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
        _check_dims(a, b)
        if a == b:
            return 0
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            raise OrderTieError(a, b)
        return -1 if ka < kb else 1

    def less(self, a: Exponent, b: Exponent) -> bool:
        return self.compare(a, b) < 0

    def sorted(self, exps: Iterable[Exponent], reverse: bool = False) -> list[Exponent]:
        """Sort ascending (or descending); ties between distinct exponents raise."""
        items = sorted(set(exps), key=self.key, reverse=reverse)
        if self.kind == "matrix":
            for a, b in zip(items, items[1:]):
                if self.key(a) == self.key(b):
                    raise OrderTieError(a, b)
        return items

    def max(self, exps: Iterable[Exponent]) -> Exponent:
        return self.sorted(exps)[-1]

    def is_graded(self) -> bool:
        """True when a larger total degree always means a larger monomial."""
        if self.kind in ("grlex", "grevlex"):
            return True
        if self.kind == "lex":
            return self.n == 1
        first = self.rows[0]
        return first[0] > 0 and all(c == first[0] for c in first)

    def weight_rows(self) -> list[tuple]:
        """Integer rows ``u_1..u_m`` whose lexicographic comparison realises the order."""
        n = self.n
        if self.kind == "matrix":
            return list(self.rows)
        lex_rows = [unit(n, i) for i in self.priority]
        ones = (1,) * n
        if self.kind == "lex":
            return lex_rows
        if self.kind == "grlex":
            return [ones] + lex_rows
        return [ones] + [tuple(-c for c in unit(n, i)) for i in reversed(self.priority[1:])]

    def __str__(self) -> str:
        if self.kind == "matrix":
            return f"matrix{[list(r) for r in self.rows]}"
        if self.priority == tuple(range(self.n)):
            return self.kind
        return f"{self.kind}{list(self.priority)}"
