"""Extension of the corner parameters to the whole border.

For every border exponent ``alpha`` the table holds the row
``U[alpha] = {beta: U_{alpha,beta}}`` with ``beta`` in Delta.  Corner rows
are the parameter variables themselves; every other border row is the
virtual product ``U[alpha - e_nu] * x_nu`` for the chosen direction ``nu``::

    U[alpha][beta] = sum_gamma U[alpha - e_nu][gamma] * U[gamma + e_nu][beta]

Only non-zero entries are stored, so each row's support is automatically
restricted to ``beta < alpha``.
"""

from __future__ import annotations

import sys
from typing import Iterable

from grobstrata.errors import InternalInvariantViolation, TruncationTooSmall
from grobstrata.monomials import Exponent, MonomialOrder, add_unit, degree, format_exponent, sub_unit
from grobstrata.poly import Poly, TVar
from grobstrata.standard_set import StandardSet

Row = dict  # dict[Exponent, Poly]


def choose_nu(ss: StandardSet, alpha: Exponent, rule: str = "min") -> int:
    """Direction ``i`` with ``alpha - e_i`` in the border (smallest index, or largest with ``rule="max"``)."""
    idx = range(ss.n) if rule == "min" else range(ss.n - 1, -1, -1)
    for i in idx:
        below = sub_unit(alpha, i)
        if below is not None and ss.in_border(below):
            return i
    raise InternalInvariantViolation(f"border element {alpha} has no direction back into the border")


def nu_map(ss: StandardSet, border: Iterable[Exponent], rule: str = "min") -> dict:
    return {a: choose_nu(ss, a, rule) for a in border if not ss.is_corner(a)}


class UFamily:
    """Table of border rows built from the parameter variables.

    ``max_degree`` caps the degree of border rows that may be computed; a
    request beyond it raises :class:`TruncationTooSmall`.  ``None`` means
    rows are produced lazily without a cap (finite Delta, or an explicit
    finite set of allowed non-leading exponents).
    """

    def __init__(
        self,
        ss: StandardSet,
        order: MonomialOrder,
        variables: Iterable[TVar],
        max_degree: int | None = None,
        nu_rule: str = "min",
    ):
        self.ss = ss
        self.order = order
        self.max_degree = max_degree
        self.nu_rule = nu_rule
        self.nu: dict = {}
        self.rows: dict = {c: {} for c in ss.corners}
        for v in variables:
            self.rows[v.alpha][v.beta] = Poly.var(v)

    def row(self, alpha: Exponent) -> Row:
        if alpha in self.rows:
            return self.rows[alpha]
        if self.ss.in_delta(alpha):
            return {alpha: Poly.const(1)}
        if self.max_degree is not None and degree(alpha) > self.max_degree:
            raise TruncationTooSmall(
                f"row {format_exponent(alpha)} exceeds the truncation degree {self.max_degree}"
            )
        if not self.ss.in_border(alpha):
            raise InternalInvariantViolation(f"{alpha} is outside Delta and its border")
        nu = choose_nu(self.ss, alpha, self.nu_rule)
        self.nu[alpha] = nu
        result = self.times(self.row(sub_unit(alpha, nu)), nu)
        self.rows[alpha] = result
        return result

    def times(self, row: Row, lam: int) -> Row:
        """Virtual product of a row with ``x_lam``: reduce ``x_lam * sum_g row[g] x^g`` onto Delta."""
        out: dict = {}
        for gamma, coeff in row.items():
            shifted = add_unit(gamma, lam)
            if self.ss.in_delta(shifted):
                out[shifted] = out.get(shifted, Poly.zero()) + coeff
                continue
            for beta, u in self.row(shifted).items():
                out[beta] = out.get(beta, Poly.zero()) + coeff * u
        return {b: p for b, p in out.items() if p}

    def get(self, alpha: Exponent, beta: Exponent) -> Poly:
        if self.ss.in_delta(alpha):
            return Poly.const(1 if alpha == beta else 0)
        return self.row(alpha).get(beta, Poly.zero())

    def populate(self, D: int) -> None:
        """Compute every border row of degree <= D, ascending in the order."""
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 10000))
        try:
            for alpha in self.ss.enumerate_border_upto(D, self.order):
                self.row(alpha)
        finally:
            sys.setrecursionlimit(old)

    def stored_border(self) -> list[Exponent]:
        return self.order.sorted(self.rows)

    def verify(self) -> list[str]:
        """Re-check the defining conditions on every stored row; return violations."""
        problems = []
        ss, order = self.ss, self.order
        for alpha in self.stored_border():
            row = self.rows[alpha]
            for beta in row:
                if not ss.in_delta(beta):
                    problems.append(f"U[{alpha}] has support {beta} outside Delta")
                if order.compare(beta, alpha) >= 0:
                    problems.append(f"U[{alpha}][{beta}] non-zero with beta not below alpha")
            if ss.is_corner(alpha):
                for beta, p in row.items():
                    if p != Poly.var(TVar(alpha, beta)):
                        problems.append(f"corner row U[{alpha}][{beta}] is not its variable")
                continue
            nu = self.nu.get(alpha)
            below = sub_unit(alpha, nu) if nu is not None else None
            if below is None or not ss.in_border(below):
                problems.append(f"direction for {alpha} does not lead back into the border")
                continue
            expected: dict = {}
            for gamma, coeff in self.rows[below].items():
                shifted = add_unit(gamma, nu)
                for beta in set(self.rows.get(shifted, {})) | {shifted}:
                    term = coeff * self.get(shifted, beta)
                    expected[beta] = expected.get(beta, Poly.zero()) + term
            expected = {b: p for b, p in expected.items() if p}
            if expected != row:
                problems.append(f"recursion fails at {alpha}")
        return problems

    def to_json(self) -> dict:
        out = {}
        for alpha in self.stored_border():
            for beta in self.order.sorted(self.rows[alpha], reverse=True):
                key = f"{','.join(map(str, alpha))}|{','.join(map(str, beta))}"
                out[key] = self.rows[alpha][beta].to_json()
        return out
