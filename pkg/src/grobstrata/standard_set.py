"""Standard sets given by their corners.

A standard set is the set of exponents *not* in a monomial ideal.  It is
usually infinite, so it is never materialised: everything here is either a
membership predicate or an enumeration truncated by total degree or by a
coordinate box.
"""

from __future__ import annotations

from enum import Enum
from itertools import product
from typing import Iterable, NamedTuple

from grobstrata.errors import AntichainViolation, ConfigError, DimensionMismatch
from grobstrata.monomials import (
    Exponent,
    MonomialOrder,
    add_unit,
    degree,
    divides,
    exponent,
    monomials_of_degree,
    sub_unit,
)


class Membership(str, Enum):
    IN_DELTA = "in_delta"
    IN_BORDER = "in_border"
    OUTSIDE = "outside"


class EdgeTriple(NamedTuple):
    """``(eps; e_lam, e_mu)`` with ``lam <= mu`` (0-based variable indices)."""

    eps: Exponent
    lam: int
    mu: int

    def __str__(self) -> str:
        return f"({','.join(map(str, self.eps))}; e{self.lam + 1}, e{self.mu + 1})"


def validate_corners(corners: Iterable[Iterable[int]], n: int | None = None) -> "StandardSet":
    """Check that ``corners`` is a divisibility antichain and wrap it.

    An empty corner list describes the zero ideal and then ``n`` must be
    given.  Duplicates are merged.
    """
    pts = sorted({exponent(c) for c in corners})
    if n is None:
        if not pts:
            raise ConfigError("the number of variables is needed when there are no corners")
        n = len(pts[0])
    for p in pts:
        if len(p) != n:
            raise DimensionMismatch(f"corner {p} does not have {n} coordinates")
    for a in pts:
        for b in pts:
            if a != b and divides(b, a):
                raise AntichainViolation(a, b)
    return StandardSet(tuple(pts), n)


class StandardSet:
    """The complement of the monomial ideal generated by ``corners``.

    Build through :func:`validate_corners`; the constructor trusts its input.
    """

    def __init__(self, corners: tuple, n: int):
        self.corners = corners
        self.n = n
        self._corner_set = frozenset(corners)
        self.theta = tuple(max((c[i] for c in corners), default=0) for i in range(n))
        self.edge_bound = sum(self.theta) + n
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"StandardSet(corners={list(self.corners)}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, StandardSet) and (self.corners, self.n) == (other.corners, other.n)

    def __hash__(self):
        return hash((self.corners, self.n))

    def _check(self, beta: Exponent) -> None:
        if len(beta) != self.n:
            raise DimensionMismatch(f"{beta} does not have {self.n} coordinates")

    def is_corner(self, beta: Exponent) -> bool:
        return beta in self._corner_set

    def in_delta(self, beta: Exponent) -> bool:
        return not any(all(c <= b for c, b in zip(corner, beta)) for corner in self.corners)

    def in_border(self, beta: Exponent) -> bool:
        if self.in_delta(beta):
            return False
        for i in range(self.n):
            below = sub_unit(beta, i)
            if below is not None and self.in_delta(below):
                return True
        return False

    def in_delta_or_border(self, beta: Exponent) -> bool:
        return self.in_delta(beta) or self.in_border(beta)

    def membership(self, beta: Exponent) -> Membership:
        self._check(beta)
        if self.in_delta(beta):
            return Membership.IN_DELTA
        if self.in_border(beta):
            return Membership.IN_BORDER
        return Membership.OUTSIDE

    def is_finite(self) -> bool:
        """Delta is finite iff every variable has a pure power among the corners."""
        pure = set()
        for c in self.corners:
            support = [i for i, v in enumerate(c) if v]
            if len(support) == 1:
                pure.add(support[0])
            elif not support:
                return True
        return len(pure) == self.n

    def delta_of_degree(self, d: int) -> list[Exponent]:
        key = ("delta", d)
        if key not in self._cache:
            self._cache[key] = [b for b in monomials_of_degree(self.n, d) if self.in_delta(b)]
        return self._cache[key]

    def border_of_degree(self, d: int) -> list[Exponent]:
        key = ("border", d)
        if key not in self._cache:
            self._cache[key] = [b for b in monomials_of_degree(self.n, d) if self.in_border(b)]
        return self._cache[key]

    def enumerate_delta_upto(self, D: int, order: MonomialOrder) -> list[Exponent]:
        """All of Delta in total degree <= D, ascending in ``order``."""
        pts = [b for d in range(D + 1) for b in self.delta_of_degree(d)]
        return order.sorted(pts)

    def enumerate_border_upto(self, D: int, order: MonomialOrder) -> list[Exponent]:
        pts = [b for d in range(D + 1) for b in self.border_of_degree(d)]
        return order.sorted(pts)

    def delta_elements(self) -> list[Exponent] | None:
        """Every element of Delta when it is finite, else None."""
        if not self.is_finite():
            return None
        box = [range(t + 1) for t in self.theta]
        return sorted(p for p in product(*box) if self.in_delta(p))

    def corners_of_delta_union_border(self) -> list[Exponent]:
        """Minimal exponents outside Delta ∪ border, searched in the box ``eta_i <= theta_i + 1``."""
        if "outer_corners" in self._cache:
            return self._cache["outer_corners"]
        box = [range(t + 2) for t in self.theta]
        out = []
        for eta in product(*box):
            if self.in_delta_or_border(eta):
                continue
            if all(
                below is None or self.in_delta_or_border(below)
                for below in (sub_unit(eta, i) for i in range(self.n))
            ):
                out.append(eta)
        if not self.corners:
            out = []
        self._cache["outer_corners"] = out
        return out

    def is_edge_triple(self, eps: Exponent, lam: int, mu: int, outer: frozenset | None = None) -> bool:
        if outer is None:
            outer = frozenset(self.corners_of_delta_union_border())
        if not self.in_delta(eps):
            return False
        a, b = add_unit(eps, lam), add_unit(eps, mu)
        if not (self.in_border(a) and self.in_border(b)):
            return False
        return add_unit(a, mu) in outer

    def edge_triples(self) -> list[EdgeTriple]:
        """Edge triples, found among eps in Delta of degree <= sum(theta) + n - 2.

        Diagonal triples ``(eps; lam, lam)`` are reported only for corners of
        Delta ∪ border that no off-diagonal triple reaches.
        """
        if "triples" in self._cache:
            return self._cache["triples"]
        outer = frozenset(self.corners_of_delta_union_border())
        found = []
        for d in range(max(self.edge_bound - 1, 0)):
            for eps in self.delta_of_degree(d):
                for lam in range(self.n):
                    for mu in range(lam, self.n):
                        if self.is_edge_triple(eps, lam, mu, outer):
                            found.append(EdgeTriple(eps, lam, mu))
        # a diagonal triple gives the zero relation; keep it only when no
        # other triple reaches the same corner of Delta ∪ border
        reached = {add_unit(add_unit(t.eps, t.lam), t.mu) for t in found if t.lam != t.mu}
        found = [t for t in found if t.lam != t.mu or add_unit(add_unit(t.eps, t.lam), t.mu) not in reached]
        found.sort()
        self._cache["triples"] = found
        return found

    def edge_points(self) -> list[Exponent]:
        return sorted({t.eps for t in self.edge_triples()})

    def procedure_degree_bound(self) -> int:
        """Truncation degree: max of |alpha|+1 over corners and |eps|+2 over edge points."""
        vals = [degree(c) + 1 for c in self.corners]
        vals += [degree(e) + 2 for e in self.edge_points()]
        return max(vals, default=0)

    def commutation_pairs(self) -> list[EdgeTriple]:
        """Non-edge triples ``(eps; lam, mu)``, ``lam < mu``, whose commutation relation is not automatic.

        These are the ``eps`` in Delta with ``eps_i <= theta_i + 1``, both
        ``eps + e_lam`` and ``eps + e_mu`` in Delta or its border, and at
        least one of them in the border.  When the direction chosen for
        ``eps + e_lam`` is ``mu`` the induction that derives such relations
        from the edge triples does not go through, so they are added
        explicitly.
        """
        if "pairs" in self._cache:
            return self._cache["pairs"]
        edges = set(self.edge_triples())
        found = []
        for eps in product(*(range(t + 2) for t in self.theta)):
            if not self.in_delta(eps):
                continue
            for lam in range(self.n):
                a = add_unit(eps, lam)
                if not self.in_delta_or_border(a):
                    continue
                for mu in range(lam + 1, self.n):
                    b = add_unit(eps, mu)
                    if not self.in_delta_or_border(b) or (self.in_delta(a) and self.in_delta(b)):
                        continue
                    t = EdgeTriple(eps, lam, mu)
                    if t not in edges:
                        found.append(t)
        found.sort()
        self._cache["pairs"] = found
        return found

    def closure_degree_bound(self) -> int:
        """Truncation degree that also covers every commutation pair."""
        vals = [self.procedure_degree_bound()]
        vals += [degree(t.eps) + 2 for t in self.commutation_pairs()]
        return max(vals)
