"""Zariski tangent space at the monomial point and the minimal embedding.

Linear parts of the generators only involve single variables with
coefficients +-1: a border relation contributes ``b[alpha+lam, beta] -
b[alpha, beta-lam]`` and an edge triple contributes ``b[eps+lam, beta-mu] -
b[eps+mu, beta-lam]``, where border-indexed entries are pushed back to a
corner along the chosen directions, ``b[xi, beta] = b[xi - e_nu, beta - e_nu]``.
The kernel of that matrix is the tangent space; its pivot columns are the
variables that can be eliminated.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from grobstrata.errors import SubstitutionNonterminating
from grobstrata.monomials import Exponent, add, add_unit, is_nonnegative, sub, sub_unit, unit
from grobstrata.poly import Poly, TVar, WeightW, mono_degree
from grobstrata.scheme import SchemeIdeal
from grobstrata.ufamily import choose_nu


@dataclass
class RelationMatrix:
    columns: list  # TVars in pivoting order
    rows: list  # dict column index -> int, at most two entries of +-1
    labels: list  # provenance of each row

    def dense(self) -> list[list[int]]:
        return [[r.get(j, 0) for j in range(len(self.columns))] for r in self.rows]

    def triplets(self) -> str:
        """Sparse ``row col value`` lines, 0-based."""
        lines = [f"{len(self.rows)} {len(self.columns)}"]
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                lines.append(f"{i} {j} {r[j]}")
        return "\n".join(lines) + "\n"


def resolve_to_corner(si: SchemeIdeal, xi: Exponent) -> tuple[Exponent, Exponent]:
    """Follow the chosen directions from a border exponent down to a corner; return (corner, shift)."""
    ss = si.ss
    shift = (0,) * ss.n
    while not ss.is_corner(xi):
        nu = choose_nu(ss, xi, si.ufamily.nu_rule)
        xi = sub_unit(xi, nu)
        shift = add_unit(shift, nu)
    return xi, shift


def tangent_relations(si: SchemeIdeal) -> RelationMatrix:
    """Linear parts of the generators, written directly in corner variables.

    The linear part of ``sum_gamma U[a][gamma] U[gamma + e_mu][beta]`` is
    ``b[a + e_mu, beta]`` when ``a`` is in Delta and ``b[a, beta - e_mu]``
    when ``a`` is in the border; a border-indexed ``b`` is then pushed back
    to its corner.
    """
    columns = si.column_order()
    index = {v: i for i, v in enumerate(columns)}
    ss = si.ss
    n = ss.n
    by_corner: dict = {}
    for v in columns:
        by_corner.setdefault(v.alpha, []).append(v)

    def locate(a: Exponent, mu: int):
        """(corner, total shift) of the single linear entry, or None if it is constant."""
        if ss.in_delta(a):
            up = add_unit(a, mu)
            if ss.in_delta(up):
                return None
            return resolve_to_corner(si, up)
        c, s = resolve_to_corner(si, a)
        return c, add_unit(s, mu)

    def betas_for(loc) -> set:
        if loc is None:
            return set()
        c, s = loc
        return {add(v.beta, s) for v in by_corner.get(c, [])}

    def entry(loc, beta: Exponent) -> int | None:
        if loc is None:
            return None
        c, s = loc
        b = sub(beta, s)
        if not is_nonnegative(b):
            return None
        return index.get(TVar(c, b))

    rows, labels, seen = [], [], set()

    def push(left, right, label):
        r: dict = {}
        if left is not None:
            r[left] = r.get(left, 0) + 1
        if right is not None:
            r[right] = r.get(right, 0) - 1
        r = {k: v for k, v in r.items() if v}
        if not r:
            return
        key = tuple(sorted(r.items()))
        neg = tuple(sorted((k, -v) for k, v in r.items()))
        if key in seen or neg in seen:
            return
        seen.add(key)
        rows.append(r)
        labels.append(label)

    for alpha in ss.corners:
        for lam in range(n):
            up = add_unit(alpha, lam)
            if not ss.in_border(up):
                continue
            left, right = resolve_to_corner(si, up), (alpha, unit(n, lam))
            for beta in sorted(b for b in betas_for(left) | betas_for(right) if ss.in_delta(b)):
                push(entry(left, beta), entry(right, beta), ("A1", alpha, lam, beta))

    for kind, ts in (("A2", si.triples), ("C", si.pairs)):
        for t in ts:
            if t.lam == t.mu:
                continue
            left = locate(add_unit(t.eps, t.lam), t.mu)
            right = locate(add_unit(t.eps, t.mu), t.lam)
            for beta in sorted(b for b in betas_for(left) | betas_for(right) if ss.in_delta(b)):
                push(entry(left, beta), entry(right, beta), (kind, t.eps, t.lam, t.mu, beta))
    return RelationMatrix(columns, rows, labels)


@dataclass
class RREF:
    rows: list  # dict column -> Fraction, sorted by pivot
    pivots: list

    @property
    def rank(self) -> int:
        return len(self.pivots)


def row_reduce(rows: Iterable[dict], ncols: int | None = None) -> RREF:
    """Exact reduced row-echelon form; the pivot of each row is its leftmost column."""
    pivot_rows: dict = {}
    for raw in rows:
        r = {j: Fraction(c) for j, c in raw.items() if c}
        for p in sorted(set(r) & set(pivot_rows)):
            c = r.get(p)
            if c:
                _axpy(r, pivot_rows[p], -c)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {j: c * inv for j, c in r.items()}
        for q, other in pivot_rows.items():
            c = other.get(p)
            if c:
                _axpy(other, r, -c)
        pivot_rows[p] = r
    pivots = sorted(pivot_rows)
    return RREF([pivot_rows[p] for p in pivots], pivots)


def _axpy(target: dict, src: dict, c) -> None:
    for j, v in src.items():
        s = target.get(j, 0) + c * v
        if s:
            target[j] = s
        else:
            target.pop(j, None)


def kernel_basis(rref: RREF, ncols: int) -> list[dict]:
    pivots = set(rref.pivots)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, row in zip(rref.pivots, rref.rows):
            c = row.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


@dataclass
class TangentReport:
    matrix: RelationMatrix
    rref: RREF
    eliminable: list  # TVars at pivot columns
    kernel: list  # list of dict TVar -> Fraction

    @property
    def num_vars(self) -> int:
        return len(self.matrix.columns)

    @property
    def rank(self) -> int:
        return self.rref.rank

    @property
    def embedding_dim(self) -> int:
        return self.num_vars - self.rank


def tangent_report(si: SchemeIdeal) -> TangentReport:
    m = tangent_relations(si)
    rref = row_reduce(m.rows, len(m.columns))
    cols = m.columns
    kernel = [{cols[j]: c for j, c in vec.items()} for vec in kernel_basis(rref, len(cols))]
    return TangentReport(m, rref, [cols[p] for p in rref.pivots], kernel)


# -- elimination --------------------------------------------------------------


@dataclass
class EmbeddedPresentation:
    residual_vars: list  # TVars, in display order
    substitutions: dict  # eliminated TVar -> Poly in residual vars
    residual_gens: list  # minimal generators, no constant or linear terms
    raw_residual: list = field(default_factory=list)  # non-zero reduced relations before minimising
    integral: bool = True

    @property
    def embedding_dim(self) -> int:
        return len(self.residual_vars)

    @property
    def flat(self) -> bool:
        """True when no relation survives: the scheme is an affine space."""
        return not self.residual_gens


def eliminate(si: SchemeIdeal, tr: TangentReport | None = None) -> EmbeddedPresentation:
    """Recombine generators so pivot variables appear as ``t + g_t`` and substitute them away."""
    columns = si.column_order()
    col = {v: i for i, v in enumerate(columns)}
    pivot_rows: dict = {}
    leftover = []
    for g in si.generators:
        lin = {col[v]: c for v, c in g.poly.linear_coefficients().items()}
        poly = g.poly
        for p in sorted(set(lin) & set(pivot_rows)):
            c = lin.get(p)
            if c:
                plin, ppoly = pivot_rows[p]
                _axpy(lin, plin, -c)
                poly = poly.add_scaled(ppoly, -c)
        if not lin:
            if poly:
                leftover.append(poly)
            continue
        p = min(lin)
        inv = 1 / lin[p]
        lin = {j: c * inv for j, c in lin.items()}
        poly = poly.scale(inv)
        for q, (olin, opoly) in list(pivot_rows.items()):
            c = olin.get(p)
            if c:
                _axpy(olin, lin, -c)
                pivot_rows[q] = (olin, opoly.add_scaled(poly, -c))
        pivot_rows[p] = (lin, poly)

    pivots = [columns[p] for p in sorted(pivot_rows)]
    if tr is not None and set(pivots) != set(tr.eliminable):
        raise SubstitutionNonterminating("generator linear parts disagree with the tangent relations")

    # t + g_t = 0  =>  t = -g_t
    bindings = {columns[p]: Poly.var(columns[p]) - poly for p, (_, poly) in pivot_rows.items()}
    bindings = _close_substitutions(bindings, si.weight)

    raw = []
    for f in leftover:
        r = f.substitute(bindings)
        if r:
            raw.append(r)
    residual_vars = [v for v in si.variables if v not in bindings]
    gens = minimal_generators(raw, si.weight)
    integral = all(p.has_integer_coefficients() for p in list(bindings.values()) + gens)
    return EmbeddedPresentation(residual_vars, bindings, gens, raw, integral)


def _close_substitutions(bindings: dict, weight: WeightW) -> dict:
    """Substitute until no eliminated variable occurs on any right-hand side.

    Non-linear terms of ``g_t`` have the weight of ``t`` and are at least
    quadratic, so they only involve lighter variables; resolving in
    ascending weight therefore finishes in one pass.
    """
    order = sorted(bindings, key=lambda v: (weight.of_var(v), v))
    targets = set(bindings)
    for _ in range(len(order) + 1):
        for t in order:
            bindings[t] = bindings[t].substitute({v: bindings[v] for v in bindings[t].variables() & targets})
        if not any(p.variables() & targets for p in bindings.values()):
            return bindings
    raise SubstitutionNonterminating("eliminated variables keep reappearing after substitution")


# -- graded linear algebra ----------------------------------------------------


def _multidegree(p: Poly) -> tuple:
    degs = p.multidegrees()
    if len(degs) != 1:
        raise ValueError("polynomial is not multihomogeneous")
    return next(iter(degs))


def monomials_of_multidegree(variables: Sequence[TVar], target: tuple, weight: WeightW) -> list:
    """All monomials in ``variables`` whose multidegree (sum of alpha - beta) equals ``target``."""
    degs = [v.multidegree() for v in variables]
    ws = [weight.u(d) for d in degs]
    memo: dict = {}

    def walk(i: int, rem: tuple) -> list:
        # monomials in variables[i:] of multidegree rem, as lists of (var, exp)
        key = (i, rem)
        if key in memo:
            return memo[key]
        out: list = []
        if not any(rem):
            out = [[]]
        elif i < len(variables) and weight.u(rem) > 0:
            d, w = degs[i], ws[i]
            for e in range(weight.u(rem) // w, -1, -1):
                nxt = tuple(r - e * x for r, x in zip(rem, d))
                for tail in walk(i + 1, nxt):
                    out.append([(variables[i], e)] + tail if e else tail)
        memo[key] = out
        return out

    return [tuple(sorted(m)) for m in walk(0, tuple(target))]


class Span:
    """Incrementally maintained echelon basis of a space of polynomials.

    Rows are keyed by their smallest monomial and contain only larger ones,
    so reduction proceeds upward through the monomials with a heap.
    """

    def __init__(self):
        self.rows: dict = {}

    def reduce(self, p: Poly) -> dict:
        r = dict(p.terms)
        heap = [m for m in r if m in self.rows]
        heapq.heapify(heap)
        while heap:
            m = heapq.heappop(heap)
            c = r.get(m)
            if not c:
                continue
            for k, v in self.rows[m].items():
                s = r.get(k, 0) - c * v
                if s:
                    if k not in r and k in self.rows:
                        heapq.heappush(heap, k)
                    r[k] = s
                else:
                    r.pop(k, None)
        return r

    def add(self, p: Poly) -> bool:
        r = self.reduce(p)
        if not r:
            return False
        lead = min(r)
        inv = 1 / r[lead]
        self.rows[lead] = {m: c * inv for m, c in r.items()}
        return True

    def contains(self, p: Poly) -> bool:
        return not self.reduce(p)


def normalize(p: Poly) -> Poly:
    """Primitive integer multiple with positive leading coefficient."""
    from math import gcd, lcm

    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    q = p.scale(den)
    g = 0
    for c in q.terms.values():
        g = gcd(g, c.numerator)
    lead = q.sorted_terms()[0][1]
    return q.scale(Fraction(1 if lead > 0 else -1, g or 1))


def minimal_generators(polys: Iterable[Poly], weight: WeightW) -> list[Poly]:
    """A minimal generating set of the ideal spanned by multihomogeneous ``polys``.

    With a positive grading the minimal number of generators is an
    invariant; degree by degree, a candidate is kept only if it is not a
    combination of monomial multiples of what was kept before.
    """
    cands = []
    seen = set()
    for p in polys:
        if not p:
            continue
        q = normalize(p)
        if q not in seen:
            seen.add(q)
            cands.append(q)
    if not cands:
        return []
    variables = sorted(set().union(*(p.variables() for p in cands)))
    groups: dict = {}
    for p in cands:
        groups.setdefault(_multidegree(p), []).append(p)
    kept: list = []
    for deg in sorted(groups, key=lambda d: (weight.u(d), d)):
        span = Span()
        for g in kept:
            gdeg = _multidegree(g)
            shift = tuple(a - b for a, b in zip(deg, gdeg))
            for m in monomials_of_multidegree(variables, shift, weight):
                if m:
                    span.add(Poly({m: 1}) * g)
        for p in sorted(groups[deg], key=lambda p: (len(p), p.sorted_terms())):
            if span.add(p):
                kept.append(p)
    return kept


def in_ideal(f: Poly, gens: Sequence[Poly], weight: WeightW) -> bool:
    """Membership of a multihomogeneous ``f`` in the ideal generated by multihomogeneous ``gens``."""
    if not f:
        return True
    parts: dict = {}
    for m, c in f.terms.items():
        parts.setdefault(Poly({m: 1}).multidegrees().pop(), {})[m] = c
    variables = sorted(set(f.variables()).union(*(g.variables() for g in gens)) if gens else f.variables())
    for deg, terms in parts.items():
        span = Span()
        for g in gens:
            if not g:
                continue
            shift = tuple(a - b for a, b in zip(deg, _multidegree(g)))
            for m in monomials_of_multidegree(variables, shift, weight):
                span.add(Poly({m: 1}) * g)
        if not span.contains(Poly(terms)):
            return False
    return True
