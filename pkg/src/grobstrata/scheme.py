"""Defining ideal of the Gröbner scheme and its universal family.

The ideal is generated by two families of relations on the U-family:

* border relations, one per corner ``alpha``, direction ``lam`` with
  ``alpha + e_lam`` in the border, and ``beta`` in Delta::

      U[alpha + e_lam][beta] - sum_gamma U[alpha][gamma] * U[gamma + e_lam][beta]

* commutation relations, one per edge triple ``(eps; lam, mu)`` and ``beta``::

      sum_gamma U[eps + e_lam][gamma] U[gamma + e_mu][beta]
        - sum_gamma U[eps + e_mu][gamma] U[gamma + e_lam][beta]

Edge triples alone can leave the ideal too small: for ``x^2, xy, y^4, xz^2``
under lex the commutation at ``(xz; y, z)`` is not implied by them, and
without it the tangent space is three dimensions too large.  By default the
same commutation relation is therefore also imposed on every pair from
:meth:`StandardSet.commutation_pairs` (kind ``"C"``); ``relations="edges"``
restricts to the edge triples.

Both are computed row-wise as virtual products, so only ``beta`` in the
support of some row appear and zero relations never materialise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from grobstrata.errors import ConfigError, ModeError, TruncationTooSmall
from grobstrata.monomials import (
    Exponent,
    MonomialOrder,
    add_unit,
    degree,
    exponent,
    format_exponent,
)
from grobstrata.poly import Poly, TVar, WeightW, build_weight, is_w_homogeneous
from grobstrata.standard_set import EdgeTriple, StandardSet, validate_corners
from grobstrata.ufamily import UFamily

MODES = ("full", "homogeneous", "type")
RELATIONS = ("closure", "edges")


@dataclass(frozen=True)
class Generator:
    kind: str  # "A1" border relation, "A2" edge-triple or "C" extra commutation
    tag: tuple
    poly: Poly

    def describe(self) -> str:
        if self.kind == "A1":
            alpha, lam, beta = self.tag
            return f"A1 alpha={format_exponent(alpha)} lam=e{lam + 1} beta={format_exponent(beta)}"
        eps, lam, mu, beta = self.tag
        return f"{self.kind} eps={format_exponent(eps)} lam=e{lam + 1} mu=e{mu + 1} beta={format_exponent(beta)}"

    def tag_json(self) -> dict:
        if self.kind == "A1":
            alpha, lam, beta = self.tag
            return {"kind": "A1", "alpha": list(alpha), "lam": lam + 1, "beta": list(beta)}
        eps, lam, mu, beta = self.tag
        return {"kind": self.kind, "eps": list(eps), "lam": lam + 1, "mu": mu + 1, "beta": list(beta)}


@dataclass
class SchemeIdeal:
    ss: StandardSet
    order: MonomialOrder
    mode: str
    degree_bound: int | None
    variables: list  # TVars, descending by (alpha, beta) in the order
    gens_a1: list
    gens_a2: list
    triples: list
    weight: WeightW
    ufamily: UFamily
    dset: tuple | None = None
    duplicates_dropped: int = 0
    gens_c: list = field(default_factory=list)
    pairs: list = field(default_factory=list)
    relations: str = "closure"
    _rank: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._rank = {v: i for i, v in enumerate(self.variables)}

    @property
    def generators(self) -> list:
        return self.gens_a1 + self.gens_a2 + self.gens_c

    def polys(self) -> list:
        return [g.poly for g in self.generators]

    def rank(self, v: TVar) -> int:
        return self._rank[v]

    def column_order(self) -> list:
        """Variables ascending by (alpha, beta); pivots are taken from the left of this list."""
        return list(reversed(self.variables))


def var_sort_key(order: MonomialOrder):
    return lambda v: (order.key(v.alpha), order.key(v.beta))


def parameter_variables(
    ss: StandardSet, order: MonomialOrder, mode: str, dset: Iterable[Exponent] | None = None
) -> list:
    """The variables ``T[alpha; beta]`` of the ambient affine space, descending."""
    out = []
    finite = ss.delta_elements()
    for alpha in ss.corners:
        if mode == "type":
            betas = list(dset)
        elif mode == "homogeneous":
            betas = ss.delta_of_degree(degree(alpha))
        elif finite is not None:
            betas = finite
        else:
            betas = [b for d in range(degree(alpha) + 1) for b in ss.delta_of_degree(d)]
        out.extend(TVar(alpha, b) for b in betas if order.compare(b, alpha) < 0)
    return sorted(out, key=var_sort_key(order), reverse=True)


def _check_mode(ss: StandardSet, order: MonomialOrder, mode: str, dset) -> None:
    if mode not in MODES:
        raise ModeError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "full" and not (order.is_graded() or ss.is_finite()):
        raise ModeError(
            f"full mode needs a graded order or a finite standard set; {order} is not graded "
            "and Delta is infinite (use homogeneous or type mode)"
        )
    if mode == "type":
        if dset is None:
            raise ModeError("type mode needs an explicit finite set of non-leading exponents")
        for b in dset:
            if len(b) != ss.n or not ss.in_delta(b):
                raise ModeError(f"{b} is not in the standard set")
    elif dset is not None:
        raise ModeError("an explicit exponent set is only meaningful in type mode")


def build_scheme(
    corners,
    order: MonomialOrder,
    mode: str = "full",
    degree_bound: int | None = None,
    dset: Iterable[Iterable[int]] | None = None,
    nu_rule: str = "min",
    n: int | None = None,
    relations: str = "closure",
) -> SchemeIdeal:
    """Edge triples, truncation degree, U-family and the relation families."""
    ss = corners if isinstance(corners, StandardSet) else validate_corners(corners, n)
    if order.n != ss.n:
        raise ConfigError(f"order has {order.n} variables but corners have {ss.n}")
    if dset is not None:
        dset = tuple(sorted({exponent(b) for b in dset}))
    _check_mode(ss, order, mode, dset)
    if relations not in RELATIONS:
        raise ModeError(f"unknown relation set {relations!r}; expected one of {RELATIONS}")

    triples = ss.edge_triples()
    pairs = ss.commutation_pairs() if relations == "closure" else []
    D = ss.closure_degree_bound() if pairs else ss.procedure_degree_bound()
    if degree_bound is not None:
        if degree_bound < D:
            raise TruncationTooSmall(f"degree bound {degree_bound} is below the required {D}")
        D = degree_bound
    capped = order.is_graded() or mode == "homogeneous"

    variables = parameter_variables(ss, order, mode, dset)
    uf = UFamily(ss, order, variables, max_degree=D if capped else None, nu_rule=nu_rule)
    if capped:
        uf.populate(D)
    elif ss.is_finite():
        uf.populate(max((degree(b) for b in ss.delta_elements()), default=0) + 1)

    pts = set(ss.corners) | {v.beta for v in variables}
    weight = build_weight(order, pts) if pts else WeightW((1,) * ss.n)

    desc = lambda row: order.sorted(row, reverse=True)  # noqa: E731
    seen: set = set()
    dropped = 0

    def keep(p: Poly) -> bool:
        nonlocal dropped
        if p in seen:
            dropped += 1
            return False
        seen.add(p)
        return True

    gens_a1 = []
    for alpha in ss.corners:
        for lam in range(ss.n):
            up = add_unit(alpha, lam)
            if not ss.in_border(up):
                continue
            diff = _row_difference(uf.row(up), uf.times(uf.row(alpha), lam))
            for beta in desc(diff):
                if keep(diff[beta]):
                    gens_a1.append(Generator("A1", (alpha, lam, beta), diff[beta]))

    def commutation(kind: str, ts: list) -> list:
        out = []
        for t in ts:
            if t.lam == t.mu:
                continue
            left = uf.times(uf.row(add_unit(t.eps, t.lam)), t.mu)
            right = uf.times(uf.row(add_unit(t.eps, t.mu)), t.lam)
            diff = _row_difference(left, right)
            for beta in desc(diff):
                if keep(diff[beta]):
                    out.append(Generator(kind, (t.eps, t.lam, t.mu, beta), diff[beta]))
        return out

    gens_a2 = commutation("A2", triples)
    gens_c = commutation("C", pairs)

    return SchemeIdeal(
        ss=ss,
        order=order,
        mode=mode,
        degree_bound=D if capped else None,
        variables=variables,
        gens_a1=gens_a1,
        gens_a2=gens_a2,
        triples=triples,
        weight=weight,
        ufamily=uf,
        dset=dset,
        duplicates_dropped=dropped,
        gens_c=gens_c,
        pairs=pairs,
        relations=relations,
    )


def _row_difference(a: dict, b: dict) -> dict:
    out = {}
    for beta in set(a) | set(b):
        p = a.get(beta, Poly.zero()) - b.get(beta, Poly.zero())
        if p:
            out[beta] = p
    return out


def check_generators(si: SchemeIdeal) -> list[str]:
    """Generators must vanish at the origin and be W-homogeneous."""
    problems = []
    for g in si.generators:
        if g.poly.constant_term():
            problems.append(f"{g.describe()} has a constant term")
        if not is_w_homogeneous(g.poly, si.weight):
            problems.append(f"{g.describe()} is not W-homogeneous")
        if len(g.poly.multidegrees()) != 1:
            problems.append(f"{g.describe()} mixes multidegrees")
    return problems


# -- universal family ---------------------------------------------------------


def x_names(n: int) -> list[str]:
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]


def render_x_monomial(e: Exponent, names: list[str], mul: str = "*") -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return mul.join(parts)


@dataclass
class UniversalFamily:
    """``g_alpha = x^alpha + sum_beta coeff[beta] x^beta`` for each corner ``alpha``."""

    order: MonomialOrder
    members: list  # list of (alpha, [(beta, Poly), ...]) with betas descending

    def specialize(self, point: Mapping[TVar, object]) -> list:
        """Coefficient dictionaries ``{exponent: Fraction}`` at a parameter point."""
        out = []
        for alpha, terms in self.members:
            g = {alpha: 1}
            for beta, coeff in terms:
                v = coeff.evaluate(point)
                if v:
                    g[beta] = v
            out.append(g)
        return out

    def render(self, names: Mapping[TVar, str] | None = None, rank=None, mul: str = "*") -> list[str]:
        xs = x_names(self.order.n)
        lines = []
        for alpha, terms in self.members:
            text = render_x_monomial(alpha, xs, mul) or "1"
            for beta, coeff in terms:
                xm = render_x_monomial(beta, xs, mul)
                body = coeff.render(names, rank, mul)
                if len(coeff) == 1:
                    if body.startswith("-"):
                        sign, body = "-", body[1:]
                    else:
                        sign = "+"
                    if body == "1" and xm:
                        body = ""
                    term = mul.join(x for x in (body, xm) if x)
                else:
                    sign, term = "+", f"({body})" + (mul + xm if xm else "")
                text += f" {sign} {term}"
            lines.append(text)
        return lines


def universal_family(si: SchemeIdeal, substitutions: Mapping[TVar, Poly] | None = None) -> UniversalFamily:
    """``x^alpha - sum T[alpha; beta] x^beta`` with eliminated parameters substituted away."""
    members = []
    for alpha in si.ss.corners:
        vs = [v for v in si.variables if v.alpha == alpha]
        terms = []
        for v in sorted(vs, key=lambda v: si.order.key(v.beta), reverse=True):
            coeff = -(substitutions[v] if substitutions and v in substitutions else Poly.var(v))
            if coeff:
                terms.append((v.beta, coeff))
        members.append((alpha, terms))
    members.sort(key=lambda m: si.order.key(m[0]), reverse=True)
    return UniversalFamily(si.order, members)
