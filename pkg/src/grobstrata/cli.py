"""Command-line front end.

Subcommands::

    grobstrata stratum --corners "1,1,0;1,0,1" --order grlex
    grobstrata triples --corners corners.json
    grobstrata tangent --corners ... --matrix A.txt
    grobstrata family  --corners ... --order lex --mode homogeneous
    grobstrata verify  basis.json

Every JSON report carries ``"schema": "grobstrata/1"``.  Errors print one
line on stderr and exit with the code of their class: 2 for bad input, 3
for corners that are not an antichain, 4 for mode problems and 10 for
internal invariant failures.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from string import ascii_lowercase

from grobstrata import __version__
from grobstrata.errors import ConfigError, GrobstrataError
from grobstrata.monomials import MonomialOrder, format_exponent
from grobstrata.oracle import format_xpoly, is_reduced_groebner, parse_xpoly, xpoly_from_json
from grobstrata.scheme import MODES, RELATIONS, build_scheme, universal_family
from grobstrata.standard_set import validate_corners
from grobstrata.tangent import eliminate, tangent_report

SCHEMA = "grobstrata/1"


# -- input parsing ------------------------------------------------------------


def _read_source(value: str) -> str:
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value


def _int_rows(text: str, what: str) -> list:
    """``"1,1,0;1,0,1"``, a JSON list of lists, or one row per line."""
    text = text.strip()
    if not text:
        return []
    try:
        if text.startswith("["):
            rows = json.loads(text)
        else:
            chunks = [c for c in text.replace("\n", ";").split(";") if c.strip()]
            rows = [[int(x) for x in c.replace(" ", ",").split(",") if x] for c in chunks]
        rows = [[int(x) for x in r] for r in rows]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"malformed {what}: {exc}") from None
    if not all(isinstance(r, list) for r in rows):
        raise ConfigError(f"malformed {what}: expected a list of integer vectors")
    return rows


def parse_corners(value: str) -> list:
    return _int_rows(_read_source(value), "corners")


def parse_order(value: str, n: int) -> MonomialOrder:
    """``lex``, ``grevlex:2,1,0`` (variable priority), ``matrix:1,1,1;0,0,-1;0,-1,0`` or JSON."""
    text = _read_source(value).strip()
    if text.startswith("{"):
        try:
            spec = json.loads(text)
        except ValueError as exc:
            raise ConfigError(f"malformed order: {exc}") from None
        return MonomialOrder.from_spec(spec, n)
    kind, _, rest = text.partition(":")
    if kind == "matrix":
        return MonomialOrder.from_spec({"kind": "matrix", "rows": _int_rows(rest, "weight matrix")}, n)
    if kind not in ("lex", "grlex", "grevlex"):
        raise ConfigError(f"unknown order {kind!r}")
    priority = [int(x) for x in rest.split(",")] if rest else []
    return MonomialOrder.from_spec({"kind": kind, "priority": priority}, n)


def _setup(args):
    corners = parse_corners(args.corners)
    n = args.n
    if n is None:
        if not corners:
            raise ConfigError("cannot infer the number of variables from an empty corner set; pass --n")
        n = len(corners[0])
    ss = validate_corners(corners, n)
    order = parse_order(args.order, n)
    return ss, order


def _scheme(args):
    ss, order = _setup(args)
    dset = _int_rows(_read_source(args.dset), "exponent set") if args.dset else None
    return build_scheme(
        ss,
        order,
        mode=args.mode,
        degree_bound=args.degree_bound,
        dset=dset,
        nu_rule=args.nu_rule,
        relations=args.relations,
    )


# -- rendering helpers --------------------------------------------------------


def alias_names(variables) -> dict:
    names = {}
    for i, v in enumerate(variables):
        names[v] = ascii_lowercase[i] if i < 26 else f"t{i + 1}"
    return names


def _counts(si) -> dict:
    return {
        "vars": len(si.variables),
        "triples": len(si.triples),
        "pairs": len(si.pairs),
        "A1": len(si.gens_a1),
        "A2": len(si.gens_a2),
        "C": len(si.gens_c),
        "duplicates_dropped": si.duplicates_dropped,
    }


def _header(si) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "n": si.ss.n,
        "order": si.order.to_spec(),
        "corners": [list(c) for c in si.ss.corners],
        "mode": si.mode,
        "relations": si.relations,
        "D": si.degree_bound,
    }


def _triple_json(t) -> dict:
    return {"eps": list(t.eps), "lam": t.lam + 1, "mu": t.mu + 1}


def _spot_check(si, ep, count: int, seed: int) -> dict:
    """Specialize the family at random points of the stratum and run the oracle."""
    rng = random.Random(seed)
    uf = universal_family(si, ep.substitutions)
    tried = accepted = 0
    failures = []
    for _ in range(count * 20):
        if tried == count:
            break
        point = {}
        for v in ep.residual_vars:
            if ep.residual_gens and rng.random() < 0.5:
                continue
            point[v] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if any(g.evaluate(point) for g in ep.residual_gens):
            continue
        tried += 1
        ok, cert = is_reduced_groebner(uf.specialize(point), si.ss, si.order)
        if ok:
            accepted += 1
        else:
            failures.append(cert)
    return {"points": tried, "accepted": accepted, "failures": failures[:3]}


# -- subcommands --------------------------------------------------------------


def cmd_stratum(args) -> tuple[dict, str]:
    si = _scheme(args)
    tr = tangent_report(si)
    ep = eliminate(si, tr)
    names = alias_names(ep.residual_vars)
    fam = universal_family(si, ep.substitutions)
    emit = set(args.emit or ())

    report = _header(si)
    report["counts"] = _counts(si)
    report["tangent"] = {
        "num_vars": tr.num_vars,
        "rank": tr.rank,
        "embedding_dim": tr.embedding_dim,
        "eliminable": [str(v) for v in tr.eliminable],
    }
    report["aliases"] = {names[v]: str(v) for v in ep.residual_vars}
    report["residual_gens"] = [
        {"text": g.render(names, si.rank), "poly": g.to_json(si.rank)} for g in ep.residual_gens
    ]
    report["raw_residual"] = len(ep.raw_residual)
    report["flat"] = ep.flat
    report["integral"] = ep.integral
    report["family"] = fam.render(names, si.rank)
    if "triples" in emit:
        report["triples"] = [_triple_json(t) for t in si.triples]
        report["pairs"] = [_triple_json(t) for t in si.pairs]
    if "vars" in emit:
        report["vars"] = [str(v) for v in si.variables]
    if "raw-gens" in emit:
        report["generators"] = [
            {"tag": g.tag_json(), "poly": g.poly.to_json(si.rank)} for g in si.generators
        ]
    if "ufamily" in emit:
        report["ufamily"] = si.ufamily.to_json()
    if "substitutions" in emit:
        report["substitutions"] = {
            str(v): p.render(names, si.rank) for v, p in sorted(ep.substitutions.items(), key=lambda kv: si.rank(kv[0]))
        }
    if args.spot_check:
        report["spot_check"] = _spot_check(si, ep, args.spot_check, args.seed)

    lines = [
        f"corners: {' '.join(format_exponent(c) for c in si.ss.corners)}",
        f"order: {si.order.kind}  mode: {si.mode}  relations: {si.relations}  D: {si.degree_bound}",
        f"parameter variables: {len(si.variables)}",
        f"generators: A1 {len(si.gens_a1)}, A2 {len(si.gens_a2)}, C {len(si.gens_c)}"
        f" ({si.duplicates_dropped} duplicates dropped)",
        f"tangent rank: {tr.rank}  embedding dimension: {tr.embedding_dim}",
        "aliases:",
        *(f"  {names[v]} = {v}" for v in ep.residual_vars),
        f"residual generators: {len(ep.residual_gens)}"
        + (f" (flat: affine space of dimension {tr.embedding_dim})" if ep.flat else ""),
        *(f"  {g.render(names, si.rank, '')}" for g in ep.residual_gens),
        "universal family:",
        *(f"  {line}" for line in fam.render(names, si.rank, "")),
    ]
    if args.spot_check:
        sc = report["spot_check"]
        lines.append(f"oracle spot check: {sc['accepted']}/{sc['points']} accepted")
    return report, "\n".join(lines) + "\n"


def cmd_family(args) -> tuple[dict, str]:
    si = _scheme(args)
    ep = eliminate(si, tangent_report(si))
    names = alias_names(ep.residual_vars)
    fam = universal_family(si, ep.substitutions)
    report = _header(si)
    report["aliases"] = {names[v]: str(v) for v in ep.residual_vars}
    report["family"] = fam.render(names, si.rank)
    report["residual_gens"] = [g.render(names, si.rank) for g in ep.residual_gens]
    text = "\n".join(fam.render(names, si.rank, "")) + "\n"
    return report, text


def cmd_triples(args) -> tuple[dict, str]:
    ss, _ = _setup(args)
    triples = ss.edge_triples()
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "n": ss.n,
        "corners": [list(c) for c in ss.corners],
        "theta": list(ss.theta),
        "L": ss.edge_bound,
        "triples": [_triple_json(t) for t in triples],
        "edge_points": [list(e) for e in ss.edge_points()],
        "outer_corners": [list(c) for c in ss.corners_of_delta_union_border()],
        "D": ss.procedure_degree_bound(),
    }
    lines = [f"theta: {ss.theta}  L: {ss.edge_bound}  D: {report['D']}", f"edge triples: {len(triples)}"]
    lines += [f"  {t}" for t in triples]
    return report, "\n".join(lines) + "\n"


def cmd_tangent(args) -> tuple[dict, str]:
    si = _scheme(args)
    tr = tangent_report(si)
    report = _header(si)
    report.update(
        {
            "num_vars": tr.num_vars,
            "rank": tr.rank,
            "embedding_dim": tr.embedding_dim,
            "eliminable": [str(v) for v in tr.eliminable],
            "relations": [
                {str(tr.matrix.columns[j]): c for j, c in sorted(r.items())} for r in tr.matrix.rows
            ],
        }
    )
    if args.matrix:
        with open(args.matrix, "w", encoding="utf-8") as fh:
            fh.write(tr.matrix.triplets())
    lines = [
        f"variables: {tr.num_vars}  relations: {len(tr.matrix.rows)}  rank: {tr.rank}"
        f"  embedding dimension: {tr.embedding_dim}",
        "relations:",
    ]
    for r in tr.matrix.rows:
        items = sorted(r.items())
        flip = -1 if items[0][1] < 0 else 1
        terms = [f"{'+' if c * flip > 0 else '-'} b{str(tr.matrix.columns[j])[1:]}" for j, c in items]
        lines.append("  " + " ".join(terms)[2:] + " = 0")
    lines.append("eliminable:")
    lines += [f"  {v}" for v in tr.eliminable]
    return report, "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple[dict, str]:
    try:
        data = json.loads(_read_source(args.input))
    except ValueError as exc:
        raise ConfigError(f"malformed verify input: {exc}") from None
    if not isinstance(data, dict) or "basis" not in data or "corners" not in data:
        raise ConfigError("verify input needs 'corners', 'basis' and optionally 'order'")
    corners = [[int(x) for x in c] for c in data["corners"]]
    n = int(data.get("n") or (len(corners[0]) if corners else 0))
    if not n:
        raise ConfigError("cannot infer the number of variables; give 'n'")
    ss = validate_corners(corners, n)
    spec = data.get("order", "grlex")
    order = parse_order(spec, n) if isinstance(spec, str) else MonomialOrder.from_spec(spec, n)
    basis = [parse_xpoly(b, n) if isinstance(b, str) else xpoly_from_json(b) for b in data["basis"]]
    ok, cert = is_reduced_groebner(basis, ss, order)
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "ok": ok,
        "certificate": cert,
        "basis": [format_xpoly(b, order) for b in basis],
    }
    text = "ok\n" if ok else f"not a reduced Groebner basis: {cert['failed']}\n"
    return report, text


COMMANDS = {
    "stratum": cmd_stratum,
    "family": cmd_family,
    "triples": cmd_triples,
    "tangent": cmd_tangent,
    "verify": cmd_verify,
}


# -- argument parsing ---------------------------------------------------------


def _positive(value: str) -> int:
    k = int(value)
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grobstrata", description="Groebner strata of monomial ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    output.add_argument("--text", metavar="OUT", help="write the text report to OUT (default: stdout)")
    output.add_argument("--threads", type=_positive, default=1, help="worker cap (the pipeline is sequential)")

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("--corners", required=True, help="FILE, JSON list, or inline '1,1,0;1,0,1'")
    problem.add_argument("--order", default="grlex", help="lex | grlex | grevlex[:priority] | matrix:rows | JSON")
    problem.add_argument("--n", type=int, help="number of variables (inferred from the corners)")

    scheme = argparse.ArgumentParser(add_help=False)
    scheme.add_argument("--mode", choices=MODES, default="full")
    scheme.add_argument("--degree-bound", type=int, help="truncation degree D (at least the required bound)")
    scheme.add_argument("--dset", help="allowed non-leading exponents for type mode")
    scheme.add_argument("--relations", choices=RELATIONS, default="closure")
    scheme.add_argument("--nu-rule", choices=("min", "max"), default="min")

    p = sub.add_parser("stratum", parents=[problem, scheme, output], help="full pipeline report")
    p.add_argument(
        "--emit",
        action="append",
        choices=("triples", "vars", "raw-gens", "ufamily", "substitutions"),
        help="extra sections in the JSON report (repeatable)",
    )
    p.add_argument("--spot-check", type=int, default=0, metavar="K", help="oracle check at K random points")
    p.add_argument("--seed", type=int, default=0)
    sub.add_parser("family", parents=[problem, scheme, output], help="universal family after elimination")
    sub.add_parser("triples", parents=[problem, output], help="edge triples and bounds")
    p = sub.add_parser("tangent", parents=[problem, scheme, output], help="tangent relations and rank")
    p.add_argument("--matrix", metavar="FILE", help="dump the relation matrix as sparse triplets")
    p = sub.add_parser("verify", parents=[output], help="check a basis with Buchberger's criterion")
    p.add_argument("input", help="FILE or JSON {order, corners, basis}")
    return parser


def _write(path: str, content: str) -> None:
    if path == "-":
        sys.stdout.write(content)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, text = COMMANDS[args.command](args)
    except GrobstrataError as exc:
        print(f"grobstrata: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except RecursionError:
        print("grobstrata: error: recursion limit exceeded", file=sys.stderr)
        return 10
    if args.json:
        _write(args.json, json.dumps(report, indent=2) + "\n")
    if args.text or not args.json:
        _write(args.text or "-", text)
    if args.command == "verify" and not report["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
