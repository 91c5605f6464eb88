"""
Command-line interface. Every command prints one JSON report on stdout
(``dims`` can also emit CSV). Failures print a JSON error object and exit 1.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import dominance, freejordan, garland, homology, jordan, partitions, tkk, weyl
from .exactlin import format_rational, to_rational

__all__ = ["main", "run", "load_algebra", "build_parser"]


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


# ---------------------------------------------------------------------------
# inputs

def load_algebra(spec: str) -> jordan.JordanAlgebra:
    """A JSON file path, or a fixture ``name[:p1[:p2]]`` (field, truncpoly:N,
    sym:n, albert, free:D:N)."""
    if os.path.exists(spec):
        return jordan.JordanAlgebra.load(spec)
    name, *params = spec.split(":")
    try:
        return jordan.fixture(name, *(int(p) for p in params))
    except ValueError as exc:
        raise CLIError(f"cannot load algebra {spec!r}: {exc}") from None


def load_jspace(J: jordan.JordanAlgebra, path: str) -> dominance.JSpace:
    """JSON ``{"rho": [matrix per basis vector]}`` with entries like "1/2"."""
    with open(path) as fh:
        data = json.load(fh)
    rho = [np.array([[to_rational(x) for x in row] for row in m], dtype=object) for m in data["rho"]]
    return dominance.make_jspace(J, rho)


def parse_polynomial(text: str, var: str = "t") -> list[Fraction]:
    """Coefficients (constant term first) of a polynomial in one variable."""
    import sympy

    t = sympy.Symbol(var)
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={var: t})
        poly = sympy.Poly(expr, t)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
        raise CLIError(f"cannot parse polynomial {text!r}: {exc}") from None
    if poly.free_symbols - {t}:
        raise CLIError(f"polynomial {text!r} has other variables")
    coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
              for c in reversed(poly.all_coeffs())]
    return coeffs


def _dims_table(d: dict) -> list[dict]:
    return [{"d": k[0], "w": k[1], "dim": v} for k, v in sorted(d.items())]


# ---------------------------------------------------------------------------
# commands

def cmd_dims(args):
    rows = freejordan.dimension_table(args.gens, args.max_degree)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["degree", "monomials", "relations", "dim"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    return {"statement": "free-jordan-dimensions", "rows": rows}


def cmd_validate(args):
    J = load_algebra(args.algebra)
    rep = jordan.validate(J)
    return {"statement": "jordan-axioms", "dim": J.dim, "ok": rep.ok,
            "violation": rep.violation, "checks": rep.checks}


def cmd_tkk(args):
    J = load_algebra(args.algebra)
    G = tkk.build(J, central=not args.no_central, check=args.action == "jacobi")
    out = {"statement": "central-extension" if G.central else "tkk-construction",
           "dim": G.dim, "J_dim": J.dim, "extra_dim": G.extra_dim, "central": G.central}
    if args.action == "jacobi":
        bad = G.jacobi_violation()
        out["statement"] = "jacobi-identity"
        out["jacobi"] = bad is None
        out["violation"] = None if bad is None else list(bad)
    if G.central:
        out["cube_wedges_vanish"] = all(
            G.central_term.contains_cube_wedge(J.basis_vector(i)) for i in range(J.dim))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(G.to_json())
        out["written"] = args.out
    return out


def cmd_partitions(args):
    rows = []
    for n in range(1, args.n + 1):
        rows.append({"n": n, "girard_newton": partitions.verify_girard_newton(n)})
    try:
        partitions.exp_series_coefficients(args.n)
        series = True
    except AssertionError:
        series = False
    ok = series and all(r["girard_newton"] for r in rows)
    return {"statement": "girard-newton-and-series", "n": args.n, "rows": rows,
            "series_identity": series, "ok": ok}


def cmd_garland(args):
    a = parse_polynomial(args.elem)
    rep = garland.verify_garland(args.nmax, a, args.M)
    out = {"statement": "garland-formula"}
    out.update(rep.to_dict())
    return out


def _jspace_from_args(J, args) -> dominance.JSpace:
    if args.jspace:
        return load_jspace(J, args.jspace)
    if args.regular:
        return dominance.regular_jspace(J)
    if args.scalar is not None:
        return dominance.scalar_jspace(J, to_rational(args.scalar))
    n = args.trivial if args.trivial is not None else args.level
    return dominance.trivial_jspace(J, 1 if n is None else n)


def cmd_dominance(args):
    J = load_algebra(args.algebra)
    if args.action == "envelope":
        U = dominance.un_truncated(J, 1 if args.level is None else args.level, cap=args.cap)
        out = {"statement": "level-n-envelope"}
        out.update(U.to_dict())
        return out
    V = _jspace_from_args(J, args)
    if args.level is not None and V.level != args.level:
        raise CLIError(f"J-space has level {format_rational(V.level)}, not {args.level}")
    res = dominance.is_dominant(V, mode=args.mode, trials=args.trials, seed=args.seed)
    out = {"statement": "dominance-criterion", "level": format_rational(V.level), "V_dim": V.dim}
    out.update(res.to_dict())
    if args.embedding:
        Z = weyl.top_kernel(V)
        out["top_embeds"] = Z.dim == 0
    return out


def cmd_weyl(args):
    J = load_algebra(args.algebra)
    W = weyl.weyl_delta_n(J, args.level, check=args.check)
    out = {"statement": "weyl-module", "level": args.level}
    out.update(W.to_dict())
    out["smoothness"] = weyl.smoothness_witness(W).to_dict()
    if args.standard:
        S = weyl.standard_module(W)
        inv = S.e_invariants()
        out["standard"] = {"dims": {str(w): S.dims[w] for w in sorted(S.dims, reverse=True)},
                           "socle": {str(w): v for w, v in sorted(inv.items(), reverse=True)},
                           "socle_simple": inv == {args.level: 1}}
    return out


def cmd_homology(args):
    J = load_algebra(args.algebra)
    u = homology.positive_part_of(J, central=not args.no_central)
    M = homology.parse_coefficients(args.coeff)
    max_degree = args.max_degree
    if max_degree is None:
        max_degree = (max(J.grading) if J.grading else 1) * max(args.k, 1)
    base = {"k": args.k, "coeff": f"L({M.n})" if M.n else "K", "max_degree": max_degree,
            "u_dim": u.dim}
    if args.relative:
        dims = homology.relative_homology(u, M, args.k, max_degree, args.max_block)
        out = {"statement": "relative-homology", **base,
               "dims": {str(d): v for d, v in sorted(dims.items())}, "total": sum(dims.values())}
        return out
    tab = homology.ce_homology(u, M, args.k, max_degree, args.max_block)
    iso = {}
    for d in sorted({d for d, _ in tab}):
        iso[str(d)] = {f"L({w})": m for w, m in homology.isotypic_decomposition(
            homology.by_weight(tab, d)).items()}
    return {"statement": "ce-homology", **base, "table": _dims_table(tab),
            "total": sum(tab.values()), "isotypic": iso}


def cmd_topcycles(args):
    J = load_algebra(args.algebra)
    rep = homology.top_cycle_relations(J, args.k, samples=args.samples, seed=args.seed)
    return {"statement": "top-cycle-relations", **rep.to_dict()}


def _export(J, args, tag):
    text = J.to_json()
    out = {"statement": tag, "dim": J.dim}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        out["written"] = args.out
    else:
        out["algebra"] = json.loads(text)
    return out


def cmd_albert(args):
    J = jordan.albert_algebra()
    out = _export(J, args, "albert-algebra")
    if args.check:
        out["valid"] = jordan.validate(J).ok
    return out


def cmd_export(args):
    return _export(load_algebra(args.fixture), args, "fixture-export")


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jordan-tkk", description="Jordan algebras, TKK algebras and their modules.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="embed wall time in the report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("dims", help="dimensions of free Jordan algebras")
    s.add_argument("--gens", type=int, required=True)
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("validate", help="check the Jordan axioms")
    s.add_argument("--algebra", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("tkk", help="build sl2^(J) or TKK(J)")
    s.add_argument("action", choices=["build", "jacobi"])
    s.add_argument("--algebra", required=True)
    s.add_argument("--no-central", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_tkk)

    s = sub.add_parser("partitions", help="partition identities")
    s.add_argument("action", choices=["verify"])
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("garland", help="Garland's formula in U(sl2[t])")
    s.add_argument("action", choices=["verify"])
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--elem", default="t")
    s.add_argument("--M", type=int)
    s.set_defaults(func=cmd_garland)

    s = sub.add_parser("dominance", help="dominance of J-spaces and level-n envelopes")
    s.add_argument("action", choices=["check", "envelope"])
    s.add_argument("--algebra", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--jspace")
    g.add_argument("--regular", action="store_true")
    g.add_argument("--trivial", type=int)
    g.add_argument("--scalar")
    s.add_argument("--mode", choices=["exact", "random"], default="exact")
    s.add_argument("--trials", type=int, default=8)
    s.add_argument("--embedding", action="store_true", help="also test V -> Delta(V)")
    s.add_argument("--level", type=int)
    s.add_argument("--cap", type=int, default=4)
    s.set_defaults(func=cmd_dominance)

    s = sub.add_parser("weyl", help="Weyl module Delta(n)")
    s.add_argument("--algebra", required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--standard", action="store_true")
    s.add_argument("--check", action="store_true", help="verify Z is a submodule")
    s.set_defaults(func=cmd_weyl)

    s = sub.add_parser("homology", help="homology of sl2^(J+)")
    s.add_argument("--algebra", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--relative", action="store_true")
    s.add_argument("--coeff", default="K")
    s.add_argument("--max-degree", type=int)
    s.add_argument("--max-block", type=int, default=20000)
    s.add_argument("--no-central", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("topcycles", help="relations among top cycles e(a_1)^...^e(a_k)")
    s.add_argument("--algebra", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--samples", type=int, default=3)
    s.set_defaults(func=cmd_topcycles)

    s = sub.add_parser("albert", help="the 27-dimensional exceptional algebra")
    s.add_argument("action", choices=["export"])
    s.add_argument("--out")
    s.add_argument("--check", action="store_true")
    s.set_defaults(func=cmd_albert)

    s = sub.add_parser("export", help="write a fixture as structure-constant JSON")
    s.add_argument("--fixture", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_export)
    return p


def _params(args) -> dict:
    skip = {"func", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns (exit status, stdout text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CLIError as exc:
        return 1, json.dumps({"error": "usage", "message": str(exc)}, indent=1) + "\n"
    t0 = time.perf_counter()
    try:
        result = args.func(args)
    except homology.BlockTooLarge as exc:
        return 1, json.dumps({"error": "resource", "message": str(exc), "block": exc.block}, indent=1) + "\n"
    except Exception as exc:  # every failure becomes a machine-readable report
        return 1, json.dumps({"error": type(exc).__name__, "message": str(exc)}, indent=1) + "\n"
    elapsed = time.perf_counter() - t0
    if isinstance(result, str):
        return 0, result
    report = {"command": args.command, **result, "params": _params(args), "seed": args.seed}
    if args.timing:
        report["wall_time_s"] = round(elapsed, 3)
    else:
        print(f"wall time {elapsed:.3f} s", file=sys.stderr)
    return 0, json.dumps(report, indent=1, default=str) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    status, text = run(argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
