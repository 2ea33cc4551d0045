"""Command line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from . import cohomology as coh
from . import invariants as inv
from . import liesuper as ls
from . import smodule as sm
from . import varieties as var
from . import weights as wt


class UsageError(Exception):
    pass


def _frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build_algebra(family: str, n: int, m: Optional[int]) -> ls.LieSuperalgebra:
    fam = family.lower()
    try:
        if fam == "w":
            return ls.construct_W(n)
        if fam == "s":
            return ls.construct_S(n)
        if fam == "sbar":
            return ls.construct_Sbar(n)
        if fam == "glmn":
            if m is None:
                raise UsageError("--m is required for glmn")
            return ls.construct_gl_super(m, n)
    except ls.InvalidRank as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown family {family!r}")


def build_pair(family: str, n: int, m: Optional[int], sub: str) -> Tuple[ls.LieSuperalgebra, ls.SubalgebraSpec]:
    g = build_algebra(family, n, m)
    fam = family.lower()
    if sub == "g0":
        return g, ls.degree_zero_subalgebra(g)
    if sub == "zero":
        return g, ls.zero_subalgebra(g)
    if sub == "h":
        return g, ls.cartan_subalgebra(g)
    if sub in ("e", "a"):
        if fam == "sbar":
            if n < 3:
                raise UsageError("detecting subalgebras need n >= 3")
            e, a = ls.detecting_subalgebra_sbar(n)
            return ls.subalgebra_pair(e if sub == "e" else a)
        if fam == "glmn" and sub == "e":
            return ls.subalgebra_pair(ls.detecting_subalgebra_gl(m, n, min(m, n)))
        raise UsageError(f"--sub {sub} is not available for family {family}")
    raise UsageError(f"unknown subalgebra {sub!r}")


def _split_args(s: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return [x.strip() for x in out]


def build_module(expr: str, g: ls.LieSuperalgebra) -> sm.SuperModule:
    expr = expr.strip()
    if expr == "trivial":
        return sm.trivial(g)
    if expr == "adjoint":
        return sm.adjoint(g)
    if expr.startswith("kac:"):
        if g.meta.get("family") != "Sbar":
            raise UsageError("kac coefficients need --family sbar with --sub g0 or h or zero")
        try:
            a = int(expr[4:])
        except ValueError:
            raise UsageError(f"bad Kac parameter in {expr!r}") from None
        return sm.kac_module_sigma(g.meta["n"], a)
    if expr.startswith("file:"):
        path = expr[5:]
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
        return sm.SuperModule.from_json(data, g, name=os.path.basename(path))
    if expr.startswith("dual(") and expr.endswith(")"):
        return sm.dual(build_module(expr[5:-1], g))
    if expr.startswith("tensor(") and expr.endswith(")"):
        parts = _split_args(expr[7:-1])
        if len(parts) != 2:
            raise UsageError("tensor(...) takes two arguments")
        return sm.tensor(build_module(parts[0], g), build_module(parts[1], g))
    raise UsageError(f"cannot parse coefficients {expr!r}")


def _emit(obj: dict, fmt: str, table: Optional[List[List]] = None, md: Optional[str] = None) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        rows = table or [[k, json.dumps(v, sort_keys=True)] for k, v in sorted(obj.items())]
        return "\n".join(",".join(str(c) for c in r) for r in rows) + "\n"
    if md is not None:
        return md
    rows = table or [[k, json.dumps(v, sort_keys=True)] for k, v in sorted(obj.items())]
    head, body = rows[0], rows[1:]
    lines = ["| " + " | ".join(map(str, head)) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join(map(str, r)) + " |" for r in body]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_algebra(args) -> Tuple[int, str]:
    if args.action == "build":
        g = build_algebra(args.family, args.n, args.m)
        obj = dict(g.to_json(), schema="1", name=g.name)
        table = [["index", "label", "degree", "parity"]] + \
            [[i, b.label, b.degree, b.parity] for i, b in enumerate(g.space.basis)]
        return 0, _emit(obj, args.format, table)
    if args.file:
        with open(args.file) as fh:
            g = ls.LieSuperalgebra.from_json(json.load(fh), name=os.path.basename(args.file))
    else:
        g = build_algebra(args.family, args.n, args.m)
    rep = ls.validate(g)
    obj = {"schema": "1", "algebra": g.name, "ok": rep.ok, "checked": rep.checked,
           "violations": rep.violations, "graded_dims": {str(k): v for k, v in g.graded_dims().items()}}
    return (0 if rep.ok else 1), _emit(obj, args.format)


def _table_out(tab: coh.PoincareTable, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(tab.to_json(), sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        return tab.to_csv()
    return tab.to_markdown()


def cmd_cohomology(args) -> Tuple[int, str]:
    g, t = build_pair(args.family, args.n, args.m, args.sub)
    M = build_module(args.coeff, g)
    pair = f"{args.family.lower()}({args.n}),{args.sub}"
    tab = coh.cohomology_dims(g, t, M, args.pmax, pair=pair, coeff=args.coeff)
    return 0, _table_out(tab, args.format)


def cmd_ext(args) -> Tuple[int, str]:
    g, t = build_pair(args.family, args.n, args.m, args.sub)
    M = build_module(args.coeff, g)
    N = build_module(args.coeff2 or args.coeff, g)
    pair = f"{args.family.lower()}({args.n}),{args.sub}"
    tab = coh.ext_dims(g, t, M, N, args.pmax, pair=pair)
    tab.coeff = f"Ext({args.coeff},{args.coeff2 or args.coeff})"
    return 0, _table_out(tab, args.format)


def cmd_invariants(args) -> Tuple[int, str]:
    n = args.n
    g = ls.construct_Sbar(n)
    brute = [inv.invariant_dim_bruteforce(g, p) for p in range(args.pmax + 1)]
    names, weights = inv.a1_torus_weights(n)
    torus = [inv.format_monomial(e, names) for e in inv.torus_invariants(weights, args.pmax)]
    sym = inv.symmetric_invariants(n, args.pmax)
    obj = {"schema": "1", "n": n, "p_max": args.pmax, "bruteforce": brute,
           "a1_variables": names, "a1_weights": [[_frac_str(x) for x in w] for w in weights],
           "torus_invariants": torus, "generator_degrees": sym.generator_degrees,
           "hilbert_series": sym.series.coefficients}
    table = [["p", "bruteforce", "hilbert"]] + [[p, b, h] for p, (b, h) in enumerate(zip(brute, sym.series.coefficients))]
    return 0, _emit(obj, args.format, table)


def cmd_crosscheck(args) -> Tuple[int, str]:
    if args.n < 3:
        raise UsageError("crosscheck needs n >= 3")
    rep = inv.crosscheck_iso(args.n, args.pmax)
    table = [["p", "cohomology", "bruteforce", "hilbert"]] + \
        [[p, a, b, c] for p, (a, b, c) in enumerate(zip(rep.cohomology, rep.bruteforce, rep.hilbert))]
    return (0 if rep.agree else 1), _emit(rep.to_json(), args.format, table)


def cmd_typicality(args) -> Tuple[int, str]:
    lam = wt.parse_weight(args.weight)
    if args.n is not None and len(lam) != args.n:
        raise UsageError(f"weight has {len(lam)} entries, --n is {args.n}")
    fam = args.family.lower()
    if fam not in ("sbar", "w"):
        raise UsageError("typicality is defined for --family sbar or w")
    atyp = wt.is_atypical_Sbar(lam) if fam == "sbar" else wt.is_atypical_W(lam)
    obj = {"schema": "1", "family": fam, "weight": [_frac_str(x) for x in lam],
           "verdict": "atypical" if atyp else "typical",
           "atypical_W": wt.is_atypical_W(lam), "atypical_Sbar": wt.is_atypical_Sbar(lam),
           "omega_forms": [[i, _frac_str(a), _frac_str(b)] for i, a, b in wt.omega_forms(lam)],
           "dominant": wt.is_dominant(lam)}
    if obj["dominant"]:
        obj["atypical_dominant_form"] = wt.atypical_dominant_form(lam)
    try:
        a, bar = wt.sigma_shift(lam)
        obj["sigma_shift"] = {"a": _frac_str(a), "bar": [_frac_str(x) for x in bar]}
    except (wt.IsSigmaMultiple, wt.NotAtypical) as exc:
        obj["sigma_shift"] = type(exc).__name__
    return 0, _emit(obj, args.format)


def cmd_support(args) -> Tuple[int, str]:
    lam = wt.parse_weight(args.weight)
    try:
        if args.which == "simple":
            d = var.support_simple(args.family, args.n, lam)
        else:
            d = var.support_kac(args.family, args.n, lam)
    except (wt.NotDominant, var.Unsupported, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return 0, _emit(d.to_json(), args.format)


def _rank_module(args) -> sm.SuperModule:
    e, _ = ls.detecting_subalgebra_sbar(args.n)
    if args.module == "trivial":
        return sm.trivial(ls.restrict(e))
    if args.module == "free":
        return sm.free_e_module(e)
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
    except ValueError:
        raise UsageError("--dims takes two integers, e.g. 2,2") from None
    if len(dims) != 2:
        raise UsageError("--dims takes two integers, e.g. 2,2")
    return sm.random_e_module(e, dims, args.seed)


def cmd_rankvariety(args) -> Tuple[int, str]:
    if args.n < 3:
        raise UsageError("rank varieties need n >= 3")
    M = _rank_module(args)
    d = var.rank_variety_sample(M, count=args.points, seed=args.seed)
    obj = d.to_json()
    obj["module_dims"] = list(M.dims)
    obj["consistent_with"] = [k for k in (var.ZERO_POINT, var.FULL_AFFINE) if d.consistent_with(k)]
    table = [["coords", "projective"]] + [[" ".join(c["coords"]), c["projective"]] for c in obj["points"]]
    return 0, _emit(obj, args.format, table)


def cmd_report(args) -> Tuple[int, str]:
    """Run the standard battery and write one file per item into --outdir."""
    outdir = args.outdir
    os.makedirs(outdir, exist_ok=True)
    status = 0
    items = []

    def put(name: str, code: int, text: str):
        nonlocal status
        status = max(status, code)
        with open(os.path.join(outdir, name), "w") as fh:
            fh.write(text)
        items.append({"file": name, "exit": code})

    N = args.n
    if N < 3:
        raise UsageError("report all needs --n >= 3")
    for fam, n, m in (("W", N, None), ("S", N, None), ("Sbar", N, None), ("glmn", 1, 1), ("glmn", 1, 2)):
        ns = argparse.Namespace(action="validate", family=fam, n=n, m=m, file=None, format="json")
        put(f"validate_{fam}{m or ''}{n}.json", *cmd_algebra(ns))
    P = 6 if N == 3 else 4
    runs = [("Sbar", N, None, "g0", "trivial", P), ("Sbar", N, None, "e", "trivial", 4),
            ("glmn", 1, 1, "g0", "trivial", 4)]
    for fam, n, m, sub, cf, P in runs:
        ns = argparse.Namespace(family=fam, n=n, m=m, sub=sub, coeff=cf, pmax=P, format=args.format)
        put(f"cohomology_{fam}{n}_{sub}_{cf}.{args.format}", *cmd_cohomology(ns))
    ns = argparse.Namespace(family="Sbar", n=3, m=None, sub="g0", coeff="kac:0", coeff2="kac:0", pmax=4, format=args.format)
    put(f"ext_Sbar3_kac0.{args.format}", *cmd_ext(ns))
    ns = argparse.Namespace(n=N, pmax=P, format=args.format)
    put(f"crosscheck_{N}.{args.format}", *cmd_crosscheck(ns))
    put(f"invariants_{N}.{args.format}", *cmd_invariants(ns))
    typical = ",".join(str(N - 1 - i) for i in range(N))
    for lam in (typical, ",".join(["2"] * N), ",".join(["1"] * (N - 1) + ["0"])):
        ns = argparse.Namespace(weight=lam, family="sbar", n=N, format=args.format)
        put(f"typicality_{lam.replace(',', '_')}.{args.format}", *cmd_typicality(ns))
        for which in ("simple", "kac"):
            ns = argparse.Namespace(which=which, family="sbar", n=N, weight=lam, format=args.format)
            put(f"support_{which}_{lam.replace(',', '_')}.{args.format}", *cmd_support(ns))
    for module in ("random", "free", "trivial"):
        ns = argparse.Namespace(n=N, module=module, dims="2,2", seed=args.seed, points=20, format=args.format)
        put(f"rankvariety_{N}_{module}.{args.format}", *cmd_rankvariety(ns))
    summary = {"schema": "1", "outdir": outdir, "items": items, "status": status}
    return status, json.dumps(summary, sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, need_family: bool = True):
    if need_family:
        p.add_argument("--family", default="Sbar", type=str.lower, choices=["w", "s", "sbar", "glmn"])
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--m", type=int, default=None)
    p.add_argument("--format", default="json", choices=["json", "csv", "md"])
    p.add_argument("--seed", type=int, default=0)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="supercoh", description="Relative cohomology of Lie superalgebras")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("algebra", help="build or validate an algebra")
    p.add_argument("action", choices=["build", "validate"])
    p.add_argument("--file", default=None, help="algebra JSON to validate")
    _common(p)
    p.set_defaults(func=cmd_algebra)

    for name, func in (("cohomology", cmd_cohomology), ("ext", cmd_ext)):
        p = sub.add_parser(name)
        _common(p)
        p.add_argument("--sub", default="g0", choices=["g0", "e", "a", "h", "zero"])
        p.add_argument("--coeff", default="trivial")
        if name == "ext":
            p.add_argument("--coeff2", default=None, help="second module (default: same as --coeff)")
        p.add_argument("--pmax", type=int, required=True)
        p.set_defaults(func=func)

    for name, func in (("invariants", cmd_invariants), ("crosscheck", cmd_crosscheck)):
        p = sub.add_parser(name)
        _common(p, need_family=False)
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--pmax", type=int, default=6)
        p.set_defaults(func=func)

    p = sub.add_parser("typicality")
    _common(p, need_family=False)
    p.add_argument("--family", default="sbar", type=str.lower, choices=["w", "sbar"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--weight", required=True, help="comma separated, e.g. 2,1,0")
    p.set_defaults(func=cmd_typicality)

    p = sub.add_parser("support")
    p.add_argument("which", choices=["simple", "kac"])
    _common(p)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("rankvariety")
    _common(p, need_family=False)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--module", default="random", choices=["random", "free", "trivial"])
    p.add_argument("--dims", default="2,2")
    p.add_argument("--points", type=int, default=50)
    p.set_defaults(func=cmd_rankvariety)

    p = sub.add_parser("report")
    p.add_argument("which", choices=["all"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--outdir", default="report")
    p.add_argument("--format", default="json", choices=["json", "csv", "md"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    if getattr(args, "pmax", 0) is not None and getattr(args, "pmax", 0) < 0:
        ap.error("--pmax must be >= 0")
    try:
        code, text = args.func(args)
    except UsageError as exc:
        print(f"supercoh: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
