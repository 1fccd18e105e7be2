"""Command-line interface: ``colorsuper <group> <command> [options]``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import color_algebra as ca
from .coset_realization import WeightData, realize_singular, rewrite_in_psi_theta
from .enveloping import defining_engine, rotated_engine
from .grassmann_calc import check_zeta_oracle, verify_grassmann_realization
from .scalars import Scalar
from .singular import (
    classify_singular_symbolic, default_max_level, find_singular_numeric, grid_values, scan_grid,
)
from .verma import BasisKet, VermaVector, act, ket

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def rational(text: str) -> Fraction:
    if not _RATIONAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3 or -2/5, got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from None


def ket_arg(text: str) -> BasisKet:
    try:
        k, mu, nu = (int(t) for t in text.split(","))
        return ket(k, mu, nu)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k,mu,nu with mu, nu in {{0,1}}, got {text!r}") from None


def grid_arg(text: str) -> tuple:
    m = re.match(r"^(-?\d+)\.\.(-?\d+)$", text.strip())
    if not m or int(m[1]) > int(m[2]):
        raise argparse.ArgumentTypeError(f"expected a range like -5..5, got {text!r}")
    return int(m[1]), int(m[2])


def signature_arg(text: str) -> tuple:
    try:
        p, q = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p,q, got {text!r}") from None
    if p < 0 or q < 0 or p + q != 2:
        raise argparse.ArgumentTypeError("signature must satisfy p + q = 2")
    return p, q


def level_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer level, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("level must be >= 1")
    return v


def _ftext(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _table(rows, out) -> None:
    width = max((len(r[0]) for r in rows), default=0)
    for name, value in rows:
        out.write(f"{name.ljust(width)}  {value}\n")


# ---------------------------------------------------------------------------
# handlers; each returns an exit code

def cmd_algebra_check(args, out) -> int:
    rep = ca.check_axioms()
    inv = ca.check_anti_involution()
    inv_new = ca.check_anti_involution(ca.NEW_BASIS)
    try:
        ca.build_new_basis()
        basis_ok, basis_err = True, ""
    except ca.RelationMismatch as exc:
        basis_ok, basis_err = False, str(exc)
    zeta = check_zeta_oracle()
    ok = rep.ok and inv.ok and inv_new.ok and basis_ok and zeta.ok
    if args.json:
        _emit({
            "pairs_checked": rep.pairs_checked,
            "triples_checked": rep.triples_checked,
            "violations": [list(v) for v in rep.violations()],
            "anti_involution": {"pairs_checked": inv.pairs_checked + inv_new.pairs_checked,
                                "ok": inv.ok and inv_new.ok},
            "rotated_basis": {"ok": basis_ok, "error": basis_err},
            "clifford_zeta_oracle": {"pairs_checked": zeta.pairs_checked, "ok": zeta.ok},
            "ok": ok,
        }, out)
        return 0 if ok else 1
    _table([
        ("pairs checked", rep.pairs_checked),
        ("closure violations", len(rep.closure)),
        ("antisymmetry violations", len(rep.antisymmetry)),
        ("Jacobi violations", len(rep.jacobi)),
        ("anti-involution pairs", f"{inv.pairs_checked + inv_new.pairs_checked} "
                                  f"({'ok' if inv.ok and inv_new.ok else 'FAILED'})"),
        ("rotated basis relations", "ok" if basis_ok else f"FAILED: {basis_err}"),
        ("Cl(1,1) zeta oracle pairs", f"{zeta.pairs_checked} ({'ok' if zeta.ok else 'FAILED'})"),
    ], out)
    for v in rep.violations():
        out.write("violation: " + " ".join(v) + "\n")
    if rep.ok:
        out.write(f"{rep.triples_checked} Jacobi triples verified\n")
    return 0 if ok else 1


def cmd_algebra_table(args, out) -> int:
    table = ca.rotated_table() if args.basis == "rotated" else ca.default_table()
    if args.format == "json":
        _emit(table.to_json(), out)
        return 0
    rows = []
    for (x, y), v in sorted(table.items()):
        rows.append((f"[[{x.name}, {y.name}]]", str(v)))
    _table(rows, out)
    return 0


def cmd_straighten(args, out) -> int:
    eng = rotated_engine() if args.basis == "rotated" else defining_engine()
    try:
        nf = eng.straighten(args.word)
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.json:
        _emit({
            "word": args.word,
            "order": " ".join(g.name for g in eng.order),
            "terms": [{"monomial": nf.monomial_str(m), "coefficient": c.to_text()} for m, c in nf.sorted_terms()],
        }, out)
    else:
        out.write(f"{nf}\n")
    return 0


def _weights(args):
    h = Scalar.h() if args.h is None else Scalar(args.h)
    f = Scalar.f() if args.f is None else Scalar(args.f)
    return h, f


def cmd_verma_act(args, out) -> int:
    h, f = _weights(args)
    try:
        v = act(args.gen, VermaVector({args.ket: 1}), h, f)
    except KeyError as exc:
        sys.stderr.write(f"error: unknown generator {exc}\n")
        return 2
    if args.json:
        _emit({"generator": args.gen, "ket": list(args.ket), "result": v.to_json()}, out)
    else:
        out.write(f"{args.gen} {args.ket} = {v}\n")
    return 0


def cmd_singular_scan(args, out) -> int:
    lo, hi = args.grid
    values = grid_values(lo, hi)
    points = scan_grid(values, args.max_level, complete=args.complete, workers=args.workers)
    if args.plot:
        from .plotting import plot_reducibility

        plot_reducibility(points, args.plot, title=f"grid {lo}..{hi}, levels <= {args.max_level}")
    bad = [p for p in points if not (p.agrees and p.criterion_agrees)]
    if args.json:
        shown = points if args.all else [p for p in points if p.report.entries or not p.agrees]
        _emit([p.to_json() for p in shown], out)
    else:
        rows = []
        for p in points:
            if not p.report.entries and p.agrees:
                continue
            vecs = "; ".join(f"level {e.level}: {e.vector}" for e in p.report.entries) or "none"
            flag = "" if p.agrees else "   <-- classifier predicts: " + (
                "; ".join(f"level {m}: {v}" for m, v in p.expected) or "none")
            rows.append((f"h={_ftext(p.h0)}, f={_ftext(p.f0)}", vecs + flag))
        _table(rows, out)
        out.write(f"{len(points)} points scanned, {sum(1 for p in points if p.report.entries)} reducible, "
                  f"{len(bad)} disagreements\n")
    return 0 if not bad else 1


def cmd_singular_classify(args, out) -> int:
    fams = classify_singular_symbolic(args.max_level, complete=args.complete)
    if args.json:
        _emit([f.to_json() for f in fams], out)
    else:
        _table([(f"level {f.level}", f"{f.conditions_text()}: {f.vector}") for f in fams], out)
    return 0


def _operator_json(op, scale=None) -> dict:
    d = op.to_json()
    if scale is not None:
        d["scale"] = scale
    return d


def cmd_pde_derive(args, out) -> int:
    from .coset_realization import final_equation, proportionality, proposition_operator

    results = []
    if args.symbolic:
        fam = args.family
        n = args.n
        if fam == 3 and (n is None or n < 1):
            sys.stderr.write("error: --symbolic family 3 needs --n >= 1\n")
            return 2
        pm = proposition_operator(fam, n)
        pt = rewrite_in_psi_theta(pm)
        lam = proportionality(pt, final_equation(fam, n))
        results.append({"label": f"family {fam}" + (f", n={n}" if fam == 3 else ""), "pm": pm, "pt": pt,
                        "scale": lam})
    else:
        if args.h is None or args.f is None:
            sys.stderr.write("error: give --h and --f, or --symbolic\n")
            return 2
        rep = find_singular_numeric(args.h, args.f, args.max_level)
        w = WeightData.of(args.h, args.f)
        for e in rep.entries:
            pm = realize_singular(e.vector, w)
            results.append({"label": f"level {e.level}: {e.vector}", "pm": pm, "pt": rewrite_in_psi_theta(pm),
                            "scale": None})
    if args.json:
        _emit([
            {
                "label": r["label"],
                "pm": _operator_json(r["pm"]),
                "pt": _operator_json(r["pt"]),
                "scale_to_reference_form": None if r["scale"] is None else r["scale"].to_text(),
            }
            for r in results
        ], out)
        return 0
    if not results:
        out.write(f"no singular vector up to level {args.max_level} at h={_ftext(args.h)}, "
                  f"f={_ftext(args.f)}\n")
        return 0
    for r in results:
        out.write(f"{r['label']}\n")
        _table([("  (x, psi+, psi-)", str(r["pm"])), ("  (x, psi, theta)", str(r["pt"]))], out)
        if r["scale"] is not None:
            out.write(f"  rewritten operator = {r['scale']} x reference form\n")
    return 0


def cmd_grassmann_verify(args, out) -> int:
    rep = verify_grassmann_realization(args.signature)
    if args.json:
        _emit({"signature": list(rep.signature), "pairs_checked": rep.pairs_checked,
               "violations": [[str(a[0]), a[1], str(b[0]), b[1]] for a, b, _ in rep.violations],
               "ok": rep.ok}, out)
    else:
        _table([("signature", f"Cl{rep.signature}"), ("pairs checked", rep.pairs_checked),
                ("violations", len(rep.violations))], out)
        for a, b, _ in rep.violations:
            out.write(f"violation: zeta_({a[0]},{a[1]}) with zeta_({b[0]},{b[1]})\n")
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colorsuper", description="Exact computations for the Z2xZ2 graded "
                                "color superalgebra, its Verma modules and invariant equations.")
    sub = p.add_subparsers(dest="group", required=True)

    alg = sub.add_parser("algebra", help="structure table checks").add_subparsers(dest="command", required=True)
    c = alg.add_parser("check", help="closure, antisymmetry, Jacobi, anti-involution, rotated basis")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_algebra_check)
    c = alg.add_parser("table", help="dump the structure table")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--basis", choices=("defining", "rotated"), default="defining")
    c.set_defaults(func=cmd_algebra_table)

    c = sub.add_parser("straighten", help="normal form of a word in U(g)")
    c.add_argument("word", help='whitespace-separated generators, e.g. "c+ A+^2"')
    c.add_argument("--basis", choices=("rotated", "defining"), default="rotated")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_straighten)

    vm = sub.add_parser("verma", help="Verma module actions").add_subparsers(dest="command", required=True)
    c = vm.add_parser("act", help="act with a generator on a basis ket")
    c.add_argument("--gen", required=True)
    c.add_argument("--ket", type=ket_arg, required=True, help="k,mu,nu")
    c.add_argument("--h", type=rational)
    c.add_argument("--f", type=rational)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_verma_act)

    sg = sub.add_parser("singular", help="singular vectors").add_subparsers(dest="command", required=True)
    c = sg.add_parser("scan", help="numeric search over a rational grid")
    c.add_argument("--grid", type=grid_arg, default=(-5, 5), help="numerator/denominator range, e.g. -5..5")
    c.add_argument("--max-level", type=level_arg, default=None)
    c.add_argument("--complete", action="store_true", help="compare with the classifier's complete mode")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--all", action="store_true", help="with --json, include points without singular vectors")
    c.add_argument("--plot", metavar="PNG", help="write a reducibility figure")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_singular_scan)
    c = sg.add_parser("classify", help="symbolic classification by level")
    c.add_argument("--max-level", type=level_arg, default=None)
    c.add_argument("--complete", action="store_true", help="also solve the branch the ansatz normalizes away")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_singular_classify)

    pde = sub.add_parser("pde", help="invariant differential equations").add_subparsers(dest="command",
                                                                                         required=True)
    c = pde.add_parser("derive", help="operators of the singular vectors in both charts")
    c.add_argument("--h", type=rational)
    c.add_argument("--f", type=rational)
    c.add_argument("--symbolic", action="store_true")
    c.add_argument("--family", type=int, choices=(1, 2, 3), default=3)
    c.add_argument("--n", type=int)
    c.add_argument("--max-level", type=level_arg, default=None)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_pde_derive)

    gr = sub.add_parser("grassmann", help="graded Grassmann numbers").add_subparsers(dest="command",
                                                                                     required=True)
    c = gr.add_parser("verify", help="check the Clifford (x) Grassmann realization")
    c.add_argument("--signature", type=signature_arg, default=(1, 1), help="p,q with p + q = 2")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_grassmann_verify)
    return p


def _join_ranges(argv: list) -> list:
    # argparse reads "-3..3" as an option flag
    out = []
    for a in argv:
        if out and out[-1] == "--grid" and re.match(r"^-\d", a):
            out[-1] = f"--grid={a}"
        else:
            out.append(a)
    return out


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _join_ranges(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_level", None) is None and hasattr(args, "max_level"):
        args.max_level = default_max_level()
    return args.func(args, out)


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
