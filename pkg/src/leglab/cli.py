"""Command-line front end.

Every command is a thin wrapper: it parses arguments, calls the library, and
renders a report as text, JSON or CSV.  JSON reports have the shape
{command, params, result, checks: [{name, status, details}]} and are
byte-identical for identical arguments.

Exit codes: 0 success, 1 a check failed, 2 usage or domain error,
3 a work bound would be exceeded.
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import os
import sys
from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction

from . import acceptance
from .correspondence import Mode, mutation_controls, verify_phi_identity, verify_phi_prime_identity
from .cyclotomic import CycInt
from .errors import ConsistencyError, DomainError, ResourceError
from .function_field_curve import (
    divisibility_necessary_check,
    double_of_four_torsion,
    height_gram,
    legendre_context,
    negate,
    on_curve,
    point_R,
    selmer_image,
    selmer_space,
    span_dimension,
    trace_to_level,
)
from .lfunction import (
    QMod,
    analytic_rank,
    bsd_quantities,
    lfunction_factors,
    parse_qmod,
    rank_formula,
    rank_formula_char2,
    verify_lfunction,
)
from .residue_groups import generated_subgroup, is_balanced, scan_balanced

EXIT_OK, EXIT_FALSIFIED, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    params: dict
    result: dict
    checks: list[dict] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    def check(self, name: str, ok: bool, details=None) -> None:
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "details": details})

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks)


def to_jsonable(obj):
    if isinstance(obj, (Fraction, CycInt, QMod)):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    return obj


# ---------------------------------------------------------------------------
# commands


def cmd_balanced(args) -> Report:
    if args.gens:
        gens = args.gens
    elif args.p is not None:
        gens = [args.p]
    else:
        raise DomainError("give --p or --gens")
    rep = is_balanced(args.d, generated_subgroup(args.d, gens))
    r = Report(
        "balanced",
        {"d": args.d, "gens": gens},
        {
            "balanced": rep.balanced,
            "classification": rep.classification.value,
            "subgroup": list(rep.subgroup.elements),
            "per_coset": [{"rep": a, "A": x, "B": y} for a, x, y in rep.per_coset],
        },
    )
    r.text = [
        f"<{', '.join(map(str, gens))}> mod {args.d} = {list(rep.subgroup.elements)}",
        f"balanced={str(rep.balanced).lower()} classification={rep.classification.value}",
    ]
    r.text += [f"  coset of {a}: |A|={x} |B|={y}" for a, x, y in rep.per_coset]
    return r


def cmd_lfunction(args) -> Report:
    L = lfunction_factors(args.p, args.q, args.d, args.curve)
    rank = analytic_rank(L)
    result = {
        "curve": L.curve,
        "factored": L.factored(),
        "expanded": L.expanded(),
        "degree": L.degree,
        "reduced_d": L.reduced_d,
        "analytic_rank": rank,
        "factors": [{"orbit": list(f.orbit.elements), "size": f.size, "J2": str(f.jsquared)} for f in L.factors],
    }
    r = Report("lfunction", {"p": args.p, "q": args.q, "d": args.d, "curve": args.curve, "verify": args.verify}, result)
    r.text = [f"L(T) = {L.expanded()}", f"factored: {L.factored()}", f"analytic rank {rank}"]
    if L.reduced_d > 2 and args.d % args.p:
        formula = rank_formula(args.p, args.q, args.d) if args.p != 2 else rank_formula_char2(args.q, args.d)
        r.check("rank_formula", formula.rank == rank, {"formula": formula.rank, "analytic": rank})
    if args.verify:
        if args.curve != "E":
            raise DomainError("the oracle is implemented for the curve E")
        v = verify_lfunction(args.p, args.q, args.d, args.verify, workers=args.workers)
        rows = [
            {"n": x.n, "pointcount": x.pointcount, "closed_form": x.closed_form, "log_coefficient": x.log_coefficient}
            for x in v.rows
        ]
        result["verification"] = rows
        r.check("oracle", v.ok, {"mismatches": [x.n for x in v.mismatches()]})
        r.text.append("n  pointcount  closed_form  log_coeff")
        r.text += [f"{x.n:<2d} {x.pointcount:>10d} {x.closed_form:>12d} {x.log_coefficient:>10d}" for x in v.rows]
        r.text.append("oracle OK" if v.ok else "oracle MISMATCH")
    return r


def cmd_rank(args) -> Report:
    if args.qmod is not None and args.q is not None:
        raise DomainError("give only one of --q and --qmod")
    q = parse_qmod(args.qmod) if args.qmod is not None else args.q
    if q is None:
        raise DomainError("give --q or --qmod")
    rf = rank_formula_char2(q, args.d) if args.p == 2 else rank_formula(args.p, q, args.d)
    r = Report(
        "rank",
        {"p": args.p, "q": str(q), "d": args.d},
        {"rank": rf.rank, "table": [to_jsonable(row) for row in rf.table]},
    )
    r.text = [f"rank {rf.rank}", "e  balanced  phi(e)  o_e(q)  contribution"]
    r.text += [
        f"{x.e:<3d}{str(x.balanced).lower():>9s}{x.phi:>8d}{x.order:>8d}{x.contribution:>14d}" for x in rf.table
    ]
    return r


def cmd_scan(args) -> Report:
    c = scan_balanced(args.p, args.X, workers=args.workers)
    r = Report(
        "scan",
        {"p": args.p, "X": args.X},
        {"counts": c.counts, "sporadic": c.sporadic, "classes": c.classes},
    )
    r.text = [f"p={c.p} X={c.X}"] + [f"  {k}: {v}" for k, v in c.counts.items()]
    r.text.append(f"  sporadic d: {c.sporadic}")
    return r


def cmd_points(args) -> Report:
    ctx = legendre_context(args.p, args.f, args.q)
    d = ctx.d
    R = [point_R(ctx, i) for i in range(d)]
    basis = R[: d // 2]
    images = [selmer_image(ctx, P) for P in basis]
    dim = span_dimension(images)
    G = height_gram(ctx)
    det = G.determinant()
    space = selmer_space(args.q, d)
    bsd = bsd_quantities(args.p, args.f, args.q)
    result = {
        "d": d,
        "points_verified": sum(on_curve(ctx, P) for P in basis),
        "selmer_images": {f"R_{i}": list(v) for i, v in enumerate(images)},
        "selmer_dimension": dim,
        "selmer_space": {"full": space.full, "dimension": space.dimension},
        "gram_diagonal": [str(G.entries[i][i]) for i in range(G.size)],
        "det": str(det),
        "double_P2_0": double_of_four_torsion(ctx),
        "bsd": to_jsonable(bsd),
    }
    r = Report("points", {"p": args.p, "f": args.f, "q": args.q}, result)
    r.check("on_curve", all(on_curve(ctx, P) for P in R))
    r.check("negation", all(R[(i + d // 2) % d] == negate(ctx, R[i]) for i in range(d)))
    r.check("trace_to_half_level_is_zero", all(trace_to_level(ctx, P, d // 2).is_infinity for P in R))
    r.check("selmer_dimension", dim == d // 2, {"dimension": dim})
    r.check("selmer_in_space", all(v in space for v in images))
    r.check("det_equals_disc", det == bsd.disc_Wd, {"det": str(det), "disc": bsd.disc_Wd})
    if d % 4 == 0:
        r.check("combinations_zero_selmer", divisibility_necessary_check(ctx))
    r.text = [
        f"d = {d}: {result['points_verified']} points verified, Selmer dim {dim}, det {det}, "
        f"constraint {bsd.predicted_constraint}",
        f"tau_u = {bsd.tamagawa_u}, tau_u2 = {bsd.tamagawa_u2}, disc W_d = {bsd.disc_Wd}",
        f"2*P2_0 = {result['double_P2_0']}",
    ]
    r.text += [f"  R_{i}: {''.join(map(str, v))}" for i, v in enumerate(images)]
    return r


def cmd_correspondence(args) -> Report:
    runner = verify_phi_prime_identity if args.prime else verify_phi_identity
    res = runner(
        args.p, args.q, args.d, Mode(args.mode), trials=args.trials, seed=args.seed,
        allow_p_divides_d=args.allow_p_divides_d,
    )
    controls = mutation_controls(
        args.p, args.q, args.d, prime=args.prime, seed=args.seed, allow_p_divides_d=args.allow_p_divides_d
    )
    result = {
        "map": res.name,
        "mode": res.mode.value,
        "holds": res.holds,
        "size": res.size,
        "witness": res.witness,
        "controls": {k: {"holds": v.holds, "witness": v.witness} for k, v in controls.items()},
    }
    params = {"p": args.p, "q": args.q, "d": args.d, "prime": args.prime, "mode": args.mode, "seed": args.seed}
    r = Report("correspondence", params, result)
    r.check("identity", res.holds, res.witness)
    for k, v in controls.items():
        r.check(f"control_{k}_fails", not v.holds and v.witness is not None, v.witness)
    r.text = [f"{res.name} ({res.mode.value}): {'holds' if res.holds else 'FAILS'}"]
    r.text += [f"  control {k}: {'holds' if v.holds else 'fails'}" for k, v in controls.items()]
    return r


def cmd_acceptance(args) -> Report:
    results = acceptance.run_all(args.only)
    r = Report("acceptance", {"only": args.only}, {"criteria": {str(x.number): x.title for x in results}})
    for x in results:
        r.check(f"criterion_{x.number}", x.passed, to_jsonable(x.details))
    r.text = [x.line() for x in results]
    return r


COMMANDS = {
    "balanced": cmd_balanced,
    "lfunction": cmd_lfunction,
    "rank": cmd_rank,
    "scan": cmd_scan,
    "points": cmd_points,
    "correspondence": cmd_correspondence,
    "acceptance": cmd_acceptance,
}


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json", "csv"), default="text")
    common.add_argument("--max-ops", type=_positive, help="loop bound for brute-force oracles")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=_positive, default=1)

    ap = argparse.ArgumentParser(prog="leglab", description="Legendre curve computations and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("balanced", parents=[common], help="is a subgroup of (Z/dZ)^x balanced")
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--p", type=_positive)
    s.add_argument("--gens", type=_positive, nargs="+")

    s = sub.add_parser("lfunction", parents=[common], help="factored L-function and analytic rank")
    s.add_argument("--p", type=_positive, required=True)
    s.add_argument("--q", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--curve", choices=("E", "E'"), default="E")
    s.add_argument("--verify", type=_positive, metavar="N_MAX", help="cross-check c_n for n <= N_MAX")

    s = sub.add_parser("rank", parents=[common], help="rank formula with per-divisor table")
    s.add_argument("--p", type=_positive, required=True)
    s.add_argument("--q", type=_positive)
    s.add_argument("--qmod", help="q given as 'r mod m'")
    s.add_argument("--d", type=_positive, required=True)

    s = sub.add_parser("scan", parents=[common], help="classify <p> mod d for d < X")
    s.add_argument("--p", type=_positive, required=True)
    s.add_argument("--X", type=_positive, required=True)

    s = sub.add_parser("points", parents=[common], help="explicit points, Selmer images, heights, BSD report")
    s.add_argument("--p", type=_positive, required=True)
    s.add_argument("--f", type=_positive, required=True)
    s.add_argument("--q", type=_positive, required=True)

    s = sub.add_parser("correspondence", parents=[common], help="verify the quotient-map identities")
    s.add_argument("--p", type=_positive, required=True)
    s.add_argument("--q", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--prime", action="store_true", help="use the map to E'")
    s.add_argument("--mode", choices=("symbolic", "random"), default="symbolic")
    s.add_argument("--trials", type=_positive, default=100)
    s.add_argument("--allow-p-divides-d", action="store_true")

    s = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    s.add_argument("--only", type=_positive, nargs="+", help="criterion numbers to run")
    return ap


def render(report: Report, output: str) -> str:
    if output == "json":
        doc = {
            "command": report.command,
            "params": to_jsonable(report.params),
            "result": to_jsonable(report.result),
            "checks": to_jsonable(report.checks),
        }
        return json.dumps(doc, sort_keys=True, indent=2)
    if output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["command", "name", "status", "details"])
        for c in report.checks:
            w.writerow([report.command, c["name"], c["status"], json.dumps(to_jsonable(c["details"]), sort_keys=True)])
        return buf.getvalue().rstrip("\n")
    lines = list(report.text)
    for c in report.checks:
        lines.append(f"[{c['status']}] {c['name']}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    saved = os.environ.get("LEGLAB_MAX_OPS")
    if args.max_ops:
        os.environ["LEGLAB_MAX_OPS"] = str(args.max_ops)
    try:
        report = COMMANDS[args.command](args)
    except ResourceError as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        if saved is None:
            os.environ.pop("LEGLAB_MAX_OPS", None)
        else:
            os.environ["LEGLAB_MAX_OPS"] = saved
    print(render(report, args.output))
    return EXIT_FALSIFIED if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
