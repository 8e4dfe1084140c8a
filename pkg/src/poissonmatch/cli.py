"""Command line front end.

    poissonmatch exact  --model m.json [--decompose] [--epsilon E] --out f
    poissonmatch sweep  --template T [--r R] --n-from A --n-to B --out f
    poissonmatch sample --model m.json --samples S --seed K [--workers W]
                        [--against exact] --out f

The output format follows ``--format`` or else the ``--out`` suffix
(``.json`` for JSON, anything else CSV).  Exit codes: 0 ok, 2 invalid
input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .analysis import analyze
from .distributions import DEFAULT_EPSILON, poisson_joint_pmf, poisson_spec, tv_distance
from .errors import ModelError, ResourceLimit
from .graphs import SubgraphFamily
from .pmf import from_counts
from .samplers import mc_counts
from .serialize import (
    TV_CONVENTION,
    coeffs_to_json,
    dump_json,
    fmt,
    fraction_str,
    k_str,
    load_model,
    model_json,
    number_json,
    pmf_to_json,
)
from .templates import TEMPLATES, template_family

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_RESOURCE = 3

PMF_COLUMNS = [
    "n", "ell", "model", "k", "p", "p_exact", "p_poisson",
    "tv", "tv_lower", "tv_upper", "coeff_bound", "tv_exact", "empirical", "validation",
]
SWEEP_COLUMNS = ["n", "ell", "model", "p0_exact", "p0_poisson", "tv", "tv_lower", "tv_upper", "coeff_bound"]


def _format(args) -> str:
    if args.format:
        return args.format
    return "json" if str(args.out).endswith(".json") else "csv"


def _csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _write(path, text: str) -> None:
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _tv_json(tv) -> dict:
    return {"value": number_json(tv.value), "lower": tv.lower, "upper": tv.upper}


def _decomposition_rows(report) -> list[dict]:
    dec = report.decomposition
    den = report.family.host.poisson_denominator
    return [
        {
            "subset": " ".join(str(m + 1) for m in sorted(s)),
            "size": len(piece),
            "poisson_mean": fmt(len(piece) / den),
        }
        for s, piece in zip(dec.subsets, dec.pieces)
    ]


def run_exact(args) -> int:
    family = load_model(args.model)
    report = analyze(family, args.epsilon, decompose=args.decompose)
    host = family.host
    if _format(args) == "json":
        out = {
            "command": "exact",
            "tv_convention": TV_CONVENTION,
            "model": model_json(family),
            "host_label": host.label(),
            "exact_pmf": pmf_to_json(report.exact),
            "poisson": {
                "mode": report.spec.mode,
                "rates": [fraction_str(r) for r in report.spec.rates],
                "subsets": [sorted(m + 1 for m in s) for s in report.spec.subsets] if report.spec.subsets else None,
                "epsilon": args.epsilon,
                "pmf": pmf_to_json(report.poisson),
            },
            "tv": _tv_json(report.tv),
            "coeff_bound": report.coeff_bound,
            "coefficients": coeffs_to_json(report.alpha, host.shape(1).lam),
        }
        if report.decomposition is not None:
            out["decomposition"] = [
                {"subset": sorted(m + 1 for m in s), "size": len(p), "poisson_mean": fraction_str(r)}
                for s, p, r in zip(report.decomposition.subsets, report.decomposition.pieces, report.spec.rates)
            ]
        _write(args.out, dump_json(out))
        return EXIT_OK
    rows = []
    for k in report.exact.support():
        rows.append({
            "n": host.n, "ell": family.ell, "model": host.label(), "k": k_str(k),
            "p": fmt(report.exact[k]), "p_exact": fmt(report.exact[k]), "p_poisson": fmt(report.poisson[k]),
            "tv": fmt(report.tv.value), "tv_lower": fmt(report.tv.lower), "tv_upper": fmt(report.tv.upper),
            "coeff_bound": fmt(report.coeff_bound), "tv_exact": "", "empirical": "false", "validation": "exact",
        })
    _write(args.out, _csv_text(PMF_COLUMNS, rows))
    if report.decomposition is not None and str(args.out) != "-":
        side = Path(args.out).with_suffix(".pieces.csv")
        side.write_text(_csv_text(["subset", "size", "poisson_mean"], _decomposition_rows(report)))
    return EXIT_OK


def run_sample(args) -> int:
    family = load_model(args.model)
    hist, checked = mc_counts(family, args.samples, args.seed, args.workers)
    emp = from_counts(family.ell, hist)
    validation = "pass" if checked == args.samples else "fail"
    decomposed = not family.is_pairwise_disjoint()
    poisson = poisson_joint_pmf(poisson_spec(family, decomposed=decomposed), args.epsilon)
    tv_p = tv_distance(emp, poisson)
    exact = tv_x = report = None
    if args.against == "exact":
        report = analyze(family, args.epsilon)
        exact = report.exact
        tv_x = tv_distance(emp, exact)
    host = family.host
    if _format(args) == "json":
        out = {
            "command": "sample",
            "tv_convention": TV_CONVENTION,
            "model": model_json(family),
            "host_label": host.label(),
            "seed": args.seed,
            "samples": args.samples,
            "empirical": True,
            "counts": [{"k": list(k), "count": hist[k]} for k in sorted(hist)],
            "pmf": pmf_to_json(emp),
            "validation": {"checked": checked, "passed": checked, "status": validation},
            "poisson_pmf": pmf_to_json(poisson),
            "tv": _tv_json(tv_p),
        }
        if exact is not None:
            out["exact_pmf"] = pmf_to_json(exact)
            out["tv_exact"] = _tv_json(tv_x)
            out["coeff_bound"] = report.coeff_bound
        _write(args.out, dump_json(out))
        return EXIT_OK
    keys = set(emp.mass) | (set(exact.mass) if exact is not None else set())
    rows = []
    for k in sorted(keys):
        rows.append({
            "n": host.n, "ell": family.ell, "model": host.label(), "k": k_str(k),
            "p": fmt(emp[k]), "p_exact": fmt(exact[k]) if exact is not None else "",
            "p_poisson": fmt(poisson[k]),
            "tv": fmt(tv_p.value), "tv_lower": fmt(tv_p.lower), "tv_upper": fmt(tv_p.upper),
            "coeff_bound": fmt(report.coeff_bound) if report is not None else "",
            "tv_exact": fmt(tv_x.value) if tv_x is not None else "",
            "empirical": "true", "validation": validation,
        })
    _write(args.out, _csv_text(PMF_COLUMNS, rows))
    return EXIT_OK


def _sweep_row(family: SubgraphFamily, epsilon: float) -> dict:
    report = analyze(family, epsilon)
    zero = (0,) * family.ell
    p0 = report.exact[zero]
    p0_poisson = math.exp(-float(sum(report.spec.rates)))
    return {
        "n": family.host.n,
        "ell": family.ell,
        "model": family.host.label(),
        "p0_exact": p0,
        "p0_poisson": p0_poisson,
        "tv": report.tv,
        "coeff_bound": report.coeff_bound,
    }


def _strictly_decreasing(values: list[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def trend_summary(rows: list[dict]) -> dict:
    gaps = [abs(float(r["p0_exact"]) - r["p0_poisson"]) for r in rows]
    tvs = [float(r["tv"].value) for r in rows]
    return {
        "n_values": [r["n"] for r in rows],
        "gap_strictly_decreasing": _strictly_decreasing(gaps),
        "tv_strictly_decreasing": _strictly_decreasing(tvs),
        "final_gap": gaps[-1] if gaps else None,
    }


def run_sweep(args) -> int:
    if args.n_from > args.n_to:
        raise ModelError("empty sweep range")
    rows: list[dict] = []
    failure = None
    for n in range(args.n_from, args.n_to + 1):
        try:
            rows.append(_sweep_row(template_family(args.template, n, args.r), args.epsilon))
        except (ModelError, ResourceLimit) as exc:
            failure = (n, exc)
            break
    trend = trend_summary(rows)
    if _format(args) == "json":
        out = {
            "command": "sweep",
            "tv_convention": TV_CONVENTION,
            "template": args.template,
            "r": args.r,
            "rows": [
                {
                    "n": r["n"], "ell": r["ell"], "model": r["model"],
                    "p0_exact": fraction_str(r["p0_exact"]), "p0_exact_float": float(r["p0_exact"]),
                    "p0_poisson": r["p0_poisson"], "tv": _tv_json(r["tv"]), "coeff_bound": r["coeff_bound"],
                }
                for r in rows
            ],
            "trend": trend,
        }
        _write(args.out, dump_json(out))
    else:
        csv_rows = [
            {
                "n": r["n"], "ell": r["ell"], "model": r["model"],
                "p0_exact": fmt(r["p0_exact"]), "p0_poisson": fmt(r["p0_poisson"]),
                "tv": fmt(r["tv"].value), "tv_lower": fmt(r["tv"].lower), "tv_upper": fmt(r["tv"].upper),
                "coeff_bound": fmt(r["coeff_bound"]),
            }
            for r in rows
        ]
        _write(args.out, _csv_text(SWEEP_COLUMNS, csv_rows))
    if rows and str(args.out) != "-":
        print(
            f"trend n={rows[0]['n']}..{rows[-1]['n']}: |P(X=0) - Poisson| strictly decreasing: "
            f"{'yes' if trend['gap_strictly_decreasing'] else 'no'}; "
            f"tv strictly decreasing: {'yes' if trend['tv_strictly_decreasing'] else 'no'}; "
            f"final gap {trend['final_gap']:.6f}"
        )
    if failure is not None:
        n, exc = failure
        _error_record(exc, n=n)
        return EXIT_RESOURCE if isinstance(exc, ResourceLimit) else EXIT_INVALID
    return EXIT_OK


def _error_record(exc: BaseException, **extra) -> None:
    rec = {"error": type(exc).__name__, "message": str(exc), **extra}
    sys.stderr.write(json.dumps(rec, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poissonmatch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", required=True, help="output path, or - for stdout")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help="Poisson truncation budget")

    p = sub.add_parser("exact", help="exact law, Poisson reference, TV and coefficient bound")
    p.add_argument("--model", required=True)
    p.add_argument("--decompose", action="store_true", help="use the decomposed Poisson reference")
    common(p)
    p.set_defaults(func=run_exact)

    p = sub.add_parser("sweep", help="P(X=0) and TV for a template family over a range of n")
    p.add_argument("--template", required=True, choices=TEMPLATES)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    common(p)
    p.set_defaults(func=run_sweep)

    p = sub.add_parser("sample", help="Monte Carlo estimate of the joint law")
    p.add_argument("--model", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--against", choices=["exact"], default=None)
    common(p)
    p.set_defaults(func=run_sample)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelError as exc:
        _error_record(exc)
        return EXIT_INVALID
    except ResourceLimit as exc:
        _error_record(exc)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
