"""JSON and CSV shapes shared by the CLI and test fixtures.

Exact rationals are written as ``"numerator/denominator"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ModelError
from .graphs import SubgraphFamily, build_host, validate_family
from .pgf import PGFSeries
from .pmf import JointPMF

TV_CONVENTION = "sum_k |P(k) - Q(k)| (no factor 1/2)"


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def number_json(v) -> Any:
    return fraction_str(v) if isinstance(v, Fraction) else float(v)


def pmf_to_json(pmf: JointPMF) -> dict:
    return {
        "ell": pmf.ell,
        "exact": pmf.exact,
        "empirical": pmf.empirical,
        "tail_bound": pmf.tail_bound,
        "mass": [{"k": list(k), "p": number_json(pmf.mass[k])} for k in pmf.support()],
    }


def pmf_from_json(data: dict) -> JointPMF:
    exact = data["exact"]
    mass = {tuple(row["k"]): (Fraction(row["p"]) if exact else float(row["p"])) for row in data["mass"]}
    return JointPMF(data["ell"], mass, exact, data.get("tail_bound", 0.0), data.get("empirical", False))


def profile_json(x: tuple[int, ...], lam: int) -> list:
    if lam == 1:
        return list(x)
    return [list(x[m * lam:(m + 1) * lam]) for m in range(len(x) // lam)]


def coeffs_to_json(coeffs: dict, lam: int) -> list:
    return [{"x": profile_json(x, lam), "alpha": fraction_str(a)} for x, a in sorted(coeffs.items())]


def pgf_to_json(pgf: PGFSeries) -> dict:
    return {
        "host": pgf.host.to_json(),
        "ell": pgf.ell,
        "pairs": [list(p) for p in pgf.shape.pairs] if pgf.shape.r else None,
        "coefficients": coeffs_to_json(dict(pgf.coeffs), pgf.shape.lam),
    }


def family_from_model(data: dict) -> SubgraphFamily:
    """Build a (possibly overlapping) family from the model schema."""
    try:
        h = data["host"]
        host = build_host(h["kind"], h["n"], h.get("r"), h.get("forbidden"))
        families = data["families"]
    except (KeyError, TypeError) as exc:
        raise ModelError(f"model is missing a required field: {exc}") from None
    if not isinstance(families, list):
        raise ModelError("'families' must be a list of edge lists")
    return validate_family(host, families, disjoint_mode=False)


def load_model(path: str | Path) -> SubgraphFamily:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ModelError(f"cannot read model file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelError(f"model file is not valid JSON: {exc}") from None
    return family_from_model(data)


def model_json(family: SubgraphFamily) -> dict:
    return {"host": family.host.to_json(), "families": family.to_json()}


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def fmt(v) -> str:
    """CSV float cell: six decimals, blank for missing values."""
    if v is None:
        return ""
    return f"{float(v):.6f}"


def k_str(k: tuple[int, ...]) -> str:
    return " ".join(str(c) for c in k)
