"""Command-line front end: ``amplitrace <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 internal consistency failure,
4 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from importlib import resources
from typing import Sequence

import jsonschema

from . import affine_hecke, amplifier, archgeom, sympair
from .errors import ConsistencyError, NumericError, ResourceError, ValidationError
from .rootdata import build_root_datum, dominant_representative, norm_star

SCHEMA_VERSION = 1
COMMANDS = ("catalog", "analyze-pair", "coset-count", "amplifier-plan", "verify-arch")

# Descriptive provenance attached to each computed quantity.
ANCHORS = {
    "coset-count": {
        "polynomial": "spherical double-coset size from extended affine Weyl lengths over the Poincare polynomial",
        "norm_star": "Weyl maximum of the pairing with rho",
        "ratio": "double-coset size over q^(2 norm_star)",
    },
    "analyze-pair": {
        "h_large": "exact cone decision of 2||mu||*_H >= ||mu||*, cross-checked by box search",
        "classification": "split rank and Levi of the (-1)-eigenspace",
        "dual_torus_rank": "rank of X_*(T) / X_*(T_H)",
    },
    "amplifier-plan": {
        "S": "primes in [P/2, P)",
        "k_S_at_1": "sum over S of ||tau(v, nu)||_2^2",
        "period_bounds": "q^(2||nu||*_H - ||nu||*) per place",
        "budget": "P = X^c with c = delta0/(2A), delta = c(1 - eps)/2",
    },
    "verify-arch": {
        "fitted_constants": "rank-one constants fitted on the declared grids",
    },
    "catalog": {"pairs": "built-in symmetric pairs"},
}


def _schema(name: str) -> dict:
    text = resources.files("amplitrace").joinpath("schemas", name).read_text()
    return json.loads(text)


def validate_report(report: dict) -> None:
    try:
        jsonschema.Draft7Validator(_schema("report.schema.json")).validate(report)
    except jsonschema.ValidationError as exc:
        raise ConsistencyError(f"report does not match its schema: {exc.message}") from None


def validate_config(cfg: dict) -> None:
    try:
        jsonschema.Draft7Validator(_schema("config.schema.json")).validate(cfg)
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"invalid config: {exc.message}") from None


# ---------------------------------------------------------------- commands

def cmd_catalog(cfg: dict) -> dict:
    rows = []
    for p in sympair.catalog():
        a = sympair.analyze_pair(p)
        rows.append({k: a[k] for k in ("pair", "description", "classification", "theta_split_rank",
                                       "dual_torus_rank", "h_large", "witness", "margin")})
    return {"pairs": rows}


def cmd_analyze_pair(cfg: dict) -> dict:
    pair = sympair.get_pair(_require(cfg, "pair"))
    return sympair.analyze_pair(pair, cap=cfg.get("cap", sympair.DEFAULT_FLAT_CAP),
                                height=cfg.get("height", sympair.DEFAULT_BRUTE_HEIGHT))


def cmd_coset_count(cfg: dict) -> dict:
    rd = build_root_datum(_require(cfg, "type"))
    lam = tuple(_require(cfg, "lambda"))
    qs = cfg.get("q") or [2]
    poly = affine_hecke.double_coset_count(rd, lam)
    dom = dominant_representative(rd, lam)
    table = [{"q": q, "value": poly(q), "ratio": str(affine_hecke.coset_growth_ratio(rd, lam, q))} for q in qs]
    return {
        "type": rd.name,
        "lambda": list(lam),
        "dominant_lambda": [int(x) for x in dom],
        "polynomial": list(poly.coeffs),
        "polynomial_text": str(poly),
        "q": qs[0],
        "value": table[0]["value"],
        "norm_star": str(norm_star(rd, lam)),
        "ratio": table[0]["ratio"],
        "table": table,
    }


def _frac(cfg: dict, key: str, default=None) -> Fraction:
    v = cfg.get(key, default)
    if v is None:
        raise ValidationError(f"missing parameter {key!r}")
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"parameter {key!r} = {v!r} is not a rational number") from None


def cmd_amplifier_plan(cfg: dict) -> dict:
    pair = sympair.get_pair(_require(cfg, "pair"))
    P = int(_require(cfg, "P"))
    cond = tuple(cfg["congruence"]) if cfg.get("congruence") else None
    budget = amplifier.exponent_budget(_frac(cfg, "A"), _frac(cfg, "delta0"),
                                       epsilon=_frac(cfg, "epsilon", amplifier.DEFAULT_EPSILON))
    budget_doc = {
        "A": str(budget.A), "delta0": str(budget.delta0), "epsilon": str(budget.epsilon),
        "c": str(budget.c), "delta": str(budget.delta), "delta_limit": str(budget.delta_limit),
        "symbolic_check": budget.symbolic_check(), "certificate": budget.certificate,
    }
    if cfg.get("nu"):
        nu = tuple(cfg["nu"])
    else:
        w = sympair.is_H_large(pair)
        nu = w.mu if w else None
    S = [p.q for p in amplifier.choose_places(P, cond)]
    if nu is None:
        return {"pair": pair.label, "h_large": False, "nu": None, "P": P, "S": S, "degenerate": True,
                "period_bounds": {}, "budget": budget_doc}
    plan = amplifier.build_amplifier(pair, nu, P, cond=cond)
    per_place = [{"q": b.q, "bound": str(b.bound),
                  "exact": None if b.exact is None else str(b.exact)} for b in plan.period_bounds]
    return {
        "pair": pair.label,
        "h_large": True,
        "nu": list(plan.nu),
        "P": P,
        "S": S,
        "degenerate": plan.degenerate,
        "norm_nu": str(plan.norm_nu),
        "norm_nu_H": str(plan.norm_nu_H),
        "support_exponent_B": str(plan.support_exponent_B),
        "coset_exponent_C": str(plan.coset_exponent_C),
        "tau_l2_squared": [str(x) for x in plan.tau_l2],
        "k_S_at_1": str(plan.k_S_at_1),
        "sup_bound": {"constant": str(plan.sup_bound[0]), "exponent_of_P": plan.sup_bound[1]},
        "period_bounds": {"per_place": per_place, "cross_sum_certified": plan.cross_period_certified()},
        "budget": budget_doc,
    }


def cmd_verify_arch(cfg: dict) -> dict:
    return archgeom.verify_suite(cfg.get("model", "h3"), cfg.get("suite", "all"), int(cfg.get("seed", 0)))


HANDLERS = {
    "catalog": cmd_catalog,
    "analyze-pair": cmd_analyze_pair,
    "coset-count": cmd_coset_count,
    "amplifier-plan": cmd_amplifier_plan,
    "verify-arch": cmd_verify_arch,
}


def _require(cfg: dict, key: str):
    if cfg.get(key) is None:
        raise ValidationError(f"missing parameter {key!r}")
    return cfg[key]


def run(cfg: dict) -> dict:
    """Validate a config document, dispatch, and return the validated report."""
    validate_config(cfg)
    command = cfg["command"]
    body = HANDLERS[command](cfg)
    report = {"schema_version": SCHEMA_VERSION, "command": command, "anchors": ANCHORS[command]}
    report.update(body)
    validate_report(report)
    return report


# ---------------------------------------------------------------- rendering

def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                yield from _flatten(item, f"{key}[{i}].")
        else:
            yield key, v


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        rows = report.get("table") if report["command"] == "coset-count" else report.get("pairs")
        if rows:
            cols = list(rows[0])
            w.writerow(cols)
            for r in rows:
                w.writerow([json.dumps(r[c]) if isinstance(r[c], (list, dict)) else r[c] for c in cols])
        else:
            w.writerow(["key", "value"])
            for k, v in _flatten(report):
                w.writerow([k, json.dumps(v) if isinstance(v, list) else v])
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"{k}: {v}" for k, v in _flatten(report) if not k.startswith("anchors."))


# ---------------------------------------------------------------- argument parsing

def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amplitrace", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="versioned JSON config file (replaces the subcommand)")
    p.add_argument("--output", choices=("json", "csv", "text"), help="output format (default text)")
    p.add_argument("--json", action="store_true", help="shorthand for --output json")
    sub = p.add_subparsers(dest="command")

    def common(sp):
        sp.add_argument("--output", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    common(sub.add_parser("catalog", help="list built-in symmetric pairs"))

    sp = sub.add_parser("analyze-pair", help="largeness witness and classification of a pair")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--height", type=int)
    sp.add_argument("--cap", type=int)
    common(sp)

    sp = sub.add_parser("coset-count", help="exact spherical double-coset size")
    sp.add_argument("--type", required=True, help="root datum label, e.g. A2, GL2, A1xA1")
    sp.add_argument("--lambda", dest="lambda_", required=True, type=_int_list, help="coweight, e.g. 1,0")
    sp.add_argument("--q", type=_int_list, default=[2], help="residue field size(s), e.g. 3 or 2,3,5")
    common(sp)

    sp = sub.add_parser("amplifier-plan", help="amplifier places, period bounds and exponent budget")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--P", type=int, required=True)
    sp.add_argument("--A", required=True)
    sp.add_argument("--delta0", required=True)
    sp.add_argument("--epsilon")
    sp.add_argument("--nu", type=_int_list)
    sp.add_argument("--congruence", type=_int_list, help="a,m: keep primes q = a mod m")
    common(sp)

    sp = sub.add_parser("verify-arch", help="rank-one archimedean verification suites")
    sp.add_argument("--model", choices=archgeom.MODELS, default="h3")
    sp.add_argument("--suite", choices=("all",) + archgeom.SUITES, default="all")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    return p


def _config_from_args(ns: argparse.Namespace) -> dict:
    cfg = {"version": 1, "command": ns.command}
    mapping = {"lambda_": "lambda"}
    skip = {"command", "config", "output", "json"}
    for k, v in vars(ns).items():
        if k in skip or v is None:
            continue
        cfg[mapping.get(k, k)] = v
    return cfg


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise ValidationError("config must be a JSON object")
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.config:
            cfg = _load_config(ns.config)
        elif ns.command:
            cfg = _config_from_args(ns)
        else:
            parser.print_usage(sys.stderr)
            print("amplitrace: error: a subcommand or --config is required", file=sys.stderr)
            return 2
        fmt = "json" if getattr(ns, "json", False) else (getattr(ns, "output", None) or cfg.get("output", "text"))
        report = run(cfg)
    except (ValidationError, ResourceError) as exc:
        print(f"amplitrace: invalid input: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"amplitrace: consistency failure: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"amplitrace: numeric failure: {exc}", file=sys.stderr)
        return 4
    print(render(report, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
