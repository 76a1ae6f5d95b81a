"""Command-line front end: scenario ingestion, evaluation, checking, searching,
and replication of the reference examples, with machine-readable reports.

Exit codes: 0 for pass/computed, 1 for a failed check or a found witness,
2 for usage or scenario-schema errors.  Reports embed the seed and the tool
version and contain no timestamps, so identical invocations are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .acceptance import (
    AcceptanceSpec,
    check_cone,
    check_convex,
    check_monotone,
    find_risk_invariant,
)
from .comonotone import (
    additivity_on_S_comonotone,
    comono_preservation_under_numeraire,
)
from .engine import (
    EligibleAsset,
    numeraire_identity_check,
    rho,
    s_additivity_check,
)
from .measures import DistortionWeights
from .spaces import FiniteSpace, RandVar
from .theorems import (
    check_corollary_convex,
    check_lemma_equality,
    check_cash_reduction_identity,
    check_theorem_condition_b,
    check_var_condition_b,
    check_var_necessary_condition,
    find_additivity_violation,
    run_replication_suite,
)
__all__ = ["Scenario", "ScenarioError", "load_scenario", "main"]

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_USAGE = 2


class ScenarioError(ValueError):
    """Scenario file violates the schema; carries the offending field path."""

    def __init__(self, fieldpath: str, message: str) -> None:
        super().__init__(f"{fieldpath}: {message}")
        self.fieldpath = fieldpath


@dataclass
class Scenario:
    """Parsed scenario: space, named positions, asset(s), acceptance, options."""

    space: FiniteSpace
    positions: dict[str, RandVar]
    asset: EligibleAsset
    acceptance: AcceptanceSpec
    labels: list[str] | None = None
    asset_r: EligibleAsset | None = None
    options: dict[str, Any] = field(default_factory=dict)


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ScenarioError(f"{path}.{key}", "missing required field")
    return obj[key]


def _number_list(raw, path: str, length: int | None = None) -> list[float]:
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(path, "must be a nonempty array of numbers")
    out = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ScenarioError(f"{path}[{i}]", f"expected a number, got {v!r}")
        out.append(float(v))
    if length is not None and len(out) != length:
        raise ScenarioError(path, f"expected {length} entries, got {len(out)}")
    return out


def _parse_acceptance(raw, path: str) -> AcceptanceSpec:
    if not isinstance(raw, dict):
        raise ScenarioError(path, "must be an object")
    kind = _require(raw, "kind", path)
    if kind == "var" or kind == "es":
        alpha = _require(raw, "alpha", path)
        if isinstance(alpha, bool) or not isinstance(alpha, (int, float)) or not 0.0 < alpha < 1.0:
            raise ScenarioError(f"{path}.alpha", f"must be a number in (0, 1), got {alpha!r}")
        return AcceptanceSpec.var_level(alpha) if kind == "var" else AcceptanceSpec.es_level(alpha)
    if kind == "distortion":
        weights = _require(raw, "weights", path)
        if not isinstance(weights, list) or not weights:
            raise ScenarioError(f"{path}.weights", "must be a nonempty array")
        points = []
        for i, item in enumerate(weights):
            if not isinstance(item, dict) or "alpha" not in item or "w" not in item:
                raise ScenarioError(
                    f"{path}.weights[{i}]", "must be an object with 'alpha' and 'w'"
                )
            points.append((item["alpha"], item["w"]))
        try:
            mix = DistortionWeights(tuple(points))
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"{path}.weights", str(exc)) from exc
        return AcceptanceSpec.distortion_mix(mix)
    if kind == "expectation":
        return AcceptanceSpec.expectation_floor()
    raise ScenarioError(
        f"{path}.kind", f"unknown kind {kind!r}; expected var, es, distortion, or expectation"
    )


def _parse_asset(raw, path: str, space: FiniteSpace) -> EligibleAsset:
    if not isinstance(raw, dict):
        raise ScenarioError(path, "must be an object")
    price = _require(raw, "price", path)
    if isinstance(price, bool) or not isinstance(price, (int, float)) or not price > 0:
        raise ScenarioError(f"{path}.price", f"must be a positive number, got {price!r}")
    payoff = _number_list(_require(raw, "payoff", path), f"{path}.payoff", space.n_atoms)
    if min(payoff) <= 0.0:
        raise ScenarioError(f"{path}.payoff", "payoff values must be strictly positive")
    return EligibleAsset(float(price), RandVar(space, payoff))


def parse_scenario(doc: Any) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario", "top level must be an object")
    raw_space = _require(doc, "space", "scenario")
    if not isinstance(raw_space, dict):
        raise ScenarioError("scenario.space", "must be an object")
    probs = _number_list(_require(raw_space, "probs", "scenario.space"), "scenario.space.probs")
    try:
        space = FiniteSpace(probs)
    except ValueError as exc:
        raise ScenarioError("scenario.space.probs", str(exc)) from exc
    labels = raw_space.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != space.n_atoms:
            raise ScenarioError(
                "scenario.space.labels", f"must list {space.n_atoms} atom labels"
            )
        labels = [str(v) for v in labels]

    raw_positions = _require(doc, "positions", "scenario")
    if not isinstance(raw_positions, dict) or not raw_positions:
        raise ScenarioError("scenario.positions", "must be a nonempty object of named vectors")
    positions = {}
    for name, vec in raw_positions.items():
        positions[name] = RandVar(
            space, _number_list(vec, f"scenario.positions.{name}", space.n_atoms)
        )

    asset = _parse_asset(_require(doc, "asset", "scenario"), "scenario.asset", space)
    asset_r = None
    if "asset_r" in doc:
        asset_r = _parse_asset(doc["asset_r"], "scenario.asset_r", space)
    acceptance = _parse_acceptance(_require(doc, "acceptance", "scenario"), "scenario.acceptance")

    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ScenarioError("scenario.options", "must be an object")
    for key, val in options.items():
        if key == "tol":
            if isinstance(val, bool) or not isinstance(val, (int, float)) or not val > 0:
                raise ScenarioError("scenario.options.tol", f"must be a positive number, got {val!r}")
        elif key in ("seed", "trials", "budget"):
            if isinstance(val, bool) or not isinstance(val, int) or val < 0:
                raise ScenarioError(
                    f"scenario.options.{key}", f"must be a nonnegative integer, got {val!r}"
                )
        else:
            raise ScenarioError(f"scenario.options.{key}", "unknown option")

    return Scenario(space, positions, asset, acceptance, labels, asset_r, dict(options))


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError("scenario", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError("scenario", f"invalid JSON in {path}: {exc}") from exc
    return parse_scenario(doc)


def _emit(report: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{report['command']} (eligirisk {report['version']})"]
        for item in report["results"]:
            lines.append(json.dumps(item, sort_keys=True))
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _base_report(command: str, seed: int | None, **echo) -> dict:
    report = {"command": command, "version": __version__, "seed": seed, "results": []}
    report.update({k: v for k, v in echo.items() if v is not None})
    return report


def cmd_eval(args) -> int:
    scenario = load_scenario(args.scenario)
    names = args.position or sorted(scenario.positions)
    for name in names:
        if name not in scenario.positions:
            raise ScenarioError(f"scenario.positions.{name}", "position not defined")
    tol = args.tol if args.tol is not None else scenario.options.get("tol")
    report = _base_report("eval", None, scenario=args.scenario, tol=tol)
    for name in names:
        quote = rho(scenario.acceptance, scenario.asset, scenario.positions[name], tol=tol)
        report["results"].append(
            {
                "position": name,
                "value": quote.value,
                "method": quote.method,
                "iterations": quote.iterations,
                "bracket_width": quote.bracket_width,
            }
        )
    _emit(report, args.format, args.out)
    return EXIT_OK


def _run_statement(scenario: Scenario, statement: str, trials: int, seed: int, tol: float):
    spec, asset, space = scenario.acceptance, scenario.asset, scenario.space
    if statement == "theorem-b":
        return check_theorem_condition_b(spec, asset, trials, seed)
    if statement == "corollary-convex":
        return check_corollary_convex(spec, asset)
    if statement == "cash-reduction":
        return check_cash_reduction_identity(spec, asset, trials, seed, tol)
    if statement == "lemma-equality":
        if scenario.asset_r is None:
            raise ScenarioError("scenario.asset_r", "lemma-equality needs a second asset")
        return check_lemma_equality(spec, asset, scenario.asset_r, trials, seed, tol)
    if statement == "var-necessary":
        return check_var_necessary_condition(spec, asset)
    if statement == "var-condition-b":
        if spec.kind != "var":
            raise ScenarioError("scenario.acceptance.kind", "var-condition-b needs kind 'var'")
        return check_var_condition_b(space, spec.level, trials=trials, seed=seed)
    if statement == "monotone":
        return check_monotone(spec, space, trials, seed)
    if statement == "cone":
        return check_cone(spec, space, trials, seed)
    if statement == "convex":
        return check_convex(spec, space, trials, seed)
    if statement == "risk-invariant":
        return find_risk_invariant(spec, space, trials, seed)
    if statement == "s-additivity":
        return s_additivity_check(spec, asset, trials, seed, tol)
    if statement == "numeraire-identity":
        return numeraire_identity_check(spec, asset, trials, seed, tol)
    if statement == "s-comonotone-additivity":
        return additivity_on_S_comonotone(spec, asset, trials, seed)
    if statement == "comono-preservation":
        return comono_preservation_under_numeraire(asset, trials, seed)
    raise ScenarioError("statement", f"unknown statement id {statement!r}")


def cmd_check(args) -> int:
    scenario = load_scenario(args.scenario)
    seed = args.seed if args.seed is not None else scenario.options.get("seed", 0)
    trials = args.trials if args.trials is not None else scenario.options.get("trials", 500)
    tol = args.tol if args.tol is not None else scenario.options.get("tol", 1e-9)
    result = _run_statement(scenario, args.statement, trials, seed, tol)
    report = _base_report(
        "check", seed, scenario=args.scenario, statement=args.statement,
        trials=trials, tol=tol,
    )
    report["results"].append(result.to_jsonable())
    _emit(report, args.format, args.out)
    return EXIT_OK if result.passed else EXIT_WITNESS


def cmd_search(args) -> int:
    scenario = load_scenario(args.scenario)
    seed = args.seed if args.seed is not None else scenario.options.get("seed", 0)
    budget = args.budget if args.budget is not None else scenario.options.get("budget", 2000)
    seed_pairs = []
    names = sorted(scenario.positions)
    for i, a in enumerate(names):
        for b in names[i:]:
            seed_pairs.append((scenario.positions[a], scenario.positions[b]))
    violation = find_additivity_violation(
        scenario.acceptance, scenario.asset, budget, seed, seed_pairs=seed_pairs
    )
    preservation = comono_preservation_under_numeraire(scenario.asset, budget, seed)
    report = _base_report("search", seed, scenario=args.scenario, budget=budget)
    report["results"].append(violation.to_jsonable())
    report["results"].append(preservation.to_jsonable())
    found = not violation.passed or not preservation.passed
    _emit(report, args.format, args.out)
    return EXIT_WITNESS if found else EXIT_OK


def cmd_replicate(args) -> int:
    overrides = None
    if args.expected:
        try:
            with open(args.expected, "r", encoding="utf-8") as fh:
                overrides = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ScenarioError("expected", f"cannot load expected values: {exc}") from exc
    try:
        verdicts = run_replication_suite(overrides)
    except KeyError as exc:
        raise ScenarioError("expected", str(exc)) from exc
    report = _base_report("replicate", None, expected=args.expected)
    report["results"] = [v.to_jsonable() for v in verdicts]
    report["all_passed"] = all(v.passed for v in verdicts)
    _emit(report, args.format, args.out)
    return EXIT_OK if report["all_passed"] else EXIT_WITNESS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eligirisk",
        description="Capital requirements with general eligible assets on finite spaces",
    )
    parser.add_argument("--version", action="version", version=f"eligirisk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, scenario: bool = True) -> None:
        if scenario:
            p.add_argument("--scenario", required=True, help="path to a scenario JSON file")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized checkers")
        p.add_argument("--tol", type=float, default=None, help="solver / comparison tolerance")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p_eval = sub.add_parser("eval", help="price named positions")
    common(p_eval)
    p_eval.add_argument(
        "--position", action="append", default=None, help="position name (repeatable)"
    )
    p_eval.set_defaults(func=cmd_eval)

    p_check = sub.add_parser("check", help="run a statement checker")
    common(p_check)
    p_check.add_argument("--statement", required=True, help="statement id")
    p_check.add_argument("--trials", type=int, default=None)
    p_check.set_defaults(func=cmd_check)

    p_search = sub.add_parser("search", help="search for additivity and numeraire witnesses")
    common(p_search)
    p_search.add_argument("--budget", type=int, default=None)
    p_search.set_defaults(func=cmd_search)

    p_rep = sub.add_parser("replicate", help="recompute the reference examples")
    common(p_rep, scenario=False)
    p_rep.add_argument(
        "--expected", default=None, help="JSON file overriding expected fixture values"
    )
    p_rep.set_defaults(func=cmd_replicate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ScenarioError as exc:
        sys.stderr.write(f"scenario error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
