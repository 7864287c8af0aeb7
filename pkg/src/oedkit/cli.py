"""Batch command-line front end.

Subcommands: rank, curve, enumerate, aig, print-config. Runs are driven
by a JSON config file plus flag overrides (flags win); every command is
deterministic given its config, and report files are byte-identical
across repeated runs. Exit codes: 0 success, 2 config error, 3 analysis
error, 4 data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Sequence

from .categories import (
    CategoryStructure,
    DegenerateEvidenceError,
    InvalidBundledStructureError,
    enumerate_structures,
    exemplar_model,
    exemplar_model_marginalized,
    exemplar_probs,
    marginalized_vector_probs,
    ms54_structure,
    prototype_model,
    prototype_model_marginalized,
    prototype_probs,
    structures_to_jsonl,
)
from .coins import COIN_MODELS, CoinExperiment, all_sequences, coin_model
from .distributions import (
    AllZeroWeightsError,
    FiniteDistribution,
    kl_divergence,
    normalize,
)
from .engine import (
    AllZeroLikelihoodError,
    ConvolutionLimitError,
    DesignReport,
    EmptyResponseSpaceError,
    LengthMismatchError,
    OutcomePrior,
    UnsupportedModelCountError,
    assign_ranks,
    eig_factorized_two_model,
    eig_two_model_from_response_probs,
    expected_information_gain,
    model_posterior,
    rank_experiments,
)
from .models import GroupExperiment, ModelSpace, groupify

SUITES = ("coin", "category")
FORMATS = ("csv", "json")
PARAMETER_MODES = ("point", "marginalized")

_ANALYSIS_ERRORS = (
    AllZeroLikelihoodError,
    ConvolutionLimitError,
    AllZeroWeightsError,
    DegenerateEvidenceError,
    EmptyResponseSpaceError,
    InvalidBundledStructureError,
    LengthMismatchError,
    UnsupportedModelCountError,
)


class ConfigError(ValueError):
    """Bad config file or flag combination (exit 2)."""


class DataFileError(ValueError):
    """Malformed empirical data file (exit 4)."""


@dataclass
class RunConfig:
    suite: str = "coin"
    models: list[str] = field(default_factory=list)
    model_prior: list[float] | None = None
    outcome_prior: str = "uniform"
    n: int = 1
    parameter_mode: str = "point"
    out: str | None = None
    format: str = "csv"
    seed: int | None = None  # reserved for the softmax sampler; core paths are seedless
    plot: bool = False
    experiments: list[str] | None = None
    n_range: list[int] | None = None
    data: str | None = None
    prefix: bool = False

    def to_json_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_DEFAULT_MODELS = {"coin": ["fair", "bias", "markov"], "category": ["exemplar", "prototype"]}


def _load_config_file(path: str) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    if "prior" in payload:  # documented name for the model-prior weights
        if "model_prior" in payload:
            raise ConfigError(f"{path}: give either 'prior' or 'model_prior', not both")
        payload["model_prior"] = payload.pop("prior")
    known = {f.name for f in fields(RunConfig)}
    for key in payload:
        if key not in known:
            raise ConfigError(f"{path}: unknown config key {key!r} (known: {sorted(known | {'prior'})})")
    return payload


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults <- config file <- command-line flags, then validate."""
    values: dict[str, Any] = {}
    if getattr(args, "config", None):
        values.update(_load_config_file(args.config))
    overrides = {
        "suite": getattr(args, "suite", None),
        "models": getattr(args, "models", None),
        "outcome_prior": getattr(args, "outcome_prior", None),
        "n": getattr(args, "n", None),
        "parameter_mode": getattr(args, "parameter_mode", None),
        "out": getattr(args, "out", None),
        "format": getattr(args, "format", None),
        "seed": getattr(args, "seed", None),
        "experiments": getattr(args, "experiments", None),
        "n_range": getattr(args, "n_range", None),
        "data": getattr(args, "data", None),
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    if getattr(args, "plot", False):
        values["plot"] = True
    if getattr(args, "prefix", False):
        values["prefix"] = True

    cfg = RunConfig(**values)
    if cfg.suite not in SUITES:
        raise ConfigError(f"suite must be one of {SUITES}, got {cfg.suite!r}")
    if not isinstance(cfg.models, list) or any(not isinstance(m, str) for m in cfg.models):
        raise ConfigError("models must be a list of model names")
    if cfg.model_prior is not None and (
        not isinstance(cfg.model_prior, list)
        or any(not isinstance(w, (int, float)) for w in cfg.model_prior)
    ):
        raise ConfigError("model_prior must be a list of numbers")
    if cfg.experiments is not None and (
        not isinstance(cfg.experiments, list)
        or any(not isinstance(e, str) for e in cfg.experiments)
    ):
        raise ConfigError("experiments must be a list of experiment keys")
    if not cfg.models:
        cfg.models = list(_DEFAULT_MODELS[cfg.suite])
    registry = set(COIN_MODELS) if cfg.suite == "coin" else {"exemplar", "prototype"}
    unknown = [m for m in cfg.models if m not in registry]
    if unknown:
        raise ConfigError(f"unknown {cfg.suite} models {unknown}; known: {sorted(registry)}")
    if len(set(cfg.models)) != len(cfg.models) or len(cfg.models) < 2:
        raise ConfigError("models must be at least 2 distinct names")
    if cfg.model_prior is not None:
        if len(cfg.model_prior) != len(cfg.models):
            raise ConfigError("model_prior needs one weight per model")
        if any(w < 0 for w in cfg.model_prior) or sum(cfg.model_prior) <= 0:
            raise ConfigError("model_prior weights must be nonnegative with positive sum")
    if cfg.outcome_prior not in ("uniform", "predictive"):
        raise ConfigError(f"outcome_prior must be 'uniform' or 'predictive', got {cfg.outcome_prior!r}")
    if not isinstance(cfg.n, int) or cfg.n < 1:
        raise ConfigError(f"n must be a positive integer, got {cfg.n!r}")
    if cfg.parameter_mode not in PARAMETER_MODES:
        raise ConfigError(f"parameter_mode must be one of {PARAMETER_MODES}")
    if cfg.parameter_mode == "marginalized" and cfg.suite != "category":
        raise ConfigError("parameter_mode 'marginalized' applies to the category suite only")
    if cfg.format not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}, got {cfg.format!r}")
    if cfg.n_range is not None:
        if not cfg.n_range or any((not isinstance(v, int)) or v < 1 for v in cfg.n_range):
            raise ConfigError("n_range must be positive integers")
    return cfg


def _model_space(cfg: RunConfig) -> ModelSpace:
    if cfg.suite != "coin":
        raise ConfigError("internal: coin space requested for category suite")
    singles = [coin_model(name) for name in cfg.models]
    if cfg.model_prior is None:
        return ModelSpace.uniform(singles)
    return ModelSpace.with_weights(singles, cfg.model_prior)


def _lifted_space(cfg: RunConfig) -> ModelSpace:
    space = _model_space(cfg)
    return ModelSpace(tuple(groupify(m) for m in space.models), space.prior)


def _category_prior(cfg: RunConfig) -> FiniteDistribution:
    weights = cfg.model_prior if cfg.model_prior is not None else [1.0] * len(cfg.models)
    return normalize(zip(cfg.models, weights))


def _outcome_prior(cfg: RunConfig) -> OutcomePrior:
    return OutcomePrior.from_string(cfg.outcome_prior)


def _require_out(cfg: RunConfig) -> str:
    if not cfg.out:
        raise ConfigError("an output path is required (config 'out' or --out)")
    return cfg.out


def _write_text(path: str, text: str) -> None:
    p = Path(path)
    if p.parent != Path(""):
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text, encoding="utf-8")


def _figure_path(out: str) -> str:
    return str(Path(out).with_suffix(".png"))


# ---------------------------------------------------------------------------
# rank


def _rank_reports(cfg: RunConfig) -> list[DesignReport]:
    outcome = _outcome_prior(cfg)
    if cfg.suite == "coin":
        space = _lifted_space(cfg)
        xs = [CoinExperiment(n=cfg.n, seq=seq) for seq in all_sequences()]
        return rank_experiments(space, xs, outcome, lambda x: range(x.n + 1))

    structures = enumerate_structures()
    prior = _category_prior(cfg)
    reports = []
    if cfg.parameter_mode == "point":
        # item lists must follow the prior's sorted support order
        prob_fns = {"exemplar": exemplar_probs, "prototype": lambda s: prototype_probs()}
        first, second = prior.support
        for structure in structures:
            eig = eig_factorized_two_model(
                prob_fns[first](structure),
                prob_fns[second](structure),
                prior,
                outcome,
                n=cfg.n,
            )
            reports.append(
                DesignReport(experiment=structure, key=structure.canonical_key(), eig=eig)
            )
    else:
        if cfg.n != 1:
            raise ConfigError("marginalized mode supports n = 1 only")
        first, second = prior.support
        for structure in structures:
            eig = eig_two_model_from_response_probs(
                marginalized_vector_probs(structure, first),
                marginalized_vector_probs(structure, second),
                prior,
                outcome,
            )
            reports.append(
                DesignReport(experiment=structure, key=structure.canonical_key(), eig=eig)
            )
    return assign_ranks(reports)


def _reports_csv(reports: Sequence[DesignReport]) -> str:
    lines = ["rank,experiment,eig_nats"]
    lines += [f"{r.rank},{r.key},{r.eig:.6f}" for r in reports]
    return "\n".join(lines) + "\n"


def _reports_json(reports: Sequence[DesignReport]) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=2, sort_keys=True) + "\n"


def cmd_rank(cfg: RunConfig) -> int:
    out = _require_out(cfg)
    reports = _rank_reports(cfg)
    _write_text(out, _reports_csv(reports) if cfg.format == "csv" else _reports_json(reports))
    width = max(10, max(len(r.key) for r in reports[:5]))
    print(f"{'rank':<4}  {'experiment':<{width}}  eig_nats")
    for r in reports[:5]:
        print(f"{r.rank:<4}  {r.key:<{width}}  {r.eig:.6f}")
    print(f"report: {out}")
    if cfg.plot:
        from .plotting import plot_rank

        plot_rank(reports, _figure_path(out))
        print(f"figure: {_figure_path(out)}")
    return 0


# ---------------------------------------------------------------------------
# curve


def _parse_n_range(cfg: RunConfig) -> list[int]:
    if not cfg.n_range:
        raise ConfigError("curve needs n_range (config 'n_range' or --n-range)")
    if len(cfg.n_range) == 2 and cfg.n_range[0] <= cfg.n_range[1]:
        return list(range(cfg.n_range[0], cfg.n_range[1] + 1))
    return list(cfg.n_range)


def cmd_curve(cfg: RunConfig) -> int:
    if cfg.suite != "coin":
        raise ConfigError("curve applies to the coin suite (group lifting needs binary responses)")
    out = _require_out(cfg)
    if not cfg.experiments:
        raise ConfigError("curve needs experiment keys (config 'experiments' or --experiments)")
    from .engine import eig_curve

    space = _model_space(cfg)
    ns = _parse_n_range(cfg)
    outcome = _outcome_prior(cfg)
    rows: list[tuple[str, int, float]] = []
    for seq in sorted(set(cfg.experiments)):
        for n, eig in eig_curve(space, seq, ns, outcome):
            rows.append((seq, n, eig))
    if cfg.format == "csv":
        lines = ["experiment,n,eig_nats"] + [f"{s},{n},{e:.6f}" for s, n, e in rows]
        _write_text(out, "\n".join(lines) + "\n")
    else:
        payload = [{"experiment": s, "n": n, "eig_nats": e} for s, n, e in rows]
        _write_text(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"{len(rows)} rows")
    print(f"report: {out}")
    if cfg.plot:
        from .plotting import plot_curve

        plot_curve(rows, _figure_path(out))
        print(f"figure: {_figure_path(out)}")
    return 0


# ---------------------------------------------------------------------------
# enumerate


def cmd_enumerate(cfg: RunConfig) -> int:
    out = _require_out(cfg)
    structures = enumerate_structures()
    _write_text(out, structures_to_jsonl(structures))
    print(f"{len(structures)} structures")
    print(f"report: {out}")
    return 0


# ---------------------------------------------------------------------------
# aig


def _parse_structure_key(key: str) -> CategoryStructure:
    if key == "ms54":
        return ms54_structure()
    try:
        part_a, part_b = key.split("|")
        return CategoryStructure(tuple(part_a.split("+")), tuple(part_b.split("+")))
    except ValueError as exc:
        raise DataFileError(f"bad category experiment key {key!r}: {exc}")


def _read_data_rows(cfg: RunConfig) -> list[dict[str, Any]]:
    if not cfg.data:
        raise ConfigError("aig needs an empirical data file (config 'data' or --data)")
    try:
        text = Path(cfg.data).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFileError(f"cannot read data file {cfg.data}: {exc}")
    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise DataFileError(f"{cfg.data}: empty file")
    if [h.strip() for h in header] != ["experiment", "n", "response"]:
        raise DataFileError(f"{cfg.data}: header must be experiment,n,response, got {header}")
    rows = []
    for idx, row in enumerate(reader, start=1):
        if not row:
            continue
        if len(row) != 3:
            raise DataFileError(f"{cfg.data}: row {idx}: expected 3 fields, got {len(row)}")
        key, n_text, resp_text = (c.strip() for c in row)
        try:
            n = int(n_text)
            if n < 1:
                raise ValueError("n must be >= 1")
            if cfg.suite == "coin":
                experiment: Any = CoinExperiment(n=n, seq=key)
                response: Any = int(resp_text)
                if not 0 <= response <= n:
                    raise ValueError(f"count {response} outside [0, {n}]")
            else:
                experiment = _parse_structure_key(key)
                counts = tuple(int(c) for c in resp_text.split(";"))
                if len(counts) != 16:
                    raise ValueError(f"need 16 per-object counts, got {len(counts)}")
                if any(not 0 <= c <= n for c in counts):
                    raise ValueError(f"counts must lie in [0, {n}]")
                response = counts
        except (ValueError, DataFileError) as exc:
            raise DataFileError(f"{cfg.data}: row {idx}: {exc}")
        rows.append(
            {"row": idx, "key": key, "experiment": experiment, "n": n, "response": response}
        )
    if not rows:
        raise DataFileError(f"{cfg.data}: no data rows")
    return rows


def _coin_space_at(cfg: RunConfig) -> ModelSpace:
    return _lifted_space(cfg)


def _category_space_for(cfg: RunConfig, structure: CategoryStructure) -> ModelSpace:
    builders = {
        "point": {"exemplar": exemplar_model, "prototype": prototype_model},
        "marginalized": {
            "exemplar": exemplar_model_marginalized,
            "prototype": prototype_model_marginalized,
        },
    }[cfg.parameter_mode]
    models = [builders[name](structure) for name in cfg.models]
    weights = cfg.model_prior if cfg.model_prior is not None else [1.0] * len(cfg.models)
    return ModelSpace(tuple(models), normalize(zip(cfg.models, weights)))


def _category_eig(cfg: RunConfig, structure: CategoryStructure, n: int) -> float | None:
    """Matched EIG for a category record; None when exactly intractable.

    With 16 items the exact response space has (n+1)**16 outcomes, so the
    matched EIG is only computed for n = 1.
    """
    if n != 1:
        return None
    prior = _category_prior(cfg)
    first, second = prior.support
    outcome = _outcome_prior(cfg)
    if cfg.parameter_mode == "point":
        prob_fns = {"exemplar": exemplar_probs, "prototype": lambda s: prototype_probs()}
        return eig_factorized_two_model(
            prob_fns[first](structure), prob_fns[second](structure), prior, outcome, n=1
        )
    return eig_two_model_from_response_probs(
        marginalized_vector_probs(structure, first),
        marginalized_vector_probs(structure, second),
        prior,
        outcome,
    )


def _aig_one(cfg: RunConfig, key: str, experiment: Any, n: int, response: Any) -> dict[str, Any]:
    outcome = _outcome_prior(cfg)
    result: dict[str, Any] = {
        "experiment": key,
        "n": n,
        "response": response,
        "aig_nats": None,
        "eig_nats": None,
        "posterior": None,
        "map_model": None,
        "error": None,
    }
    try:
        if cfg.suite == "coin":
            space = _coin_space_at(cfg)
            x: Any = CoinExperiment(n=n, seq=experiment.seq)
            posterior = model_posterior(space, x, response)
            result["eig_nats"] = expected_information_gain(
                space, x, outcome, range(n + 1)
            ).eig
        else:
            if cfg.parameter_mode == "marginalized" and n != 1:
                raise AllZeroLikelihoodError(
                    "marginalized mode scores single participants only (n = 1)"
                )
            space = _category_space_for(cfg, experiment)
            x = GroupExperiment(n=n, inner=experiment)
            posterior = model_posterior(space, x, response)
            result["eig_nats"] = _category_eig(cfg, experiment, n)
        result["aig_nats"] = kl_divergence(posterior, space.prior)
        result["posterior"] = posterior.to_json_dict()
        result["map_model"] = max(posterior.items(), key=lambda kv: (kv[1], kv[0]))[0]
    except _ANALYSIS_ERRORS as exc:
        result["error"] = str(exc)
    return result


def _accumulate(cfg: RunConfig, rows: list[dict[str, Any]]) -> list[dict[str, Any]]:
    """Prefix mode: cumulative reanalysis per experiment, in file order.

    Responses pool across batches (counts add, participant totals add);
    exchangeability makes the pooled counts sufficient, so the k-th row
    is the analysis of the first k batches of that experiment.
    """
    order: list[str] = []
    grouped: dict[str, list[dict[str, Any]]] = {}
    for row in rows:
        if row["key"] not in grouped:
            order.append(row["key"])
            grouped[row["key"]] = []
        grouped[row["key"]].append(row)
    out = []
    for key in order:
        n_cum = 0
        resp_cum: Any = None
        for k, row in enumerate(grouped[key], start=1):
            n_cum += row["n"]
            if resp_cum is None:
                resp_cum = row["response"]
            elif cfg.suite == "coin":
                resp_cum += row["response"]
            else:
                resp_cum = tuple(a + b for a, b in zip(resp_cum, row["response"]))
            result = _aig_one(cfg, key, row["experiment"], n_cum, resp_cum)
            result["k"] = k
            out.append(result)
    return out


def _response_text(response: Any) -> str:
    if isinstance(response, tuple):
        return ";".join(str(c) for c in response)
    return str(response)


def _aig_csv(rows: list[dict[str, Any]], prefix: bool) -> str:
    head = ["experiment", "n", "response", "aig_nats", "eig_nats", "map_model", "error"]
    head = (["k"] + head) if prefix else (["row"] + head)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(head)
    for r in rows:
        writer.writerow(
            [
                r["k" if prefix else "row"],
                r["experiment"],
                r["n"],
                _response_text(r["response"]),
                "" if r["aig_nats"] is None else f"{r['aig_nats']:.6f}",
                "" if r["eig_nats"] is None else f"{r['eig_nats']:.6f}",
                r["map_model"] or "",
                r["error"] or "",
            ]
        )
    return buf.getvalue()


def cmd_aig(cfg: RunConfig) -> int:
    out = _require_out(cfg)
    rows = _read_data_rows(cfg)
    if cfg.prefix:
        results = _accumulate(cfg, rows)
    else:
        results = []
        for row in rows:
            result = _aig_one(cfg, row["key"], row["experiment"], row["n"], row["response"])
            result["row"] = row["row"]
            results.append(result)
    n_err = sum(1 for r in results if r["error"] is not None)
    if n_err == len(results):
        raise AllZeroLikelihoodError("every data row failed analysis")
    if cfg.format == "csv":
        _write_text(out, _aig_csv(results, cfg.prefix))
    else:
        payload = [
            {**r, "response": _response_text(r["response"])} for r in results
        ]
        _write_text(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"{len(results)} rows analyzed, {n_err} with errors")
    print(f"report: {out}")
    if cfg.plot:
        from .plotting import plot_aig

        plot_aig(results, _figure_path(out), cfg.prefix)
        print(f"figure: {_figure_path(out)}")
    return 0


def cmd_print_config(cfg: RunConfig) -> int:
    print(json.dumps(cfg.to_json_dict(), indent=2, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser, plot: bool = True) -> None:
    p.add_argument("--config", metavar="PATH", help="JSON run config; flags override it")
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--models", type=lambda s: [m.strip() for m in s.split(",") if m.strip()],
                   metavar="NAMES", help="comma-separated model names")
    p.add_argument("--n", type=int, metavar="N", help="participants per experiment")
    p.add_argument("--outcome-prior", dest="outcome_prior", choices=["uniform", "predictive"])
    p.add_argument("--parameter-mode", dest="parameter_mode", choices=list(PARAMETER_MODES))
    p.add_argument("--out", metavar="PATH", help="report file to write")
    p.add_argument("--format", choices=list(FORMATS))
    p.add_argument("--seed", type=int, metavar="N",
                   help="reserved for the optional softmax sampler; core paths are seedless")
    if plot:
        p.add_argument("--plot", action="store_true",
                       help="also render a PNG figure next to the report")


def _parse_n_range_flag(s: str) -> list[int]:
    if ":" in s:
        lo, hi = s.split(":", 1)
        return [int(lo), int(hi)]
    return [int(v) for v in s.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oedkit",
        description="Expected-information-gain experiment ranking and empirical scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", help="Score and rank every experiment in the suite.")
    _add_common(rank)

    curve = sub.add_parser("curve", help="EIG versus sample size for chosen experiments.")
    _add_common(curve)
    curve.add_argument("--experiments", type=lambda s: [e.strip() for e in s.split(",") if e.strip()],
                       metavar="KEYS", help="comma-separated experiment keys")
    curve.add_argument("--n-range", dest="n_range", type=_parse_n_range_flag, metavar="LO:HI",
                       help="inclusive range LO:HI or explicit comma list")

    enum = sub.add_parser("enumerate", help="Write all valid category training structures.")
    _add_common(enum, plot=False)

    aig = sub.add_parser("aig", help="Actual information gain from an empirical data file.")
    _add_common(aig)
    aig.add_argument("--data", metavar="PATH", help="CSV with header experiment,n,response")
    aig.add_argument("--prefix", action="store_true",
                     help="cumulative reanalysis over row prefixes per experiment")

    pc = sub.add_parser("print-config", help="Echo the fully resolved run config as JSON.")
    _add_common(pc, plot=False)
    return parser


_COMMANDS = {
    "rank": cmd_rank,
    "curve": cmd_curve,
    "enumerate": cmd_enumerate,
    "aig": cmd_aig,
    "print-config": cmd_print_config,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataFileError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 4
    except _ANALYSIS_ERRORS as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
