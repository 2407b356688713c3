"""Command-line front end.

Exit codes: 0 on success, 1 when a verification finds an analytic/empirical
mismatch, 2 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from dataclasses import dataclass

from . import scenarios
from .core import DomainError, Mechanism, locate, preset, utility
from .io import dump_json, load_betas, load_profile, load_weights, mechanism_to_dict
from .verify import (
    DEFAULT_BUDGET,
    CROSS_VALIDATED,
    GridSpec,
    VerificationMismatch,
    analytic_predicates,
    analyze,
    compatibility_matrix,
    cross_validate,
    format_number,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    preset: str | None = None
    n: int | None = None
    weights: str | None = None
    betas: str | None = None
    profile: str | None = None
    grid_k: int = 10
    grid_m: int | None = None
    budget: int = DEFAULT_BUDGET
    format: str = "text"
    out: str | None = None
    name: str | None = None
    corrupt: str | None = None

    def mechanism(self) -> Mechanism:
        sources = [s for s in (self.preset, self.weights, self.betas) if s is not None]
        if len(sources) != 1:
            raise UsageError("give exactly one of --preset, --weights, --betas")
        if self.preset is not None:
            if self.n is None:
                raise UsageError("--preset needs --n")
            return preset(self.preset, self.n)
        if self.weights is not None:
            return Mechanism.owa(load_weights(self.weights), label=self.weights)
        return Mechanism.agmvs(load_betas(self.betas), label=self.betas)


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="owafl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def mech_flags(p):
        p.add_argument("--preset", help="median, center, standard_average, olympic_average, order_statistic:J, uniform_phantom")
        p.add_argument("--n", type=_positive, help="number of agents for --preset")
        p.add_argument("--weights", metavar="FILE", help="OWA weight file")
        p.add_argument("--betas", metavar="FILE", help="AGMVS phantom file")

    def out_flags(p, formats=("json", "text")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    def grid_flags(p):
        p.add_argument("--grid-k", type=_positive, default=10, help="location grid step 1/K")
        p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="max mechanism evaluations per sweep")

    p = sub.add_parser("locate", help="place the facility for a profile")
    mech_flags(p)
    p.add_argument("--profile", metavar="FILE", required=True)
    out_flags(p, ("json", "csv", "text"))

    p = sub.add_parser("analyze", help="property table for one mechanism")
    mech_flags(p)
    grid_flags(p)
    out_flags(p)

    p = sub.add_parser("verify", help="cross-validate analytic characterizations on grids")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--grid-m", type=_positive, default=4, help="weight simplex step 1/M")
    grid_flags(p)
    out_flags(p)
    p.add_argument("--corrupt", choices=CROSS_VALIDATED, help=argparse.SUPPRESS)

    p = sub.add_parser("table", help="incentive/fairness compatibility matrix")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--grid-m", type=_positive, default=None, help="simplex step for confirming incompatible cells (default 2n)")
    out_flags(p, ("json", "csv", "text"))

    p = sub.add_parser("example", help="replay a worked scenario")
    p.add_argument("name", choices=scenarios.SCENARIOS)
    out_flags(p)
    return parser


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_locate(cfg: RunConfig) -> int:
    mech = cfg.mechanism()
    x = load_profile(cfg.profile)
    y = locate(mech, x)
    rows = [
        {"agent": i, "location": xi, "cost": abs(xi - y), "utility": utility(xi, y)}
        for i, xi in enumerate(x, start=1)
    ]
    if cfg.format == "json":
        text = dump_json({"mechanism": mechanism_to_dict(mech), "profile": list(x), "outcome": y, "agents": rows})
    elif cfg.format == "csv":
        buf = _io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["agent", "location", "cost", "utility"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        lines = [f"f(x) = {format_number(y)}", f"{'agent':<6} {'location':<18} {'cost':<18} utility"]
        for r in rows:
            cells = [format_number(r[k]) for k in ("location", "cost", "utility")]
            lines.append(f"{r['agent']:<6} {cells[0]:<18} {cells[1]:<18} {cells[2]}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg)
    return EXIT_OK


def cmd_analyze(cfg: RunConfig):
    mech = cfg.mechanism()
    report = analyze(mech, GridSpec(mech.n, k=cfg.grid_k, budget=cfg.budget))
    _emit(dump_json(report.to_dict()) if cfg.format == "json" else report.to_text(), cfg)
    return report


def cmd_verify(cfg: RunConfig) -> int:
    spec = GridSpec(cfg.n, k=cfg.grid_k, m=cfg.grid_m or 4, budget=cfg.budget)
    overrides = None
    if cfg.corrupt:
        honest = analytic_predicates()[cfg.corrupt]
        overrides = {cfg.corrupt: lambda w: not honest(w)}
    try:
        report = cross_validate(spec, analytic=overrides)
    except VerificationMismatch as exc:
        detail = {"status": "mismatch", **exc.to_dict()}
        _emit(dump_json(detail) if cfg.format == "json" else f"MISMATCH {exc}\n", cfg)
        return EXIT_MISMATCH
    summary = report.to_dict()
    if cfg.format == "json":
        text = dump_json({"status": "ok", **summary})
    else:
        text = (
            f"n={spec.n} weight step 1/{spec.m} location step 1/{spec.k}: "
            f"{summary['weight_vectors']} weight vectors, {summary['checks']} checks, 0 mismatches\n"
            + "".join(f"  {p}: satisfied by {c}\n" for p, c in summary["satisfied"].items())
        )
    _emit(text, cfg)
    return EXIT_OK


def cmd_table(cfg: RunConfig):
    if cfg.n < 3:
        raise UsageError("the compatibility table needs --n >= 3")
    matrix = compatibility_matrix(cfg.n, cfg.grid_m)
    if cfg.format == "json":
        text = dump_json(matrix.to_dict())
    elif cfg.format == "csv":
        text = matrix.to_csv()
    else:
        text = matrix.to_text()
    _emit(text, cfg)
    return matrix


def cmd_example(cfg: RunConfig) -> dict:
    transcript = scenarios.run(cfg.name)
    if cfg.format == "json":
        text = dump_json(transcript)
    else:
        text = _render(transcript) + "\n"
    _emit(text, cfg)
    return transcript


def _render(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render(value, indent + 1))
        else:
            lines.append(f"{pad}{key}: {_scalar(value)}")
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v)
    if isinstance(v, float):
        return format_number(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(e) for e in v) + "]"
    return str(v)


COMMANDS = {
    "locate": cmd_locate,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "table": cmd_table,
    "example": cmd_example,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    try:
        result = COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError, OSError) as exc:
        print(f"owafl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
