"""Command-line client for the prediction/verification pipeline.

Subcommands: predict, build, rank, spectrum, verify, lambda-opp, jantzen-sum,
weyl-dim, serve.  Parameters come from flags or from a flat key=value config
file (keys: family, rank, cotype, p, t, out, twist_orbits); flags win.

Exit codes: 0 match or prediction-only success, 1 configuration error,
2 rank mismatch, 3 unresolved prediction, 4 geometry unsupported.

E-family node numbering is the 1-2-3-5-6(-7)(-8) chain with node 4 below
node 3; for E6 that is Bourbaki (1,3,4,2,5,6) in this order.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline
from .characters import char_to_json, weyl_dim
from .finitegeom import parse_typeset
from .jantzen import jantzen_sum, lambda_opp
from .rootdata import ConfigurationError, build_root_system, parse_system_name

EPILOG = """\
examples:
  opprank verify A2 --cotype [2] --p 2
  opprank verify A3 --cotype [1,3] --p 2 --out runs/
  opprank predict E6 --cotype [2,3,4,5,6] --p 13
  opprank jantzen-sum E6 --weight 12,0,0,0,0,0 --p 13
  opprank lambda-opp A3 --cotype [2] --p 3 --t 2 --twist-orbits [[1,3],[2]]
  opprank spectrum C2 --cotype [2] --p 3
  opprank serve --port 8000

node numbering for the E family: the chain is 1-2-3-5-6(-7)(-8) with node 4
hanging below node 3.  For E6 this maps to Bourbaki labels as
ours (1,2,3,4,5,6) = Bourbaki (1,3,4,2,5,6).
"""


def _read_config_file(path: str) -> dict:
    values = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"malformed config line: {line!r}")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    return values


def _parse_orbits(text: str):
    try:
        orbits = json.loads(text)
        return tuple(tuple(int(i) for i in orbit) for orbit in orbits)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ConfigurationError(f"bad twist_orbits value {text!r}") from exc


def _job_config(args) -> pipeline.JobConfig:
    values = _read_config_file(args.config) if args.config else {}
    system = args.system or values.get("family")
    if system and values.get("rank") and system.isalpha():
        system = f"{system}{values['rank']}"
    if not system:
        raise ConfigurationError("no root system given (positional or config)")
    spec = parse_system_name(system)

    cotype = args.cotype if args.cotype is not None else values.get("cotype", "[]")
    p = args.p if args.p is not None else values.get("p")
    if p is None:
        raise ConfigurationError("no prime p given")
    t = args.t if args.t is not None else values.get("t", 1)
    out = args.out if args.out is not None else values.get("out", "opprank_out")
    orbits_text = (args.twist_orbits if args.twist_orbits is not None
                   else values.get("twist_orbits"))
    return pipeline.JobConfig(
        family=spec.family, rank=spec.rank, cotype=parse_typeset(str(cotype)),
        p=int(p), t=int(t), out=Path(out),
        twist_orbits=_parse_orbits(orbits_text) if orbits_text else None)


def _root_system(args):
    values = _read_config_file(args.config) if args.config else {}
    system = args.system or values.get("family")
    if system and values.get("rank") and system.isalpha():
        system = f"{system}{values['rank']}"
    if not system:
        raise ConfigurationError("no root system given (positional or config)")
    return build_root_system(parse_system_name(system))


def _parse_weight(rs, text: str):
    if text is None:
        raise ConfigurationError("--weight is required")
    coords = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    if len(coords) != rs.rank:
        raise ConfigurationError(
            f"weight needs {rs.rank} coordinates, got {len(coords)}")
    return coords


def _emit(report: dict) -> int:
    sys.stdout.write(pipeline.report_to_json(report))
    return pipeline.exit_code_for(report)


def _add_job_arguments(sub):
    sub.add_argument("system", nargs="?",
                     help="root system, family letter + rank (e.g. A2, E6)")
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--cotype", help="cotype J as a sorted list, e.g. [2] or [1,3]")
    sub.add_argument("--p", type=int, help="defining prime")
    sub.add_argument("--t", type=int, help="exponent: q = p^t (default 1)")
    sub.add_argument("--out", help="output directory for matrix artifacts")
    sub.add_argument("--twist-orbits",
                     help='diagram-automorphism orbits as JSON, e.g. [[1,3],[2]]')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opprank",
        description="Predict and verify p-ranks of oppositeness incidence "
                    "matrices in buildings of finite groups of Lie type.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    for name, helptext in [
            ("predict", "highest-weight pipeline only: lambda_opp, chain "
                        "resolution, predicted rank"),
            ("build", "enumerate the geometry and persist the incidence matrix"),
            ("rank", "build (or reuse) the matrix and compute its p-rank"),
            ("spectrum", "eigenvalue-power check on A*A^T"),
            ("verify", "full pipeline: predict, build, rank, compare")]:
        sub = subs.add_parser(name, help=helptext)
        _add_job_arguments(sub)
        if name in ("rank", "spectrum"):
            sub.add_argument("--matrix-file",
                             help="operate on a persisted matrix file instead")

    sub = subs.add_parser("lambda-opp", help="print the oppositeness highest weight")
    _add_job_arguments(sub)

    sub = subs.add_parser("jantzen-sum",
                          help="Jantzen sum of V(weight) at p, as chi-terms")
    sub.add_argument("system", nargs="?")
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--weight", help="comma-separated omega coordinates")
    sub.add_argument("--p", type=int, required=True)

    sub = subs.add_parser("weyl-dim", help="Weyl dimension of V(weight)")
    sub.add_argument("system", nargs="?")
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--weight", help="comma-separated omega coordinates")

    sub = subs.add_parser("serve", help="run the HTTP service")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--port", type=int, default=8000)
    sub.add_argument("--out", help="matrix cache directory")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "predict":
            return _emit(pipeline.predict_report(_job_config(args)))
        if args.command == "verify":
            return _emit(pipeline.verify_report(_job_config(args)))
        if args.command == "build":
            return _emit(pipeline.build_report(_job_config(args)))
        if args.command == "rank":
            if args.matrix_file:
                # p defaults to the prime of the q recorded in the header
                return _emit(pipeline.rank_report_from_file(
                    args.matrix_file, args.p))
            return _emit(pipeline.rank_report(_job_config(args)))
        if args.command == "spectrum":
            if args.matrix_file:
                return _emit(pipeline.spectrum_report_from_file(args.matrix_file))
            return _emit(pipeline.spectrum_report(_job_config(args)))
        if args.command == "lambda-opp":
            cfg = _job_config(args)
            w = lambda_opp(cfg.system, cfg.cotype, cfg.p, cfg.t, cfg.twist_orbits)
            return _emit({"schema": pipeline.SCHEMA, "lambda_opp": list(w)})
        if args.command == "jantzen-sum":
            rs = _root_system(args)
            lam = _parse_weight(rs, args.weight)
            terms = char_to_json(jantzen_sum(rs, lam, args.p))
            return _emit({"schema": pipeline.SCHEMA, "weight": list(lam),
                          "p": args.p, "terms": terms})
        if args.command == "weyl-dim":
            rs = _root_system(args)
            lam = _parse_weight(rs, args.weight)
            return _emit({"schema": pipeline.SCHEMA, "weight": list(lam),
                          "dim": str(weyl_dim(rs, lam))})
        if args.command == "serve":
            import uvicorn

            from .service import create_app
            uvicorn.run(create_app(args.out), host=args.host, port=args.port)
            return 0
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return pipeline.EXIT_CONFIG_ERROR
    raise AssertionError(f"unhandled command {args.command}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
