# Copyright 2026 cppforge contributors.
# This Software is subject to the terms of the XMOS Public Licence: Version 1.
"""
cppforge command line: verify, construct, search, kernel-check, grid.

Polynomials are JSON lists of coefficient codes, lowest degree first.
Reports go to stdout (or --out); log records go to stderr.
"""

import argparse
import datetime
import json
import logging
import sys

import pydantic

from . import (CppForgeException, FieldMismatch, ParseError,
               ReconstructionMismatch, __version__)
from .common_utils import dumps, json_to_dict, rows_to_csv
from .config import CONSTRUCTIONS, SWEEPS, RunConfig
from .cpp_search import enumerate_complete_mappings, write_catalog
from .field_maps import (PPoly, binomial_kernel_all_c,
                         binomial_kernel_criterion, ppoly_permutes_kernel)
from .gf_core import TowerDesc, make_field, make_tower
from .grid_sweeps import run_sweep
from .lift_constructions import (binary_monomial_construct,
                                 monomial_cpp_check, norm_lift,
                                 trace_lift_binomial, trace_lift_general,
                                 trace_lift_simple, trace_permutation_lift)
from .perm_check import fiber_criterion_verify, is_complete_permutation
from .polynomial import Poly

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BUG = 1
EXIT_PRECONDITION = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_PARSE = 4

CSV_COLUMNS = {
    "verify": ("field", "poly", "is_permutation", "witness", "plus_x_is_permutation", "plus_x_witness", "complete"),
    "construct": ("construction", "field", "params", "predicted_cpp", "verified_cpp"),
    "search": ("field", "table", "poly_coeffs", "normalized"),
    "kernel-check": ("field", "k", "c", "case", "predicted", "exhaustive"),
    "grid": ("sweep", "max_order", "seed", "total", "agreements", "skipped", "counterexamples"),
}

CSV_HELP = "CSV columns:\n" + "\n".join(f"  {cmd}: {', '.join(cols)}" for cmd, cols in CSV_COLUMNS.items())

# Flags whose values are JSON lists on the command line.
LIST_FLAGS = ("mod", "tmod", "poly", "h")


class UsageError(ParseError):
    def __init__(self, message):
        CppForgeException.__init__(self, message)
        self.what = "command line"
        self.text = ""
        self.position = None
        self.reason = message


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (// comments allowed); flags override it")
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--r", type=int, help="degree of F_q over F_p")
    common.add_argument("--n", type=int, help="degree of F_{q^n} over F_q")
    common.add_argument("--mod", help="F_q modulus residues, e.g. [1,1,1]")
    common.add_argument("--tmod", help="tower modulus, one residue list per coefficient")
    common.add_argument("--format", choices=("json", "csv", "text"), help="report format (default json)")
    common.add_argument("--out", help="write the report (search: the catalogue) to this file")
    common.add_argument("--cap", type=int, help="largest field order for exhaustive checks")
    common.add_argument("--reproducible", action="store_true", default=None, help="omit the timestamp")
    common.add_argument("--verbose", action="store_true", default=None, help="Turn verbose mode on")
    return common


def parse_arguments(argv=None) -> argparse.Namespace:
    common = _common_flags()
    parser = _Parser(prog="cppforge", description=__doc__, epilog=CSV_HELP,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"cppforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", parents=[common], help="exhaustive CPP test of one polynomial")
    verify.add_argument("--poly", required=True, help="coefficient codes, lowest degree first")
    verify.add_argument("--lambda", dest="lambda_kind", choices=("trace", "norm"),
                        help="also run the fibre criterion through tr or nor")
    verify.add_argument("--h", help="h over F_q for the fibre criterion (read off the fibres if omitted)")

    construct = sub.add_parser("construct", parents=[common], help="build a lifted CPP and verify it")
    construct.add_argument("target", choices=CONSTRUCTIONS)
    construct.add_argument("--h", help="h over F_q as coefficient codes")
    construct.add_argument("--L", help="p-polynomial, L=[(i,a_i),...]")
    for flag in ("k", "a", "s", "e", "t", "alpha"):
        construct.add_argument(f"--{flag}", type=int)

    search = sub.add_parser("search", parents=[common], help="enumerate complete mappings of F_q")
    search.add_argument("--all", dest="all_translates", action="store_true", default=None,
                        help="include every translate f + c, not only f(0) = 0")

    kernel = sub.add_parser("kernel-check", parents=[common],
                            help="x^(p^k) - cx on ker(tr): criterion against exhaustive check")
    kernel.add_argument("--k", type=int)
    kernel.add_argument("--c", type=int, help="omit to run every c in F_q")
    kernel.add_argument("--L", help="general p-polynomial, checked exhaustively only")
    kernel.add_argument("--theta", type=int, help="shift for --L (default 0)")

    grid = sub.add_parser("grid", parents=[common], help="run an equivalence sweep")
    grid.add_argument("target", choices=SWEEPS)
    grid.add_argument("--max-order", dest="max_order", type=int)
    grid.add_argument("--seed", type=int)
    grid.add_argument("--random-count", dest="random_count", type=int,
                      help="seeded random h per field (default 100)")

    return parser.parse_args(argv)


def _json_flag(name: str, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"--{name}", text, err.pos, err.msg)


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, the config file and the flags given on the command line."""
    values = {}
    if args.config:
        values.update(json_to_dict(args.config))
    for key, value in vars(args).items():
        if key == "config" or value is None:
            continue
        values[key] = _json_flag(key, value) if key in LIST_FLAGS and isinstance(value, str) else value
    try:
        return RunConfig(**values)
    except pydantic.ValidationError as err:
        first = err.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "config"
        raise ParseError("configuration", where, None, first["msg"])


# -- fields and polynomials ------------------------------------------------------------

def home_of(cfg: RunConfig):
    if cfg.n is not None:
        return make_tower(cfg.p, cfg.r, cfg.n, cfg.mod, cfg.tmod)
    return make_field(cfg.p, cfg.r, cfg.mod)


def tower_of(cfg: RunConfig) -> TowerDesc:
    return make_tower(cfg.p, cfg.r, cfg.n, cfg.mod, cfg.tmod)


def _required(cfg: RunConfig, *names):
    for name in names:
        if getattr(cfg, name) is None:
            raise ParseError(f"--{name}", "", None, f"required by {cfg.command} {cfg.target or ''}".strip())
    return [getattr(cfg, name) for name in names]


# -- commands ---------------------------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> dict:
    home = home_of(cfg)
    f = Poly.parse(home, json.dumps(_required(cfg, "poly")[0]), "--poly")
    first, second = is_complete_permutation(f, cap=cfg.effective_cap())
    report = {
        "command": "verify",
        "field": home.describe(),
        "poly": f.to_list(),
        "f": first.to_dict(),
        "f_plus_x": second.to_dict(),
        "complete": first.is_permutation and second.is_permutation,
    }
    if cfg.lambda_kind is not None:
        if not isinstance(home, TowerDesc):
            raise FieldMismatch("--lambda needs a tower (--n)")
        h = Poly.parse(home.base, json.dumps(cfg.h), "--h") if cfg.h is not None else None
        fibres = fiber_criterion_verify(f, h, cfg.lambda_kind, cap=cfg.effective_cap())
        report["fibre_criterion"] = fibres.to_dict()
    return report


def _build(cfg: RunConfig):
    if cfg.target == "binary-monomial":
        e, t, k, alpha = _required(cfg, "e", "t", "k", "alpha")
        return binary_monomial_construct(e, t, k, alpha)
    tower = tower_of(cfg)
    if cfg.target == "monomial":
        alpha, s = _required(cfg, "alpha", "s")
        return monomial_cpp_check(alpha, s, tower)
    h = Poly.parse(tower.base, json.dumps(_required(cfg, "h")[0]), "--h")
    if cfg.target == "norm-lift":
        return norm_lift(h, tower)
    if cfg.target == "trace-simple":
        return trace_lift_simple(h, tower)
    if cfg.target == "trace-perm":
        return trace_permutation_lift(h, tower)
    if cfg.target == "trace-binomial":
        k, a = _required(cfg, "k", "a")
        return trace_lift_binomial(h, k, a, tower)
    L_text, a = _required(cfg, "L", "a")
    return trace_lift_general(h, PPoly.parse(tower, L_text), a, tower)


def cmd_construct(cfg: RunConfig) -> dict:
    result = _build(cfg)
    if result.tower.order <= cfg.effective_cap():
        result.verify(cap=cfg.effective_cap())
    else:
        result.notes.append(f"order {result.tower.order} above cap {cfg.effective_cap()}: not verified")
    report = {"command": "construct"}
    report.update(result.to_dict())
    report["agrees"] = result.agrees
    return report


def cmd_search(cfg: RunConfig) -> dict:
    field = make_field(cfg.p, cfg.r, cfg.mod)
    mappings = enumerate_complete_mappings(field, normalized_only=not cfg.all_translates)
    report = {"command": "search", "field": field.describe(), "count": len(mappings)}
    if cfg.out:
        write_catalog(cfg.out, mappings)
        report["catalog"] = cfg.out
    else:
        report["mappings"] = [m.to_dict() for m in mappings]
    return report


def cmd_kernel_check(cfg: RunConfig) -> dict:
    tower = tower_of(cfg)
    report = {"command": "kernel-check", "field": tower.describe()}
    if cfg.L is not None:
        L = PPoly.parse(tower, cfg.L)
        theta = cfg.theta or 0
        report.update({"L": L.describe(), "theta": theta, "exhaustive": ppoly_permutes_kernel(L, theta)})
        return report
    L = PPoly.binomial_head(tower, cfg.k)
    cs = [cfg.c] if cfg.c is not None else list(range(tower.q))
    rows = []
    for c in cs:
        verdict = binomial_kernel_criterion(cfg.k, c, tower)
        row = verdict.to_dict()
        row["exhaustive"] = ppoly_permutes_kernel(L, c)
        rows.append(row)
    holds, failing = binomial_kernel_all_c(cfg.k, tower)
    report.update({"k": cfg.k, "every_c": holds, "every_c_failing": failing, "results": rows})
    return report


def cmd_grid(cfg: RunConfig) -> dict:
    report = {"command": "grid"}
    report.update(run_sweep(cfg.target, max_order=cfg.max_order, seed=cfg.seed,
                            random_count=cfg.random_count).to_dict())
    return report


COMMANDS = {
    "verify": cmd_verify,
    "construct": cmd_construct,
    "search": cmd_search,
    "kernel-check": cmd_kernel_check,
    "grid": cmd_grid,
}


# -- output -------------------------------------------------------------------------------------

def csv_rows(report: dict) -> list:
    command = report["command"]
    if command == "verify":
        return [{"field": report["field"], "poly": report["poly"],
                 "is_permutation": report["f"]["is_permutation"], "witness": report["f"]["witness"],
                 "plus_x_is_permutation": report["f_plus_x"]["is_permutation"],
                 "plus_x_witness": report["f_plus_x"]["witness"], "complete": report["complete"]}]
    if command == "search":
        return report.get("mappings", [])
    if command == "kernel-check":
        if "results" not in report:
            return [{"field": report["field"], "exhaustive": report["exhaustive"]}]
        return [dict(row, field=report["field"]) for row in report["results"]]
    if command == "grid":
        return [dict(report, counterexamples=len(report["counterexamples"]))]
    return [report]


def render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return rows_to_csv(csv_rows(report), CSV_COLUMNS[report["command"]])
    if fmt == "text":
        return "".join(f"{key}: {value if not isinstance(value, (dict, list)) else dumps(value)}\n"
                       for key, value in report.items())
    return dumps(report, indent=2) + "\n"


def run(cfg: RunConfig):
    """Execute one command; returns (report, exit status)."""
    report = COMMANDS[cfg.command](cfg)
    if not cfg.reproducible and cfg.format == "json":
        report["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    status = EXIT_OK
    if cfg.command == "grid" and report["counterexamples"]:
        status = EXIT_COUNTEREXAMPLE
    return report, status


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("cppforge").setLevel(logging.DEBUG if verbose else logging.INFO)


def main(argv=None) -> int:
    try:
        cfg = build_config(parse_arguments(argv))
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    _setup_logging(cfg.verbose)
    try:
        report, status = run(cfg)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except ReconstructionMismatch as err:
        logger.error("internal consistency check failed: %s", err)
        return EXIT_BUG
    except CppForgeException as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = render(report, cfg.format)
    if cfg.out and cfg.command != "search":
        with open(cfg.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
