"""
Command-line front end for qdual.
Parses flags into a Config, dispatches to the verifier suites and the evaluators,
and prints JSON on stdout. Exit codes: 0 success, 1 usage error, 2 falsification
candidate or --compare-file mismatch, 3 failure in a proved suite.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

import database
from config import CLASSICAL_STEPS, MODES, Config, load_config
from errors import MissingVariable, QDualError
from qint import Single, f_kl, iq, lq, z_functional
from qseries import f_series, li1_aug, zeta_bz, zeta_sz
from shifts import Assignment
from utils import SuiteName, parse_ints, parse_point, timed
from valuedomain import Monomial, ONE_MONOMIAL, expr_eval
from words import parse_word

from verifier import (
    EXIT_FALSIFIED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, Report, suite_41, suite_42, suite_43, suite_44,
    suite_classical, suite_section2, suite_section3, sweep_main, verify_main,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
EVAL_KINDS = ("lq", "iq", "z", "f", "fseries", "zeta-bz", "zeta-sz", "li1")


class UsageError(Exception):
    """Bad command-line arguments."""


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; usage errors here exit with 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# parser
#---------------------------------------------------------------------------------
def _common_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with Config fields")
    common.add_argument("--db", help="sqlite ledger to record the run in")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    common.add_argument("--threads", type=int)
    common.add_argument("--output", help="write the JSON result here instead of stdout")
    common.add_argument("--compare-file", help="eval only: JSON value dump to cross-check against")
    common.add_argument("--mode", choices=MODES)
    common.add_argument("--seed", type=int)
    common.add_argument("--prime", type=int, help="modulus for the modp backend")
    common.add_argument("--trials", type=int, help="random points per comparison")
    common.add_argument("--grid-budget", type=int, help="largest grid the grid backend may evaluate")
    common.add_argument("--spot-check", action="store_true", default=None,
                        help="recompute stabilized series at a doubled cutoff")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="qdual", description="Exact verification of the q-integral duality")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common], help="check L_q(w) = L_q(tau(w)) at A = q^N D")
    verify.add_argument("--word", required=True, help='six-letter word such as "BD.AB"')
    verify.add_argument("--n", type=int, default=0)

    sweep = commands.add_parser("sweep", parents=[common], help="verify every admissible word within budgets")
    sweep.add_argument("--kmax", type=int)
    sweep.add_argument("--nmax", type=int)
    sweep.add_argument("--explore", action="store_true", help="also check B = C (exploratory)")

    suite = commands.add_parser("suite", parents=[common], help="run a named verification suite")
    suite.add_argument("name", choices=[str(name) for name in SuiteName])
    suite.add_argument("--kmax", type=int)
    suite.add_argument("--lmax", type=int)
    suite.add_argument("--nmax", type=int)
    suite.add_argument("--word-len", type=int)
    suite.add_argument("--weight", type=int)
    suite.add_argument("--order", type=int)
    suite.add_argument("--mz", type=int)
    suite.add_argument("--cases", type=int)
    suite.add_argument("--steps", type=int)

    evaluate = commands.add_parser("eval", parents=[common], help="print an exact value")
    evaluate.add_argument("kind", choices=EVAL_KINDS)
    evaluate.add_argument("--word")
    evaluate.add_argument("--n", type=int, default=0)
    evaluate.add_argument("--k", type=int)
    evaluate.add_argument("--l", type=int)
    evaluate.add_argument("--params", help="iq: comma-separated rational parameters")
    evaluate.add_argument("--index", help="zeta-bz / zeta-sz: comma-separated entries")
    evaluate.add_argument("--aug", help='li1: augmented index such as "2:1,1:0"')
    evaluate.add_argument("--point", help='evaluation point such as "q=2,B=3"')
    evaluate.add_argument("--invert", action="store_true", help="z: evaluate Z_{N,1/q}")
    evaluate.add_argument("--order", type=int, help="q truncation order (config m_q)")
    evaluate.add_argument("--mz", type=int, help="z truncation order (config m_z)")

    history = commands.add_parser("history", parents=[common], help="list runs stored in the ledger")
    history.add_argument("--limit", type=int)
    history.add_argument("--run", type=int, help="show the cases of one run")
    return parser

#---------------------------------------------------------------------------------

# output
#---------------------------------------------------------------------------------
def _emit(data, config: Config):
    text = json.dumps(data, sort_keys=True, indent=2)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _record(report: Report, config: Config):
    if not config.db_path:
        return
    database.set_db_path(config.db_path)
    database.init_db()
    run_id = database.save_report(report)
    logger.info("stored run %d in %s", run_id, config.db_path)


def _finish(report: Report, config: Config) -> int:
    _emit(report.to_dict(), config)
    _record(report, config)
    return report.exit_code

#---------------------------------------------------------------------------------

# commands
#---------------------------------------------------------------------------------
def cmd_verify(args, config: Config) -> int:
    return _finish(verify_main(parse_word(args.word), args.n, config), config)


def cmd_sweep(args, config: Config) -> int:
    k_max = config.k_max if args.kmax is None else args.kmax
    n_max = config.n_max if args.nmax is None else args.nmax
    return _finish(sweep_main(k_max, n_max, config, explore=args.explore), config)


def _pick(value, default):
    return default if value is None else value


def cmd_suite(args, config: Config) -> int:
    name = SuiteName(args.name)
    if name is SuiteName.S41:
        report = suite_41(_pick(args.kmax, 3), _pick(args.nmax, 3), config)
    elif name is SuiteName.S42:
        report = suite_42(_pick(args.kmax, 3), _pick(args.lmax, 3), _pick(args.nmax, 5),
                          _pick(args.word_len, 4), config)
    elif name is SuiteName.S43:
        report = suite_43(_pick(args.kmax, 4), _pick(args.order, 25), config)
    elif name is SuiteName.S44:
        report = suite_44(_pick(args.kmax, 4), config)
    elif name is SuiteName.SECTION2:
        report = suite_section2(_pick(args.cases, 100), _pick(args.kmax, 3), _pick(args.nmax, 3), config)
    elif name is SuiteName.SECTION3:
        report = suite_section3(_pick(args.weight, 4), config.m_q, config.m_z, config)
    else:
        report = suite_classical(config, n_steps=_pick(args.steps, CLASSICAL_STEPS))
    return _finish(report, config)


def parse_aug(text: str):
    """Parse "2:1,1:0" into ((2, 1), (1, 0))."""
    index = []
    for entry in filter(None, (part.strip() for part in text.split(","))):
        k, sep, mu = entry.partition(":")
        if not sep:
            raise ValueError(f"Invalid augmented entry: {entry!r}")
        index.append((int(k), int(mu)))
    return tuple(index)


def _require(args, *names):
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"eval {args.kind} needs --{', --'.join(missing)}")


def _at_point(value, args) -> str:
    _require(args, "point")
    return str(expr_eval(value, parse_point(args.point)))


def evaluate(args, config: Config):
    """The exact value for ``eval``: a "p/q" string at a point, or series coefficients."""
    kind = args.kind
    if kind == "lq":
        _require(args, "word")
        return _at_point(lq(parse_word(args.word), Assignment.generic(args.n)), args)
    if kind == "iq":
        _require(args, "params")
        factors = [Single(Monomial.of(c)) for c in _split_values(args.params)]
        return _at_point(iq(ONE_MONOMIAL, factors, args.n), args)
    if kind == "z":
        _require(args, "word")
        return _at_point(z_functional(parse_word(args.word, "three"), args.n, invert_q=args.invert), args)
    if kind == "f":
        _require(args, "k", "l")
        return _at_point(f_kl(args.k, args.l, args.n), args)
    if kind == "fseries":
        _require(args, "word")
        return f_series(parse_word(args.word), config.m_q).to_rows()
    if kind == "zeta-bz":
        _require(args, "index")
        return [str(c) for c in zeta_bz(tuple(parse_ints(args.index)), config.m_q).q_coefficients()]
    if kind == "zeta-sz":
        _require(args, "index")
        return [str(c) for c in zeta_sz(tuple(parse_ints(args.index)), config.m_q).q_coefficients()]
    _require(args, "aug")
    return li1_aug(parse_aug(args.aug), config.m_q, config.m_z).to_rows()


def _split_values(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def cmd_eval(args, config: Config) -> int:
    value, ms = timed(f"eval {args.kind}")(evaluate)(args, config)
    _emit({"kind": args.kind, "value": value, "ms": round(ms, 3)}, config)
    if args.compare_file:
        with open(args.compare_file, "r", encoding="utf-8") as handle:
            expected = json.load(handle)
        if isinstance(expected, dict):
            expected = expected.get("value")
        if expected != value:
            print(f"value differs from {args.compare_file}", file=sys.stderr)
            return EXIT_FALSIFIED
    return EXIT_OK


def cmd_history(args, config: Config) -> int:
    if config.db_path:
        database.set_db_path(config.db_path)
    database.init_db()
    if args.run is not None:
        keys = ("word", "dual", "n", "verdict", "kind", "witness", "ms")
        rows = database.get_cases_for_run(args.run)
    else:
        keys = ("id", "suite", "mode", "seed", "created", "total", "equal", "probable", "failed", "skipped",
                "unverified")
        rows = database.get_runs(args.limit)
    _emit([dict(zip(keys, row)) for row in rows], config)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "suite": cmd_suite,
    "eval": cmd_eval,
    "history": cmd_history,
}

#---------------------------------------------------------------------------------


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"qdual: {exc}", file=sys.stderr)
        return EXIT_USAGE
    level = args.log_level or os.getenv("QDUAL_LOG_LEVEL", "WARNING")
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    try:
        config = load_config(
            args.config, mode=args.mode, seed=args.seed, threads=args.threads, output=args.output,
            db_path=args.db, spot_check=args.spot_check, prime=args.prime, trials=args.trials,
            grid_budget=args.grid_budget, m_q=getattr(args, "order", None), m_z=getattr(args, "mz", None),
        )
        return COMMANDS[args.command](args, config)
    except (UsageError, ValueError, MissingVariable, OSError) as exc:
        print(f"qdual: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QDualError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INTERNAL
