"""Command-line front end.

Every command prints one JSON report on stdout::

    {"command": [...], "fingerprint": "...", "results": {...}, "version": "..."}

Exit codes: 0 ok, 2 input error, 3 size guard exceeded, 4 inconclusive
convergence.  Errors are reported as a JSON object on stderr.
"""

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .average import verify_optimal_undiscounted
from .cm import (DEFAULT_GRID, DEFAULT_SCHEDULE_N, beta_threshold_search, check_cm_undiscounted,
                 default_schedule, theorem11_verify, theorem13_verify, vanishing_discount)
from .discounted import DEFAULT_TOL, shapley_iterate, solve_discounted_exact
from .errors import CMStochError, SizeGuardError
from .fixtures import ALL_FIXTURES, fixture_text
from .matrix import solve_matrix_game
from .model import format_rational, make_strategy, parse_game, parse_matrix, parse_rational
from .report import (cm_report_data, discounted_solution_data, matrix_solution_data, strategy_data,
                     to_data, trace_data, vector_data)
from .reproduce import reproduce

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_INCONCLUSIVE = 0, 2, 3, 4


class InputError(CMStochError, ValueError):
    pass


class Inconclusive(CMStochError):
    def __init__(self, msg, payload, raw):
        super().__init__(msg)
        self.payload = payload
        self.raw = raw


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_game(path):
    raw = _read(path)
    if not raw.strip():
        raise InputError(f"{path}: empty game file")
    return parse_game(raw), raw


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _grid(text):
    try:
        return tuple(parse_rational(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _load_strategy(game, path, player):
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if isinstance(data, dict):
        data = [data.get(f"s{s + 1}") for s in range(game.n_states)]
    try:
        return make_strategy(game, data, player)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _matrix_input(args):
    if args.matrix is not None:
        raw = args.matrix.encode()
    elif args.file is not None:
        raw = _read(args.file)
    else:
        raise InputError("give a matrix with --matrix or a file")
    try:
        data = json.loads(raw)
        if isinstance(data, dict):
            data = data.get("matrix", data.get("A"))
        return parse_matrix(data), raw
    except (json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


# --- commands ----------------------------------------------------------------

def cmd_matrix(args):
    M, raw = _matrix_input(args)
    sol = solve_matrix_game(M)
    if args.action == "cm-check":
        return {"completely_mixed": sol.completely_mixed, "certificate": to_data(sol.certificate)}, raw
    return matrix_solution_data(sol), raw


def cmd_discounted(args):
    game, raw = _load_game(args.game)
    if args.exact:
        sol = solve_discounted_exact(game, args.beta)
    else:
        sol = shapley_iterate(game, args.beta, args.tol)
    return discounted_solution_data(sol), raw


def cmd_verify_undiscounted(args):
    game, raw = _load_game(args.game)
    f = _load_strategy(game, args.f, 1)
    g = _load_strategy(game, args.g, 2)
    check = verify_optimal_undiscounted(game, f, g)
    payload = {
        "optimal": check.optimal,
        "value": vector_data(check.value),
        "gap_p1": vector_data(check.gap_p1),
        "gap_p2": vector_data(check.gap_p2),
        "f": strategy_data(f),
        "g": strategy_data(g),
    }
    return payload, raw + _read(args.f) + _read(args.g)


def cmd_solve(args):
    return {"matrix": cmd_matrix, "discounted": cmd_discounted,
            "undiscounted-verify": cmd_verify_undiscounted}[args.kind](args)


def cmd_analyze(args):
    game, raw = _load_game(args.game)
    thr = beta_threshold_search(game, args.beta_grid)
    payload = {
        "controller": game.controller.value,
        "discounted": {
            "flags": [{"beta": format_rational(b), "completely_mixed": ok} for b, ok in thr.flags],
            "beta0": None if thr.beta0 is None else format_rational(thr.beta0),
            "cm_for_all_tested": thr.cm_for_all_tested,
        },
    }
    if args.undiscounted:
        payload["undiscounted"] = cm_report_data(check_cm_undiscounted(game))
        trace = vanishing_discount(game, default_schedule(args.schedule_n))
        payload["vanishing_discount"] = trace_data(trace)
        t11 = theorem11_verify(game)
        payload["theorem11"] = to_data(t11)
        t13 = theorem13_verify(game, args.beta_grid, default_schedule(args.schedule_n))
        payload["theorem13"] = _t13_data(t13)
        if trace.status == "inconclusive":
            raise Inconclusive("vanishing-discount values did not settle", payload, raw)
    return payload, raw


def _t13_data(t13):
    return {
        "values": vector_data(t13.values),
        "value_source": t13.value_source,
        "grid": vector_data(t13.grid),
        "discounted_values": [vector_data(v) for v in t13.discounted_values],
        "per_state": [{**to_data(p), "state": f"s{p['state'] + 1}"} for p in t13.per_state],
        "converse_violations": [f"s{s + 1}" for s in t13.converse_violations],
        "passed": t13.passed,
    }


def cmd_verify_theorems(args):
    game, raw = _load_game(args.game)
    schedule = default_schedule(args.schedule_n)
    trace = vanishing_discount(game, schedule)
    thr = beta_threshold_search(game, args.beta_grid)
    cmu = check_cm_undiscounted(game)
    t11 = theorem11_verify(game)
    t13 = theorem13_verify(game, args.beta_grid, schedule)
    # CM undiscounted must imply CM discounted at every tested beta
    t1_ok = (not cmu.completely_mixed) or thr.cm_for_all_tested
    limit_ok = trace.status != "certified" or trace.check.optimal
    payload = {
        "discounted_cm_from_undiscounted_cm": {"applicable": cmu.completely_mixed,
                                               "passed": t1_ok},
        "limit_strategy_optimal": {"status": trace.status, "passed": limit_ok},
        "symmetric_stage_games": {**to_data(t11)},
        "nonzero_value_transfer": _t13_data(t13),
    }
    payload["passed"] = t1_ok and limit_ok and t11.passed and t13.passed
    if trace.status == "inconclusive":
        raise Inconclusive("vanishing-discount values did not settle", payload, raw)
    return payload, raw


def cmd_reproduce(args):
    if args.emit_fixtures:
        os.makedirs(args.emit_fixtures, exist_ok=True)
        for name in ALL_FIXTURES:
            with open(os.path.join(args.emit_fixtures, f"{name}.json"), "w", encoding="utf-8") as fh:
                fh.write(fixture_text(name))
    names = ALL_FIXTURES if args.all or not args.example else (args.example,)
    payload = reproduce(names)
    raw = "".join(fixture_text(n) for n in names).encode()
    return payload, raw


# --- plumbing ------------------------------------------------------------------

def _pretty(results, out):
    def walk(obj, prefix=""):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(v, f"{prefix}{k}.")
        elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
            for n, v in enumerate(obj):
                walk(v, f"{prefix}{n}.")
        else:
            out.write(f"{prefix[:-1]:<60} {json.dumps(obj)}\n")
    walk(results)


def build_parser():
    # SUPPRESS keeps a subcommand's copy of a flag from resetting one given earlier
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="print a flat human-readable table")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include wall-clock timing")

    p = argparse.ArgumentParser(prog="cmstoch", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def matrix_args(sp):
        sp.add_argument("--matrix", help='JSON matrix, e.g. \'[["1","2"],["2","1"]]\'')
        sp.add_argument("file", nargs="?", help="JSON file holding a matrix")

    def discounted_args(sp):
        sp.add_argument("--beta", type=_rational, required=True)
        sp.add_argument("--exact", action="store_true", help="exact solve with fixed-point certificate")
        sp.add_argument("--tol", type=_rational, default=DEFAULT_TOL)
        sp.add_argument("game")

    def verify_args(sp):
        sp.add_argument("--f", required=True, help="player 1 strategy file")
        sp.add_argument("--g", required=True, help="player 2 strategy file")
        sp.add_argument("game")

    def analysis_args(sp):
        sp.add_argument("game")
        sp.add_argument("--beta-grid", type=_grid, default=DEFAULT_GRID)
        sp.add_argument("--schedule-n", type=int, default=DEFAULT_SCHEDULE_N)

    solve = sub.add_parser("solve", parents=[common], help="solve a matrix or discounted game")
    ssub = solve.add_subparsers(dest="kind", required=True)
    matrix_args(ssub.add_parser("matrix", parents=[common]))
    discounted_args(ssub.add_parser("discounted", parents=[common]))
    verify_args(ssub.add_parser("undiscounted-verify", parents=[common]))
    solve.set_defaults(func=cmd_solve, action="solve")

    mat = sub.add_parser("matrix", parents=[common], help="matrix game tools")
    mat.add_argument("action", choices=["solve", "cm-check"])
    matrix_args(mat)
    mat.set_defaults(func=cmd_matrix)

    sd = sub.add_parser("solve-discounted", parents=[common], help="same as 'solve discounted'")
    discounted_args(sd)
    sd.set_defaults(func=cmd_discounted)

    vu = sub.add_parser("verify-undiscounted", parents=[common],
                        help="check a stationary pair for undiscounted optimality")
    verify_args(vu)
    vu.set_defaults(func=cmd_verify_undiscounted)

    an = sub.add_parser("analyze-cm", parents=[common], help="completely-mixed analysis")
    analysis_args(an)
    an.add_argument("--undiscounted", action="store_true",
                    help="also analyze the limiting-average game")
    an.set_defaults(func=cmd_analyze)

    vt = sub.add_parser("verify-theorems", parents=[common], help="run every structural check")
    analysis_args(vt)
    vt.set_defaults(func=cmd_verify_theorems)

    rp = sub.add_parser("reproduce", parents=[common], help="self-check on the reference games")
    group = rp.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--example", choices=ALL_FIXTURES)
    rp.add_argument("--emit-fixtures", metavar="DIR", help="also write the fixture files to DIR")
    rp.set_defaults(func=cmd_reproduce)
    return p


def _error(kind, exc, code):
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
    return code


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "schedule_n", 2) < 2:
        return _error("InputError", "--schedule-n must be at least 2", EXIT_INPUT)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        results, raw = args.func(args)
    except Inconclusive as exc:
        results, raw = exc.payload, exc.raw
        code = EXIT_INCONCLUSIVE
        _error("Inconclusive", exc, code)
    except SizeGuardError as exc:
        return _error(type(exc).__name__, exc, EXIT_GUARD)
    except (CMStochError, ValueError) as exc:
        return _error(type(exc).__name__, exc, EXIT_INPUT)
    if getattr(args, "pretty", False):
        _pretty(results, sys.stdout)
        return code
    report = {
        "command": argv,
        "fingerprint": hashlib.sha256(raw).hexdigest(),
        "results": results,
        "version": __version__,
    }
    if getattr(args, "timing", False):
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
