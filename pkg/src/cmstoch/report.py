"""JSON-ready conversion of results (rationals become ``"p/q"`` strings)."""

import dataclasses
import enum
from fractions import Fraction

from .model import StochasticGame, format_rational, game_to_dict


def to_data(obj, rational_ints=False):
    """Recursively convert results; ``rational_ints`` also renders plain ints as ``"p/q"`` strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction) or (rational_ints and isinstance(obj, int)):
        return format_rational(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, StochasticGame):
        return game_to_dict(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: to_data(getattr(obj, f.name), rational_ints)
                for f in dataclasses.fields(obj) if f.repr}
    if isinstance(obj, dict):
        return {str(k): to_data(v, rational_ints) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_data(x, rational_ints) for x in obj]
    raise TypeError(f"cannot convert {type(obj).__name__} to JSON data")


def strategy_data(strategy):
    return {f"s{s + 1}": [format_rational(p) for p in vec] for s, vec in enumerate(strategy)}


def vector_data(values):
    return [format_rational(v) for v in values]


def matrix_solution_data(sol):
    return {
        "value": format_rational(sol.value),
        "p1_vertices": [vector_data(v) for v in sol.p1_vertices],
        "p2_vertices": [vector_data(v) for v in sol.p2_vertices],
        "completely_mixed": sol.completely_mixed,
        "certificate": to_data(sol.certificate),
    }


def discounted_solution_data(sol):
    out = {
        "beta": format_rational(sol.beta),
        "values": vector_data(sol.values),
        "normalized_values": vector_data((1 - sol.beta) * v for v in sol.values),
        "p1_strategy": strategy_data(sol.p1_strategy),
        "p2_strategy": strategy_data(sol.p2_strategy),
        "residual": format_rational(sol.residual),
        "exact": sol.exact,
        "auxiliary_games": [matrix_solution_data(s) for s in sol.state_solutions],
    }
    if sol.iterations is not None:
        out["iterations"] = sol.iterations
        out["iteration_bound"] = sol.iteration_bound
    return out


def cm_report_data(rep):
    out = {
        "completely_mixed": rep.completely_mixed,
        "values": vector_data(rep.values),
    }
    if rep.beta is not None:
        out["beta"] = format_rational(rep.beta)
        out["certificates"] = to_data(rep.certificates)
    if rep.zero_tests:
        out["zero_tests"] = [
            {"player": t["player"], "state": f"s{t['state'] + 1}", "action": t["action"] + 1,
             "zero_possible": t["zero_possible"]} for t in rep.zero_tests]
    if rep.witness is not None:
        w = dict(rep.witness)
        w["state"] = f"s{w['state'] + 1}"
        if "action" in w:
            w["action"] += 1
        w["strategy"] = strategy_data(w["strategy"])
        out["witness"] = w
    else:
        out["witness"] = None
    return out


def trace_data(trace):
    return {
        "status": trace.status,
        "betas": vector_data(trace.betas),
        "normalized_values": [vector_data(u) for u in trace.normalized],
        "limit_values": None if trace.limit_values is None else vector_data(trace.limit_values),
        "f0": None if trace.f0 is None else strategy_data(trace.f0),
        "g0": None if trace.g0 is None else strategy_data(trace.g0),
        "limit_pair_optimal": None if trace.check is None else trace.check.optimal,
    }
