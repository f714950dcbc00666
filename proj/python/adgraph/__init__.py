"""Layered attack-graph analysis and defense planning.

The heavy lifting happens in the compiled ``_core`` module. Functions here
return plain Python data parsed from its canonical JSON output.
"""

import json

from . import _core
from ._core import AdgraphError, Scenario, __version__

__all__ = [
    "AdgraphError",
    "Scenario",
    "__version__",
    "load",
    "validate",
    "graph",
    "graph_dot",
    "chains",
    "search",
    "check_chain",
    "potential",
    "plan_cut",
    "plan_budget",
    "plan_coverage",
    "risk",
    "simulate",
    "run_cli",
]


def load(path):
    return Scenario.load(str(path))


def validate(scenario):
    return json.loads(scenario.validate())


def graph(scenario):
    return json.loads(_core.graph_json(scenario))


def graph_dot(scenario):
    return _core.graph_dot(scenario)


def chains(scenario, targets=None, max_len=8, semantics="accumulated", threat="sum"):
    if targets is None:
        targets = scenario.targets
    return json.loads(_core.enumerate_chains(scenario, list(targets), max_len, semantics, threat))


def search(scenario, objective="min_cost", targets=None, max_len=8, semantics="accumulated",
           threat="sum"):
    if targets is None:
        targets = scenario.targets
    return json.loads(
        _core.search_chain(scenario, objective, list(targets), max_len, semantics, threat))


def check_chain(scenario, edges, semantics="accumulated"):
    return json.loads(_core.check_chain(scenario, list(edges), semantics))


def potential(scenario, source, target, max_len=8):
    return json.loads(_core.potential_chains(scenario, source, target, max_len))


def plan_cut(scenario, max_len=8):
    return json.loads(_core.plan_cut(scenario, max_len))


def plan_budget(scenario, budget, objective="threat", max_len=8):
    return json.loads(_core.plan_budget(scenario, budget, objective, max_len))


def plan_coverage(scenario, edges):
    return json.loads(_core.plan_coverage(scenario, list(edges)))


def risk(scenario, max_len=8):
    return json.loads(_core.risk(scenario, max_len))


def simulate(scenario, runs=1, max_turns=10, attacker="greedy_cheapest", defender="none",
             budget_per_turn=0.0, seed=0, semantics="accumulated"):
    return json.loads(
        _core.simulate(scenario, runs, max_turns, attacker, defender, budget_per_turn, seed,
                       semantics))


def run_cli(*args):
    """Runs one CLI command in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
