"""Odd cycles in planar graphs: exact counting, tumor cleaning, reduction and
measure optimization.

Graphs and measures are plain dicts in the same layout as the JSON files
the command-line tool reads and writes.
"""

import json

from . import _oddcycle
from ._oddcycle import (
    BudgetExceeded,
    Error,
    InvalidArgument,
    InvariantViolation,
    MalformedEmbedding,
    NotATumorGraph,
    PreconditionError,
    expected_good_count,
    known_bound,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "InvalidArgument",
    "InvariantViolation",
    "MalformedEmbedding",
    "NotATumorGraph",
    "PreconditionError",
    "beta",
    "construct",
    "count",
    "count_good_cycles",
    "expected_good_count",
    "generate_planar",
    "known_bound",
    "kkt_residual",
    "objective",
    "optimize",
    "reduce",
    "tumor_clean",
    "validate_embedding",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def count(graph, pattern, threads=1):
    """Number of copies of a pattern such as "C7" or "P6"."""
    return _oddcycle.count(_text(graph), pattern, threads)


def construct(m, t, variant="a", shape="path"):
    """Blowup of C_m with t vertices per tumor, as a graph dict with "B"."""
    return json.loads(_oddcycle.construct(m, t, variant, shape))


def generate_planar(n, seed, p=0.0):
    return json.loads(_oddcycle.generate_planar(n, seed, p))


def validate_embedding(graph):
    return json.loads(_oddcycle.validate_embedding(_text(graph)))


def count_good_cycles(graph, m, B=None, threads=1):
    """Good/bad census of C_{2m+1}."""
    return json.loads(_oddcycle.count_good_cycles(_text(graph), m, B, threads))


def tumor_clean(graph, m, B=None, mode="auto"):
    return json.loads(_oddcycle.tumor_clean(_text(graph), m, B, mode))


def reduce(graph, m, partition="auto"):
    return json.loads(_oddcycle.reduce(_text(graph), m, partition))


def optimize(m, clique=0, starts=64, max_iters=20000, seed=0, threads=1):
    return json.loads(
        _oddcycle.optimize(m, clique, starts, max_iters, seed, threads))


def objective(measure, m):
    return _oddcycle.objective(_text(measure), m)


def beta(measure, pattern):
    return _oddcycle.beta(_text(measure), pattern)


def kkt_residual(measure, m):
    return json.loads(_oddcycle.kkt_residual(_text(measure), m))
