"""Exact decomposability checks for exchangeable binary sequences.

Measures, statistics and urns are given as dicts (or JSON strings) in the
same shape the command line tool reads. Exact values come back as
fractions.Fraction; reports come back as dicts with rational fields left as
"p/q" strings, matching the JSON output of the tool.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

from . import _core
from ._core import HoeffdingUrnError

Document = Union[str, dict]

__all__ = [
    "HoeffdingUrnError",
    "beta",
    "dirac",
    "discrete",
    "moment_sequence",
    "truncated_uniform",
    "statistic",
    "describe",
    "moments",
    "config_probability",
    "canonical_kernel",
    "project",
    "prop1_residual",
    "weak_independence_residual",
    "definition_a",
    "check",
    "classify",
    "recover_beta",
    "moment_recursion_residual",
    "next_moment",
    "simulate",
]


def _doc(value: Document) -> str:
    return value if isinstance(value, str) else json.dumps(value)


def _q(value: Any) -> str:
    return str(Fraction(value))


def _fractions(values) -> list[Fraction]:
    return [Fraction(v) for v in values]


def beta(alpha, b) -> dict:
    return {"type": "beta", "alpha": _q(alpha), "beta": _q(b)}


def dirac(location) -> dict:
    return {"type": "discrete", "atoms": [[_q(location), "1"]]}


def discrete(atoms) -> dict:
    return {"type": "discrete", "atoms": [[_q(x), _q(w)] for x, w in atoms]}


def moment_sequence(values) -> dict:
    return {"type": "moments", "values": [_q(v) for v in values]}


def truncated_uniform(epsilon, order: int) -> dict:
    return {"type": "truncated_uniform", "epsilon": _q(epsilon), "order": order}


def statistic(values) -> dict:
    return {"n": len(values) - 1, "values": [_q(v) for v in values]}


def describe(measure: Document) -> str:
    return _core.describe(_doc(measure))


def moments(measure: Document, max_n: int) -> list[Fraction]:
    return _fractions(_core.moments(_doc(measure), max_n))


def config_probability(measure: Document, n: int, zeros: int) -> Fraction:
    return Fraction(_core.config_probability(_doc(measure), n, zeros))


def canonical_kernel(measure: Document, n: int) -> list[Fraction]:
    return _fractions(_core.canonical_kernel(_doc(measure), n))


def project(measure: Document, stat: Document) -> dict:
    return json.loads(_core.project(_doc(measure), _doc(stat)))


def prop1_residual(measure: Document, n: int, u: int, z: int) -> Fraction:
    return Fraction(_core.prop1_residual(_doc(measure), n, u, z))


def weak_independence_residual(measure: Document, n: int, u: int, z: int) -> Fraction:
    return Fraction(_core.weak_independence_residual(_doc(measure), n, u, z))


def definition_a(measure: Document, n: int) -> bool:
    return _core.definition_a(_doc(measure), n)


def check(measure: Document, n_max: int, method: str = "all") -> dict:
    return json.loads(_core.check(_doc(measure), n_max, method))


def classify(measure: Document, n_max: int) -> dict:
    return json.loads(_core.classify(_doc(measure), n_max))


def recover_beta(c1, c2) -> tuple[Fraction, Fraction]:
    alpha, b = _core.recover_beta(_q(c1), _q(c2))
    return Fraction(alpha), Fraction(b)


def moment_recursion_residual(measure: Document, n: int) -> Fraction:
    return Fraction(_core.moment_recursion_residual(_doc(measure), n))


def next_moment(x, y, z) -> Fraction:
    return Fraction(_core.next_moment(_q(x), _q(y), _q(z)))


def simulate(*, n: int, trials: int, seed: int, measure: Document | None = None,
             urn: Document | None = None) -> dict:
    if (measure is None) == (urn is None):
        raise ValueError("give exactly one of measure or urn")
    if measure is not None:
        return json.loads(_core.simulate_measure(_doc(measure), n, trials, seed))
    return json.loads(_core.simulate_urn(_doc(urn), n, trials, seed))
