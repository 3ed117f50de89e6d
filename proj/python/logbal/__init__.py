"""Exact log-convexity and log-balancedness certificates for P-recursive sequences."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    AnalysisError,
    ArithmeticError,
    LogbalError,
    LookupError,
    ParseError,
    RecurrenceError,
    catalog_names,
    catalog_recurrence,
    normalize,
    run_cli,
)

__version__ = _core.version()


def terms(text, count, catalog=False):
    """Return (offset, [Fraction, ...]) for the first `count` terms."""
    offset, values = _core.terms(text, count, catalog)
    return offset, [Fraction(v) for v in values]


def classify(text, window=30, catalog=False):
    return json.loads(_core.classify(text, window, catalog))


def certify(text, catalog=False, max_base=200, probe_window=30):
    """Run the certification pipeline and return the report as a dict."""
    return json.loads(_core.certify(text, catalog, max_base, probe_window))


def replay(report):
    """Re-check a report (dict or JSON text). Returns (ok, problems)."""
    text = report if isinstance(report, str) else json.dumps(report)
    ok, _tails, _bases, problems = _core.replay(text)
    return ok, problems


def oracle(name, n):
    return Fraction(_core.oracle(name, n))


__all__ = [
    "AnalysisError",
    "ArithmeticError",
    "LogbalError",
    "LookupError",
    "ParseError",
    "RecurrenceError",
    "catalog_names",
    "catalog_recurrence",
    "certify",
    "classify",
    "normalize",
    "oracle",
    "replay",
    "run_cli",
    "terms",
]
