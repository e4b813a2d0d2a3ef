"""Reference tables of expected perp dimensions.

The package ships a small JSON file of known coefficient sequences and
graded totals.  ``--check`` in the command-line tool and the acceptance
tests compare computed values against these tables; nothing in here
recomputes anything.

For the commutative systems the totals are closed-form (factorials and
Catalan numbers), so those are generated on demand instead of stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import comb, factorial

from .generators import check_system

__all__ = [
    "ExpectedSeries",
    "expected_series",
    "expected_total",
    "check_coefficients",
]


@dataclass(frozen=True)
class ExpectedSeries:
    """One known coefficient table.

    ``coefficients[d]`` is the expected perp dimension in degree ``d``.
    ``zero_beyond`` is the first degree where the series is known to have
    terminated (every degree at or past it is 0), or ``None`` when the
    tail has not been tabulated.
    """

    system: str
    n: int
    coefficients: tuple
    zero_beyond: int | None
    source: str

    def expected_at(self, d):
        """Expected dimension in degree d, or None if not tabulated."""
        if d < len(self.coefficients):
            return self.coefficients[d]
        if self.zero_beyond is not None and d >= self.zero_beyond:
            return 0
        return None


_TABLES = None


def _load():
    global _TABLES
    if _TABLES is None:
        raw = resources.files("ncinv.data").joinpath("expected_series.json")
        data = json.loads(raw.read_text())
        series = {}
        for rec in data["series"]:
            key = (rec["system"], rec["n"])
            series[key] = ExpectedSeries(
                system=rec["system"],
                n=rec["n"],
                coefficients=tuple(rec["coefficients"]),
                zero_beyond=rec["zero_beyond"],
                source=rec["source"],
            )
        totals = {
            (system, int(n)): value
            for system, by_n in data["totals"].items()
            for n, value in by_n.items()
        }
        _TABLES = (series, totals)
    return _TABLES


def expected_series(system, n):
    """The tabulated series for (system, n), or None if not on record."""
    check_system(system)
    series, _ = _load()
    return series.get((system, n))


def expected_total(system, n):
    """Expected total dimension summed over all degrees.

    Returns (value, source) or None when no table covers the pair.
    The commutative totals are closed-form: n! for sym and the n-th
    Catalan number for qsym.
    """
    check_system(system)
    if n < 1:
        raise ValueError("need at least one variable")
    if system == "sym":
        return factorial(n), "closed form: n!"
    if system == "qsym":
        return comb(2 * n, n) // (n + 1), "closed form: Catalan number"
    _, totals = _load()
    if (system, n) in totals:
        return totals[(system, n)], "published total"
    return None


def check_coefficients(system, n, coefficients):
    """Compare computed coefficients against the table.

    ``coefficients[d]`` is the computed dimension in degree ``d``.
    Returns a list of (d, got, want) for every tabulated degree that
    disagrees; degrees the table does not cover are skipped.  Raises
    ValueError when no table exists for the pair at all.
    """
    table = expected_series(system, n)
    if table is None:
        raise ValueError(
            "no expected series on record for %s at n=%d" % (system, n))
    mismatches = []
    for d, got in enumerate(coefficients):
        want = table.expected_at(d)
        if want is not None and got != want:
            mismatches.append((d, got, want))
    return mismatches
