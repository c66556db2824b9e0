"""Hill's share for indivisible bads.

Thin wrapper over the C++ core. Rational results come back as
fractions.Fraction; inputs may be Fraction, int, or "p/q" / decimal strings.
"""

from fractions import Fraction

from . import _core
from ._core import DomainError, ResourceLimitError, ValidationError

__all__ = [
    "DomainError",
    "ResourceLimitError",
    "ValidationError",
    "allocate",
    "allocate_two_agents_tight",
    "classify",
    "curve_samples",
    "exact_mms",
    "fits_under",
    "guarantee",
    "hill_share",
    "lex_minmax",
    "mms_lower_bound",
    "theoretical_ratio",
    "witness_lower",
    "witness_upper",
]


def _s(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        raise TypeError("pass Fraction or str, not float")
    return str(x)


def _f(s):
    return Fraction(s)


def hill_share(n, alpha, m=None):
    return _f(_core.hill_share(n, _s(alpha), m))


def mms_lower_bound(n, alpha, m=None):
    return _f(_core.mms_lower_bound(n, _s(alpha), m))


def theoretical_ratio(n, alpha, m=None):
    return _f(_core.theoretical_ratio(n, _s(alpha), m))


def guarantee(n, alpha):
    return _f(_core.guarantee(n, _s(alpha)))


def classify(n, alpha, guarantee_family=False):
    """(k, tag) of alpha's region; tags D/I, or NI/IV for the guarantee family."""
    return _core.classify(n, _s(alpha), guarantee_family)


def _witness(d):
    return {
        "values": [_f(v) for v in d["values"]],
        "claimed_mms": _f(d["claimed_mms"]),
        "construction": d["construction"],
    }


def witness_upper(n, alpha, m=None):
    return _witness(_core.witness_upper(n, _s(alpha), m))


def witness_lower(n, alpha, m=None):
    return _witness(_core.witness_lower(n, _s(alpha), m))


def exact_mms(values, n):
    """(MinMaxShare, bundles) with 0-based object indices."""
    value, bundles = _core.exact_mms([_s(v) for v in values], n)
    return _f(value), bundles


def fits_under(values, n, threshold):
    return _core.fits_under([_s(v) for v in values], n, _s(threshold))


def lex_minmax(values, n):
    return _core.lex_minmax([_s(v) for v in values], n)


def allocate(rows):
    """Bundles plus per-agent alpha, guarantee, disutility, satisfied."""
    bundles, agents = _core.allocate([[_s(v) for v in row] for row in rows])
    for a in agents:
        for key in ("alpha", "guarantee", "disutility"):
            a[key] = _f(a[key])
    return bundles, agents


def allocate_two_agents_tight(rows):
    return _core.allocate_two_agents_tight([[_s(v) for v in row] for row in rows])


def curve_samples(n, grid, m=None):
    """Rows (alpha, upper, lower, guarantee, ratio); out-of-domain points are skipped."""
    rows = _core.curve_samples(n, [_s(a) for a in grid], m)
    return [tuple(_f(x) for x in row) for row in rows]
