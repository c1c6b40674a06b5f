"""Exact rational scalars.

Everything in this package computes over Q with arbitrary-precision
arithmetic; no floating point anywhere.  gmpy2.mpq is used when available
(it is several times faster than fractions.Fraction on the elimination
workloads), with Fraction as a drop-in fallback.  Both normalize to lowest
terms with positive denominator and print identically ("3", "-1/2"), so
the choice of backend never changes any result or any serialized report.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as _rat

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _rat

    RATIONAL_BACKEND = "fractions"


def QQ(numerator, denominator=1):
    """Exact rational, reduced, denominator > 0."""
    return _rat(numerator, denominator)


ZERO = QQ(0)
ONE = QQ(1)
HALF = QQ(1, 2)

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/([1-9]\d*))?$")


def parse_rational(text: str):
    """Parse 'p' or 'p/q' with q > 0; reject anything else."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {text!r}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed rational {text!r} (expected 'p' or 'p/q' with q > 0)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return QQ(num, den)


def rational_str(value) -> str:
    """Canonical string form, inverse to parse_rational."""
    return str(value)
