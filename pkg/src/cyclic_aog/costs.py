"""Three-valued costs.

Finite costs are plain non-negative ints on a fixed-point grid.  ``INF`` is
``math.inf`` so ordinary comparisons and ``+`` keep working for the search
code.  ``UNDEF`` only shows up in the oracle (beta values of MESs that were
cut off by a cycle) and has to go through :func:`cadd`.
"""

import math
from decimal import Decimal, InvalidOperation

INF = math.inf


class _Undefined:
    __slots__ = ()

    def __repr__(self):
        return "UNDEF"

    def __reduce__(self):
        return "UNDEF"


UNDEF = _Undefined()


def is_finite(c):
    return c is not UNDEF and c != INF


def cadd(a, b):
    """Addition where UNDEF absorbs everything and INF absorbs finite values."""
    if a is UNDEF or b is UNDEF:
        return UNDEF
    return a + b


def csum(values):
    total = 0
    for v in values:
        total = cadd(total, v)
        if total is UNDEF:
            return UNDEF
    return total


def cmin(values):
    """Minimum over the defined values; UNDEF only if nothing is defined."""
    best = UNDEF
    for v in values:
        if v is UNDEF:
            continue
        if best is UNDEF or v < best:
            best = v
    return best


def parse_cost(text, scale=1):
    """Parse a decimal literal (or INF) onto the integer grid."""
    t = text.strip()
    if t.upper() == "INF":
        return INF
    if t.upper() == "UNDEF":
        return UNDEF
    try:
        d = Decimal(t) * scale
    except InvalidOperation:
        raise ValueError(f"not a cost: {text!r}") from None
    if d != d.to_integral_value():
        raise ValueError(f"cost {text!r} is not on the 1/{scale} grid")
    if d < 0:
        raise ValueError(f"negative cost {text!r}")
    return int(d)


def format_cost(c, scale=1):
    if c is UNDEF:
        return "UNDEF"
    if c == INF:
        return "INF"
    if scale == 1:
        return str(int(c))
    d = Decimal(int(c)) / Decimal(scale)
    s = format(d.normalize(), "f")
    return s
