"""Urn instances: two-color (blue fraction per urn) and many-color (one
distribution over colors per urn).

Values given as ``Fraction``, ``int``, ``"a/b"`` strings or ``[num, den]``
pairs are kept exact; anything containing a float is handled in floating point.
"""

from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Number = Union[Fraction, float]

STOCHASTIC_TOL = 1e-12


class InstanceError(ValueError):
    """Raised when an urn instance fails validation."""


def to_number(value) -> Number:
    """Coerce one user-supplied probability to ``Fraction`` or ``float``."""
    if isinstance(value, bool):
        raise InstanceError(f"not a probability: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise InstanceError(f"cannot parse {value!r} as a rational") from exc
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
        if not all(isinstance(v, numbers.Integral) for v in (num, den)):
            raise InstanceError(f"rational pairs need integer parts: {value!r}")
        if den == 0:
            raise InstanceError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den))
    if isinstance(value, numbers.Real):
        return float(value)
    raise InstanceError(f"not a probability: {value!r}")


def coerce_all(values) -> list[Number]:
    """Coerce a sequence; if any entry is inexact, every entry becomes float."""
    out = [to_number(v) for v in values]
    if not all(isinstance(v, Fraction) for v in out):
        out = [float(v) for v in out]
    return out


def is_exact(values) -> bool:
    return all(isinstance(v, Fraction) for v in values)


@dataclass(frozen=True)
class BichromaticInstance:
    """Sorted blue-ball fractions ``p_1 <= ... <= p_n`` and their minimal gap."""

    probs: tuple
    eps: Number
    strict: bool

    @property
    def n(self) -> int:
        return len(self.probs)

    @property
    def exact(self) -> bool:
        return is_exact(self.probs)

    def p(self, i: int) -> Number:
        """Blue fraction of urn ``i`` (1-based)."""
        return self.probs[check_urn(i, self.n) - 1]


@dataclass(frozen=True)
class MulticolorInstance:
    """One probability vector over ``C`` colors per urn."""

    rows: tuple
    eps_l1: Number

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def colors(self) -> int:
        return len(self.rows[0])

    @property
    def exact(self) -> bool:
        return all(is_exact(row) for row in self.rows)

    def column(self, c: int) -> tuple:
        """Per-urn probability of color ``c`` (1-based)."""
        if not 1 <= c <= self.colors:
            raise IndexError(f"color {c} outside 1..{self.colors}")
        return tuple(row[c - 1] for row in self.rows)


def check_urn(index: int, n: int) -> int:
    """Validate a 1-based urn label."""
    if isinstance(index, bool) or not isinstance(index, numbers.Integral):
        raise TypeError(f"urn index must be an integer, got {index!r}")
    if not 1 <= index <= n:
        raise IndexError(f"urn index {index} outside 1..{n}")
    return int(index)


def _min_gap(sorted_probs) -> Number:
    if len(sorted_probs) < 2:
        return Fraction(0) if is_exact(sorted_probs) else 0.0
    return min(b - a for a, b in zip(sorted_probs, sorted_probs[1:]))


def make_bichromatic(probs: Sequence) -> BichromaticInstance:
    """Sort and validate blue fractions, computing the separation ``eps``.

    >>> make_bichromatic([0.9, 0.1, 0.5]).probs
    (0.1, 0.5, 0.9)
    """
    values = coerce_all(probs)
    if not values:
        raise InstanceError("an instance needs at least one urn")
    bad = [v for v in values if not 0 <= v <= 1]
    if bad:
        raise InstanceError(f"probabilities outside [0, 1]: {bad}")
    values.sort()
    eps = _min_gap(values)
    strict = len(values) >= 2 and eps > 0
    return BichromaticInstance(probs=tuple(values), eps=eps, strict=strict)


def require_strict(inst: BichromaticInstance) -> None:
    if not inst.strict:
        raise InstanceError(
            "this construction needs n >= 2 urns with strictly increasing blue fractions"
        )


def lower_bound_instance(n: int, eps) -> BichromaticInstance:
    """The evenly spaced family centred on 1/2: ``p_i = (1 - eps(n-1))/2 + (i-1) eps``."""
    if n < 2:
        raise InstanceError("the lower-bound family needs n >= 2")
    eps = to_number(eps)
    if not 0 < eps <= Fraction(1, n - 1):
        raise InstanceError(f"eps must lie in (0, 1/(n-1)] = (0, {1 / (n - 1):.6g}]")
    start = (1 - eps * (n - 1)) / 2
    probs = tuple(start + i * eps for i in range(n))
    if isinstance(eps, float):
        # keep the boundary values inside [0, 1] despite rounding
        probs = tuple(min(1.0, max(0.0, p)) for p in probs)
    return BichromaticInstance(probs=probs, eps=eps, strict=True)


def l1_distance(a, b) -> Number:
    return sum(abs(x - y) for x, y in zip(a, b))


def make_multicolor(rows: Sequence[Sequence]) -> MulticolorInstance:
    """Validate a row-stochastic matrix of distinct rows and compute its minimal
    pairwise l1 distance."""
    if len(rows) < 2:
        raise InstanceError("a multicolor instance needs at least 2 urns")
    flat = [v for row in rows for v in row]
    values = coerce_all(flat)
    width = len(rows[0])
    if width < 2:
        raise InstanceError("a multicolor instance needs at least 2 colors")
    if any(len(row) != width for row in rows):
        raise InstanceError("all rows must have the same number of colors")
    matrix = tuple(tuple(values[i * width:(i + 1) * width]) for i in range(len(rows)))
    exact = is_exact(values)
    for idx, row in enumerate(matrix, start=1):
        if any(v < 0 for v in row):
            raise InstanceError(f"row {idx} has negative entries")
        total = sum(row)
        if (total != 1) if exact else abs(total - 1) > STOCHASTIC_TOL:
            raise InstanceError(f"row {idx} sums to {total}, not 1")
    eps = min(l1_distance(a, b) for a, b in itertools.combinations(matrix, 2))
    if eps <= 0:
        raise InstanceError("rows must be pairwise distinct")
    return MulticolorInstance(rows=matrix, eps_l1=eps)
