"""Power-series coefficients ``b[k, l]`` behind the ranking sampler.

``b`` is defined by a recurrence in which every entry on diagonal
``k + l = n`` depends only on earlier diagonals (plus earlier entries of its
own column), so the table is filled one diagonal at a time and memoised.
The same code runs on exact ``Fraction``s and on floats; the float table is
what the sampler uses at 200 diagonals, where exact arithmetic is too slow.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np


def _fraction(num: int, den: int = 1) -> Fraction:
    return Fraction(num, den)


def _float(num: int, den: int = 1) -> float:
    return num / den


class CoeffTable:
    """Lazily extended table of ``b[k, l]``.

    ``exact=True`` gives ``Fraction`` entries, otherwise float64. Entries with a
    negative index are zero. Extension is guarded by a lock, so one table can
    be shared between threads.
    """

    def __init__(self, exact: bool = True):
        self.exact = exact
        self._num = _fraction if exact else _float
        self._zero = self._num(0)
        self._b: list[list] = []  # _b[k][l]
        self._y: list[list] = []  # running alternating sums along k
        self._s: dict[tuple[int, int], object] = {}
        self._diagonals = 0
        self._lock = threading.Lock()

    @property
    def diagonals(self) -> int:
        """Number of complete diagonals ``k + l < diagonals``."""
        return self._diagonals

    def c(self, k: int, l: int):
        sign_kl = -1 if (k + l) % 2 else 1
        sign_l = -1 if l % 2 else 1
        binom = comb(k + l, k)
        tail = self._num(sign_l * binom + sign_kl * (l + 1), k + l + 2)
        return self._num(sign_kl * binom) - tail

    def _inner(self, s: int, j: int):
        """``sum_{i<=s} b[i, s-i] / ((i+1)(i+j+2))``, cached."""
        key = (s, j)
        val = self._s.get(key)
        if val is None:
            val = self._zero
            for i in range(s + 1):
                val += self._b[i][s - i] / ((i + 1) * (i + j + 2))
            self._s[key] = val
        return val

    def _extend(self, upto: int) -> None:
        for n in range(self._diagonals, upto):
            self._b.append([])
            self._y.append([])
            for k in range(n + 1):
                l = n - k
                if k == 0:
                    x = y = self._zero
                else:
                    x = self._zero
                    for j in range(k):
                        x += self._b[j][l] * self._inner(k - 1 - j, j)
                    y = self._y[k - 1][l]
                v = (k + 1) * (x + y - self.c(k + 1, l))
                self._b[k].append(v)
                prev = self._y[k - 1][l] if k > 0 else self._zero
                self._y[k].append(v / (k + 1) - prev)
            self._diagonals = n + 1

    def ensure(self, diagonals: int) -> None:
        if diagonals > self._diagonals:
            with self._lock:
                self._extend(diagonals)

    def b(self, k: int, l: int):
        if k < 0 or l < 0:
            return self._zero
        self.ensure(k + l + 1)
        return self._b[k][l]

    def a(self, k: int, l: int):
        """``sum_{i<=l} binom(k+2, i) b[k, l-i]``."""
        if k < 0 or l < 0:
            return self._zero
        return sum((comb(k + 2, i) * self.b(k, l - i) for i in range(l + 1)), self._zero)

    def b_matrix(self, diagonals: int) -> np.ndarray:
        """Float array ``B[k, l]`` holding every entry with ``k + l < diagonals`` (zeros elsewhere)."""
        self.ensure(diagonals)
        out = np.zeros((diagonals, diagonals))
        for k in range(diagonals):
            for l in range(diagonals - k):
                out[k, l] = float(self._b[k][l])
        return out


_EXACT = CoeffTable(exact=True)


def exact_table() -> CoeffTable:
    """Process-wide exact table (grows on demand)."""
    return _EXACT


@lru_cache(maxsize=8)
def float_coefficients(diagonals: int) -> np.ndarray:
    """Float64 ``b`` array for the first ``diagonals`` diagonals, read-only."""
    arr = CoeffTable(exact=False).b_matrix(diagonals)
    arr.setflags(write=False)
    return arr


def coeff_b(k: int, l: int) -> Fraction:
    """Exact ``b[k, l]``.

    >>> coeff_b(0, 0), coeff_b(1, 1), coeff_b(3, 0)
    (Fraction(1, 1), Fraction(-2, 1), Fraction(20, 3))
    """
    if k < 0 or l < 0:
        raise ValueError("indices must be non-negative")
    return _EXACT.b(k, l)


def coeff_a(k: int, l: int) -> Fraction:
    if k < 0 or l < 0:
        raise ValueError("indices must be non-negative")
    return _EXACT.a(k, l)


def coeff_c(k: int, l: int) -> Fraction:
    return _EXACT.c(k, l)


def catalan_rhs(n: int) -> int:
    """``(1 - 3(-1)^n)/2 * binom(2 floor(n/2), floor(n/2)) + (-1)^n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    sign = -1 if n % 2 else 1
    h = n // 2
    return (1 - 3 * sign) // 2 * comb(2 * h, h) + sign


def diagonal_sum(n: int) -> Fraction:
    """``sum_{k<=n} b[k, n-k] / (k+1)``; equals ``catalan_rhs(n + 1)``."""
    return sum((coeff_b(k, n - k) / (k + 1) for k in range(n + 1)), Fraction(0))


def b1_coefficient(k: int, l: int) -> Fraction:
    """Coefficient of ``x^k P^l`` in the Taylor expansion of
    ``sum_k (sum_{j<=k} a[k, j] P^j) / (1 + P)^(k+2) x^k``."""
    total = Fraction(0)
    m = k + 2
    for j in range(min(k, l) + 1):
        r = l - j
        neg_binom = (-1) ** r * comb(m + r - 1, r)
        total += coeff_a(k, j) * neg_binom
    return total
