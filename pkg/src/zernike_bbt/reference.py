"""Exact-integer coefficients of ``R_n^m`` and the reference evaluator.

``R_n^m(rho) = sum_s c_s rho^(n-2s)`` with
``c_s = (-1)^s C(k, s) C(n-s, k)``. The coefficients are Python integers,
so nothing overflows at any degree.

Plain double-precision Horner loses about eight digits by ``n = 30`` near
``rho = 0.9`` (the coefficients reach 1e9 and cancel down to O(1)), which is
too much for an oracle. :func:`eval_reference` therefore runs the same Horner
recurrence in ``rho**2`` with every quantity held as an unevaluated sum of two
floats (double-double), including the coefficients and the final
``rho**|m|`` factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import RadialIndex

_SPLITTER = 134217729.0  # 2**27 + 1


def binomial(alpha: int, i: int) -> int:
    """``C(alpha, i)`` as an exact integer, by the running product form.

    Each step multiplies before dividing so the partial result stays an
    integer: after step ``t`` it equals ``C(alpha, t + 1)``.
    """
    if i < 0 or alpha < 0 or i > alpha:
        raise ValueError(f"binomial needs 0 <= i <= alpha, got alpha={alpha}, i={i}")
    i = min(i, alpha - i)
    result = 1
    for t in range(i):
        result = result * (alpha - t) // (t + 1)
    return result


@dataclass(frozen=True)
class CoefficientPoly:
    """Coefficients ``[c_0, ..., c_k]``; ``c_s`` multiplies ``rho^(n-2s)``."""

    index: RadialIndex
    coeffs: tuple[int, ...]

    def powers(self) -> tuple[int, ...]:
        return tuple(self.index.n - 2 * s for s in range(len(self.coeffs)))


@lru_cache(maxsize=512)
def _coeff_tuple(n: int, k: int) -> tuple[int, ...]:
    return tuple((-1) ** s * binomial(k, s) * binomial(n - s, k) for s in range(k + 1))


def coefficients(idx: RadialIndex) -> CoefficientPoly:
    return CoefficientPoly(idx, _coeff_tuple(idx.n, idx.k))


# -- double-double helpers --------------------------------------------------


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    p, e = _two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return _fast_two_sum(p, e)


def _dd_add(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    s, e = _two_sum(x[0], y[0])
    e += x[1] + y[1]
    return _fast_two_sum(s, e)


def _dd_from_int(c: int) -> tuple[float, float]:
    hi = float(c)
    return hi, float(c - int(hi))


def _dd_pow(x: tuple[float, float], n: int) -> tuple[float, float]:
    prod = (1.0, 0.0)
    while n >= 1:
        if n & 1:
            prod = _dd_mul(prod, x)
        x = _dd_mul(x, x)
        n >>= 1
    return prod


def eval_reference(idx: RadialIndex, rho: float) -> float:
    """Reference value of ``R_n^m(rho)``.

    Horner in ``rho**2`` over ``c_0 .. c_k``, then a final multiplication by
    ``rho**|m|``; carried in double-double and rounded once at the end.
    """
    rho = float(rho)
    x = _two_prod(rho, rho)
    acc = (0.0, 0.0)
    for c in _coeff_tuple(idx.n, idx.k):
        acc = _dd_add(_dd_mul(acc, x), _dd_from_int(c))
    if idx.m_abs:
        acc = _dd_mul(acc, _dd_pow((rho, 0.0), idx.m_abs))
    return acc[0] + acc[1]
