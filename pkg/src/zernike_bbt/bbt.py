"""Balanced-binary-tree evaluation of ``R_n^m``.

Both algorithms rest on

    R_n^m = rho F1 R_{n-1}^{m+1} + F2 R_{n-2}^m,
    F1 = 2n / (n - m),  F2 = 1 - F1,

whose two children both have ``n - m`` smaller by exactly two. Starting from
``p = n - m`` the recursion therefore bottoms out after ``k = p / 2`` levels
in type-B leaves ``R_{j+2}^j``; the call tree is a complete binary tree with
``2**k - 1`` nodes.

:func:`eval_bbtra` walks that tree recursively. :func:`eval_bbtia` notices
that level ``l`` only has ``l`` distinct nodes and sweeps a single buffer of
``k`` values from the leaves up to the root, for ``O(k**2)`` work.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FlopCounter, FlopVector, RadialIndex, leaf_type_a, leaf_type_b


class SingularIndex(ValueError):
    """``F1`` and ``F2`` are undefined for ``n == m``."""


class AllocationFailure(MemoryError):
    """The length-``k`` working buffer could not be allocated."""


@dataclass(frozen=True)
class FCoeffs:
    F1: float
    F2: float


def f_coeffs(n: int, m: int) -> FCoeffs:
    if n == m:
        raise SingularIndex(f"F coefficients undefined for n == m == {n}")
    if not n > m >= 0:
        raise ValueError(f"f_coeffs needs n > m >= 0, got n={n}, m={m}")
    F1 = 2 * n / (n - m)
    return FCoeffs(F1, 1 - F1)


@dataclass(frozen=True)
class EvalResult:
    """Value plus optional flop tally and the iteration's byproduct.

    ``byproduct`` is ``(R_n^m, R_{n-2}^m, ..., R_{m+2}^m)``; empty when
    ``n == |m|``.
    """

    value: float
    flops: FlopVector | None = None
    byproduct: tuple[float, ...] = ()


def eval_bbtra(idx: RadialIndex, rho: float, counter: FlopCounter | None = None) -> float:
    """Recursive balanced-binary-tree evaluation."""

    def rec(n: int, m: int) -> float:
        if counter is not None:
            counter.visit(n, m)
        p = n - m
        if p == 0:
            return leaf_type_a(rho, m, counter)
        if p == 2:
            return leaf_type_b(rho, m, counter)
        F1 = 2 * n / (n - m)
        F2 = 1 - F1
        if counter is not None:
            # F1: n-m, 2*n, division; F2: 1-F1; rho*F1*left, F2*right, sum
            counter.adds += 3
            counter.mults += 5
        return rho * F1 * rec(n - 1, m + 1) + F2 * rec(n - 2, m)

    return rec(idx.n, idx.m_abs)


def _bbtia(idx: RadialIndex, rho: float, counter: FlopCounter | None) -> tuple[float, list[float]]:
    n, m = idx.n, idx.m_abs
    p = n - m
    if p == 0:
        return leaf_type_a(rho, m, counter), []
    if p == 2:
        value = leaf_type_b(rho, m, counter)
        return value, [value]
    k = p // 2
    if counter is not None:
        counter.mults += 1  # k = p / 2
    try:
        v = [0.0] * k
    except MemoryError as exc:
        raise AllocationFailure(f"cannot allocate buffer of {k} cells") from exc
    if counter is not None:
        counter.buffer_cells = max(counter.buffer_cells, k)
    for i in range(k):
        v[i] = leaf_type_b(rho, m + k - 1 - i, counter)
    for level in range(k - 1, 0, -1):
        n_start = n - (level - 1)
        m_start = m + (level - 1)
        if counter is not None:
            counter.adds += 4
        for i in range(level):
            m_pos = m_start - i
            n_pos = n_start - i
            F1 = 2 * n_pos / (n_pos - m_pos)
            F2 = 1 - F1
            # in place: v[i+1] is still the previous level's value here
            v[i] = rho * F1 * v[i] + F2 * v[i + 1]
            if counter is not None:
                # positions: 2 adds; F1, F2: 2 adds, 2 mults; update: 1 add, 3 mults
                counter.adds += 5
                counter.mults += 5
    return v[0], v


def eval_bbtia(idx: RadialIndex, rho: float, counter: FlopCounter | None = None) -> float:
    """Iterative balanced-binary-tree evaluation (``O(k)`` memory)."""
    return _bbtia(idx, rho, counter)[0]


def eval_bbtia_result(idx: RadialIndex, rho: float, count_flops: bool = False) -> EvalResult:
    counter = FlopCounter() if count_flops else None
    value, buffer = _bbtia(idx, rho, counter)
    return EvalResult(
        value=value,
        flops=counter.flops() if counter is not None else None,
        byproduct=tuple(buffer),
    )
