"""Flop accounting for the BBT algorithms.

Accounting model (unit cost for both operation kinds, total = mults + adds):

* every ``+``/``-`` in an evaluated formula is one add, including integer
  index arithmetic such as ``m + 2``, ``m + 1``, ``n - m`` and ``1 - F1``;
* every ``*``/``/`` is one mult;
* one ``pow_by_squaring(rho, m)`` is charged ``ceil(log2 m)`` mults, 0 for
  ``m == 0``. The loop itself may execute up to ``2 floor(log2 m) + 1``
  multiplications; :class:`~zernike_bbt.core.FlopCounter` keeps that
  separately in ``pow_mults_actual``.

So a type-A leaf ``R_m^m`` costs ``(ceil(log2 m), 0)`` and a type-B leaf
``R_{m+2}^m`` costs ``(3 + ceil(log2 m), 3)``. An interior BBTRA node costs
``(5, 3)``. For the iterative algorithm only the statements in its main
path are charged: ``k = p/2`` once, the ``k`` leaf initialisations, the two
start indices per level and the position/coefficient/update statements of
the inner loop.

:func:`predict_flops` returns the published closed forms. They assume every
leaf of the BBTRA tree costs the same as one with the root's ``m``; the
leaves actually carry orders ``m .. m + k - 1``, so the measured
multiplication count differs whenever ``ceil(log2 .)`` changes over that
range. :func:`predict_bbtra_per_leaf` gives the exact count with the leaf
orders resolved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bbt import eval_bbtia, eval_bbtra
from .core import FlopCounter, FlopVector, RadialIndex, ceil_log2
from .reference import binomial

BBTRA_COST_GUARD = 30


class InvalidParameter(ValueError):
    pass


class CostGuardExceeded(ValueError):
    pass


class Algorithm(enum.Enum):
    BBTRA = "bbtra"
    BBTIA = "bbtia"


def leaf_a_flops(m: int) -> FlopVector:
    return FlopVector(ceil_log2(m), 0)


def leaf_b_flops(m: int) -> FlopVector:
    return FlopVector(3 + ceil_log2(m), 3)


@dataclass(frozen=True)
class DifferenceEq:
    """``G_p = alpha G_{p-2} + beta`` for even ``p > base_p``."""

    alpha: float
    beta: float
    base_value: float
    base_p: int = 0


def solve_difference(eq: DifferenceEq, p: int) -> float:
    """Closed-form ``G_p`` anchored at ``(base_p, base_value)``."""
    if eq.alpha == 1:
        raise InvalidParameter("alpha must differ from 1")
    if p % 2 or eq.base_p % 2:
        raise InvalidParameter(f"p and base_p must be even, got p={p}, base_p={eq.base_p}")
    if p < eq.base_p:
        raise InvalidParameter(f"p={p} lies below base_p={eq.base_p}")
    if p == eq.base_p:
        return eq.base_value
    a = eq.alpha ** ((p - eq.base_p) // 2)
    return a * eq.base_value + eq.beta * (a - 1) / (eq.alpha - 1)


def instrument_bbtra(idx: RadialIndex, rho: float = 0.5, trace: bool = False) -> FlopCounter:
    """Run BBTRA with a counter attached and return the counter."""
    if idx.p > BBTRA_COST_GUARD:
        raise CostGuardExceeded(f"n - |m| = {idx.p} exceeds {BBTRA_COST_GUARD}")
    counter = FlopCounter(visits=[] if trace else None)
    eval_bbtra(idx, rho, counter)
    return counter


def instrument_bbtia(idx: RadialIndex, rho: float = 0.5) -> FlopCounter:
    counter = FlopCounter()
    eval_bbtia(idx, rho, counter)
    return counter


def count_flops_bbtra(idx: RadialIndex) -> FlopVector:
    return instrument_bbtra(idx).flops()


def count_flops_bbtia(idx: RadialIndex) -> FlopVector:
    return instrument_bbtia(idx).flops()


def _bbtra_closed_form(idx: RadialIndex) -> FlopVector:
    m, k = idx.m_abs, idx.k
    if k == 0:
        return leaf_a_flops(m)
    adds = 3 * (2**k - 1)
    if m == 0:
        mults = 8 * 2 ** (k - 1) - 5
    else:
        mults = (ceil_log2(m) + 8) * 2 ** (k - 1) - 5
    return FlopVector(mults, adds)


def _bbtia_closed_form(idx: RadialIndex) -> FlopVector:
    m, k = idx.m_abs, idx.k
    if k == 0:
        return leaf_a_flops(m)
    if k == 1:
        return leaf_b_flops(m)
    adds = (5 * k * k + 9 * k - 8) // 2
    mults = (5 * k * k + k + 2) // 2 + sum(ceil_log2(m + k - 1 - i) for i in range(k))
    return FlopVector(mults, adds)


def predict_flops(algorithm: Algorithm | str, idx: RadialIndex) -> FlopVector:
    """Published closed-form flop counts, without running anything."""
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.BBTRA:
        return _bbtra_closed_form(idx)
    return _bbtia_closed_form(idx)


def printed_total_bbtra(idx: RadialIndex) -> int:
    """Total BBTRA flops exactly as the published table prints them.

    For ``n - |m| >= 2`` this is 3 more than the sum of the published
    mult and add formulas, and for ``(0, 0)`` it prints 1 although the
    type-A leaf costs nothing; kept only to document that gap.
    """
    m, k = idx.m_abs, idx.k
    if m != 0:
        if k == 0:
            return ceil_log2(m)
        return ceil_log2(m) * 2 ** (k - 1) + 7 * 2**k - 5
    if k == 0:
        return 1
    return 7 * 2**k - 5


def predict_bbtra_per_leaf(idx: RadialIndex) -> FlopVector:
    """Exact BBTRA count with each leaf charged for its own order.

    The ``2**(k-1)`` type-B leaves of the tree have orders ``m + j`` with
    multiplicity ``C(k-1, j)``, ``j = 0 .. k-1``.
    """
    m, k = idx.m_abs, idx.k
    if k == 0:
        return leaf_a_flops(m)
    interior = 2 ** (k - 1) - 1
    leaves = FlopVector(0, 0)
    for j in range(k):
        w = binomial(k - 1, j)
        leaf = leaf_b_flops(m + j)
        leaves = leaves + FlopVector(w * leaf.mults, w * leaf.adds)
    return leaves + FlopVector(5 * interior, 3 * interior)
