"""Earlier recurrences for ``R_n^m``, kept as baselines and cross-checks.

* Kintner's three-term recurrence in ``n`` at fixed ``m``, run upwards as a
  sliding window.
* Prata & Rusch, ``R_n^m = rho L1 R_{n-1}^{|m-1|} + L2 R_{n-2}^m``.
* Shakibaei & Paramesran,
  ``R_n^m = rho (R_{n-1}^{|m-1|} + R_{n-1}^{m+1}) - R_{n-2}^m``.

The two tree recursions are deliberately left unmemoised: their cost grows
faster than exponentially in ``n`` and that growth is what the benchmark
measures. Each call carries its own node budget (and optional wall-clock
deadline) so a runaway expansion raises instead of hanging.

``share_subtrees=True`` evaluates the identical recurrence with each distinct
``(n, m)`` computed once. A subtree's value depends only on ``(n, m, rho)``
and the operation order is unchanged, so the result is bit-for-bit the value
of the plain tree. It exists for sweeps over large ``n``; never time it.

Chong's m-recursive scheme is not provided: its coefficient functions are not
available to us, and it is singular at ``rho = 0``.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from .core import FlopCounter, RadialIndex, leaf_type_a, leaf_type_b

DEFAULT_NODE_CAP = 2**28
_DEADLINE_STRIDE = 4096


class Stopping(enum.Enum):
    ORIGINAL = "original"
    BETA = "beta"


class SingularCoefficient(ArithmeticError):
    """Kintner's leading coefficient vanished."""


class RecursionBudgetExceeded(RuntimeError):
    """A tree recursion expanded more nodes, or ran longer, than allowed."""


@dataclass(frozen=True)
class KintnerCoeffs:
    k1: float
    k2: float
    k3: float
    k4: float


def kintner_coeffs(n: int, m: int) -> KintnerCoeffs:
    return KintnerCoeffs(
        k1=(n + m) * (n - m) * (n - 2) / 2,
        k2=2 * n * (n - 1) * (n - 2),
        k3=-m * m * (n - 1) - n * (n - 1) * (n - 2),
        k4=-n * (n + m - 2) * (n - m - 2) / 2,
    )


@dataclass(frozen=True)
class PrataRuschCoeffs:
    L1: float
    L2: float


def prata_rusch_coeffs(n: int, m: int) -> PrataRuschCoeffs:
    L1 = 2 * n / (m + n)
    return PrataRuschCoeffs(L1, 1 - L1)


def eval_kintner(idx: RadialIndex, rho: float, counter: FlopCounter | None = None) -> float:
    """Kintner's recurrence, iterated upward from the two leaves.

    ``counter.nodes`` (if given) counts applications of the recurrence.
    """
    m = idx.m_abs
    if idx.p == 0:
        return leaf_type_a(rho, m)
    older = leaf_type_a(rho, m)
    newer = leaf_type_b(rho, m)
    rho2 = rho * rho
    for n in range(m + 4, idx.n + 1, 2):
        c = kintner_coeffs(n, m)
        if c.k1 == 0:
            raise SingularCoefficient(f"k1 vanishes at n={n}, m={m}")
        older, newer = newer, ((c.k2 * rho2 + c.k3) * newer + c.k4 * older) / c.k1
        if counter is not None:
            counter.nodes += 1
    return newer


class _Budget:
    __slots__ = ("left", "cap", "deadline")

    def __init__(self, cap: int, deadline: float | None):
        self.left = cap
        self.cap = cap
        self.deadline = deadline

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise RecursionBudgetExceeded(f"more than {self.cap} nodes expanded")
        if self.deadline is not None and self.left % _DEADLINE_STRIDE == 0:
            if time.perf_counter() > self.deadline:
                raise RecursionBudgetExceeded("wall-clock deadline passed")


def eval_prata_rusch(
    idx: RadialIndex,
    rho: float,
    stopping: Stopping = Stopping.ORIGINAL,
    *,
    node_cap: int = DEFAULT_NODE_CAP,
    deadline: float | None = None,
    share_subtrees: bool = False,
) -> float:
    """Prata-Rusch tree recursion.

    ``ORIGINAL`` stops only at ``n = 1`` (``rho``) and ``n = 0`` (1);
    ``BETA`` also stops at ``n = m`` and ``n = m + 2`` with the leaf
    evaluators. ``deadline`` is a :func:`time.perf_counter` value.
    """
    budget = _Budget(node_cap, deadline)
    beta = stopping is Stopping.BETA
    memo: dict | None = {} if share_subtrees else None

    def rec(n: int, m: int) -> float:
        if memo is not None and (n, m) in memo:
            return memo[n, m]
        budget.tick()
        if beta and n == m:
            value = leaf_type_a(rho, m)
        elif beta and n == m + 2:
            value = leaf_type_b(rho, m)
        elif n == 1:
            value = rho
        elif n == 0:
            value = 1.0
        else:
            L1 = 2 * n / (m + n)
            L2 = 1 - L1
            value = rho * L1 * rec(n - 1, abs(m - 1)) + L2 * rec(n - 2, m)
        if memo is not None:
            memo[n, m] = value
        return value

    return rec(idx.n, idx.m_abs)


def eval_shakibaei(
    idx: RadialIndex,
    rho: float,
    stopping: Stopping = Stopping.ORIGINAL,
    *,
    node_cap: int = DEFAULT_NODE_CAP,
    deadline: float | None = None,
    share_subtrees: bool = False,
) -> float:
    """Shakibaei-Paramesran three-child tree recursion.

    Both variants return 0 for ``n < m``; ``ORIGINAL`` otherwise stops at
    ``n in {0, 1}``, ``BETA`` at ``n = m`` and ``n = m + 2``.
    """
    budget = _Budget(node_cap, deadline)
    beta = stopping is Stopping.BETA
    memo: dict | None = {} if share_subtrees else None

    def rec(n: int, m: int) -> float:
        if memo is not None and (n, m) in memo:
            return memo[n, m]
        budget.tick()
        if n < m:
            value = 0.0
        elif beta and n == m:
            value = leaf_type_a(rho, m)
        elif beta and n == m + 2:
            value = leaf_type_b(rho, m)
        elif n == 1:
            value = rho
        elif n == 0:
            value = 1.0
        else:
            value = rho * (rec(n - 1, abs(m - 1)) + rec(n - 1, m + 1)) - rec(n - 2, m)
        if memo is not None:
            memo[n, m] = value
        return value

    return rec(idx.n, idx.m_abs)
