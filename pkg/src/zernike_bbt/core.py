"""Index validation, integer powers and the two leaf evaluators.

Everything downstream assumes a validated :class:`RadialIndex` with a
non-negative azimuthal order; negative ``m`` is folded onto ``|m|`` here,
once, because ``R_n^m == R_n^{-m}``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field


class InvalidIndex(ValueError):
    """Raised when ``(n, m)`` is not an admissible Zernike double index."""


@dataclass(frozen=True)
class RadialIndex:
    n: int
    m: int
    m_abs: int
    k: int

    @property
    def p(self) -> int:
        """Difference ``n - |m|``; always even."""
        return self.n - self.m_abs


def make_index(n, m) -> RadialIndex:
    """Validate ``(n, m)`` and return the normalised index.

    Raises :class:`InvalidIndex` naming the violated constraint.
    """
    n = operator.index(n)
    m = operator.index(m)
    if n < 0:
        raise InvalidIndex(f"radial degree must be non-negative, got n={n}")
    m_abs = abs(m)
    if m_abs > n:
        raise InvalidIndex(f"|m| must not exceed n, got n={n}, m={m}")
    if (n - m_abs) % 2:
        raise InvalidIndex(f"n - |m| must be even (parity), got n={n}, m={m}")
    return RadialIndex(n=n, m=m, m_abs=m_abs, k=(n - m_abs) // 2)


def ceil_log2(m: int) -> int:
    """``ceil(log2(m))`` for ``m >= 1``; 0 for ``m == 0`` by convention."""
    if m <= 1:
        return 0
    return (m - 1).bit_length()


@dataclass(frozen=True)
class FlopVector:
    """Multiplication and addition counts (unit cost for both)."""

    mults: int
    adds: int

    @property
    def total(self) -> int:
        return self.mults + self.adds

    def __add__(self, other: FlopVector) -> FlopVector:
        return FlopVector(self.mults + other.mults, self.adds + other.adds)


@dataclass
class FlopCounter:
    """Call-local tally threaded through the instrumented evaluators.

    ``mults``/``adds`` follow the accounting model in
    :mod:`zernike_bbt.complexity`. ``pow_mults_actual`` records the
    multiplications the squaring loop really executes, which can exceed the
    ``ceil(log2 m)`` the model charges. ``nodes`` counts recursion-node
    visits (or recurrence applications for the Kintner iteration) and
    ``buffer_cells`` the largest working array allocated.
    """

    mults: int = 0
    adds: int = 0
    nodes: int = 0
    buffer_cells: int = 0
    pow_mults_actual: int = 0
    visits: list | None = field(default=None, repr=False)

    def flops(self) -> FlopVector:
        return FlopVector(self.mults, self.adds)

    def visit(self, n: int, m: int) -> None:
        self.nodes += 1
        if self.visits is not None:
            self.visits.append((n, m))


def pow_by_squaring(x: float, n: int, counter: FlopCounter | None = None) -> float:
    """``x**n`` by square-and-multiply, least significant bit first."""
    if counter is not None:
        counter.mults += ceil_log2(n)
    prod = 1.0
    while n >= 1:
        if n & 1:
            prod = prod * x
            if counter is not None:
                counter.pow_mults_actual += 1
        x = x * x
        if counter is not None:
            counter.pow_mults_actual += 1
        n >>= 1
    return prod


def leaf_type_a(rho: float, m: int, counter: FlopCounter | None = None) -> float:
    """``R_m^m(rho) = rho**m``."""
    return pow_by_squaring(rho, m, counter)


def leaf_type_b(rho: float, m: int, counter: FlopCounter | None = None) -> float:
    """``R_{m+2}^m(rho) = rho**m * ((m+2) rho**2 - (m+1))``."""
    if counter is not None:
        # rho*rho, (m+2)*rho^2, final product; m+2, m+1 and the subtraction
        counter.mults += 3
        counter.adds += 3
    return pow_by_squaring(rho, m, counter) * ((m + 2) * (rho * rho) - (m + 1))
