"""Name -> evaluator registry shared by the CLI and the benchmark."""

from __future__ import annotations

import enum
from functools import partial
from typing import Callable

from .bbt import eval_bbtia, eval_bbtra
from .core import RadialIndex, make_index
from .legacy import Stopping, eval_kintner, eval_prata_rusch, eval_shakibaei
from .reference import eval_reference

Evaluator = Callable[[RadialIndex, float], float]


class Method(str, enum.Enum):
    BBTIA = "bbtia"
    BBTRA = "bbtra"
    PRATA_RUSCH_ORIGINAL = "prata-rusch-original"
    PRATA_RUSCH_BETA = "prata-rusch-beta"
    SHAKIBAEI_ORIGINAL = "shakibaei-original"
    SHAKIBAEI_BETA = "shakibaei-beta"
    KINTNER = "kintner"
    REFERENCE = "reference"

    def __str__(self) -> str:
        return self.value


TREE_RECURSIONS = frozenset(
    {
        Method.PRATA_RUSCH_ORIGINAL,
        Method.PRATA_RUSCH_BETA,
        Method.SHAKIBAEI_ORIGINAL,
        Method.SHAKIBAEI_BETA,
    }
)

_TREES = {
    Method.PRATA_RUSCH_ORIGINAL: (eval_prata_rusch, Stopping.ORIGINAL),
    Method.PRATA_RUSCH_BETA: (eval_prata_rusch, Stopping.BETA),
    Method.SHAKIBAEI_ORIGINAL: (eval_shakibaei, Stopping.ORIGINAL),
    Method.SHAKIBAEI_BETA: (eval_shakibaei, Stopping.BETA),
}


def evaluator(method: Method | str, **tree_options) -> Evaluator:
    """Return a ``f(idx, rho) -> float`` for ``method``.

    ``tree_options`` (``node_cap``, ``deadline``, ``share_subtrees``) are
    forwarded to the Prata-Rusch / Shakibaei recursions and ignored
    otherwise.
    """
    method = Method(method)
    if method in _TREES:
        fn, stopping = _TREES[method]
        return partial(fn, stopping=stopping, **tree_options)
    return {
        Method.BBTIA: eval_bbtia,
        Method.BBTRA: eval_bbtra,
        Method.KINTNER: eval_kintner,
        Method.REFERENCE: eval_reference,
    }[method]


def radial(n: int, m: int, rho: float, method: Method | str = Method.BBTIA) -> float:
    """``R_n^m(rho)``; validates the index and defaults to the iterative BBT."""
    return evaluator(method)(make_index(n, m), rho)
