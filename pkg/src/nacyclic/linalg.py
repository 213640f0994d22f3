"""Gaussian elimination over an arbitrary field of element objects.

Elements need ``+ - * /`` and ``is_zero()``.  When entries carry a valuation
(local fields) the pivot with the least valuation is chosen, which keeps the
precision loss of elimination as small as possible.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DivisionByZero


def _score(e) -> int:
    v = getattr(e, "valuation_or_none", None)
    if v is None:
        return 0
    v = v()
    return 0 if v is None else v


def row_reduce(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows if any(not e.is_zero() for e in r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(rows)):
            e = rows[i][c]
            if not e.is_zero():
                s = _score(e)
                if best is None or s < best[0]:
                    best = (s, i)
                    if s == 0 and not hasattr(e, "valuation_or_none"):
                        break
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        rows[r] = [e / piv for e in rows[r]]
        for k in range(len(rows)):
            if k != r:
                f = rows[k][c]
                if not f.is_zero():
                    rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel(rows: list[list], ncols: int, zero, one) -> list[list]:
    """Basis of {x : rows . x = 0}."""
    red, pivots = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def rank(rows: list[list], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1])


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve a square nonsingular system matrix . x = rhs."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    red, pivots = row_reduce(aug, n)
    if pivots != list(range(n)):
        raise DivisionByZero("singular system")
    return [red[i][n] for i in range(n)]
