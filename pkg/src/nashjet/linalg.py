"""Exact sparse linear algebra over Q.

Rows are dicts ``column -> coefficient``.  Elimination is fraction-free: rows
are scaled to integers up front and kept primitive, and only the final
back-substitution forms rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence


def _integral(row: Mapping[int, object]) -> dict[int, int]:
    vals = {j: Fraction(c) for j, c in row.items() if c}
    if not vals:
        return {}
    den = reduce(math.lcm, (v.denominator for v in vals.values()), 1)
    out = {j: int(v * den) for j, v in vals.items()}
    g = reduce(math.gcd, out.values(), 0)
    return {j: v // g for j, v in out.items()}


def _primitive(vec: Sequence[Fraction]) -> list[int]:
    den = reduce(math.lcm, (Fraction(v).denominator for v in vec), 1)
    ints = [int(Fraction(v) * den) for v in vec]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return ints
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    return [-v for v in ints] if lead < 0 else ints


def row_echelon(rows: Iterable[Mapping[int, object]]) -> dict[int, dict[int, int]]:
    """Reduced row-echelon form as ``pivot column -> integer row``.

    Each stored row has zeros in every other pivot column.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integral(raw)
        # clear existing pivots from the incoming row
        for p in sorted(set(row) & set(pivots)):
            if p not in row:
                continue
            row = _eliminate(row, pivots[p], p)
        if not row:
            continue
        p = min(row)
        g = reduce(math.gcd, row.values(), 0)
        row = {j: v // g for j, v in row.items()}
        if row[p] < 0:
            row = {j: -v for j, v in row.items()}
        for q in list(pivots):
            if p in pivots[q]:
                pivots[q] = _eliminate(pivots[q], row, p)
        pivots[p] = row
    return dict(sorted(pivots.items()))


def _eliminate(target: dict[int, int], pivot_row: dict[int, int], p: int) -> dict[int, int]:
    a, b = pivot_row[p], target[p]
    g = math.gcd(a, b)
    a, b = a // g, b // g
    out = {j: a * v for j, v in target.items()}
    for j, v in pivot_row.items():
        nv = out.get(j, 0) - b * v
        if nv:
            out[j] = nv
        else:
            out.pop(j, None)
    g = reduce(math.gcd, out.values(), 0)
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    return len(row_echelon(rows))


def nullspace(rows: Iterable[Mapping[int, object]], ncols: int) -> list[list[int]]:
    """Integer, content-free basis of ``{v : A v = 0}`` for ``A`` given by ``rows``.

    One basis vector per free column, in increasing column order; each
    vector's first nonzero entry is positive.
    """
    ech = row_echelon(rows)
    for p in ech:
        if not 0 <= p < ncols:
            raise IndexError(f"column {p} outside 0..{ncols - 1}")
    free = [j for j in range(ncols) if j not in ech]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for p, row in ech.items():
            c = row.get(fcol)
            if c:
                vec[p] = Fraction(-c, row[p])
        basis.append(_primitive(vec))
    return basis
