"""Higher-order Jacobian matrices and their maximal minors.

Rows are indexed by multi-indices ``beta`` with ``|beta| <= n-1``, columns by
``alpha`` with ``1 <= |alpha| <= n``; the ``(beta, alpha)`` entry is the Hasse
derivative of ``f`` at ``alpha - beta`` when ``beta < alpha`` componentwise and
zero otherwise.  The ``"f"`` variant puts ``f`` itself on the ``beta == alpha``
positions.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .poly import (
    MultiIndex,
    Polynomial,
    WeightSystem,
    gradient,
    hasse_derivative,
    multi_indices_between,
    weighted_degree,
)

VARIANTS = ("zero", "f")
DEFAULT_MAX_MINORS = 100_000


class MinorLimitError(RuntimeError):
    """The number of maximal minors exceeds the configured cap."""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"{count} column subsets exceed the cap of {cap} maximal minors")


def default_minor_cap() -> int:
    env = os.environ.get("NASHJET_MAX_MINORS")
    return int(env) if env else DEFAULT_MAX_MINORS


def index_sets(n: int, s: int) -> tuple[list[MultiIndex], list[MultiIndex]]:
    if n < 1 or s < 1:
        raise ValueError(f"need n >= 1 and s >= 1, got n={n}, s={s}")
    return multi_indices_between(s, 0, n - 1), multi_indices_between(s, 1, n)


@dataclass(frozen=True)
class JacobianMatrix:
    n: int
    nvars: int
    rows: tuple[MultiIndex, ...]
    cols: tuple[MultiIndex, ...]
    entries: tuple[tuple[Polynomial, ...], ...]
    variant: str = "zero"
    f: Polynomial | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def entry(self, beta: Sequence[int], alpha: Sequence[int]) -> Polynomial:
        return self.entries[self.rows.index(tuple(beta))][self.cols.index(tuple(alpha))]

    def num_subsets(self) -> int:
        m, k = self.shape
        return math.comb(k, m)

    def submatrix(self, cols: Sequence[int]) -> list[list[Polynomial]]:
        return [[row[j] for j in cols] for row in self.entries]


def build_matrix(
    entry: Callable[[MultiIndex], Polynomial],
    n: int,
    s: int,
    diagonal: Polynomial | None = None,
    variant: str = "zero",
    f: Polynomial | None = None,
) -> JacobianMatrix:
    """Lay out an order-``n`` jet matrix from an entry rule ``gamma -> entry``.

    ``entry`` receives ``alpha - beta`` for every comparable pair with
    ``beta != alpha``.  ``diagonal`` fills the ``beta == alpha`` slots.
    """
    rows, cols = index_sets(n, s)
    template = entry(MultiIndex.unit(0, s))
    zero = Polynomial.zero(template.nvars)
    cache: dict[MultiIndex, Polynomial] = {}
    table = []
    for beta in rows:
        line = []
        for alpha in cols:
            if alpha == beta:
                line.append(diagonal if diagonal is not None else zero)
            elif beta.leq(alpha):
                gamma = alpha - beta
                if gamma not in cache:
                    cache[gamma] = entry(gamma)
                line.append(cache[gamma])
            else:
                line.append(zero)
        table.append(tuple(line))
    return JacobianMatrix(n, s, tuple(rows), tuple(cols), tuple(table), variant, f)


def build_jacobian(f: Polynomial, n: int, variant: str = "zero") -> JacobianMatrix:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if f.is_zero():
        raise ValueError("the Jacobian matrix of the zero polynomial is not defined here")
    diag = f if variant == "f" else None
    return build_matrix(lambda g: hasse_derivative(f, g), n, f.nvars, diag, variant, f)


# -- determinants --------------------------------------------------------------

def all_maximal_minors(J: JacobianMatrix, cap: int | None = None) -> dict[tuple[int, ...], Polynomial]:
    """Every nonzero maximal minor, keyed by the sorted column-index tuple.

    A single Laplace expansion is shared across all column subsets: rows are
    consumed bottom-up (the sparse high-order rows first) and partial
    determinants are memoised by the set of columns already used, so each
    partial minor is computed once however many subsets contain it.
    """
    m, k = J.shape
    cap = default_minor_cap() if cap is None else cap
    total = math.comb(k, m)
    if total > cap:
        raise MinorLimitError(total, cap)
    # clear denominators so the expansion runs on integers; scaling f by c
    # scales every minor by c^m
    scale = _denominator_lcm(J)
    nv = J.entries[0][0].nvars
    top = max((max(mm) for row in J.entries for p in row for mm in p.monomials()), default=0)
    pack = _Packer(nv, m * top)
    rows = [
        [(j, {pack.encode(mm): c for mm, c in _scaled_terms(p, scale).items()}) for j, p in enumerate(row) if p]
        for row in J.entries
    ]
    level: dict[int, dict] = {0: {0: 1}}
    for r in range(m - 1, -1, -1):
        nxt: dict[int, dict] = {}
        for used, val in level.items():
            for j, terms in rows[r]:
                bit = 1 << j
                if used & bit:
                    continue
                # sign of expanding along the first remaining row
                sign = -1 if bin(used & (bit - 1)).count("1") & 1 else 1
                key = used | bit
                acc = nxt.get(key)
                if acc is None:
                    acc = nxt[key] = {}
                _add_product(acc, val, terms, sign)
        level = {u: v for u, v in nxt.items() if v}
    out = {}
    if scale == 1:
        for used, terms in level.items():
            out[_bits(used)] = Polynomial._raw(nv, {pack.decode(mm): c for mm, c in terms.items()})
    else:
        inv = _frac_inverse_power(scale, m)
        for used, terms in level.items():
            out[_bits(used)] = Polynomial(nv, {pack.decode(mm): c * inv for mm, c in terms.items()})
    return dict(sorted(out.items()))


class _Packer:
    """Exponent vectors as integers with fixed-width fields, so that
    multiplying monomials is adding integers."""

    def __init__(self, nvars: int, max_exponent: int):
        self.nvars = nvars
        self.width = max(1, max_exponent.bit_length() + 1)
        self.mask = (1 << self.width) - 1
        self._seen: dict[int, tuple[int, ...]] = {}

    def encode(self, m) -> int:
        out = 0
        for e in reversed(m):
            out = (out << self.width) | e
        return out

    def decode(self, code: int) -> tuple[int, ...]:
        hit = self._seen.get(code)
        if hit is not None:
            return hit
        out = []
        c = code
        for _ in range(self.nvars):
            out.append(c & self.mask)
            c >>= self.width
        self._seen[code] = tup = tuple(out)
        return tup


def _frac_inverse_power(scale: int, m: int) -> Fraction:
    return Fraction(1, scale**m)


def _denominator_lcm(J: JacobianMatrix) -> int:
    den = 1
    for row in J.entries:
        for p in row:
            for _, c in p.items():
                den = math.lcm(den, Fraction(c).denominator)
    return den


def _scaled_terms(p: Polynomial, scale: int) -> dict:
    if scale == 1:
        return dict(p.items())
    return {mm: int(c * scale) for mm, c in p.items()}


def _add_product(acc: dict, a: dict, b: dict, sign: int) -> None:
    for ma, ca in a.items():
        cs = ca * sign
        for mb, cb in b.items():
            mm = ma + mb
            v = acc.get(mm, 0) + cs * cb
            if v:
                acc[mm] = v
            else:
                del acc[mm]


def _bits(x: int) -> tuple[int, ...]:
    out = []
    j = 0
    while x:
        if x & 1:
            out.append(j)
        x >>= 1
        j += 1
    return tuple(out)


def cofactor_determinant(mat: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Plain Laplace expansion along the first row; reference path for small sizes."""
    size = len(mat)
    if size == 0:
        raise ValueError("empty matrix")
    if size == 1:
        return mat[0][0]
    total = Polynomial.zero(mat[0][0].nvars)
    for j, a in enumerate(mat[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = a * cofactor_determinant(minor)
        total = total - term if j % 2 else total + term
    return total


def bareiss_determinant(mat: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free elimination with exact polynomial division (cross-check path)."""
    a = [list(row) for row in mat]
    size = len(a)
    nv = a[0][0].nvars
    sign = 1
    prev = Polynomial.constant(1, nv)
    for k in range(size - 1):
        if not a[k][k]:
            for i in range(k + 1, size):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(nv)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev)
        prev = a[k][k]
    det = a[size - 1][size - 1]
    return -det if sign < 0 else det


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial:
    """``num / den`` when the division is exact; raises ``ArithmeticError`` otherwise."""
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if den.is_constant():
        return num / den.coefficient((0,) * den.nvars)
    key = WeightSystem.standard(den.nvars).key
    lm, lc = den.leading_term(key)
    quot: dict = {}
    rem = num
    while rem:
        m, c = rem.leading_term(key)
        if not all(a >= b for a, b in zip(m, lm)):
            raise ArithmeticError("division is not exact")
        q = tuple(a - b for a, b in zip(m, lm))
        qc = Fraction(c) / lc
        quot[q] = qc
        rem = rem - den.mul_monomial(q, qc)
    return Polynomial(num.nvars, quot)


# -- the minor ideal -----------------------------------------------------------

@dataclass
class MinorIdeal:
    """Distinct normalised maximal minors of a Jacobian matrix.

    ``sources[i]`` lists every column subset whose minor normalises to
    ``generators[i]``; ``raw`` keeps the unnormalised nonzero minors.
    """

    generators: list[Polynomial]
    sources: list[list[tuple[int, ...]]]
    degrees: list[int | None]
    raw: dict[tuple[int, ...], Polynomial] = field(repr=False)

    def __len__(self) -> int:
        return len(self.generators)


def maximal_minors(
    J: JacobianMatrix,
    weights: WeightSystem | None = None,
    cap: int | None = None,
) -> MinorIdeal:
    weights = weights or WeightSystem.standard(J.entries[0][0].nvars)
    raw = all_maximal_minors(J, cap)
    key = weights.key
    index: dict[Polynomial, int] = {}
    gens: list[Polynomial] = []
    sources: list[list[tuple[int, ...]]] = []
    for cols, p in raw.items():
        q = p.primitive(key)
        if q in index:
            sources[index[q]].append(cols)
        else:
            index[q] = len(gens)
            gens.append(q)
            sources.append([cols])
    order = sorted(
        range(len(gens)),
        key=lambda i: (key(gens[i].leading_term(key)[0]), sorted(gens[i].items())),
    )
    gens = [gens[i] for i in order]
    sources = [sources[i] for i in order]
    degrees = []
    for g in gens:
        wd = weighted_degree(g, weights)
        degrees.append(wd.degree if wd and wd.homogeneous else None)
    return MinorIdeal(gens, sources, degrees, raw)


def predicted_minor_degree(J: JacobianMatrix, cols: Sequence[int], d: int, w: WeightSystem) -> int:
    m = len(J.rows)
    return (
        m * d
        - sum(w.degree(J.cols[j]) for j in cols)
        + sum(w.degree(b) for b in J.rows)
    )


def minor_degree_table(J: JacobianMatrix, w: WeightSystem, cap: int | None = None) -> list[tuple[tuple[int, ...], int]]:
    """Predicted weighted degree of the minor on each column subset.

    Needs ``J.f`` weighted homogeneous.  Subsets whose minor vanishes are
    included too; the prediction is what any nonzero minor must have.
    """
    if J.f is None:
        raise ValueError("the degree table needs the matrix's source polynomial")
    wd = weighted_degree(J.f, w)
    if wd is None or not wd.homogeneous:
        raise ValueError("the degree table requires a weighted homogeneous polynomial")
    m, k = J.shape
    cap = default_minor_cap() if cap is None else cap
    if math.comb(k, m) > cap:
        raise MinorLimitError(math.comb(k, m), cap)
    return [(cols, predicted_minor_degree(J, cols, wd.degree, w)) for cols in combinations(range(k), m)]


def jacobian_ideal_cubed(f: Polynomial) -> list[Polynomial]:
    """All degree-three products of the first partials of ``f``."""
    parts = gradient(f)
    return [parts[i] * parts[j] * parts[k] for i, j, k in combinations_with_replacement(range(f.nvars), 3)]


def matrix_report(J: JacobianMatrix, ideal: MinorIdeal | None = None, weights: WeightSystem | None = None) -> dict:
    entries = [
        [i, j, p.to_str(weights)]
        for i, row in enumerate(J.entries)
        for j, p in enumerate(row)
        if p
    ]
    rep = {
        "n": J.n,
        "s": J.nvars,
        "variant": J.variant,
        "rows": [list(b) for b in J.rows],
        "cols": [list(a) for a in J.cols],
        "entries": entries,
    }
    if ideal is not None:
        rep["minors"] = [
            {
                "cols": [list(J.cols[j]) for j in src[0]],
                "col_indices": list(src[0]),
                "multiplicity": len(src),
                "degree": deg,
                "polynomial": g.to_str(weights),
            }
            for g, src, deg in zip(ideal.generators, ideal.sources, ideal.degrees)
        ]
        rep["nonzero_minor_count"] = len(ideal.raw)
        rep["subset_count"] = J.num_subsets()
    return rep
