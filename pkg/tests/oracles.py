"""Independent reference computations built on sympy.

None of these touch nashjet's Groebner engine, minor expansion or linear
algebra; they are the second route for the cross-checks in the suite.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

from nashjet.poly import Polynomial


def symbols(s: int):
    return sp.symbols(f"t0:{s}")


def to_sympy(p: Polynomial, gens):
    return sum(
        (sp.Rational(Fraction(c).numerator, Fraction(c).denominator) * sp.Mul(*[g**e for g, e in zip(gens, m)])
         for m, c in p.items()),
        sp.Integer(0),
    )


def from_sympy(expr, gens) -> Polynomial:
    poly = sp.Poly(sp.expand(expr), *gens)
    return Polynomial(len(gens), {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def monomials_of_weighted_degree(weights, d):
    """Brute-force enumeration of exponent vectors with ``a . w == d``."""
    s = len(weights)
    bounds = [d // w for w in weights]
    return [
        m for m in itertools.product(*[range(b + 1) for b in bounds])
        if sum(a * w for a, w in zip(m, weights)) == d
    ]


def member_by_linear_algebra(target: Polynomial, gens, weights) -> bool:
    """Degree-bounded membership for homogeneous data.

    ``target`` (weighted homogeneous of degree D) lies in the ideal iff it is
    in the span of ``m * g`` with ``deg(m * g) == D``.
    """
    s = len(weights)
    wdeg = lambda m: sum(a * w for a, w in zip(m, weights))
    if target.is_zero():
        return True
    D = wdeg(next(iter(target.monomials())))
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        dg = wdeg(next(iter(g.monomials())))
        if dg > D:
            continue
        for m in monomials_of_weighted_degree(weights, D - dg):
            rows.append(g.mul_monomial(m))
    cols = sorted({mm for p in rows + [target] for mm in p.monomials()})
    index = {mm: j for j, mm in enumerate(cols)}

    def vec(p):
        v = [0] * len(cols)
        for mm, c in p.items():
            v[index[mm]] = sp.Rational(Fraction(c).numerator, Fraction(c).denominator)
        return v

    if not rows:
        return False
    A = sp.Matrix([vec(p) for p in rows])
    return A.rank() == A.col_join(sp.Matrix([vec(target)])).rank()


class SympyQuotient:
    """Artinian quotient via sympy's own Groebner basis (grevlex)."""

    def __init__(self, gens, s: int):
        self.s = s
        self.x = symbols(s)
        self.G = sp.groebner([to_sympy(g, self.x) for g in gens], *self.x, order="grevlex")
        leads = [sp.Poly(g, *self.x).monoms(order="grevlex")[0] for g in self.G.exprs]
        self.basis = self._standard(leads)

    def _standard(self, leads):
        found, frontier = set(), [(0,) * self.s]
        while frontier:
            nxt = []
            for m in frontier:
                if m in found or any(all(a <= b for a, b in zip(l, m)) for l in leads):
                    continue
                found.add(m)
                if sum(m) > 200:
                    raise ValueError("quotient does not look Artinian")
                nxt.extend(tuple(e + (j == i) for j, e in enumerate(m)) for i in range(self.s))
            frontier = nxt
        return sorted(found)

    def coords(self, expr) -> list:
        _, rem = self.G.reduce(sp.expand(expr))
        poly = sp.Poly(rem, *self.x)
        index = {m: k for k, m in enumerate(self.basis)}
        v = [sp.Integer(0)] * len(self.basis)
        for m, c in poly.terms():
            v[index[m]] = c
        return v

    def monomial(self, m):
        return sp.Mul(*[g**e for g, e in zip(self.x, m)])


def derivation_dims_by_table(gens, weights, degrees) -> dict[int, int]:
    """Graded derivation dimensions from the full multiplication table.

    Unknowns are the matrix entries of a linear map ``D`` on the monomial
    basis, restricted to degree ``e``; the constraints are the Leibniz rule
    on every pair of basis elements.
    """
    s = len(weights)
    Q = SympyQuotient(gens, s)
    B = Q.basis
    n = len(B)
    deg = [sum(a * w for a, w in zip(m, weights)) for m in B]
    table = {}
    for a in range(n):
        for b in range(a, n):
            table[a, b] = Q.coords(Q.monomial(B[a]) * Q.monomial(B[b]))
    out = {}
    for e in degrees:
        unknowns = [(j, k) for k in range(n) for j in range(n) if deg[j] == deg[k] + e]
        if not unknowns:
            out[e] = 0
            continue
        col = {u: i for i, u in enumerate(unknowns)}
        rows = []
        # D(b_a b_b) - b_a D(b_b) - b_b D(b_a) = 0, coordinate by coordinate
        for a in range(n):
            for b in range(a, n):
                prod = table[a, b]
                eqs = [dict() for _ in range(n)]
                for k, c in enumerate(prod):
                    if c:
                        for j in range(n):
                            if (j, k) in col:
                                eqs[j][col[j, k]] = eqs[j].get(col[j, k], 0) + c
                for (x, y) in ((a, b), (b, a)):
                    # - b_x * D(b_y) = - sum_j D[j,y] b_x b_j
                    for j in range(n):
                        if (j, y) not in col:
                            continue
                        bx_bj = table[min(x, j), max(x, j)]
                        for t, c in enumerate(bx_bj):
                            if c:
                                eqs[t][col[j, y]] = eqs[t].get(col[j, y], 0) - c
                for eq in eqs:
                    if any(eq.values()):
                        row = [0] * len(unknowns)
                        for i, c in eq.items():
                            row[i] = c
                        rows.append(row)
        if not rows:
            out[e] = len(unknowns)
        else:
            out[e] = len(sp.Matrix(rows).nullspace())
    return out
