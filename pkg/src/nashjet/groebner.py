"""Buchberger's algorithm over Q for weighted-degree reverse-lex orders.

Internally every polynomial is an integer-coefficient dict kept primitive
(content 1), so reductions never touch ``Fraction``.  Public results are
:class:`~nashjet.poly.Polynomial` objects: reduced bases are monic.

The engine works in the polynomial ring.  For weighted homogeneous
generators the quotient by the ideal is graded and finite-dimensional
exactly when the corresponding local algebra is, with the same graded
dimensions, so nothing is lost by not localising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .poly import MultiIndex, Polynomial, WeightSystem, weighted_degree

Monomial = tuple[int, ...]


class NotHomogeneousError(ValueError):
    def __init__(self, generator: Polynomial, weights: WeightSystem):
        self.generator = generator
        self.weights = weights
        super().__init__(f"generator {generator} is not weighted homogeneous for weights {weights.weights}")


class InfiniteQuotientError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted degree first, ties broken by reverse lexicographic order."""

    weights: WeightSystem
    kind: str = "wdeg-revlex"

    @classmethod
    def standard(cls, s: int) -> MonomialOrder:
        return cls(WeightSystem.standard(s))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def key(self, m: Sequence[int]):
        return self.weights.key(m)


def _keyfunc(order: MonomialOrder):
    cache: dict = {}
    w = order.weights.weights

    def key(m):
        k = cache.get(m)
        if k is None:
            k = cache[m] = (sum(a * b for a, b in zip(m, w)), tuple(-e for e in reversed(m)))
        return k

    return key


# -- integer dict helpers ------------------------------------------------------

def _int_dict(p: Polynomial) -> tuple[dict, Fraction]:
    """Primitive integer form of ``p`` and the scalar ``c`` with ``p = c * form``."""
    c = p.content()
    if c.denominator == 1:
        k = c.numerator
        if all(isinstance(v, int) for _, v in p.items()):
            return {m: v // k for m, v in p.items()}, c
    return {m: int(Fraction(v) / c) for m, v in p.items()}, c


def _content(d: dict) -> int:
    return reduce(math.gcd, d.values(), 0)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Elem:
    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _make_elem(d: dict, key) -> _Elem:
    g = _content(d)
    if g != 1:
        d = {m: c // g for m, c in d.items()}
    e = _Elem(d, key)
    if e.lc < 0:
        e.terms = {m: -c for m, c in d.items()}
        e.lc = -e.lc
    return e


def _reduce(h: dict, basis: Sequence[_Elem], key, full: bool = True) -> tuple[dict, Fraction]:
    """Fraction-free reduction of ``h`` modulo ``basis``.

    Returns ``(r, mult)`` where ``r = mult * remainder`` and the remainder is
    what division with rational arithmetic would produce with the same
    reducer choices.  Only the leading term is reduced when ``full`` is
    false.
    """
    h = dict(h)
    r: dict = {}
    mult = Fraction(1)
    while h:
        m = max(h, key=key)
        c = h[m]
        for g in basis:
            if _divides(g.lm, m):
                break
        else:
            if not full:
                r.update(h)
                break
            r[m] = c
            del h[m]
            continue
        q = tuple(a - b for a, b in zip(m, g.lm))
        cg = g.lc
        if c % cg == 0:
            factor = c // cg
        else:
            g0 = math.gcd(c, cg)
            s = cg // g0
            factor = c // g0
            for k in h:
                h[k] *= s
            for k in r:
                r[k] *= s
            mult *= s
        for gm, gc in g.terms.items():
            mm = tuple(a + b for a, b in zip(gm, q))
            v = h.get(mm, 0) - factor * gc
            if v:
                h[mm] = v
            else:
                del h[mm]
        if cg != 1 and h:
            cont = math.gcd(_content(h), _content(r))
            if cont > 1:
                h = {k: v // cont for k, v in h.items()}
                r = {k: v // cont for k, v in r.items()}
                mult /= cont
    return r, mult


def _spoly(f: _Elem, g: _Elem) -> dict:
    L = _lcm(f.lm, g.lm)
    qf = tuple(a - b for a, b in zip(L, f.lm))
    qg = tuple(a - b for a, b in zip(L, g.lm))
    l = math.lcm(f.lc, g.lc)
    af, ag = l // f.lc, l // g.lc
    out: dict = {}
    for m, c in f.terms.items():
        mm = tuple(a + b for a, b in zip(m, qf))
        out[mm] = out.get(mm, 0) + af * c
    for m, c in g.terms.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        v = out.get(mm, 0) - ag * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


def _linear_basis(polys: Iterable[dict], key) -> list[dict]:
    """Row-echelon basis of the Q-span of ``polys`` (distinct leading monomials)."""
    pivots: dict[Monomial, _Elem] = {}
    for p in polys:
        h = dict(p)
        while h:
            m = max(h, key=key)
            piv = pivots.get(m)
            if piv is None:
                break
            c = h[m]
            g0 = math.gcd(c, piv.lc)
            a, b = piv.lc // g0, c // g0
            out = {k: a * v for k, v in h.items()}
            for k, v in piv.terms.items():
                nv = out.get(k, 0) - b * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            h = out
        if h:
            e = _make_elem(h, key)
            pivots[e.lm] = e
    return [e.terms for e in pivots.values()]


def _buchberger(polys: list[dict], order: MonomialOrder) -> list[_Elem]:
    key = _keyfunc(order)
    w = order.weights.weights
    polys = _linear_basis(polys, key)
    polys.sort(key=lambda d: key(max(d, key=key)))
    store: list[_Elem] = []
    G: list[int] = []
    B: dict[tuple[int, int], Monomial] = {}

    def update(h: int) -> None:
        nonlocal G, B
        lh = store[h].lm
        C = list(G)
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            l1 = _lcm(lh, store[g1].lm)
            if _disjoint(lh, store[g1].lm) or not any(
                _divides(_lcm(lh, store[g2].lm), l1) for g2 in C + D
            ):
                D.append(g1)
        Bnew = {}
        for (g1, g2), L in B.items():
            if not (
                _divides(lh, L)
                and _lcm(store[g1].lm, lh) != L
                and _lcm(lh, store[g2].lm) != L
            ):
                Bnew[(g1, g2)] = L
        for g in D:
            if not _disjoint(lh, store[g].lm):
                Bnew[(g, h)] = _lcm(lh, store[g].lm)
        B = Bnew
        G = [g for g in G if not _divides(lh, store[g].lm)] + [h]

    def add(d: dict) -> None:
        store.append(_make_elem(d, key))
        update(len(store) - 1)

    for p in polys:
        r, _ = _reduce(p, [store[i] for i in G], key)
        if r:
            add(r)
    while B:
        # normal strategy: smallest lcm first
        pair = min(B, key=lambda pr: (sum(a * b for a, b in zip(B[pr], w)), key(B[pr]), pr))
        del B[pair]
        sp = _spoly(store[pair[0]], store[pair[1]])
        if not sp:
            continue
        r, _ = _reduce(sp, [store[i] for i in G], key)
        if r:
            add(r)
    basis = sorted((store[i] for i in G), key=lambda e: key(e.lm))
    reduced = []
    for i, e in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        r, mult = _reduce(tail, others, key)
        # e = lc*lm + tail and tail ~ r/mult, so e ~ mult*lc*lm + r
        d = {m: c for m, c in r.items()}
        lead = mult * e.lc
        num, den = lead.numerator, lead.denominator
        d = {m: c * den for m, c in d.items()}
        d[e.lm] = num
        reduced.append(_make_elem(d, key))
    return reduced


def _to_monic(e: _Elem, nvars: int) -> Polynomial:
    lc = e.lc
    return Polynomial(nvars, {m: Fraction(c, lc) for m, c in e.terms.items()})


def groebner_basis(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> list[Polynomial]:
    """Reduced Groebner basis (monic, sorted by increasing leading monomial)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    s = gens[0].nvars
    if any(g.nvars != s for g in gens):
        raise ValueError("generators live in different polynomial rings")
    order = order or MonomialOrder.standard(s)
    if order.nvars != s:
        raise ValueError(f"order has {order.nvars} weights for {s} variables")
    elems = _buchberger([_int_dict(g)[0] for g in gens], order)
    return [_to_monic(e, s) for e in elems]


def leading_monomial(p: Polynomial, order: MonomialOrder) -> Monomial:
    return p.leading_term(order.key)[0]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``f`` on division by the Groebner basis ``basis``."""
    order = order or MonomialOrder.standard(f.nvars)
    key = _keyfunc(order)
    elems = [_make_elem(_int_dict(b)[0], key) for b in basis if b]
    return _normal_form(f, elems, key)


def _normal_form(f: Polynomial, elems: Sequence[_Elem], key) -> Polynomial:
    if f.is_zero():
        return f
    d, c = _int_dict(f)
    r, mult = _reduce(d, elems, key)
    scale = c / mult
    return Polynomial(f.nvars, {m: v * scale for m, v in r.items()})


class Reducer:
    """Division by a fixed Groebner basis, with the integer forms cached."""

    def __init__(self, basis: Sequence[Polynomial], order: MonomialOrder):
        self.basis = list(basis)
        self.order = order
        self._key = _keyfunc(order)
        self._elems = [_make_elem(_int_dict(b)[0], self._key) for b in self.basis if b]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return _normal_form(f, self._elems, self._key)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return not _reduce(_int_dict(f)[0], self._elems, self._key)[0]


def ideal_contains(A: Sequence[Polynomial], B: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """Is the ideal generated by ``B`` contained in the one generated by ``A``?"""
    B = [b for b in B if b]
    if not B:
        return True
    A = [a for a in A if a]
    if not A:
        return False
    order = order or MonomialOrder.standard(B[0].nvars)
    key = _keyfunc(order)
    elems = _buchberger([_int_dict(a)[0] for a in A], order)
    return all(not _reduce(_int_dict(b)[0], elems, key)[0] for b in B)


def ideal_equal(A: Sequence[Polynomial], B: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    return ideal_contains(A, B, order) and ideal_contains(B, A, order)


# -- quotients -----------------------------------------------------------------

@dataclass
class GradedQuotient:
    """The quotient ``Q[x]/I`` described through a reduced Groebner basis.

    ``standard_monomials`` is ``None`` when the quotient is infinite-dimensional.
    """

    generators: list[Polynomial]
    order: MonomialOrder
    basis: list[Polynomial]
    standard_monomials: list[MultiIndex] | None
    degree_strata: dict[int, int] | None
    _reducer: Reducer | None = field(default=None, repr=False)

    @property
    def nvars(self) -> int:
        return self.order.nvars

    @property
    def weights(self) -> WeightSystem:
        return self.order.weights

    @property
    def zero_dimensional(self) -> bool:
        return self.standard_monomials is not None

    @property
    def total_dim(self) -> int | None:
        return None if self.standard_monomials is None else len(self.standard_monomials)

    @property
    def socle_degree(self) -> int | None:
        if not self.degree_strata:
            return None
        return max(self.degree_strata)

    def leading_monomials(self) -> list[Monomial]:
        return [leading_monomial(b, self.order) for b in self.basis]

    @property
    def reducer(self) -> Reducer:
        if self._reducer is None:
            self._reducer = Reducer(self.basis, self.order)
        return self._reducer

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.reducer.normal_form(f)

    def contains(self, f: Polynomial) -> bool:
        return self.reducer.contains(f)

    def monomials_of_degree(self, d: int) -> list[MultiIndex]:
        if self.standard_monomials is None:
            raise InfiniteQuotientError("the quotient is infinite-dimensional")
        return [m for m in self.standard_monomials if self.weights.degree(m) == d]

    def report(self) -> dict:
        w = self.weights
        return {
            "generators": [g.to_str(w) for g in self.generators],
            "reduced_basis": [b.to_str(w) for b in self.basis],
            "standard_monomials": None if self.standard_monomials is None else [list(m) for m in self.standard_monomials],
            "dims_by_degree": None if self.degree_strata is None else {str(k): v for k, v in sorted(self.degree_strata.items())},
            "total_dim": self.total_dim,
            "zero_dimensional": self.zero_dimensional,
        }


def is_zero_dimensional_leads(leads: Iterable[Monomial], s: int) -> bool:
    """Every variable has a pure power among the leading monomials."""
    pure = set()
    for m in leads:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            pure.add(nz[0])
        elif not nz:
            return True  # unit ideal
    return len(pure) == s


def standard_monomials(leads: Sequence[Monomial], s: int, order: MonomialOrder) -> list[MultiIndex]:
    """Monomials outside the leading-term ideal, assuming there are finitely many."""
    found = set()
    frontier = [(0,) * s]
    if any(not any(m) for m in leads):
        return []
    while frontier:
        nxt = []
        for m in frontier:
            if m in found or any(_divides(l, m) for l in leads):
                continue
            found.add(m)
            for i in range(s):
                nxt.append(tuple(e + (j == i) for j, e in enumerate(m)))
        frontier = nxt
    return [MultiIndex(m) for m in sorted(found, key=order.key)]


def quotient_basis(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> GradedQuotient:
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    s = gens[0].nvars
    order = order or MonomialOrder.standard(s)
    basis = groebner_basis(gens, order)
    leads = [leading_monomial(b, order) for b in basis]
    if is_zero_dimensional_leads(leads, s):
        std = standard_monomials(leads, s, order)
        strata: dict[int, int] = {}
        for m in std:
            d = order.weights.degree(m)
            strata[d] = strata.get(d, 0) + 1
        return GradedQuotient(list(gens), order, basis, std, dict(sorted(strata.items())))
    return GradedQuotient(list(gens), order, basis, None, None)


def graded_dimensions(Q: GradedQuotient, w: WeightSystem | None = None) -> dict[int, int]:
    """Dimension of each weighted-degree stratum of a finite graded quotient."""
    w = w or Q.weights
    for g in Q.generators:
        wd = weighted_degree(g, w)
        if wd is not None and not wd.homogeneous:
            raise NotHomogeneousError(g, w)
    if Q.standard_monomials is None:
        raise InfiniteQuotientError("the quotient is infinite-dimensional")
    dims: dict[int, int] = {}
    for m in Q.standard_monomials:
        d = w.degree(m)
        dims[d] = dims.get(d, 0) + 1
    return dict(sorted(dims.items()))
