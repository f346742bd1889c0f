"""Graded pieces of the derivation module of a graded Artinian quotient.

A degree-``e`` derivation of ``A = Q[x]/I`` is fixed by the images
``r_i = delta(x_i)``, taken as normal forms of weighted degree ``w_i + e``.
The tuple lifts to ``sum_i r_i d/dx_i`` on the polynomial ring, and by the
Leibniz rule it descends to ``A`` exactly when it maps each generator of
``I`` back into ``I``.  Two tuples give the same derivation of ``A`` iff
they agree modulo ``I``, so the solution space in standard-monomial
coordinates *is* the degree-``e`` piece.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import GradedQuotient, InfiniteQuotientError, graded_dimensions
from .linalg import nullspace
from .poly import MultiIndex, Polynomial, WeightSystem, partial_derivative


@dataclass(frozen=True)
class GradedDerivation:
    degree: int
    images: tuple[Polynomial, ...]

    def apply(self, g: Polynomial) -> Polynomial:
        """The lifted derivation ``sum_i r_i dg/dx_i`` in the polynomial ring."""
        out = Polynomial.zero(g.nvars)
        for i, r in enumerate(self.images):
            if r:
                out = out + r * partial_derivative(g, i)
        return out

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.images)

    def to_strings(self, weights: WeightSystem | None = None) -> list[str]:
        return [r.to_str(weights) for r in self.images]


@dataclass
class DerivationSpaceReport:
    degree: int
    dimension: int
    basis: list[GradedDerivation]

    def report(self, weights: WeightSystem | None = None) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "basis": [d.to_strings(weights) for d in self.basis],
        }


def _check_quotient(Q: GradedQuotient, w: WeightSystem) -> None:
    if len(w) != Q.nvars:
        raise ValueError(f"{len(w)} weights for {Q.nvars} variables")
    # raises on inhomogeneous generators or an infinite quotient
    graded_dimensions(Q, w)


def euler_derivation(w: WeightSystem) -> GradedDerivation:
    s = len(w)
    return GradedDerivation(
        0, tuple(Polynomial.monomial(MultiIndex.unit(i, s), w[i]) for i in range(s))
    )


def derivation_space(Q: GradedQuotient, w: WeightSystem | None = None, e: int = 0) -> DerivationSpaceReport:
    """Exact basis of the weighted-degree ``e`` derivations of ``Q``.

    The constraints are imposed on the reduced Groebner basis of the ideal,
    which generates the same ideal as ``Q.generators``.
    """
    w = w or Q.weights
    _check_quotient(Q, w)
    s = Q.nvars
    unknowns: list[tuple[int, MultiIndex]] = []
    for i in range(s):
        target = w[i] + e
        if target < 0:
            continue
        unknowns.extend((i, m) for m in Q.monomials_of_degree(target))
    if not unknowns:
        return DerivationSpaceReport(e, 0, [])
    std_index = {tuple(m): k for k, m in enumerate(Q.standard_monomials)}
    gens = list(Q.basis)
    partials = [[partial_derivative(g, i) for i in range(s)] for g in gens]
    rows: dict[tuple[int, int], dict[int, object]] = {}
    for col, (i, m) in enumerate(unknowns):
        for gi, g in enumerate(gens):
            dg = partials[gi][i]
            if not dg:
                continue
            nf = Q.normal_form(dg.mul_monomial(m))
            for mono, c in nf.items():
                rows.setdefault((gi, std_index[mono]), {})[col] = c
    vectors = nullspace([rows[k] for k in sorted(rows)], len(unknowns))
    basis = []
    for vec in vectors:
        images = [dict() for _ in range(s)]
        for (i, m), c in zip(unknowns, vec):
            if c:
                images[i][tuple(m)] = c
        basis.append(GradedDerivation(e, tuple(Polynomial(s, t) for t in images)))
    return DerivationSpaceReport(e, len(basis), basis)


def preserves_ideal(delta: GradedDerivation, Q: GradedQuotient) -> bool:
    """Independent re-check: every generator (original presentation) maps into the ideal."""
    return all(Q.contains(delta.apply(g)) for g in Q.generators)


def negative_window(w: WeightSystem) -> range:
    """Degrees that can carry a negative derivation.

    Below ``-max w_i`` every ``x_i`` would land in a negative stratum, so the
    derivation is zero.
    """
    return range(-max(w), 0)


def negative_derivation_scan(Q: GradedQuotient, w: WeightSystem | None = None) -> dict[int, int]:
    w = w or Q.weights
    return {e: derivation_space(Q, w, e).dimension for e in negative_window(w)}


def full_derivation_dims(
    Q: GradedQuotient,
    w: WeightSystem | None = None,
    lo: int | None = None,
    hi: int | None = None,
) -> dict[int, int]:
    """Graded dimensions of the whole derivation module.

    The default window ``[-max w_i, socle]`` is exhaustive: images must land
    in a nonzero stratum, and degrees outside it are reported as zero
    without solving.
    """
    w = w or Q.weights
    _check_quotient(Q, w)
    socle = Q.socle_degree or 0
    default_lo, default_hi = -max(w), socle
    lo = default_lo if lo is None else lo
    hi = default_hi if hi is None else hi
    out = {}
    for e in range(lo, hi + 1):
        if e < default_lo or e > default_hi:
            out[e] = 0
        else:
            out[e] = derivation_space(Q, w, e).dimension
    return out


__all__ = [
    "DerivationSpaceReport",
    "GradedDerivation",
    "InfiniteQuotientError",
    "derivation_space",
    "euler_derivation",
    "full_derivation_dims",
    "negative_derivation_scan",
    "negative_window",
    "preserves_ideal",
]
