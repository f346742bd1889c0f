"""Graded derivations of the order-2 algebra; negative degrees come out empty."""
from nashjet import MonomialOrder, WeightSystem, build_jacobian, full_derivation_dims, maximal_minors, parse_polynomial, quotient_basis
from nashjet.derivations import derivation_space, negative_derivation_scan

for text, w in [("x^3 + y^3", (1, 1)), ("x^2 + y^3", (3, 2)), ("x^3 + y^4", (4, 3))]:
    w = WeightSystem(w)
    f = parse_polynomial(text, len(w))
    Q = quotient_basis([f] + maximal_minors(build_jacobian(f, 2), w).generators, MonomialOrder(w))
    print(text, "dim", Q.total_dim)
    print("  negative scan:", negative_derivation_scan(Q, w))
    print("  all degrees:  ", full_derivation_dims(Q, w))

# an explicit degree-0 basis; the Euler field sits in its span
f = parse_polynomial("x^3 + y^3")
w = WeightSystem((1, 1))
Q = quotient_basis([f] + maximal_minors(build_jacobian(f, 2), w).generators, MonomialOrder(w))
for d in derivation_space(Q, w, 0).basis:
    print("  ", d.to_strings())
