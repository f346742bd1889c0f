"""Groebner bases and the graded quotient C[x]/<f, J_n(f)>."""
from nashjet import MonomialOrder, WeightSystem, build_jacobian, graded_dimensions, maximal_minors, parse_polynomial, quotient_basis
from nashjet.poly import gradient

f = parse_polynomial("x^2 + y^3")
w = WeightSystem((3, 2))
order = MonomialOrder(w)

# Tjurina algebra (n = 1)
T1 = quotient_basis([f] + gradient(f), order)
print("T_1 basis:", [tuple(m) for m in T1.standard_monomials], "dims", graded_dimensions(T1))

for n in (2, 3):
    gens = maximal_minors(build_jacobian(f, n), w).generators
    Q = quotient_basis([f] + gens, order)
    print(f"T_{n}: dim {Q.total_dim}, socle degree {Q.socle_degree}")
    print("   reduced basis:", [str(b) for b in Q.basis])
    print("   by degree:", graded_dimensions(Q))
