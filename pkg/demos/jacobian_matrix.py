"""The order-2 Jacobian matrix of x^3 + y^3 and its maximal minors."""
from nashjet import WeightSystem, build_jacobian, maximal_minors, minor_degree_table, parse_polynomial

f = parse_polynomial("x^3 + y^3")
w = WeightSystem((1, 1))
J = build_jacobian(f, 2)
print("rows:", [tuple(b) for b in J.rows])
print("cols:", [tuple(a) for a in J.cols])
for row in J.entries:
    print("  ", [str(e) for e in row])

ideal = maximal_minors(J, w)
print(len(ideal.raw), "nonzero minors out of", J.num_subsets())
for g, d in zip(ideal.generators, ideal.degrees):
    print(f"  [{d}] {g}")

# closed-form degrees agree with the computed ones
table = dict(minor_degree_table(J, w))
for cols, p in ideal.raw.items():
    print(cols, "predicted", table[cols])

# the f-diagonal variant
Jf = build_jacobian(f, 2, "f")
print("f-variant generators:", len(maximal_minors(Jf, w)))
