"""Parsing, arithmetic and Hasse derivatives."""
from nashjet import WeightSystem, euler_apply, hasse_derivative, parse_polynomial, weighted_degree

f = parse_polynomial("x^2 + y^3")
w = WeightSystem((3, 2))
print("f =", f)
print("deg_w f =", weighted_degree(f, w))          # (6, homogeneous)
print("euler(f) =", euler_apply(f, w))              # 6*f

g = parse_polynomial("x^2*y")
print("hasse (1,1) of x^2*y:", hasse_derivative(g, (1, 1)))   # 2*x
print("hasse (2,0) of x^3:", hasse_derivative(parse_polynomial("x^3", 2), (2, 0)))  # 3*x

# rationals are exact
h = parse_polynomial("1/2*x^2 - 1/3*x*y", 2)
print("(h)^2 =", h ** 2)
