"""Exact arithmetic and ideals over F_p.

Solves a small kernel over F_5, then builds a Groebner basis, tests
membership, and computes a bracket power and a colon ideal over F_2.
"""
from fsegre.arith import ExactMatrix, PrimeFieldScalar, kernel_basis
from fsegre.poly import Ideal, PolyRing, bracket_power, ideal_colon

a, b = PrimeFieldScalar(2, 5), PrimeFieldScalar(3, 5)
print("2/3 in F_5 =", a / b)
print("kernel of [[1,2,3],[2,4,1]] over F_5:", kernel_basis(ExactMatrix.from_rows([[1, 2, 3], [2, 4, 1]], 5)))

P = PolyRing.make(list("xyz"), p=2)
I = Ideal(["x^2 + y^3 + z^3", "y*z"], P)
print("reduced GB:", [str(g) for g in I.groebner_basis()])
print("x^2*y in I?", I.contains(P("x^2*y")))

m = Ideal(["x", "y", "z"], P)
m2 = bracket_power(m, 2)
print("m^[2] =", m2)
print("(m^[2] : x^2+y^3+z^3) =", [str(g) for g in ideal_colon(m2, Ideal(["x^2 + y^3 + z^3"], P)).groebner_basis()])
