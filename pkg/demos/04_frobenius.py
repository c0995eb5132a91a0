"""Fedder's criterion, Frobenius closure, and Frobenius on Cech classes."""
from fsegre.frobenius import (cech_frobenius, cech_is_zero, cech_make, fedder_principal,
                              frobenius_closure_member, frobenius_injective_window)
from fsegre.graded import RingSpec

R = RingSpec.make(2, [("x", 3), ("y", 2), ("z", 2)], ["x^2+y^3+z^3"])
print("x^2+y^3+z^3 F-pure over F_2:", fedder_principal(2, "x^2+y^3+z^3"))
print("x in (y,z)^F:", frobenius_closure_member(R, ["y", "z"], "x", 3))

eta = cech_make(R, "x", 1, 1, ("y", "z"))
print(f"eta = {eta}, degree {eta.degree}, zero: {cech_is_zero(eta)}")
F_eta = cech_frobenius(eta)
print(f"F(eta) = {F_eta}, zero: {cech_is_zero(F_eta)}")

S = RingSpec.make(7, [("u", 5), ("v", 4), ("w", 4)], ["u^4+v^5+w^5"])
res = frobenius_injective_window(S, None, (-25, -5), 1)
print("F injective on [H^2(S)] in degrees -25..-5:", res.injective)
