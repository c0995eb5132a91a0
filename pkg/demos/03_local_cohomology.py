"""Top local cohomology of weighted hypersurfaces, the Kunneth formula for
Segre products, and a brute-force Cech check of the dual formula."""
from fsegre.graded import RingSpec
from fsegre.lc import a_invariant_segre, is_cm_segre, lc_dim_oracle, lc_table_ci

R = RingSpec.make(7, [("x", 21), ("y", 14), ("z", 6)], ["x^2+y^3+z^7"])
S = RingSpec.make(7, [("u", 5), ("v", 4), ("w", 4)], ["u^4+v^5+w^5"])
for name, ring, sop in (("R", R, ("y", "z")), ("S", S, ("v", "w"))):
    top = lc_table_ci(ring)[2]
    print(f"[H^2({name})]_n>=0 supported in", top.support(0, 200))
    print("  oracle at n=0..8:", [lc_dim_oracle(ring, sop, n)[0] for n in range(9)])

print("R#S Cohen-Macaulay:", is_cm_segre(R, S)[0], " a(R#S) =", a_invariant_segre(R, S))

p = 7
R2 = RingSpec.make(p, [("x", 3 * p), ("y", 2 * p), ("z", 6)], [f"x^2+y^3-z^{p}"])
plane = RingSpec.make(p, [("u", 1), ("v", 1)])
cm, witness = is_cm_segre(R2, plane)
print("x^2+y^3-z^7 # F[u,v] Cohen-Macaulay:", cm, " witness:", witness)
