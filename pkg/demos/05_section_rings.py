"""Q-divisors on P^1 and their section rings.

For p = 6k+1 the divisor 1/2(0) - 1/3(inf) - k/p(-1) has degree 1/(6p), and
its section ring is a hypersurface z^p = x^2 + y^3 in degrees 6, 2p, 3p.
"""
from fsegre.qdivisor import (a_invariant_from_omega, demazure_presentation, remark_divisor,
                             riemann_roch_space, section_hilbert, verify_remark)

D = remark_divisor(7, 1)
print("D =", D, " deg D =", D.degree)
print("floor(6D) =", (6 * D).floor(), " H^0 basis:", [str(f) for f in riemann_roch_space((6 * D).floor())])
print("dim H^0(floor(nD)), n=0..21:", section_hilbert(D, 21))
print("a-invariant via omega:", a_invariant_from_omega(D))

pres = demazure_presentation(D, 50)
for (d, f), name in zip(pres.generators, "zyx"):
    print(f"  {name}: degree {d:2d}  {f}")
print("relation:", pres.relation_strings(("z", "y", "x")))

for p, k in [(5, 1), (11, 2), (13, 2)]:
    print(f"p={p} k={k} ok:", verify_remark(p, k)["ok"])
