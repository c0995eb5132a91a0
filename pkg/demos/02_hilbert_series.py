"""Hilbert series of weighted complete intersections and Segre products."""
from fsegre.graded import (HilbertSeries, RingSpec, a_invariant_ci, enumerate_hilbert_function, hadamard,
                           hilbert_series, segre_presentation, series_coefficients)

R = RingSpec.make(2, [("x", 3), ("y", 2), ("z", 2)], ["x^2+y^3+z^3"])
S = RingSpec.make(2, [("u", 2), ("v", 2)])
print("H_R =", hilbert_series(R), " a(R) =", a_invariant_ci(R))
print("closed form  :", series_coefficients(hilbert_series(R), 12))
print("enumeration  :", enumerate_hilbert_function(R, 12))

seg = hadamard(R, S, 12)
det = series_coefficients(HilbertSeries.from_ci([4], [2, 2, 2, 2]), 12)
print("R#S dims     :", seg)
print("determinantal:", det)

pres = segre_presentation(R, S, 8)
print("generators:", pres.generator_strings())
print("relations :", [str(r) for r in pres.relations])
