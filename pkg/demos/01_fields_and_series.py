"""
Finite fields and truncated power series
========================================

The arithmetic substrate: F_{p^m} with a fixed modulus and element order,
and power series over it that track how many coefficients are known.
"""

from ssorder.ffield import construct_field, embed, frobenius
from ssorder.pseries import TruncatedSeries, series_pow, series_sqrt

# F_25 is F_5[x] modulo the first irreducible quadratic in lex order
F25 = construct_field(5, 2)
print(F25, "modulus (low -> high):", F25.modulus)

x = F25.gen
print("x^24 =", x**24, " (every nonzero element has order dividing 24)")
print("Frobenius moves x to", frobenius(x))

# the tower F_25 -> F_625 is fixed once and for all
F625 = construct_field(5, 4)
print("x in F_625:", embed(x, F625))

# series: (1 + u)^10 over F_5 is the freshman's dream squared
F5 = construct_field(5, 1)
s = TruncatedSeries(F5, [1, 1], 12)
print("(1 + u)^10 =", series_pow(s, 10))
print("its valuation after subtracting 1:", (series_pow(s, 10) - 1).valuation())

# running out of coefficients is reported, not hidden
print("valuation of the zero series:", TruncatedSeries(F5, [0] * 6).valuation())

r = series_sqrt(TruncatedSeries(F5, [1, 2], 6))
print("sqrt(1 + 2u) =", r, " squared back:", r * r)
