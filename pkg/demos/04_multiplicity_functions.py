"""
Limits and multiplicities of divisorial filtrations
===================================================

The normalized colength limit of the filtration attached to a divisor D
is a cubic expression in the envelope of D.  Along a two-divisor family
n*D1 + j*D2 it is piecewise polynomial in (n, j) — polynomial on each
slope region, with possibly irrational coefficients in the steep region.
"""

from divfilt import (
    builtin_model,
    limit_single,
    mixed,
    piecewise_limit,
    product_limit,
)

model = builtin_model()
S = model.prime_divisor("Sbar")
F = model.prime_divisor("F")

# single divisors first: an integer-looking one and an irrational one
for name, D in (("Sbar", S), ("F", F), ("Sbar+F", S + F)):
    report = limit_single(model, D)
    print(f"limit({name}) = {report.limit.canonical_string()}"
          f"   multiplicity = {report.multiplicity.canonical_string()}")

# the full piecewise limit of the family n*Sbar + j*F
pw = piecewise_limit(model, S, F)
print()
print("piecewise limit of n*Sbar + j*F:")
for line in pw.lines():
    print(" ", line)
print("multiplicity (6x):")
for line in pw.scaled(6).lines():
    print(" ", line)

# evaluating is exact, including on the boundary rays
print()
print("value at (1, 1)  :", pw.value_at(1, 1))
print("value at (1, 3)  :", pw.value_at(1, 3).canonical_string())
print("value at (0, 1)  :", pw.value_at(0, 1).canonical_string())

# the product filtration has a single cubic valid everywhere,
# whose coefficients are scaled mixed multiplicities
form = product_limit(model, S, F)
print()
print("product filtration limit:", form.render())
for d1, d2 in ((3, 0), (2, 1), (1, 2), (0, 3)):
    value = mixed(model, [(S, d1), (F, d2)])
    print(f"mixed multiplicity e(Sbar^{d1}, F^{d2}) = {value.canonical_string()}")
