"""
Inequalities between multiplicities, and two length oracles
===========================================================

The four Minkowski-style inequality families relate the mixed
multiplicities of two filtrations.  Three are polynomial identities in
the field and are decided exactly; the fourth involves cube roots and is
decided by certified interval refinement (with an exact pre-test that
recognizes the equality case).

The second half probes two closed-form filtrations numerically: one whose
limit is the irrational sqrt(2), and one whose colengths are visibly not
polynomial in the index.
"""

from divfilt import (
    builtin_model,
    diagonal_norm_sequence,
    limit_probe,
    minkowski_check,
    norm_length,
    sqrt2_sequence,
)

model = builtin_model()
S = model.prime_divisor("Sbar")
F = model.prime_divisor("F")

report = minkowski_check(model, S, F)
for line in report.lines():
    print(line)

# proportional inputs make inequality 4 an equality; the cubing identity
# recognizes it exactly instead of refining intervals forever
equal_case = minkowski_check(model, S, S * 2)
print()
print("proportional pair, inequality 4:", equal_case.checks[-1].line())

# -- length oracles ----------------------------------------------------------

# colength ceil(n*sqrt(2)): normalized limit is irrational
seq = sqrt2_sequence()
print()
print("n, length, estimate of the sqrt(2) filtration:")
for n in (1, 10, 100, 1000):
    probe = limit_probe(seq, n)
    print(f"  {n:5d}  {probe.length:6d}  {probe.estimate}"
          f"   (error bound {probe.bound})")

# the two-index norm filtration is far from polynomial: doubling the
# index does not double the length
print()
print("norm_length(1,1) =", norm_length(1, 1))
print("norm_length(2,2) =", norm_length(2, 2), "(not 2*2: non-polynomial growth)")

diag = diagonal_norm_sequence()
probe = limit_probe(diag, 10**5)
print("diagonal probe at 1e5:", probe.estimate, "~", float(probe.estimate))
