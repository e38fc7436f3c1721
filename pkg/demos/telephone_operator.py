"""
Telephone operator
==================

An operator does not know whether today is a weekday (``w = 0``, prior 5/7)
or a weekend day (``w = 1``). Calls per hour are Poisson with rate 6 on
weekdays and 2 on weekends. Having seen five calls in the last hour, how
likely is it to be a weekday?
"""

from pgfinfer import (enumerate_program, compare, normalize, parse, posterior_prob,
                      total_mass, transform_program)
from pgfinfer.language import Eq

program = parse("""
{w := 0} [5/7] {w := 1};
if (w = 0) {c := poisson(6)} else {c := poisson(2)};
observe(c = 5)
""")

# The transformer keeps the observation unnormalized: the output PGF carries
# exactly the mass of the runs where c = 5.
F = transform_program(program)
print("unnormalized PGF :", F)
print("evidence Pr(c=5) :", total_mass(F))

# Queries normalize once, at the end.
print("posterior PGF    :", normalize(F))
answer = posterior_prob(F, Eq("w", 0), digits=8)
print("Pr(w=0 | c=5)    =", answer.exact, "~", answer.decimal)

# The closed form can be cross-checked against brute-force enumeration:
# the oracle runs the program state by state with exact masses.
oracle = enumerate_program(program, truncate=16, check_conservation=True)
report = compare(F, oracle, upto=16)
print(f"oracle agreement : {report.checked} coefficients, {len(report.mismatches)} mismatches")
