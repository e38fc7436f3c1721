"""
Program equivalence
===================

Two loop-free programs are equivalent when they map every input
distribution to the same output. Feeding both the generic second-order
input decides this with a single canonical-form comparison.
"""

from pgfinfer import check_equivalence, parse

pairs = [
    ("two fair coins", "{c := c + 1} [1/2] {skip}; {c := c + 1} [1/2] {skip}",
     "c := c + binomial(2, 1/2)"),
    ("reset twice", "x := 3; x := 1", "x := 1"),
    ("uniform as coins", "c := c + uniform(0, 3)",
     "c := c + bernoulli(1/2); {c := c + 2} [1/2] {skip}"),
    ("geometric rates", "c := c + geometric(1/2)", "c := c + geometric(1/3)"),
    ("add vs reset", "x := x + 1", "x := 1"),
]

for name, left, right in pairs:
    verdict = check_equivalence(parse(left), parse(right))
    print(f"{name:18s}: {verdict}")
