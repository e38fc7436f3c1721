"""
Symbolic parameters
===================

Probabilities and rates may be left symbolic. Results then come back as
expressions in the parameters, which is handy for sensitivity questions.
"""

from pgfinfer import moment, normalize, parse, posterior_prob, transform_program
from pgfinfer.language import Eq
from pgfinfer.symbolic import approx_decimal, param

coin = transform_program(parse("{x := 0} [p] {x := 1}"))
print("PGF              :", coin)
print("E[x]             :", moment(coin, "x").exact)
print("Var[x]           :", moment(coin, "x", 2).exact)

# A Poisson count thinned by a coin of bias q, observed to be positive.
thinned = transform_program(parse("""
n := poisson(lam);
{k := k + n} [q] {skip};
observe(not n = 0)
"""))
post = normalize(thinned)
print("posterior PGF    :", post)
mean_n = moment(post, "n").exact
print("E[n | n > 0]     :", mean_n)

# Plug in numbers once the symbolic answer is in hand.
lam = param("lam").free_symbols().pop()
for rate in (1, 2, 5):
    print(f"  lam = {rate}: {approx_decimal(mean_n, {lam: rate}, 8)}")

p0 = posterior_prob(post, Eq("k", 0)).exact
print("Pr(k = 0 | n > 0):", p0)
