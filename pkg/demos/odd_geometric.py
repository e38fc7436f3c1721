"""
Odd geometric distribution
==========================

Flip a fair coin, counting tails in ``c``, until heads appears, then condition
on the count being odd. The loop is handled by a user-supplied invariant,
a loop-free program that must behave exactly like the loop on every input.
"""

from pgfinfer import (check_invariant, coefficients, moment, normalize, parse,
                      transform_program)
from pgfinfer.language import While

source = """
x := 1;
while (x = 1) invariant {if (x = 1) {c := c + geometric(1/2); x := 0}} {
  {c := c + 1} [1/2] {x := 0}
};
observe(c % 2 = 1)
"""
program = parse(source)
loop = next(s for s in program.statements if isinstance(s, While))

# One symbolic check on the second-order input covers every initial state.
print("invariant        :", check_invariant(loop))

posterior = normalize(transform_program(program))
print("posterior PGF    :", posterior)
print("Pr(c = 0..7)     :", [str(q) for q in coefficients(posterior, "c", 7)])
print("E[c]             :", moment(posterior, "c").exact)
print("Var[c]           :", moment(posterior, "c", 2).exact)

# A wrong invariant is caught, with a concrete initial state exposing it.
bad = parse(source.replace("geometric(1/2)", "geometric(1/3)"))
bad_loop = next(s for s in bad.statements if isinstance(s, While))
print("geometric(1/3)   :", check_invariant(bad_loop))

# Without the exit condition, `skip` would pass as an invariant of a loop
# that never terminates.
spin = next(iter(parse("while (x = 1) invariant {skip} {x := 1}").statements))
print("divergent loop   :", check_invariant(spin))
