"""Averaging over tail classes, worked on small examples.

A cylinder function of level m assigns a scalar to every length-m path.
Averaging it over the level-n tail classes (paths sharing everything from
coordinate n on) produces a function that no longer sees the first n edges:
that is the conditional expectation E_n.  This script checks its algebraic
laws on concrete tables so every fraction is visible.
"""

from fractions import Fraction

from afpath import (
    builtin_diagram,
    constant,
    expect,
    expect_indicator,
    indicator_path,
    prefix_sum_check,
    quasi_basis_apply,
    random_cylinder,
)
import random

car = builtin_diagram("car", 4)

# E_1 of the indicator of a single length-1 path is the constant 1/2:
# the two level-1 paths share their tail class, so each sees the average
a = car.paths(1)[0]
f = indicator_path(car, a)
print("I_a table:      ", [str(v) for v in f.table])
print("E_1(I_a) table: ", [str(v) for v in expect(f, 1).table])
assert expect(f, 1) == constant(car, Fraction(1, 2)).refine(1)
assert expect(f, 1) == expect_indicator(car, a)

# the same average at level 2 spreads 1 over the 4 paths of a class
g = indicator_path(car, car.paths(2)[3])
print("E_2(I_p) table: ", [str(v) for v in expect(g, 2).table])

# the laws, on a random function: E_n is idempotent, unital, and a module
# map over its own range; expectations at different levels collapse
rng = random.Random(11)
h = random_cylinder(car, 3, rng)
assert expect(expect(h, 2), 2) == expect(h, 2)
assert expect(constant(car, 1).refine(3), 2) == constant(car, 1).refine(3)
assert expect(expect(h, 1), 2) == expect(h, 2)
assert expect(expect(h, 2), 1) == expect(h, 2)
print("idempotent, unital, tower laws: ok")

# decomposing along level-n prefixes recovers the function exactly
assert prefix_sum_check(h, 2, 3)
assert quasi_basis_apply(h, 2) == h
print("prefix decomposition and quasi-basis reconstruction: ok")

# averaging can only shrink the sup norm
print("sup|h|^2  =", h.sup_norm_sq())
print("sup|E_2 h|^2 =", expect(h, 2).sup_norm_sq())
assert expect(h, 2).sup_norm_sq() <= h.sup_norm_sq()
