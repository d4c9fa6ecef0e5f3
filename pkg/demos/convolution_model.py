"""Kernels on tail-equivalent path pairs and their convolution algebra.

A kernel assigns scalars to pairs of paths that agree from some coordinate
on; convolution sums over the middle path.  Diagonal kernels are just
cylinder functions, the averaging projections become explicit kernels, and
the whole matrix tower maps into this picture faithfully.
"""

import random

from afpath import (
    builtin_diagram,
    convolve,
    diag,
    expect,
    format_path,
    jones_kernel,
    matrix_unit,
    random_cylinder,
    represent,
    unit_kernel,
    vanishing_check,
    word_kernel,
)

pascal = builtin_diagram("pascal", 4)
rng = random.Random(23)

# the averaging projection as a kernel: constant 1/(class size) on each
# admissible pair at its own level
jk = jones_kernel(pascal, 2)
for alpha, beta, val in list(jk.entries())[:4]:
    print("e_2[%s, %s] = %s" % (format_path(alpha), format_path(beta), val))

# sandwiching a diagonal kernel between projections performs the average
f = random_cylinder(pascal, 3, rng)
lhs = convolve(convolve(jk, diag(f)), jk)
rhs = convolve(diag(expect(f, 2)), jk)
assert lhs == rhs
print("e_2 diag(f) e_2 = diag(E_2 f) e_2: ok")

# convolution is associative and unital
g = random_cylinder(pascal, 2, rng)
F, G = diag(f), convolve(diag(g), jk)
H = jones_kernel(pascal, 1)
assert convolve(convolve(F, G), H) == convolve(F, convolve(G, H))
assert convolve(unit_kernel(pascal), G) == G
print("associativity and unit: ok")

# a matrix unit maps to a point mass on its defining pair of paths
paths = pascal.paths(2)
gids = next(g for g in pascal.block_paths(2) if len(g) >= 2)
a, b = paths[gids[0]], paths[gids[1]]
u = matrix_unit(pascal, a, b)
psi_u = represent(u)
print("psi(e_ab) entries:", [(format_path(x), format_path(y), str(v)) for x, y, v in psi_u.entries()])
assert psi_u == word_kernel(pascal, a, b)
print("closed form agrees with the full convolution word")

# psi is a *-homomorphism into the kernel algebra
v = matrix_unit(pascal, b, a)
assert represent(u * v) == convolve(represent(u), represent(v))
assert represent(u.adjoint()) == represent(u).adjoint()
print("*-homomorphism on a sample pair: ok")

# a nonzero kernel always shows a witness path where it acts nontrivially
w = vanishing_check(psi_u, 3)
assert w is not True
print("witness that psi(e_ab) is nonzero at level 3:", format_path(w))
assert vanishing_check(diag(f) - diag(f), 3) is True
print("the zero kernel has no witness")
