"""The tower of block-matrix algebras carried by a diagram.

Stage n is a direct sum of full matrix blocks, one per level-n vertex, of
size = number of paths into that vertex.  Matrix units are indexed by pairs
of paths with the same terminal; the stage-to-stage embedding copies an
element once for every outgoing edge, so realized multiplicities reproduce
the incidence matrix on the nose.
"""

from afpath import (
    AfElement,
    builtin_diagram,
    embed_multiplicities,
    expect,
    indicator_path,
    jones_projection,
    jones_refinement_check,
    matrix_unit,
    represent_cylinder,
    toeplitz_word,
)

fib = builtin_diagram("fibonacci", 4)

# matrix units live inside a block: pick the stage-2 block with two paths
paths = fib.paths(2)
gids = next(g for g in fib.block_paths(2) if len(g) >= 2)
a, b = paths[gids[0]], paths[gids[1]]
print("a =", a, " b =", b, " both ending at", a.terminal())
e_ab = matrix_unit(fib, a, b)
e_ba = matrix_unit(fib, b, a)
assert e_ab * e_ba == matrix_unit(fib, a, a)
assert e_ab.adjoint() == e_ba
print("unit algebra: e_ab e_ba = e_aa, e_ab* = e_ba")

# diagonal units sum to the identity
total = AfElement.zero(fib, 2)
for p in paths:
    total = total + matrix_unit(fib, p, p)
assert total == AfElement.identity(fib, 2)
print("diagonal units resolve the identity at stage 2")

# embedding: one copy per outgoing edge, multiplicities = incidence
for n in range(fib.depth):
    assert embed_multiplicities(fib, n) == fib.incidence[n]
x = e_ab.embed()
print("e_ab embeds into stage 3 with %d nonzero entries" % sum(1 for _ in x.nonzero_entries()))

# the averaging projection: a block of constant entries 1/(block size),
# pushed to a chosen stage; it implements E_n inside the algebra
e1 = jones_projection(fib, 1, 3)
assert e1 * e1 == e1 and e1.adjoint() == e1
f = indicator_path(fib, fib.paths(1)[0])
rho_f = represent_cylinder(f.refine(3))
assert e1 * rho_f * e1 == represent_cylinder(expect(f, 1).refine(3)) * e1
print("e_1 rho(f) e_1 = rho(E_1 f) e_1 at stage 3")

# scaled words #r(gamma) * rho(I_gamma) e_n rho(I_delta) recover the units
assert toeplitz_word(fib, a, b) == e_ab
print("the defining word reproduces e_ab exactly")

# refining e_1 over the next stage's edges reproduces it
assert jones_refinement_check(fib, 1, 3)
print("edge refinement of e_1 at stage 3: ok")
