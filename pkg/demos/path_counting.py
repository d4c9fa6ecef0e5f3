"""Walk the built-in diagrams and count paths level by level.

Every number here is computed twice: once by the memoized recursion in
BratteliDiagram.path_count, once by the incidence matrices directly, so the
printout doubles as a tiny consistency check.
"""

from afpath import BUILTIN_NAMES, DEFAULT_DEPTHS, Vertex, builtin_diagram, dimension_vector


def counts_by_hand(d, n):
    # push the root count down through the incidence rows
    counts = [1]
    for level in range(n):
        rows = d.incidence[level]
        nxt = [0] * d.vertex_counts[level + 1]
        for s, row in enumerate(rows):
            for t, mult in enumerate(row):
                nxt[t] += counts[s] * mult
        counts = nxt
    return counts


for name in BUILTIN_NAMES:
    d = builtin_diagram(name)
    print("%s (depth %d)" % (name, d.depth))
    for n in range(d.depth + 1):
        sizes, dim = dimension_vector(d, n)
        assert list(sizes) == counts_by_hand(d, n)
        print("  level %d: blocks %s, algebra dimension %d" % (n, list(sizes), dim))
    print()

# the pascal diagram packs binomial coefficients into its counts
pascal = builtin_diagram("pascal")
print("pascal row 4:", [pascal.path_count(v) for v in pascal.vertices(4)])
print("pascal stage-3 dimension:", dimension_vector(pascal, 3)[1], "(= C(6,3))")

# paths themselves are first-class: enumerate, index, navigate
car = builtin_diagram("car", 3)
p = car.paths(3)[5]
print("\ncar path #5 of 8:", p)
print("its length-2 prefix is path #%d" % car.path_id(p.prefix(2)))
print("edges leaving the root:", car.edges_from(Vertex(0, 0)))
