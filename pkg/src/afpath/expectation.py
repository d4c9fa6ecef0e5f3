"""Averaging operators onto tail-invariant functions.

For a level-n tail class the unnormalized operator sums a function over the
class; dividing by the class size (the path count of the level-n vertex the
class passes through) gives an idempotent, positive, unital conditional
expectation.  Both are computed as exact table rewrites at working level
max(level(f), n).
"""

from fractions import Fraction

from .cylinder import CylinderFunction, indicator_vertex
from .scalars import ZERO


def class_sum(f, n):
    """Sum f over each level-n tail class (the unnormalized averaging map)."""
    d = f.diagram
    if not 0 <= n <= d.depth:
        raise ValueError("level %d out of range 0..%d" % (n, d.depth))
    g = f.refine(max(f.level, n))
    classes, class_of = d.tail_classes(g.level, n)
    sums = []
    for cls in classes:
        total = ZERO
        for gid in cls:
            x = g.table[gid]
            if x:
                total = total + x
        sums.append(total)
    return CylinderFunction(d, g.level, tuple(sums[class_of[gid]] for gid in range(len(g.table))))


def expect(f, n):
    """The conditional expectation: average f over each level-n tail class."""
    d = f.diagram
    if not 0 <= n <= d.depth:
        raise ValueError("level %d out of range 0..%d" % (n, d.depth))
    g = f.refine(max(f.level, n))
    classes, class_of = d.tail_classes(g.level, n)
    means = []
    for cls in classes:
        total = ZERO
        for gid in cls:
            x = g.table[gid]
            if x:
                total = total + x
        means.append(Fraction(1, len(cls)) * total if total else ZERO)
    return CylinderFunction(d, g.level, tuple(means[class_of[gid]] for gid in range(len(g.table))))


def expect_indicator(diagram, gamma):
    """Closed form for the expectation of a path indicator.

    Averaging the indicator of a length-n path gamma over level-n tail
    classes spreads its mass evenly over the block of paths ending at the
    same vertex: the result is indicator_vertex(r(gamma)) / #r(gamma).
    """
    v = gamma.terminal()
    return Fraction(1, diagram.path_count(v)) * indicator_vertex(diagram, v)


def quasi_basis_apply(f, n):
    """Reconstruct f from the weighted path indicators at level n.

    Computes sum over length-n paths gamma of
    #r(gamma) * I_gamma * E_n(I_gamma * f); the quasi-basis property of the
    expectation says this returns f itself (refined to max(level(f), n)).
    """
    from .cylinder import indicator_path  # local import to keep module load light

    d = f.diagram
    result = None
    for gamma in d.paths(n):
        ind = indicator_path(d, gamma)
        term = d.path_count(gamma.terminal()) * (ind * expect(ind * f, n))
        result = term if result is None else result + term
    return result


def prefix_sum_check(f, n, m):
    """Check that summing over rooted prefixes commutes with the expectation.

    For every level-n vertex v, every level-m vertex w and every segment y
    from v to w, the sum of f(x.y) over all rooted length-n paths x ending
    at v must be unchanged when f is replaced by its level-n expectation.
    Returns True when every instance holds exactly.
    """
    d = f.diagram
    if not (0 <= n <= m <= d.depth):
        raise ValueError("need 0 <= n <= m <= depth, got n=%d m=%d" % (n, m))
    if f.level > m:
        raise ValueError("f has level %d, cannot evaluate on length-%d paths" % (f.level, m))
    ef = expect(f, n)
    paths_n = d.paths(n)
    blocks = d.block_paths(n)
    for v in d.vertices(n):
        xs = [paths_n[gid] for gid in blocks[v.index]]
        for w in d.vertices(m):
            for y in d.segments(v, w):
                lhs = ZERO
                rhs = ZERO
                for x in xs:
                    full = x.followed_by(y)
                    lhs = lhs + f.eval(full)
                    rhs = rhs + ef.eval(full)
                if lhs != rhs:
                    return False
    return True
