"""Block-matrix stages of the path algebra and the embeddings between them.

Stage n is a direct sum, over the level-n vertices v, of full matrix
algebras of size #v (the number of rooted paths into v); rows and columns
are indexed by those paths in canonical order.  The stage-n to stage-(n+1)
embedding sends the elementary matrix at a path pair (z, h) to the sum over
outgoing edges e of the elementary matrix at (z.e, h.e), which realizes the
multiplicity matrix of the diagram.

Blocks are stored as maps holding only nonzero entries; the block sizes are
always those dictated by the diagram, so the representation is semantically
dense while keeping elementary-matrix arithmetic cheap.
"""

from fractions import Fraction

from .scalars import Scalar, ZERO, ONE, as_scalar
from .cylinder import indicator_path

_SCALAR_TYPES = (int, Fraction, Scalar)

_F0 = Fraction(0)


class AfElement:
    """One element of the stage-n block-matrix algebra."""

    __slots__ = ("diagram", "level", "blocks")

    def __init__(self, diagram, level, blocks):
        if not 0 <= level <= diagram.depth:
            raise ValueError("level %d out of range 0..%d" % (level, diagram.depth))
        sizes = [len(g) for g in diagram.block_paths(level)]
        if len(blocks) != len(sizes):
            raise ValueError("expected %d blocks, got %d" % (len(sizes), len(blocks)))
        clean = []
        for v, block in enumerate(blocks):
            out = {}
            for (i, j), val in block.items():
                if not 0 <= i < sizes[v] or not 0 <= j < sizes[v]:
                    raise ValueError(
                        "entry (%d,%d) outside block %d of size %d" % (i, j, v, sizes[v])
                    )
                val = as_scalar(val)
                if val:
                    out[(i, j)] = val
            clean.append(out)
        self.diagram = diagram
        self.level = level
        self.blocks = tuple(clean)

    # -- constructors --------------------------------------------------------

    @classmethod
    def _wrap(cls, diagram, level, blocks):
        # Internal fast path: blocks are already clean (nonzero Scalars,
        # indices in range), so skip the constructor's validation pass.
        x = object.__new__(cls)
        x.diagram = diagram
        x.level = level
        x.blocks = tuple(blocks)
        return x

    @classmethod
    def zero(cls, diagram, level):
        return cls(diagram, level, [{} for _ in diagram.block_paths(level)])

    @classmethod
    def identity(cls, diagram, level):
        blocks = [{(i, i): ONE for i in range(len(g))} for g in diagram.block_paths(level)]
        return cls(diagram, level, blocks)

    # -- block access ----------------------------------------------------------

    def block_size(self, v):
        return len(self.diagram.block_paths(self.level)[v])

    def entry(self, gamma, delta):
        """The coefficient at a pair of length-n paths (zero across blocks)."""
        d = self.diagram
        vi, i = d.block_pos(self.level)[d.path_id(gamma)]
        vj, j = d.block_pos(self.level)[d.path_id(delta)]
        if vi != vj:
            return ZERO
        return self.blocks[vi].get((i, j), ZERO)

    def nonzero_entries(self):
        """Yield (vertex index, row path, col path, value) in canonical order."""
        d = self.diagram
        paths = d.paths(self.level)
        groups = d.block_paths(self.level)
        for v, block in enumerate(self.blocks):
            for (i, j) in sorted(block):
                yield v, paths[groups[v][i]], paths[groups[v][j]], block[(i, j)]

    def dense_block(self, v):
        """Materialize block v as a list of lists of Scalars."""
        size = self.block_size(v)
        rows = [[ZERO] * size for _ in range(size)]
        for (i, j), val in self.blocks[v].items():
            rows[i][j] = val
        return rows

    def trace_block(self, v):
        total = ZERO
        for (i, j), val in self.blocks[v].items():
            if i == j:
                total = total + val
        return total

    def is_zero(self):
        return not any(self.blocks)

    # -- *-algebra operations -----------------------------------------------------

    def _require_compatible(self, other):
        if not isinstance(other, AfElement):
            raise TypeError("expected an AfElement, got %s" % type(other).__name__)
        if other.diagram is not self.diagram:
            raise ValueError("operands live on different diagrams")
        if other.level != self.level:
            raise ValueError("operands live at different levels (%d vs %d)" % (self.level, other.level))

    def __add__(self, other):
        self._require_compatible(other)
        blocks = []
        for a, b in zip(self.blocks, other.blocks):
            out = dict(a)
            for key, val in b.items():
                s = out.get(key, ZERO) + val
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
            blocks.append(out)
        return AfElement._wrap(self.diagram, self.level, blocks)

    def __sub__(self, other):
        self._require_compatible(other)
        blocks = []
        for a, b in zip(self.blocks, other.blocks):
            out = dict(a)
            for key, val in b.items():
                s = out.get(key, ZERO) - val
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
            blocks.append(out)
        return AfElement._wrap(self.diagram, self.level, blocks)

    def __neg__(self):
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            c = as_scalar(other)
            if not c:
                return AfElement.zero(self.diagram, self.level)
            return AfElement._wrap(
                self.diagram,
                self.level,
                [{key: c * val for key, val in block.items()} for block in self.blocks],
            )
        self._require_compatible(other)
        blocks = []
        for a, b in zip(self.blocks, other.blocks):
            rows = {}
            for (k, j), val in b.items():
                rows.setdefault(k, []).append((j, val.re, val.im))
            # Accumulate real and imaginary parts as bare Fractions; Scalars
            # are only built for the surviving nonzero cells at the end.
            acc = {}
            for (i, k), aval in a.items():
                row = rows.get(k)
                if row is None:
                    continue
                ar = aval.re
                ai = aval.im
                if ai:
                    for j, br, bi in row:
                        key = (i, j)
                        cell = acc.get(key)
                        if bi:
                            re = ar * br - ai * bi
                            im = ar * bi + ai * br
                        else:
                            re = ar * br
                            im = ai * br
                        if cell is None:
                            acc[key] = [re, im]
                        else:
                            cell[0] += re
                            cell[1] += im
                else:
                    for j, br, bi in row:
                        key = (i, j)
                        cell = acc.get(key)
                        if cell is None:
                            acc[key] = [ar * br, ar * bi if bi else _F0]
                        else:
                            cell[0] += ar * br
                            if bi:
                                cell[1] += ar * bi
            out = {}
            for key, (re, im) in acc.items():
                if re or im:
                    out[key] = Scalar._of(re, im)
            blocks.append(out)
        return AfElement._wrap(self.diagram, self.level, blocks)

    def __rmul__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return self * other
        return NotImplemented

    def adjoint(self):
        """Conjugate transpose, blockwise."""
        blocks = [
            {(j, i): val.conjugate() for (i, j), val in block.items()} for block in self.blocks
        ]
        return AfElement._wrap(self.diagram, self.level, blocks)

    def __eq__(self, other):
        if not isinstance(other, AfElement):
            return NotImplemented
        return (
            other.diagram is self.diagram
            and other.level == self.level
            and other.blocks == self.blocks
        )

    __hash__ = None

    # -- the tower --------------------------------------------------------------

    def embed(self):
        """The canonical inclusion of stage n into stage n+1."""
        d = self.diagram
        n = self.level
        if n >= d.depth:
            raise ValueError("cannot embed past the truncation depth %d" % d.depth)
        paths_n = d.paths(n)
        groups = d.block_paths(n)
        offsets = d.memo(("ext_offsets", n), lambda: _extension_offsets(d, n))
        pos_next = d.block_pos(n + 1)
        new_blocks = [{} for _ in d.block_paths(n + 1)]
        for v, block in enumerate(self.blocks):
            if not block:
                continue
            gids = groups[v]
            edges = d.edges_from(paths_n[gids[0]].terminal())
            for (i, j), val in block.items():
                gi, gj = gids[i], gids[j]
                for t in range(len(edges)):
                    w, li = pos_next[offsets[gi] + t]
                    _, lj = pos_next[offsets[gj] + t]
                    new_blocks[w][(li, lj)] = val
        return AfElement._wrap(d, n + 1, new_blocks)

    def embed_to(self, m):
        """Iterate the inclusion up to stage m >= level."""
        if m < self.level:
            raise ValueError("cannot embed level %d down to %d" % (self.level, m))
        x = self
        while x.level < m:
            x = x.embed()
        return x

    def __repr__(self):
        nnz = sum(len(b) for b in self.blocks)
        return "AfElement(level=%d, %d blocks, %d nonzero entries)" % (
            self.level,
            len(self.blocks),
            nnz,
        )


def _extension_offsets(d, n):
    # Position in paths(n+1) where the extensions of each length-n path begin.
    offsets = []
    acc = 0
    for p in d.paths(n):
        offsets.append(acc)
        acc += len(d.edges_from(p.terminal()))
    return tuple(offsets)


def matrix_unit(diagram, gamma, delta):
    """The elementary matrix at a pair of equal-length, same-terminal paths."""
    if len(gamma) != len(delta):
        raise ValueError("paths have different lengths %d and %d" % (len(gamma), len(delta)))
    if gamma.terminal() != delta.terminal():
        raise ValueError(
            "paths end at different vertices %r and %r" % (gamma.terminal(), delta.terminal())
        )
    n = len(gamma)
    d = diagram
    v, i = d.block_pos(n)[d.path_id(gamma)]
    _, j = d.block_pos(n)[d.path_id(delta)]
    blocks = [{} for _ in d.block_paths(n)]
    blocks[v][(i, j)] = ONE
    return AfElement(d, n, blocks)


def represent_cylinder(f):
    """A level-m cylinder function as the diagonal matrix of its table."""
    d = f.diagram
    pos = d.block_pos(f.level)
    blocks = [{} for _ in d.block_paths(f.level)]
    for gid, val in enumerate(f.table):
        if val:
            v, i = pos[gid]
            blocks[v][(i, i)] = val
    return AfElement(d, f.level, blocks)


def jones_projection(diagram, n, m=None):
    """The averaging projection at level n, included into stage m.

    At its own level it is blockwise the rank-one projection onto the
    uniform vector: every entry of block v equals 1/#v.
    """
    d = diagram
    if m is None:
        m = n
    if not 0 <= n <= m <= d.depth:
        raise ValueError("need 0 <= n <= m <= depth, got n=%d m=%d" % (n, m))

    def build():
        blocks = []
        for gids in d.block_paths(n):
            size = len(gids)
            val = as_scalar(Fraction(1, size))
            blocks.append({(i, j): val for i in range(size) for j in range(size)})
        return AfElement(d, n, blocks).embed_to(m)

    return d.memo(("jones_projection", n, m), build)


def toeplitz_word(diagram, gamma, delta, m=None):
    """The word #r(gamma) * rho(I_gamma) * e_n * rho(I_delta) in stage m.

    For same-terminal pairs this recovers the elementary matrix at
    (gamma, delta); for mismatched terminals it collapses to zero.
    """
    if len(gamma) != len(delta):
        raise ValueError("paths have different lengths %d and %d" % (len(gamma), len(delta)))
    n = len(gamma)
    d = diagram
    if m is None:
        m = n
    if not n <= m <= d.depth:
        raise ValueError("need n <= m <= depth, got n=%d m=%d" % (n, m))
    left = represent_cylinder(indicator_path(d, gamma).refine(m))
    right = represent_cylinder(indicator_path(d, delta).refine(m))
    e_n = jones_projection(d, n, m)
    return d.path_count(gamma.terminal()) * (left * e_n * right)


def jones_refinement_check(diagram, n, m):
    """Verify the one-step expansion of the averaging projection.

    The level-n projection must equal the sum over length-(n+1) paths g of
    (#r(g) / #r(g')^2) * rho(J) * e_{n+1} * rho(J), where g' drops the last
    edge of g and J is the indicator of that edge.  Everything is computed
    in stage m >= n+1; returns True when the two sides agree exactly.
    """
    from .cylinder import indicator_edge

    d = diagram
    if not 0 <= n < m <= d.depth:
        raise ValueError("need 0 <= n < m <= depth, got n=%d m=%d" % (n, m))
    lhs = jones_projection(d, n, m)
    e_next = jones_projection(d, n + 1, m)
    # The summand depends on g only through its last edge, so collect the
    # scalar weights per edge first instead of recomputing equal products.
    weights = {}
    for g in d.paths(n + 1):
        last = g.edges[-1]
        weight = Fraction(
            d.path_count(g.terminal()), d.path_count(last.source_vertex()) ** 2
        )
        weights[last] = weights.get(last, 0) + weight
    total = AfElement.zero(d, m)
    for last in sorted(weights):
        side = represent_cylinder(indicator_edge(d, last).refine(m))
        total = total + weights[last] * (side * e_next * side)
    return lhs == total


def dimension_vector(diagram, n):
    """Block sizes at stage n and the total dimension sum of squares."""
    sizes = tuple(diagram.path_count(v) for v in diagram.vertices(n))
    return sizes, sum(s * s for s in sizes)


def embed_multiplicities(diagram, n):
    """The multiplicity matrix the stage-n embedding actually realizes.

    Entry (v, w) counts how many copies of block v land inside block w one
    level down, measured as the trace of the embedded diagonal elementary
    matrix.  For a valid diagram this reproduces the incidence matrix.
    """
    d = diagram
    if not 0 <= n < d.depth:
        raise ValueError("level %d has no embedding (depth %d)" % (n, d.depth))
    paths_n = d.paths(n)
    rows = []
    for v in range(d.vertex_counts[n]):
        gids = d.block_paths(n)[v]
        gamma = paths_n[gids[0]]
        image = matrix_unit(d, gamma, gamma).embed()
        row = []
        for w in range(d.vertex_counts[n + 1]):
            t = image.trace_block(w)
            if t.im or t.re.denominator != 1:
                raise AssertionError("non-integral multiplicity trace %r" % t)
            row.append(int(t.re))
        rows.append(tuple(row))
    return tuple(rows)
