"""Convolution algebra of finitely supported kernels on tail pairs.

A kernel with support level n and table level m >= n assigns scalars to
admissible pairs of length-m paths: pairs that carry the same edges from
coordinate n on and end at the same vertex.  Such a pair stands for the
cylinder of tail-equivalent infinite path pairs it determines.  Convolution
sums over the middle path, involution flips and conjugates, and widening
re-tabulates a kernel at a coarser support or finer table level without
changing the function it represents.
"""

from fractions import Fraction

from .scalars import Scalar, ZERO, as_scalar
from .cylinder import constant, indicator_path

_SCALAR_TYPES = (int, Fraction, Scalar)

_F0 = Fraction(0)


class GroupoidFunction:
    """A finitely supported kernel on level-n tail pairs, tabulated at level m."""

    __slots__ = ("diagram", "support_level", "table_level", "table")

    def __init__(self, diagram, support_level, table_level, table):
        d = diagram
        if not 0 <= support_level <= table_level <= d.depth:
            raise ValueError(
                "need 0 <= support <= table <= depth, got %d, %d" % (support_level, table_level)
            )
        _, class_of = d.tail_classes(table_level, support_level)
        count = len(d.paths(table_level))
        clean = {}
        for (a, b), val in table.items():
            if not (0 <= a < count and 0 <= b < count):
                raise ValueError("pair (%d,%d) outside the level-%d enumeration" % (a, b, table_level))
            if class_of[a] != class_of[b]:
                raise ValueError(
                    "pair (%d,%d) is not admissible at support level %d" % (a, b, support_level)
                )
            val = as_scalar(val)
            if val:
                clean[(a, b)] = val
        self.diagram = d
        self.support_level = support_level
        self.table_level = table_level
        self.table = clean

    # -- structure ---------------------------------------------------------------

    @classmethod
    def _wrap(cls, diagram, support_level, table_level, table):
        # Internal fast path: the table is already clean (admissible pairs,
        # nonzero Scalar values), so skip the constructor's validation pass.
        x = object.__new__(cls)
        x.diagram = diagram
        x.support_level = support_level
        x.table_level = table_level
        x.table = table
        return x

    @classmethod
    def zero(cls, diagram, support_level=0, table_level=None):
        if table_level is None:
            table_level = support_level
        return cls(diagram, support_level, table_level, {})

    def is_zero(self):
        return not self.table

    def entries(self):
        """Yield (row path, col path, value) sorted by the canonical pair order."""
        paths = self.diagram.paths(self.table_level)
        for (a, b) in sorted(self.table):
            yield paths[a], paths[b], self.table[(a, b)]

    def value(self, alpha, beta):
        """The tabulated value at a pair of length-``table_level`` paths."""
        d = self.diagram
        return self.table.get((d.path_id(alpha), d.path_id(beta)), ZERO)

    def widen(self, support_level, table_level):
        """Re-tabulate with a coarser support and/or finer table level.

        Every entry is copied onto all of its common continuations; pairs
        newly admissible at the coarser support stay zero, which is exactly
        what the represented function does off the original support.
        """
        d = self.diagram
        if support_level < self.support_level:
            raise ValueError(
                "support level can only grow (%d -> %d)" % (self.support_level, support_level)
            )
        if table_level < self.table_level:
            raise ValueError(
                "table level can only grow (%d -> %d)" % (self.table_level, table_level)
            )
        if not support_level <= table_level <= d.depth:
            raise ValueError(
                "need support <= table <= depth, got %d, %d" % (support_level, table_level)
            )
        if support_level == self.support_level and table_level == self.table_level:
            return self
        if table_level == self.table_level:
            return GroupoidFunction._wrap(d, support_level, table_level, dict(self.table))
        paths = d.paths(self.table_level)
        out = {}
        for (a, b), val in self.table.items():
            pa, pb = paths[a], paths[b]
            for seg in d.segments_to_level(pa.terminal(), table_level):
                a2 = d.path_id(pa.followed_by(seg))
                b2 = d.path_id(pb.followed_by(seg))
                out[(a2, b2)] = val
        return GroupoidFunction._wrap(d, support_level, table_level, out)

    def _common(self, other):
        if not isinstance(other, GroupoidFunction):
            raise TypeError("expected a GroupoidFunction, got %s" % type(other).__name__)
        if other.diagram is not self.diagram:
            raise ValueError("operands live on different diagrams")
        n = max(self.support_level, other.support_level)
        m = max(self.table_level, other.table_level)
        return self.widen(n, m), other.widen(n, m)

    # -- *-algebra operations --------------------------------------------------------

    def __add__(self, other):
        f, g = self._common(other)
        out = dict(f.table)
        for key, val in g.table.items():
            s = out.get(key, ZERO) + val
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return GroupoidFunction._wrap(f.diagram, f.support_level, f.table_level, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            c = as_scalar(other)
            if not c:
                return GroupoidFunction.zero(self.diagram, self.support_level, self.table_level)
            return GroupoidFunction._wrap(
                self.diagram,
                self.support_level,
                self.table_level,
                {key: c * val for key, val in self.table.items()},
            )
        raise TypeError("use convolve (or @) for kernel products, * for scalars")

    __rmul__ = __mul__

    def __matmul__(self, other):
        return convolve(self, other)

    def adjoint(self):
        """The involution: swap the pair and conjugate the value."""
        out = {(b, a): val.conjugate() for (a, b), val in self.table.items()}
        return GroupoidFunction._wrap(self.diagram, self.support_level, self.table_level, out)

    def __eq__(self, other):
        if not isinstance(other, GroupoidFunction):
            return NotImplemented
        if other.diagram is not self.diagram:
            return False
        f, g = self._common(other)
        return f.table == g.table

    __hash__ = None

    def __repr__(self):
        return "GroupoidFunction(support=%d, table=%d, %d entries)" % (
            self.support_level,
            self.table_level,
            len(self.table),
        )


def convolve(F, G):
    """Kernel product: (F * G)(a, b) = sum over middle paths c of F(a,c) G(c,b)."""
    F2, G2 = F._common(G)
    ft = F2.table
    gt = G2.table
    if not ft or not gt:
        return GroupoidFunction._wrap(F2.diagram, F2.support_level, F2.table_level, {})
    rows = {}
    if len(ft) * 4 < len(gt):
        # Index only the rows of G a small F can actually reach.
        needed = {c for (_, c) in ft}
        for (c, b), val in gt.items():
            if c in needed:
                rows.setdefault(c, []).append((b, val.re, val.im))
    else:
        for (c, b), val in gt.items():
            rows.setdefault(c, []).append((b, val.re, val.im))
    # Accumulate real and imaginary parts as bare Fractions; Scalars are
    # only built for the surviving nonzero cells at the end.
    acc = {}
    for (a, c), fval in F2.table.items():
        row = rows.get(c)
        if row is None:
            continue
        fr = fval.re
        fi = fval.im
        if fi:
            for b, gr, gi in row:
                key = (a, b)
                cell = acc.get(key)
                if gi:
                    re = fr * gr - fi * gi
                    im = fr * gi + fi * gr
                else:
                    re = fr * gr
                    im = fi * gr
                if cell is None:
                    acc[key] = [re, im]
                else:
                    cell[0] += re
                    cell[1] += im
        else:
            for b, gr, gi in row:
                key = (a, b)
                cell = acc.get(key)
                if cell is None:
                    acc[key] = [fr * gr, fr * gi if gi else _F0]
                else:
                    cell[0] += fr * gr
                    if gi:
                        cell[1] += fr * gi
    out = {}
    for key, (re, im) in acc.items():
        if re or im:
            out[key] = Scalar._of(re, im)
    return GroupoidFunction._wrap(F2.diagram, F2.support_level, F2.table_level, out)


def diag(f):
    """A cylinder function as the diagonal kernel at its own table level."""
    d = f.diagram
    table = {(gid, gid): val for gid, val in enumerate(f.table) if val}
    return GroupoidFunction(d, 0, f.level, table)


def jones_kernel(diagram, n):
    """The level-n averaging projection as a kernel: 1/#v on every
    same-terminal pair of length-n paths."""
    d = diagram
    if not 0 <= n <= d.depth:
        raise ValueError("level %d out of range 0..%d" % (n, d.depth))

    def build():
        table = {}
        for gids in d.block_paths(n):
            val = as_scalar(Fraction(1, len(gids)))
            for a in gids:
                for b in gids:
                    table[(a, b)] = val
        return GroupoidFunction(d, n, n, table)

    return d.memo(("jones_kernel", n), build)


def represent(x):
    """A stage-n block matrix as a kernel on length-n tail pairs.

    Each elementary matrix at a pair (gamma, delta) maps to the generator
    word #r(gamma) * diag(I_gamma) @ jones_kernel(n) @ diag(I_delta).  The
    diagonal factors pick out the single kernel entry at (gamma, delta),
    whose value 1/#r(gamma) cancels the normalization, so the word is the
    point mass at that pair and the map just re-keys the block entries by
    path ids.  (The ``word_kernel`` form below keeps the defining product
    available for cross-checking.)
    """
    d = x.diagram
    n = x.level
    groups = d.block_paths(n)
    out = {}
    for v, block in enumerate(x.blocks):
        gids = groups[v]
        for (i, j), val in block.items():
            out[(gids[i], gids[j])] = val
    return GroupoidFunction._wrap(d, n, n, out)


def word_kernel(diagram, gamma, delta):
    """The defining generator word, computed by actual convolutions.

    Evaluates #r(gamma) * diag(I_gamma) @ jones_kernel(n) @ diag(I_delta)
    literally; ``represent`` of the corresponding elementary matrix must
    agree with it, which the verification suites check.
    """
    d = diagram
    if len(gamma) != len(delta):
        raise ValueError("paths have different lengths %d and %d" % (len(gamma), len(delta)))
    n = len(gamma)
    jk = jones_kernel(d, n)
    word = convolve(convolve(diag(indicator_path(d, gamma)), jk), diag(indicator_path(d, delta)))
    return d.path_count(gamma.terminal()) * word


def vanishing_check(F, m):
    """Hunt for a peaked product separating F from zero.

    Convolves F with diag(I_eta) @ jones_kernel(support) for every rooted
    length-m path eta.  Returns True when F is zero (every product
    vanishes, as it must); otherwise returns a witness eta whose product is
    nonzero.  A nonzero F with no witness would contradict the kernel
    lemma, so that state raises.
    """
    d = F.diagram
    n = F.support_level
    if not F.table_level <= m <= d.depth:
        raise ValueError("need table_level <= m <= depth, got m=%d" % m)
    Fw = F.widen(n, m)
    jkw = jones_kernel(d, n).widen(n, m)
    for eta in d.paths(m):
        product = convolve(convolve(Fw, diag(indicator_path(d, eta))), jkw)
        if not product.is_zero():
            return eta
    if not Fw.is_zero():
        raise AssertionError("nonzero kernel produced no witness; the peaked-product lemma failed")
    return True


def unit_kernel(diagram):
    """The convolution unit: the diagonal kernel of the constant 1."""
    return diag(constant(diagram, 1))
