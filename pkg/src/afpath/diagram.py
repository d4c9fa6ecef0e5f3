"""Truncated layered multigraphs and their rooted-path combinatorics.

A diagram of depth D consists of vertex counts c0..cD (c0 = 1, a single
root) and, for each level n < D, a cn x c(n+1) matrix of edge
multiplicities.  Enumeration orders are fixed once and for all: edges sort
by (level, source, target, copy) and paths lexicographically by their edge
sequences.  Every table built on top of a diagram -- function tables, block
matrices, convolution kernels -- is indexed by these canonical orders, which
is what makes byte-level determinism possible downstream.
"""

from dataclasses import dataclass


class DepthExhaustedError(ValueError):
    """Raised when an operation needs edges past the truncation depth."""


class DiagramParseError(ValueError):
    """Raised on malformed diagram files; carries the offending line number."""

    def __init__(self, lineno, message):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


@dataclass(frozen=True, order=True)
class Vertex:
    level: int
    index: int

    def __repr__(self):
        return "Vertex(%d, %d)" % (self.level, self.index)


@dataclass(frozen=True, order=True)
class Edge:
    """One edge from vertex (level, source) to vertex (level+1, target).

    Parallel edges are distinguished by ``copy`` in 0..multiplicity-1.
    """

    level: int
    source: int
    target: int
    copy: int

    def source_vertex(self):
        return Vertex(self.level, self.source)

    def target_vertex(self):
        return Vertex(self.level + 1, self.target)

    def __repr__(self):
        return "Edge(%d: %d>%d#%d)" % (self.level, self.source, self.target, self.copy)


def _check_chain(edges, start_level, start_index):
    level, index = start_level, start_index
    for e in edges:
        if e.level != level or e.source != index:
            raise ValueError("edge %r does not chain at level %d vertex %d" % (e, level, index))
        level, index = level + 1, e.target


class FinitePath:
    """A rooted path: a chained edge sequence starting at the level-0 root."""

    __slots__ = ("edges",)

    def __init__(self, edges=()):
        edges = tuple(edges)
        _check_chain(edges, 0, 0)
        self.edges = edges

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __getitem__(self, k):
        return self.edges[k]

    def terminal(self):
        """The vertex this path ends at (the root for the empty path)."""
        if not self.edges:
            return Vertex(0, 0)
        return self.edges[-1].target_vertex()

    def vertex_at(self, k):
        """The vertex the path passes through at level k (0 <= k <= len)."""
        if k == len(self.edges):
            return self.terminal()
        return self.edges[k].source_vertex()

    def prefix(self, k):
        return FinitePath(self.edges[:k])

    def extend(self, edge):
        return FinitePath(self.edges + (edge,))

    def followed_by(self, segment):
        if segment.start != self.terminal():
            raise ValueError("segment starts at %r, path ends at %r" % (segment.start, self.terminal()))
        return FinitePath(self.edges + segment.edges)

    def _key(self):
        return tuple((e.source, e.target, e.copy) for e in self.edges)

    def __eq__(self, other):
        if isinstance(other, FinitePath):
            return self.edges == other.edges
        return NotImplemented

    def __hash__(self):
        return hash(self.edges)

    def __lt__(self, other):
        return self._key() < other._key()

    def __repr__(self):
        return "FinitePath(%s)" % format_path(self)


class PathSegment:
    """A chained edge sequence starting at an arbitrary vertex."""

    __slots__ = ("start", "edges")

    def __init__(self, start, edges=()):
        edges = tuple(edges)
        _check_chain(edges, start.level, start.index)
        self.start = start
        self.edges = edges

    def __len__(self):
        return len(self.edges)

    def end(self):
        if not self.edges:
            return self.start
        return self.edges[-1].target_vertex()

    def extend(self, edge):
        return PathSegment(self.start, self.edges + (edge,))

    def __eq__(self, other):
        if isinstance(other, PathSegment):
            return self.start == other.start and self.edges == other.edges
        return NotImplemented

    def __hash__(self):
        return hash((self.start, self.edges))

    def __repr__(self):
        return "PathSegment(%r, %s)" % (self.start, format_path(self))


def format_path(path):
    """Serialize a path as ``s>r#k;...`` per edge, or ``()`` when empty."""
    edges = path.edges if hasattr(path, "edges") else tuple(path)
    if not edges:
        return "()"
    return ";".join("%d>%d#%d" % (e.source, e.target, e.copy) for e in edges)


class BratteliDiagram:
    """Vertex counts plus per-level multiplicity matrices, depth >= 1.

    Instances are immutable after construction (internal memo tables are
    filled lazily but never change a result).  Diagrams compare by identity;
    all functions operating on several objects require them to share one
    diagram instance.
    """

    def __init__(self, vertex_counts, incidence):
        counts = tuple(int(c) for c in vertex_counts)
        matrices = tuple(tuple(tuple(int(x) for x in row) for row in mat) for mat in incidence)
        if len(matrices) < 1:
            raise ValueError("diagram needs depth >= 1")
        if len(counts) != len(matrices) + 1:
            raise ValueError(
                "got %d vertex counts for %d incidence matrices" % (len(counts), len(matrices))
            )
        if any(c < 0 for c in counts):
            raise ValueError("vertex counts must be nonnegative")
        for n, mat in enumerate(matrices):
            if len(mat) != counts[n]:
                raise ValueError("incidence %d has %d rows, expected %d" % (n, len(mat), counts[n]))
            for row in mat:
                if len(row) != counts[n + 1]:
                    raise ValueError(
                        "incidence %d has a row of width %d, expected %d" % (n, len(row), counts[n + 1])
                    )
        self.vertex_counts = counts
        self.incidence = matrices
        self.depth = len(matrices)
        self._memo = {}

    # -- structure ---------------------------------------------------------

    def memo(self, key, build):
        """Lazily computed, instance-scoped cache (safe for concurrent reads)."""
        try:
            return self._memo[key]
        except KeyError:
            value = build()
            self._memo[key] = value
            return value

    def vertex_count(self, level):
        self._check_level(level)
        return self.vertex_counts[level]

    def vertices(self, level):
        self._check_level(level)
        return tuple(Vertex(level, i) for i in range(self.vertex_counts[level]))

    def _check_level(self, level):
        if not 0 <= level <= self.depth:
            raise ValueError("level %d out of range 0..%d" % (level, self.depth))

    def _check_vertex(self, v):
        self._check_level(v.level)
        if not 0 <= v.index < self.vertex_counts[v.level]:
            raise ValueError("%r does not exist (level has %d vertices)" % (v, self.vertex_counts[v.level]))

    def validate(self):
        """Check the diagram axioms; returns a list of violation strings.

        An empty list means the diagram is valid.  Conditions are named by
        letter: (a) every level nonempty, (c) multiplicities nonnegative,
        (d) a single root, (e) every vertex below the last level emits an
        edge, (f) every vertex above the root receives one.
        """
        found = []
        if self.vertex_counts[0] != 1:
            found.append("(d) level=0: expected exactly one root vertex, got %d" % self.vertex_counts[0])
        for n, c in enumerate(self.vertex_counts):
            if c == 0:
                found.append("(a) level=%d: level is empty" % n)
        for n, mat in enumerate(self.incidence):
            for i, row in enumerate(mat):
                for j, x in enumerate(row):
                    if x < 0:
                        found.append("(c) level=%d edge (%d->%d): negative multiplicity %d" % (n, i, j, x))
            for i, row in enumerate(mat):
                if not any(x > 0 for x in row):
                    found.append("(e) level=%d vertex=%d: no outgoing edge" % (n, i))
            for j in range(self.vertex_counts[n + 1]):
                if not any(row[j] > 0 for row in mat):
                    found.append("(f) level=%d vertex=%d: no incoming edge" % (n + 1, j))
        return found

    # -- edges and paths ----------------------------------------------------

    def edges_from(self, v):
        """Outgoing edges of v in canonical (target, copy) order."""
        self._check_vertex(v)
        if v.level == self.depth:
            raise DepthExhaustedError(
                "vertex %r sits at the truncation depth %d; no edges stored beyond it" % (v, self.depth)
            )
        def build():
            out = []
            row = self.incidence[v.level][v.index]
            for j, mult in enumerate(row):
                for k in range(mult):
                    out.append(Edge(v.level, v.index, j, k))
            return tuple(out)
        return self.memo(("edges_from", v.level, v.index), build)

    def path_count(self, v):
        """Number of rooted paths ending at v, by the multiplicity recursion."""
        self._check_vertex(v)
        return self._level_counts(v.level)[v.index]

    def _level_counts(self, n):
        def build():
            if n == 0:
                return (1,) * self.vertex_counts[0]
            prev = self._level_counts(n - 1)
            mat = self.incidence[n - 1]
            return tuple(
                sum(prev[i] * mat[i][j] for i in range(self.vertex_counts[n - 1]))
                for j in range(self.vertex_counts[n])
            )
        return self.memo(("counts", n), build)

    def paths(self, n):
        """All rooted paths of length n, lexicographically by edge sequence."""
        self._check_level(n)
        def build():
            if n == 0:
                return (FinitePath(()),)
            out = []
            for p in self.paths(n - 1):
                for e in self.edges_from(p.terminal()):
                    out.append(p.extend(e))
            return tuple(out)
        return self.memo(("paths", n), build)

    def path_id(self, path):
        """Position of a rooted path within the canonical enumeration."""
        n = len(path)
        index = self.memo(("path_index", n), lambda: {p: i for i, p in enumerate(self.paths(n))})
        try:
            return index[path]
        except KeyError:
            raise ValueError("%r is not a path of this diagram" % (path,)) from None

    def segments(self, v, w):
        """All segments from v to w, ordered like the path enumeration."""
        self._check_vertex(v)
        self._check_vertex(w)
        if w.level < v.level:
            raise ValueError("segment target %r sits above source %r" % (w, v))
        def build():
            frontier = [PathSegment(v, ())]
            for _ in range(w.level - v.level):
                frontier = [s.extend(e) for s in frontier for e in self.edges_from(s.end())]
            return tuple(s for s in frontier if s.end() == w)
        return self.memo(("segments", v, w), build)

    def segments_to_level(self, v, m):
        """All segments from v down to level m, in canonical order."""
        self._check_vertex(v)
        if m < v.level:
            raise ValueError("target level %d sits above %r" % (m, v))
        def build():
            frontier = [PathSegment(v, ())]
            for _ in range(m - v.level):
                frontier = [s.extend(e) for s in frontier for e in self.edges_from(s.end())]
            return tuple(frontier)
        return self.memo(("segments_to_level", v, m), build)

    # -- canonical indexing for tables --------------------------------------

    def block_paths(self, n):
        """Path ids at level n grouped by terminal vertex, canonical order."""
        def build():
            groups = [[] for _ in range(self.vertex_counts[n])]
            for gid, p in enumerate(self.paths(n)):
                groups[p.terminal().index].append(gid)
            return tuple(tuple(g) for g in groups)
        return self.memo(("block_paths", n), build)

    def block_pos(self, n):
        """Map path id -> (terminal vertex index, position inside the block)."""
        def build():
            pos = [None] * len(self.paths(n))
            for v, gids in enumerate(self.block_paths(n)):
                for local, gid in enumerate(gids):
                    pos[gid] = (v, local)
            return tuple(pos)
        return self.memo(("block_pos", n), build)

    def tail_classes(self, m, n):
        """Partition of length-m paths into level-n tail classes.

        Two length-m paths are equivalent when they carry the same edges
        from coordinate n on and pass through the same level-n vertex (the
        vertex clause only matters when m = n).  Returns (classes, class_of)
        where classes is a tuple of tuples of path ids and class_of maps a
        path id to its class index.
        """
        if not 0 <= n <= m <= self.depth:
            raise ValueError("need 0 <= n <= m <= depth, got n=%d m=%d" % (n, m))
        def build():
            key_to_class = {}
            classes = []
            class_of = []
            for p in self.paths(m):
                key = (p.vertex_at(n).index, p.edges[n:])
                if key not in key_to_class:
                    key_to_class[key] = len(classes)
                    classes.append([])
                cid = key_to_class[key]
                classes[cid].append(len(class_of))
                class_of.append(cid)
            return tuple(tuple(c) for c in classes), tuple(class_of)
        return self.memo(("tail_classes", m, n), build)

    def prefix_ids(self, m_fine, m_coarse):
        """Map each length-m_fine path id to the id of its length-m_coarse prefix."""
        if not 0 <= m_coarse <= m_fine <= self.depth:
            raise ValueError("bad prefix levels %d -> %d" % (m_fine, m_coarse))
        def build():
            index = {p: i for i, p in enumerate(self.paths(m_coarse))}
            return tuple(index[p.prefix(m_coarse)] for p in self.paths(m_fine))
        return self.memo(("prefix_ids", m_fine, m_coarse), build)

    def __repr__(self):
        return "BratteliDiagram(depth=%d, vertices=%s)" % (self.depth, list(self.vertex_counts))


# -- built-in diagrams -------------------------------------------------------

DEFAULT_DEPTHS = {"car": 5, "pascal": 6, "fibonacci": 6, "uhf3": 4}

BUILTIN_NAMES = ("car", "pascal", "fibonacci", "uhf3")

_ALIASES = {"gicar": "pascal", "uhf-3": "uhf3", "uhf_3": "uhf3"}


def builtin_name(name):
    """Normalize a built-in diagram name, or return None if unknown."""
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    return key if key in BUILTIN_NAMES else None


def builtin_diagram(name, depth=None):
    """Construct a built-in diagram at the given (or default) depth.

    Known names: ``car`` (one vertex per level, double edges), ``pascal``
    (n+1 vertices at level n, binomial path counts), ``fibonacci`` (two
    vertices per level past the root, golden-mean multiplicities), ``uhf3``
    (one vertex per level, triple edges).
    """
    key = builtin_name(name)
    if key is None:
        raise ValueError("unknown built-in diagram %r (known: %s)" % (name, ", ".join(BUILTIN_NAMES)))
    if depth is None:
        depth = DEFAULT_DEPTHS[key]
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if key == "car":
        return BratteliDiagram([1] * (depth + 1), [((2,),)] * depth)
    if key == "uhf3":
        return BratteliDiagram([1] * (depth + 1), [((3,),)] * depth)
    if key == "pascal":
        counts = [n + 1 for n in range(depth + 1)]
        mats = []
        for n in range(depth):
            mat = []
            for k in range(n + 1):
                row = [0] * (n + 2)
                row[k] = 1
                row[k + 1] = 1
                mat.append(tuple(row))
            mats.append(tuple(mat))
        return BratteliDiagram(counts, mats)
    if key == "fibonacci":
        counts = [1] + [2] * depth
        mats = [((1, 1),)] + [((1, 1), (1, 0))] * (depth - 1)
        return BratteliDiagram(counts, mats)
    raise AssertionError("unreachable")


# -- file format --------------------------------------------------------------
#
#   BRATTELI 1
#   levels <D>
#   vertices <c0> <c1> ... <cD>
#   incidence <n>          (repeated for n = 0..D-1)
#   <cn rows of cn+1 integers>
#
# '#' starts a comment; blank lines are ignored.  Rows of width zero are
# written as nothing at all, so files whose vertex counts include a zero
# still parse (validation, not parsing, reports the empty level).


def parse_diagram(text):
    """Parse the diagram file format; raises DiagramParseError with a line number."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    cursor = 0

    def next_line(expect):
        nonlocal cursor
        if cursor >= len(lines):
            lastno = lines[-1][0] if lines else 1
            raise DiagramParseError(lastno, "unexpected end of file, expected %s" % expect)
        item = lines[cursor]
        cursor += 1
        return item

    def parse_ints(lineno, tokens, what):
        out = []
        for t in tokens:
            try:
                out.append(int(t))
            except ValueError:
                raise DiagramParseError(lineno, "non-numeric %s entry %r" % (what, t)) from None
        return out

    lineno, header = next_line("header 'BRATTELI 1'")
    parts = header.split()
    if len(parts) != 2 or parts[0] != "BRATTELI":
        raise DiagramParseError(lineno, "malformed header %r, expected 'BRATTELI 1'" % header)
    if parts[1] != "1":
        raise DiagramParseError(lineno, "unsupported format version %r" % parts[1])

    lineno, body = next_line("'levels <D>'")
    parts = body.split()
    if len(parts) != 2 or parts[0] != "levels":
        raise DiagramParseError(lineno, "expected 'levels <D>', got %r" % body)
    (depth,) = parse_ints(lineno, parts[1:], "levels")
    if depth < 1:
        raise DiagramParseError(lineno, "levels must be >= 1, got %d" % depth)

    lineno, body = next_line("'vertices <c0> ... <cD>'")
    parts = body.split()
    if not parts or parts[0] != "vertices":
        raise DiagramParseError(lineno, "expected 'vertices ...', got %r" % body)
    counts = parse_ints(lineno, parts[1:], "vertex count")
    if len(counts) != depth + 1:
        raise DiagramParseError(
            lineno, "expected %d vertex counts for %d levels, got %d" % (depth + 1, depth, len(counts))
        )
    if any(c < 0 for c in counts):
        raise DiagramParseError(lineno, "vertex counts must be nonnegative")

    matrices = []
    for n in range(depth):
        lineno, body = next_line("'incidence %d'" % n)
        parts = body.split()
        if len(parts) != 2 or parts[0] != "incidence":
            raise DiagramParseError(lineno, "expected 'incidence %d', got %r" % (n, body))
        (tag,) = parse_ints(lineno, parts[1:], "incidence header")
        if tag != n:
            raise DiagramParseError(lineno, "incidence blocks out of order: expected %d, got %d" % (n, tag))
        width = counts[n + 1]
        mat = []
        for _ in range(counts[n]):
            if width == 0:
                mat.append(())
                continue
            lineno, body = next_line("a row of %d integers" % width)
            row = parse_ints(lineno, body.split(), "incidence")
            if len(row) != width:
                raise DiagramParseError(lineno, "row has %d entries, expected %d" % (len(row), width))
            mat.append(tuple(row))
        matrices.append(tuple(mat))

    if cursor != len(lines):
        lineno, body = lines[cursor]
        raise DiagramParseError(lineno, "unexpected trailing content %r" % body)
    return BratteliDiagram(counts, matrices)


def serialize_diagram(d, comment=None):
    """Render a diagram in the file format (round-trips through parse_diagram)."""
    out = []
    if comment:
        for line in comment.splitlines():
            out.append("# " + line)
    out.append("BRATTELI 1")
    out.append("levels %d" % d.depth)
    out.append("vertices " + " ".join(str(c) for c in d.vertex_counts))
    for n, mat in enumerate(d.incidence):
        out.append("incidence %d" % n)
        for row in mat:
            if row:
                out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"
