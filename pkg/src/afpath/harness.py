"""Randomized verification suites with deterministic, reproducible reports.

Each suite checks one layer of the library against exact identities:
diagram axioms, path combinatorics against a brute-force walk, the
*-algebra of cylinder functions, the averaging operators, the matrix-unit
tower, and the convolution model.  Every suite draws from its own RNG
stream derived from (seed, suite name), so a report is a pure function of
the configuration -- byte-identical across runs and platforms.

Table sizes implied by the configuration are estimated up front and checked
against the AF_TAIL_MAX_ENTRIES environment variable (default 100000);
breaching the cap is reported as a resource failure rather than silently
truncating the run.
"""

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .scalars import Scalar, ZERO
from .diagram import (
    BratteliDiagram,
    Edge,
    FinitePath,
    Vertex,
    builtin_diagram,
    builtin_name,
    format_path,
    parse_diagram,
    DEFAULT_DEPTHS,
)
from .cylinder import CylinderFunction, constant, indicator_path, indicator_vertex, indicator_edge
from .expectation import class_sum, expect, expect_indicator, quasi_basis_apply, prefix_sum_check
from .af_tower import (
    AfElement,
    matrix_unit,
    represent_cylinder,
    jones_projection,
    toeplitz_word,
    jones_refinement_check,
    dimension_vector,
    embed_multiplicities,
)
from .groupoid import (
    GroupoidFunction,
    convolve,
    diag,
    jones_kernel,
    represent,
    vanishing_check,
    unit_kernel,
    word_kernel,
)

SUITE_NAMES = (
    "validation",
    "combinatorics",
    "cylinder",
    "expectation",
    "matrix_units",
    "tower",
    "groupoid",
)

RNG_NAME = "mt19937-strseed"

MAX_ENTRIES_VAR = "AF_TAIL_MAX_ENTRIES"
DEFAULT_MAX_ENTRIES = 100000

_DENOMINATORS = (1, 2, 3, 4)


@dataclass(frozen=True)
class VerifyConfig:
    """Immutable description of one verification run."""

    source: str
    depth: int = None
    seed: int = 7
    samples: int = 20
    suites: tuple = None

    def __post_init__(self):
        if self.depth is not None and self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a natural number")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.suites is not None:
            object.__setattr__(self, "suites", tuple(self.suites))
            unknown = [s for s in self.suites if s not in SUITE_NAMES]
            if unknown:
                raise ValueError("unknown suites: %s" % ", ".join(unknown))


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    counterexample: str = None
    failure_kind: str = None  # "counterexample" or "resource" when failed


class _Failed(Exception):
    def __init__(self, detail):
        super().__init__(detail)
        self.detail = detail


class _Checker:
    __slots__ = ("checks",)

    def __init__(self):
        self.checks = 0

    def ok(self, cond, detail):
        self.checks += 1
        if not cond:
            raise _Failed(detail() if callable(detail) else detail)

    def add(self, n):
        self.checks += n


class _Context:
    def __init__(self, diagram, config):
        self.diagram = diagram
        self.config = config
        self.samples = config.samples
        self.builtin = builtin_name(config.source)


# -- configuration plumbing ----------------------------------------------------


def truncate_diagram(d, depth):
    """A copy of d cut off at a shallower depth."""
    if depth == d.depth:
        return d
    if not 1 <= depth < d.depth:
        raise ValueError("cannot truncate depth-%d diagram to %d" % (d.depth, depth))
    return BratteliDiagram(d.vertex_counts[: depth + 1], d.incidence[:depth])


def resolve_diagram(config):
    """Build the diagram a config names: a built-in or a file path."""
    name = builtin_name(config.source)
    if name is not None:
        return builtin_diagram(name, config.depth)
    with open(config.source, "r", encoding="utf-8") as fh:
        d = parse_diagram(fh.read())
    if config.depth is not None:
        d = truncate_diagram(d, config.depth)
    return d


def max_entries_cap():
    raw = os.environ.get(MAX_ENTRIES_VAR)
    if raw is None:
        return DEFAULT_MAX_ENTRIES
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (MAX_ENTRIES_VAR, raw)) from None
    if cap < 1:
        raise ValueError("%s must be >= 1" % MAX_ENTRIES_VAR)
    return cap


def estimate_max_table(d):
    """Largest table any suite would materialize at this depth.

    Block-matrix stages need sum over v of #v^2 entries at each level; the
    widest convolution kernels are the averaging kernels, which never exceed
    the same count at the table level.  Path tables are linear and always
    smaller for a valid diagram.
    """
    worst = 0
    total_paths = 0
    for n in range(d.depth + 1):
        counts = [d.path_count(v) for v in d.vertices(n)]
        worst = max(worst, sum(c * c for c in counts))
        total_paths = max(total_paths, sum(counts))
    return max(worst, total_paths)


# -- seeded random elements ------------------------------------------------------


def _random_scalar(rng):
    re = Fraction(rng.randint(-9, 9), rng.choice(_DENOMINATORS))
    im = Fraction(rng.randint(-9, 9), rng.choice(_DENOMINATORS))
    return Scalar(re, im)


def random_cylinder(diagram, level, rng):
    """A level-m function with Gaussian-rational entries: numerators in
    [-9, 9], denominators in {1, 2, 3, 4}, drawn in canonical path order."""
    table = [_random_scalar(rng) for _ in diagram.paths(level)]
    return CylinderFunction(diagram, level, table)


def random_af_element(diagram, level, rng):
    """A stage-n element with fully random blocks (same entry distribution)."""
    blocks = []
    for gids in diagram.block_paths(level):
        size = len(gids)
        blocks.append({(i, j): _random_scalar(rng) for i in range(size) for j in range(size)})
    return AfElement(diagram, level, blocks)


def random_groupoid_function(diagram, support_level, table_level, rng):
    """A kernel with random values on every admissible pair, in class order."""
    classes, _ = diagram.tail_classes(table_level, support_level)
    table = {}
    for cls in classes:
        for a in cls:
            for b in cls:
                table[(a, b)] = _random_scalar(rng)
    return GroupoidFunction(diagram, support_level, table_level, table)


# -- individual suites -------------------------------------------------------------


def _suite_validation(ctx, chk, rng):
    d = ctx.diagram
    instances = 1 + len(d.vertex_counts)
    for n, mat in enumerate(d.incidence):
        instances += len(mat) + d.vertex_counts[n + 1] + sum(len(row) for row in mat)
    chk.add(instances - 1)
    violations = d.validate()
    chk.ok(not violations, lambda: ";".join(v.replace(" ", "_") for v in violations))


def _brute_force_paths(d, n):
    # Independent oracle: walk the incidence matrices directly, bypassing
    # the cached enumerations.
    out = []
    acc = []

    def walk(level, idx):
        if level == n:
            out.append(tuple(acc))
            return
        row = d.incidence[level][idx]
        for j in range(len(row)):
            for k in range(row[j]):
                acc.append(Edge(level, idx, j, k))
                walk(level + 1, j)
                acc.pop()

    walk(0, 0)
    return out


def _suite_combinatorics(ctx, chk, rng):
    d = ctx.diagram
    root = Vertex(0, 0)
    for n in range(min(5, d.depth) + 1):
        brute = _brute_force_paths(d, n)
        lib = d.paths(n)
        chk.ok(len(lib) == len(brute), "path-total;level=%d" % n)
        chk.ok(
            tuple(p.edges for p in lib) == tuple(brute),
            "path-order;level=%d" % n,
        )
        per_vertex = {}
        for edges in brute:
            v = edges[-1].target_vertex() if edges else root
            per_vertex[v] = per_vertex.get(v, 0) + 1
        for v in d.vertices(n):
            chk.ok(
                d.path_count(v) == per_vertex.get(v, 0),
                lambda v=v: "path-count;vertex=(%d,%d)" % (v.level, v.index),
            )
            segs = d.segments(root, v)
            expected = tuple(e for e in brute if (e[-1].target_vertex() if e else root) == v)
            chk.ok(
                tuple(s.edges for s in segs) == expected,
                lambda v=v: "segments;vertex=(%d,%d)" % (v.level, v.index),
            )
    if ctx.builtin == "pascal":
        for n in range(min(6, d.depth) + 1):
            sizes, total = dimension_vector(d, n)
            chk.ok(
                sizes == tuple(math.comb(n, k) for k in range(n + 1)),
                "pascal-sizes;level=%d" % n,
            )
            chk.ok(total == math.comb(2 * n, n), "pascal-dim;level=%d" % n)


def _suite_cylinder(ctx, chk, rng):
    d = ctx.diagram
    top = min(3, d.depth)
    one = constant(d, 1)
    for s in range(ctx.samples):
        f = random_cylinder(d, rng.randint(0, top), rng)
        g = random_cylinder(d, rng.randint(0, top), rng)
        h = random_cylinder(d, rng.randint(0, top), rng)
        tag = "sample=%d" % s
        chk.ok((f + g) * h == f * h + g * h, "distributive;" + tag)
        chk.ok(f * g == g * f, "commutative;" + tag)
        chk.ok((f * g) * h == f * (g * h), "associative;" + tag)
        chk.ok(f * one == f, "unit;" + tag)
        chk.ok((f * g).conjugate() == f.conjugate() * g.conjugate(), "conjugation;" + tag)
        chk.ok(f.conjugate().conjugate() == f, "involutive;" + tag)
        m2 = min(max(f.level, g.level) + 1, d.depth)
        chk.ok((f * g).refine(m2) == f.refine(m2) * g.refine(m2), "refine-mul;" + tag)
        chk.ok((f + g).refine(m2) == f.refine(m2) + g.refine(m2), "refine-add;" + tag)
        chk.ok(f.sup_norm_sq() == f.refine(m2).sup_norm_sq(), "refine-norm;" + tag)
    for n in range(top + 1):
        total = None
        for p in d.paths(n):
            ind = indicator_path(d, p)
            total = ind if total is None else total + ind
        chk.ok(total == one, "partition-of-unity;level=%d" % n)
        f = random_cylinder(d, n, rng)
        rebuilt = None
        for gid, p in enumerate(d.paths(n)):
            term = f.table[gid] * indicator_path(d, p)
            rebuilt = term if rebuilt is None else rebuilt + term
        chk.ok(rebuilt == f, "indicator-expansion;level=%d" % n)
        for v in d.vertices(n):
            iv = indicator_vertex(d, v)
            chk.ok(iv.is_invariant(n), "vertex-indicator-invariant;level=%d" % n)
            for k in range(n + 1):
                chk.ok(iv.is_invariant(k), "invariance-downward;level=%d;k=%d" % (n, k))
        for p in d.paths(n):
            ind = indicator_path(d, p)
            for v in d.vertices(n):
                expected = ind if p.terminal() == v else 0 * ind
                chk.ok(
                    ind * indicator_vertex(d, v) == expected,
                    lambda p=p, v=v: "path-vertex-product;path=%s;vertex=(%d,%d)"
                    % (format_path(p), v.level, v.index),
                )
    for n in range(1, top + 1):
        for p in d.paths(n):
            last = p.edges[-1]
            chk.ok(
                indicator_path(d, p)
                == indicator_path(d, p.prefix(n - 1)) * indicator_edge(d, last),
                lambda p=p: "edge-factorization;path=%s" % format_path(p),
            )
    for s in range(ctx.samples):
        f = random_cylinder(d, rng.randint(0, top), rng)
        m = rng.randint(f.level, d.depth)
        p = rng.choice(d.paths(m))
        chk.ok(
            f.eval(p) == f.refine(m).table[d.path_id(p)],
            lambda p=p: "eval-refine;path=%s" % format_path(p),
        )


def _suite_expectation(ctx, chk, rng):
    d = ctx.diagram
    n_max = min(3, d.depth)
    m_max = min(4, d.depth)
    one = constant(d, 1)
    for n in range(n_max + 1):
        chk.ok(expect(one, n) == one, "unital;n=%d" % n)
        cs = class_sum(one, n)
        for gid, p in enumerate(d.paths(cs.level)):
            chk.ok(
                cs.table[gid] == d.path_count(p.vertex_at(n)),
                lambda p=p, n=n: "class-size;n=%d;path=%s" % (n, format_path(p)),
            )
    for n in range(min(4, d.depth) + 1):
        for gamma in d.paths(n):
            chk.ok(
                expect(indicator_path(d, gamma), n) == expect_indicator(d, gamma),
                lambda gamma=gamma: "indicator-lemma;path=%s" % format_path(gamma),
            )
    for n in range(1, min(4, d.depth) + 1):
        for gamma in d.paths(n):
            stem, last = gamma.prefix(n - 1), gamma.edges[-1]
            lhs = expect(indicator_path(d, stem) * indicator_edge(d, last), n - 1)
            rhs = Fraction(1, d.path_count(stem.terminal())) * indicator_edge(d, last)
            chk.ok(lhs == rhs, lambda gamma=gamma: "edge-lemma;path=%s" % format_path(gamma))
    for n in range(n_max + 1):
        K = max(d.path_count(v) for v in d.vertices(n))
        for m in range(m_max + 1):
            for s in range(ctx.samples):
                tag = "n=%d;m=%d;sample=%d" % (n, m, s)
                f = random_cylinder(d, m, rng)
                g0 = random_cylinder(d, m, rng)
                h0 = random_cylinder(d, m, rng)
                ef = expect(f, n)
                chk.ok(expect(ef, n) == ef, "idempotent;" + tag)
                chk.ok(ef.is_invariant(n), "invariant-range;" + tag)
                chk.ok(
                    expect(f + g0, n) == ef + expect(g0, n),
                    "additive;" + tag,
                )
                chk.ok(
                    expect(f.conjugate(), n) == ef.conjugate(),
                    "conjugation;" + tag,
                )
                g = expect(g0, n)
                h = expect(h0, n)
                chk.ok(expect(g * f * h, n) == g * ef * h, "module;" + tag)
                pos = f * f.conjugate()
                epos = expect(pos, n)
                chk.ok(
                    all(x.im == 0 and x.re >= 0 for x in epos.table),
                    "positive;" + tag,
                )
                for n2 in range(n, n_max + 1):
                    e2 = expect(f, n2)
                    chk.ok(expect(e2, n) == e2, "tower-fix;%s;n2=%d" % (tag, n2))
                    chk.ok(expect(ef, n2) == e2, "tower-collapse;%s;n2=%d" % (tag, n2))
                chk.ok(prefix_sum_check(f, n, max(n, m)), "prefix-sums;" + tag)
                chk.ok(quasi_basis_apply(f, n) == f, "quasi-basis;" + tag)
                chk.ok(
                    class_sum(f, n).sup_norm_sq() <= K * K * f.sup_norm_sq(),
                    "norm-bound;" + tag,
                )


def _units_at(d, n):
    units = []
    paths = d.paths(n)
    for gids in d.block_paths(n):
        for a in gids:
            for b in gids:
                units.append((a, b, matrix_unit(d, paths[a], paths[b])))
    return units


_EXHAUSTIVE_PAIRS = 20000


def _unit_pairs(units, ctx, rng):
    """All ordered unit pairs when that is cheap, else a seeded sample.

    The sample draws half its pairs uniformly and half composable (middle
    indices agreeing), so the nonzero branch of the product rule is
    exercised even when matching pairs are rare.
    """
    if len(units) * len(units) <= _EXHAUSTIVE_PAIRS:
        return [(x, y) for x in units for y in units]
    by_row = {}
    for item in units:
        by_row.setdefault(item[0], []).append(item)
    count = max(100, 13 * ctx.samples)
    pairs = []
    for _ in range(count):
        pairs.append((rng.choice(units), rng.choice(units)))
    for _ in range(count):
        x = rng.choice(units)
        pairs.append((x, rng.choice(by_row[x[1]])))
    return pairs


def _suite_matrix_units(ctx, chk, rng):
    d = ctx.diagram
    for n in range(min(3, d.depth) + 1):
        paths = d.paths(n)
        units = _units_at(d, n)
        unit_map = {(a, b): u for a, b, u in units}
        zero = AfElement.zero(d, n)
        total = AfElement.zero(d, n)
        for a, b, u in units:
            if a == b:
                total = total + u
            chk.ok(
                u.adjoint() == unit_map[(b, a)],
                lambda a=a, b=b: "adjoint;n=%d;pair=%s|%s" % (n, format_path(paths[a]), format_path(paths[b])),
            )
        chk.ok(total == AfElement.identity(d, n), "diagonal-partition;n=%d" % n)
        for (a, b, u1), (c, e, u2) in _unit_pairs(units, ctx, rng):
            expected = unit_map[(a, e)] if b == c else zero
            chk.ok(
                u1 * u2 == expected,
                lambda a=a, b=b, c=c, e=e: "product-rule;n=%d;pairs=%s|%s*%s|%s"
                % (n, format_path(paths[a]), format_path(paths[b]), format_path(paths[c]), format_path(paths[e])),
            )
        for a in range(len(paths)):
            for b in range(len(paths)):
                word = toeplitz_word(d, paths[a], paths[b], n)
                if paths[a].terminal() == paths[b].terminal():
                    expected = unit_map[(a, b)]
                else:
                    expected = zero
                chk.ok(
                    word == expected,
                    lambda a=a, b=b: "word-recovery;n=%d;pair=%s|%s"
                    % (n, format_path(paths[a]), format_path(paths[b])),
                )
        if n < d.depth:
            m2 = n + 1
            for a, b, u in units[: min(len(units), 6)]:
                chk.ok(
                    toeplitz_word(d, paths[a], paths[b], m2) == u.embed_to(m2),
                    lambda a=a, b=b: "word-embedded;n=%d;pair=%s|%s"
                    % (n, format_path(paths[a]), format_path(paths[b])),
                )


def _suite_tower(ctx, chk, rng):
    d = ctx.diagram
    m_max = min(4, d.depth)
    heavy = max(1, ctx.samples // 4)
    for n in range(min(4, d.depth - 1) + 1):
        chk.ok(
            AfElement.identity(d, n).embed() == AfElement.identity(d, n + 1),
            "embed-unital;n=%d" % n,
        )
    for n in range(d.depth):
        chk.ok(
            embed_multiplicities(d, n) == d.incidence[n],
            "realized-multiplicity;n=%d" % n,
        )
    for n in range(min(3, d.depth - 1) + 1):
        # one dense product at level n+1 costs about (sum of block sizes
        # squared) x (max block size) x (max out-degree) multiplications
        sizes = [d.path_count(v) for v in d.vertices(n)]
        outdeg = max(len(d.edges_from(v)) for v in d.vertices(n))
        cost = sum(s * s for s in sizes) * max(sizes) * outdeg
        count = heavy if cost <= 30000 else max(2, heavy // 3)
        for s in range(count):
            tag = "n=%d;sample=%d" % (n, s)
            x = random_af_element(d, n, rng)
            y = random_af_element(d, n, rng)
            chk.ok(x.embed() * y.embed() == (x * y).embed(), "embed-multiplicative;" + tag)
            chk.ok(x.embed() + y.embed() == (x + y).embed(), "embed-additive;" + tag)
            chk.ok(x.adjoint().embed() == x.embed().adjoint(), "embed-star;" + tag)
            chk.ok(x.is_zero() or not x.embed().is_zero(), "embed-injective;" + tag)
            f = random_cylinder(d, n, rng)
            chk.ok(
                represent_cylinder(f).embed() == represent_cylinder(f.refine(n + 1)),
                "embed-coherent;" + tag,
            )
    for m in range(m_max + 1):
        chk.ok(
            jones_projection(d, 0, m) == AfElement.identity(d, m),
            "projection-base;m=%d" % m,
        )
        for n in range(m + 1):
            e_n = jones_projection(d, n, m)
            pcost = sum(len(b) for b in e_n.blocks) * max(
                d.path_count(v) for v in d.vertices(n)
            )
            if pcost <= 250000:
                chk.ok(e_n * e_n == e_n, "projection-idempotent;n=%d;m=%d" % (n, m))
            chk.ok(e_n.adjoint() == e_n, "projection-selfadjoint;n=%d;m=%d" % (n, m))
            if n < m:
                e_next = jones_projection(d, n + 1, m)
                chk.ok(e_next * e_n == e_next, "ladder-right;n=%d;m=%d" % (n, m))
                chk.ok(e_n * e_next == e_next, "ladder-left;n=%d;m=%d" % (n, m))
    for m in range(m_max + 1):
        for n in range(m + 1):
            e_n = jones_projection(d, n, m)
            # one sandwich costs about nnz(e_n) x class size multiplications;
            # scale the sample count down as that grows
            cost = sum(len(b) for b in e_n.blocks) * max(
                d.path_count(v) for v in d.vertices(n)
            )
            if cost <= 10000:
                count = ctx.samples
            elif cost <= 200000:
                count = max(1, ctx.samples // 10)
            else:
                count = 1
            for s in range(count):
                tag = "n=%d;m=%d;sample=%d" % (n, m, s)
                f = random_cylinder(d, m, rng)
                lhs = e_n * represent_cylinder(f) * e_n
                rhs = represent_cylinder(expect(f, n).refine(m)) * e_n
                chk.ok(lhs == rhs, "projection-averages;" + tag)
    for m in range(1, m_max + 1):
        for n in range(m):
            chk.ok(jones_refinement_check(d, n, m), "projection-refines;n=%d;m=%d" % (n, m))


def _suite_groupoid(ctx, chk, rng):
    d = ctx.diagram
    n_max = min(3, d.depth)
    heavy = max(1, ctx.samples // 4)
    one = unit_kernel(d)
    for s in range(heavy):
        tag = "sample=%d" % s
        n1 = rng.randint(0, min(2, d.depth))
        m1 = rng.randint(n1, min(3, d.depth))
        F = random_groupoid_function(d, n1, m1, rng)
        G = random_groupoid_function(d, rng.randint(0, min(2, m1)), m1, rng)
        H = random_groupoid_function(d, n1, rng.randint(n1, min(3, d.depth)), rng)
        chk.ok(convolve(convolve(F, G), H) == convolve(F, convolve(G, H)), "associative;" + tag)
        chk.ok(convolve(F, G).adjoint() == convolve(G.adjoint(), F.adjoint()), "anti-hom;" + tag)
        chk.ok(F.adjoint().adjoint() == F, "involutive;" + tag)
        chk.ok(convolve(one, F) == F, "unit-left;" + tag)
        chk.ok(convolve(F, one) == F, "unit-right;" + tag)
        f1 = random_cylinder(d, m1, rng)
        g1 = random_cylinder(d, m1, rng)
        chk.ok(diag(f1 * g1) == convolve(diag(f1), diag(g1)), "diag-multiplicative;" + tag)
        chk.ok(diag(f1).adjoint() == diag(f1.conjugate()), "diag-star;" + tag)
    for n in range(n_max + 1):
        jk = jones_kernel(d, n)
        chk.ok(convolve(jk, jk) == jk, "kernel-idempotent;n=%d" % n)
        chk.ok(jk.adjoint() == jk, "kernel-selfadjoint;n=%d" % n)
        if n + 1 <= min(4, d.depth):
            jk2 = jones_kernel(d, n + 1)
            chk.ok(convolve(jk, jk2) == jk2, "kernel-ladder-left;n=%d" % n)
            chk.ok(convolve(jk2, jk) == jk2, "kernel-ladder-right;n=%d" % n)
    for n in range(n_max + 1):
        jk = jones_kernel(d, n)
        for s in range(heavy):
            tag = "n=%d;sample=%d" % (n, s)
            m = rng.randint(n, min(4, d.depth))
            f = random_cylinder(d, m, rng)
            g = random_cylinder(d, m, rng)
            chk.ok(
                convolve(convolve(jk, diag(f)), jk) == convolve(diag(expect(f, n)), jk),
                "kernel-averages;" + tag,
            )
            P1 = convolve(convolve(diag(f), jk), diag(g))
            jkw = jk.widen(m, m)
            P2 = convolve(convolve(diag(f), jkw), diag(g))
            chk.ok(P2 == P1.widen(m, m), "support-bound;" + tag)
            _, class_of = d.tail_classes(P2.table_level, n)
            chk.ok(
                all(class_of[a] == class_of[b] for a, b in P2.table),
                "support-admissible;" + tag,
            )
    for n in range(n_max + 1):
        paths = d.paths(n)
        units = _units_at(d, n)
        psi_map = {(a, b): represent(u) for a, b, u in units}
        zero = GroupoidFunction.zero(d, n, n)
        chk.ok(represent(AfElement.identity(d, n)) == one, "represent-unital;n=%d" % n)
        for a, b, u in units:
            img = psi_map[(a, b)]
            chk.ok(not img.is_zero(), "represent-injective;n=%d;pair=%s|%s" % (n, format_path(paths[a]), format_path(paths[b])))
            chk.ok(
                img.adjoint() == psi_map[(b, a)],
                lambda a=a, b=b: "represent-star;n=%d;pair=%s|%s" % (n, format_path(paths[a]), format_path(paths[b])),
            )
        # the image of a matrix unit must agree with the full convolution
        # word that defines it, not just with the collapsed closed form
        if len(units) <= 1000:
            word_pairs = [(a, b) for a, b, _ in units]
        else:
            word_pairs = [rng.choice(units)[:2] for _ in range(max(48, 2 * ctx.samples))]
        for a, b in word_pairs:
            chk.ok(
                psi_map[(a, b)] == word_kernel(d, paths[a], paths[b]),
                lambda a=a, b=b: "represent-word;n=%d;pair=%s|%s" % (n, format_path(paths[a]), format_path(paths[b])),
            )
        for (a, b, u1), (c, e, u2) in _unit_pairs(units, ctx, rng):
            prod = u1 * u2
            if prod.is_zero():
                expected = zero
            else:
                entries = list(prod.nonzero_entries())
                (v, gamma, delta, val) = entries[0]
                expected = psi_map[(d.path_id(gamma), d.path_id(delta))]
                if len(entries) != 1 or val != 1:
                    expected = represent(prod)
            chk.ok(
                convolve(psi_map[(a, b)], psi_map[(c, e)]) == expected,
                lambda a=a, b=b, c=c, e=e: "represent-multiplicative;n=%d;pairs=%s|%s*%s|%s"
                % (n, format_path(paths[a]), format_path(paths[b]), format_path(paths[c]), format_path(paths[e])),
            )
        if n < min(3, d.depth):
            for a, b, u in units:
                chk.ok(
                    represent(u.embed()) == psi_map[(a, b)].widen(n + 1, n + 1),
                    lambda a=a, b=b: "represent-embed;n=%d;pair=%s|%s"
                    % (n, format_path(paths[a]), format_path(paths[b])),
                )
    n = n_max
    paths = d.paths(n)
    chk.ok(
        vanishing_check(GroupoidFunction.zero(d, n, n), min(n + 1, d.depth)) is True,
        "vanishing-zero;n=%d" % n,
    )
    for a, b, u in _units_at(d, n):
        witness = vanishing_check(represent(u), n)
        chk.ok(
            witness == paths[b],
            lambda a=a, b=b: "vanishing-witness;n=%d;pair=%s|%s" % (n, format_path(paths[a]), format_path(paths[b])),
        )


_SUITE_FUNCTIONS = {
    "validation": _suite_validation,
    "combinatorics": _suite_combinatorics,
    "cylinder": _suite_cylinder,
    "expectation": _suite_expectation,
    "matrix_units": _suite_matrix_units,
    "tower": _suite_tower,
    "groupoid": _suite_groupoid,
}


# -- the runner -------------------------------------------------------------------


def _run_one(name, ctx):
    chk = _Checker()
    rng = random.Random("%d:%s" % (ctx.config.seed, name))
    try:
        _SUITE_FUNCTIONS[name](ctx, chk, rng)
    except _Failed as exc:
        return SuiteResult(name, False, chk.checks, str(exc.detail), "counterexample")
    return SuiteResult(name, True, chk.checks)


def run_suites(config, diagram=None):
    """Run the configured suites; returns a list of SuiteResult.

    The diagram is validated first regardless of the filter: on an invalid
    diagram only the validation result is returned and everything else is
    skipped.  A configuration whose tables would exceed AF_TAIL_MAX_ENTRIES
    short-circuits into a single resource failure.
    """
    if diagram is None:
        diagram = resolve_diagram(config)
    cap = max_entries_cap()
    needed = estimate_max_table_safe(diagram)
    if needed > cap:
        return [
            SuiteResult(
                "resource",
                False,
                0,
                "resource-limit:needed=%d,cap=%d,var=%s" % (needed, cap, MAX_ENTRIES_VAR),
                "resource",
            )
        ]
    ctx = _Context(diagram, config)
    wanted = config.suites if config.suites is not None else SUITE_NAMES
    validation = _run_one("validation", ctx)
    if not validation.passed:
        return [validation]
    results = []
    for name in SUITE_NAMES:
        if name not in wanted:
            continue
        if name == "validation":
            results.append(validation)
        else:
            results.append(_run_one(name, ctx))
    return results


def estimate_max_table_safe(diagram):
    """Table estimate that degrades gracefully on invalid diagrams."""
    try:
        return estimate_max_table(diagram)
    except Exception:
        return 0


def render_report(config, results, depth=None):
    """The machine-readable report: header comments, SUITE lines, RESULT."""
    lines = []
    lines.append(
        "# verify source=%s depth=%s seed=%d samples=%d rng=%s"
        % (
            config.source,
            depth if depth is not None else (config.depth if config.depth is not None else "default"),
            config.seed,
            config.samples,
            RNG_NAME,
        )
    )
    ok = True
    for r in results:
        if r.passed:
            lines.append("SUITE %s PASS checks=%d" % (r.name, r.checks))
        else:
            ok = False
            detail = (r.counterexample or "unknown").replace(" ", "_")
            lines.append("SUITE %s FAIL checks=%d counterexample=%s" % (r.name, r.checks, detail))
    lines.append("RESULT %s" % ("PASS" if ok else "FAIL"))
    return "\n".join(lines) + "\n"
