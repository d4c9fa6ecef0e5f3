"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Criteria 1-5 drive the library and the verification suites on the four
built-in diagrams at their default depths; criterion 6 exercises the
command-line front end end-to-end.  Everything is exact: a single wrong
entry anywhere fails the criterion.
"""

import math

from afpath import (
    AfElement,
    VerifyConfig,
    Vertex,
    builtin_diagram,
    dimension_vector,
    embed_multiplicities,
    matrix_unit,
    represent,
    run_suites,
    toeplitz_word,
)
from afpath.cli import main

DEAD_END = """BRATTELI 1
levels 2
vertices 1 2 1
incidence 0
1 1
incidence 1
1
0
"""

ORPHAN = """BRATTELI 1
levels 2
vertices 1 1 2
incidence 0
1
incidence 1
1 0
"""


def verdict(label, failures, detail):
    ok = not failures
    note = detail if ok else "; ".join(failures[:3])
    print("ACCEPTANCE %s: %s (%s)" % (label, "PASS" if ok else "FAIL", note))
    assert ok, "%s: %s" % (label, note)


def suite_result(name, diagram, suite):
    config = VerifyConfig(source=name, suites=(suite,))
    results = run_suites(config, diagram)
    assert [r.name for r in results] == [suite]
    return results[0]


def dfs_counts(d, n):
    counts = [0] * d.vertex_counts[n]

    def walk(level, index):
        if level == n:
            counts[index] += 1
            return
        for e in d.edges_from(Vertex(level, index)):
            walk(level + 1, e.target)

    walk(0, 0)
    return counts


def all_units(d, n):
    paths = d.paths(n)
    units = {}
    for gids in d.block_paths(n):
        for a in gids:
            for b in gids:
                units[(a, b)] = matrix_unit(d, paths[a], paths[b])
    return units


def test_criterion_1_counting_oracle(builtins):
    failures = []
    checked = 0
    for name, d in builtins.items():
        probe = d if d.depth >= 5 else builtin_diagram(name, 5)
        for n in range(min(5, probe.depth) + 1):
            expected = dfs_counts(probe, n)
            got = [probe.path_count(v) for v in probe.vertices(n)]
            if got != expected:
                failures.append("%s level %d: %s != dfs %s" % (name, n, got, expected))
            checked += len(expected)
    pascal = builtins["pascal"]
    for n in range(7):
        dim = dimension_vector(pascal, n)[1]
        if dim != math.comb(2 * n, n):
            failures.append("pascal dim at %d: %d != C(%d,%d)" % (n, dim, 2 * n, n))
        checked += 1
    if dimension_vector(pascal, 3)[1] != 20:
        failures.append("pascal stage-3 dimension is not 20")
    verdict(
        "criterion 1 (path-count oracle)",
        failures,
        "4 diagrams to level 5, %d counts, binomial dimensions to level 6" % checked,
    )


def test_criterion_2_expectation_laws(builtins):
    failures = []
    checks = 0
    for name, d in builtins.items():
        config = VerifyConfig(source=name, suites=("expectation",))
        assert config.samples >= 20
        r = run_suites(config, d)[0]
        checks += r.checks
        if not r.passed:
            failures.append("%s: %s" % (name, r.counterexample))
    verdict(
        "criterion 2 (expectation laws)",
        failures,
        "idempotence, unitality, module, tower, indicator lemma, prefix sums, "
        "quasi-basis; %d checks at 20 samples per point" % checks,
    )


def test_criterion_3_matrix_unit_relations(builtins):
    failures = []
    products = 0
    words = 0
    for name, d in builtins.items():
        for n in range(min(3, d.depth) + 1):
            units = all_units(d, n)
            items = list(units.items())
            for (a, b), u1 in items:
                for (c, e), u2 in items:
                    prod = u1 * u2
                    good = prod == units[(a, e)] if b == c else prod.is_zero()
                    products += 1
                    if not good:
                        failures.append("%s n=%d: product rule at %s" % (name, n, ((a, b), (c, e))))
                        break
                else:
                    continue
                break
            for (a, b), u in items:
                if u.adjoint() != units[(b, a)]:
                    failures.append("%s n=%d: adjoint law at %s" % (name, n, (a, b)))
                    break
            total = AfElement.zero(d, n)
            for gid in range(len(d.paths(n))):
                total = total + units[(gid, gid)]
            if total != AfElement.identity(d, n):
                failures.append("%s n=%d: diagonal units do not sum to 1" % (name, n))
            paths = d.paths(n)
            for (a, b), u in items:
                words += 1
                if toeplitz_word(d, paths[a], paths[b]) != u:
                    failures.append("%s n=%d: toeplitz word at %s" % (name, n, (a, b)))
                    break
    zero_cases = 0
    for name in ("pascal", "fibonacci"):
        d = builtins[name]
        for n in (1, 2, 3):
            paths = d.paths(n)
            for g in paths:
                for h in paths:
                    if g.terminal() != h.terminal():
                        zero_cases += 1
                        if not toeplitz_word(d, g, h).is_zero():
                            failures.append("%s n=%d: nonzero cross-block word" % (name, n))
    if not zero_cases:
        failures.append("no cross-block pairs exercised")
    verdict(
        "criterion 3 (matrix-unit relations)",
        failures,
        "full product tables to level 3 (%d products), adjoints, partitions "
        "of unity, %d toeplitz words, %d cross-block zeros" % (products, words, zero_cases),
    )


def test_criterion_4_tower_embeddings(builtins):
    failures = []
    checks = 0
    for name, d in builtins.items():
        r = suite_result(name, d, "tower")
        checks += r.checks
        if not r.passed:
            failures.append("%s: %s" % (name, r.counterexample))
        for n in range(d.depth):
            checks += 1
            if embed_multiplicities(d, n) != d.incidence[n]:
                failures.append("%s: multiplicities at stage %d" % (name, n))
    verdict(
        "criterion 4 (tower and embeddings)",
        failures,
        "unital injective *-embeddings, realized multiplicities = incidence, "
        "projection relations and refinement; %d checks" % checks,
    )


def test_criterion_5_groupoid_model(builtins):
    failures = []
    checks = 0
    for name, d in builtins.items():
        r = suite_result(name, d, "groupoid")
        checks += r.checks
        if not r.passed:
            failures.append("%s: %s" % (name, r.counterexample))
        for n in range(min(3, d.depth) + 1):
            seen = set()
            for key, u in all_units(d, n).items():
                image = represent(u).table
                checks += 1
                if not image:
                    failures.append("%s n=%d: unit %s maps to zero" % (name, n, key))
                    break
                support = frozenset(image)
                if support in seen:
                    failures.append("%s n=%d: units collide at %s" % (name, n, key))
                    break
                seen.add(support)
    verdict(
        "criterion 5 (groupoid convolution model)",
        failures,
        "associativity, projection kernels, averaging and support lemmas, "
        "*-homomorphism, injective on unit bases to level 3; %d checks" % checks,
    )


def test_criterion_6_cli_end_to_end(tmp_path, capsys):
    failures = []
    reports = {}
    for name in ("car", "pascal", "fibonacci", "uhf3"):
        rc = main(["verify", name, "--seed", "7", "--samples", "20"])
        out = capsys.readouterr().out
        reports[name] = out
        if rc != 0:
            failures.append("%s: exit %d" % (name, rc))
        if not out.strip().endswith("RESULT PASS"):
            failures.append("%s: report did not pass" % name)
        if "seed=7" not in out.splitlines()[0]:
            failures.append("%s: header lost the seed" % name)
    rc = main(["verify", "car", "--seed", "7", "--samples", "20"])
    if capsys.readouterr().out != reports["car"]:
        failures.append("repeated car run changed the report bytes")
    if rc != 0:
        failures.append("repeated car run failed")

    bad = tmp_path / "deadend.bratteli"
    bad.write_text(DEAD_END)
    rc = main(["verify", str(bad)])
    out = capsys.readouterr().out
    if rc != 1:
        failures.append("dead-end file: exit %d, wanted 1" % rc)
    if "SUITE validation FAIL" not in out or "(e)" not in out:
        failures.append("dead-end violation not named in the report")

    orphan = tmp_path / "orphan.bratteli"
    orphan.write_text(ORPHAN)
    rc = main(["verify", str(orphan)])
    out = capsys.readouterr().out
    if rc != 1 or "(f)" not in out:
        failures.append("orphan violation not named (exit %d)" % rc)

    junk = tmp_path / "junk.bratteli"
    junk.write_text("not a diagram\n")
    rc = main(["verify", str(junk)])
    captured = capsys.readouterr()
    if rc != 2 or not captured.err.startswith("error:"):
        failures.append("malformed file: exit %d, wanted 2" % rc)

    rc = main(["verify", "car", "--suite", "expectation"])
    out = capsys.readouterr().out
    suite_lines = [l for l in out.splitlines() if l.startswith("SUITE ")]
    if rc != 0 or len(suite_lines) != 1 or "expectation" not in suite_lines[0]:
        failures.append("suite filter did not isolate the expectation suite")

    verdict(
        "criterion 6 (command-line verification)",
        failures,
        "all four built-ins pass at seed 7 with byte-identical reruns; "
        "invalid inputs exit 1 naming the violation, parse errors exit 2",
    )
