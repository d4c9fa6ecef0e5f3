"""The verification harness: configs, determinism, suite plumbing, reports."""

import random

import pytest

from afpath import (
    VerifyConfig,
    SUITE_NAMES,
    builtin_diagram,
    random_cylinder,
    run_suites,
    render_report,
)
from afpath.harness import (
    MAX_ENTRIES_VAR,
    DEFAULT_MAX_ENTRIES,
    estimate_max_table,
    max_entries_cap,
    resolve_diagram,
    truncate_diagram,
)

INVALID_DEAD_END = """BRATTELI 1
levels 2
vertices 1 2 1
incidence 0
1 1
incidence 1
1
0
"""

INVALID_ORPHAN = """BRATTELI 1
levels 2
vertices 1 1 2
incidence 0
1
incidence 1
1 0
"""


def small_config(**kw):
    base = dict(source="car", depth=2, seed=7, samples=3)
    base.update(kw)
    return VerifyConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        VerifyConfig(source="car", depth=0)
    with pytest.raises(ValueError):
        VerifyConfig(source="car", samples=0)
    with pytest.raises(ValueError):
        VerifyConfig(source="car", seed=-1)
    with pytest.raises(ValueError):
        VerifyConfig(source="car", suites=("expectation", "nope"))


def test_resolve_builtin_and_file(tmp_path):
    d = resolve_diagram(VerifyConfig(source="gicar", depth=3))
    assert d.vertex_counts == builtin_diagram("pascal", 3).vertex_counts
    p = tmp_path / "d.bratteli"
    p.write_text(INVALID_DEAD_END)
    d2 = resolve_diagram(VerifyConfig(source=str(p)))
    assert d2.vertex_counts == (1, 2, 1)


def test_truncate_diagram():
    full = builtin_diagram("fibonacci", 6)
    cut = truncate_diagram(full, 3)
    assert cut.depth == 3
    assert cut.vertex_counts == full.vertex_counts[:4]
    assert cut.incidence == full.incidence[:3]
    with pytest.raises(ValueError):
        truncate_diagram(full, 9)


def test_random_cylinder_is_seed_deterministic(car):
    f = random_cylinder(car, 3, random.Random("x"))
    g = random_cylinder(car, 3, random.Random("x"))
    h = random_cylinder(car, 3, random.Random("y"))
    assert f.table == g.table
    assert f.table != h.table


def test_run_suites_all_pass():
    config = small_config()
    results = run_suites(config)
    assert [r.name for r in results] == list(SUITE_NAMES)
    assert all(r.passed for r in results)
    assert all(r.checks > 0 for r in results)


def test_run_suites_filter():
    config = small_config(suites=("expectation",))
    results = run_suites(config)
    assert [r.name for r in results] == ["expectation"]
    config = small_config(suites=("validation", "combinatorics"))
    results = run_suites(config)
    assert [r.name for r in results] == ["validation", "combinatorics"]


def test_invalid_diagram_short_circuits(tmp_path):
    p = tmp_path / "bad.bratteli"
    p.write_text(INVALID_DEAD_END)
    results = run_suites(VerifyConfig(source=str(p), suites=("tower",)))
    assert len(results) == 1
    r = results[0]
    assert r.name == "validation" and not r.passed
    assert "(e)" in r.counterexample
    assert r.failure_kind == "counterexample"


def test_orphan_diagram_names_condition_f(tmp_path):
    p = tmp_path / "bad.bratteli"
    p.write_text(INVALID_ORPHAN)
    results = run_suites(VerifyConfig(source=str(p)))
    assert len(results) == 1
    assert "(f)" in results[0].counterexample


def test_resource_cap(monkeypatch):
    monkeypatch.setenv(MAX_ENTRIES_VAR, "10")
    results = run_suites(VerifyConfig(source="car"))
    assert len(results) == 1
    r = results[0]
    assert r.name == "resource"
    assert not r.passed
    assert r.failure_kind == "resource"
    assert MAX_ENTRIES_VAR in r.counterexample


def test_resource_cap_permits_small_runs(monkeypatch):
    monkeypatch.setenv(MAX_ENTRIES_VAR, "50")
    results = run_suites(small_config(suites=("combinatorics",)))
    assert [r.name for r in results] == ["combinatorics"]
    assert results[0].passed


def test_max_entries_cap_parsing(monkeypatch):
    monkeypatch.delenv(MAX_ENTRIES_VAR, raising=False)
    assert max_entries_cap() == DEFAULT_MAX_ENTRIES
    monkeypatch.setenv(MAX_ENTRIES_VAR, "123")
    assert max_entries_cap() == 123
    monkeypatch.setenv(MAX_ENTRIES_VAR, "zero")
    with pytest.raises(ValueError):
        max_entries_cap()
    monkeypatch.setenv(MAX_ENTRIES_VAR, "0")
    with pytest.raises(ValueError):
        max_entries_cap()


def test_estimate_max_table():
    car5 = builtin_diagram("car", 5)
    assert estimate_max_table(car5) == 1024  # the 32x32 top stage dominates
    pas2 = builtin_diagram("pascal", 2)
    assert estimate_max_table(pas2) == 6  # blocks 1, 2, 1


def test_report_is_deterministic():
    config = small_config()
    a = render_report(config, run_suites(config), depth=2)
    b = render_report(config, run_suites(config), depth=2)
    assert a == b
    assert a.startswith("# verify source=car depth=2 seed=7 samples=3 rng=mt19937-strseed\n")
    assert a.endswith("RESULT PASS\n")
    for name in SUITE_NAMES:
        assert ("SUITE %s PASS checks=" % name) in a


def test_report_failure_line(tmp_path):
    p = tmp_path / "bad.bratteli"
    p.write_text(INVALID_DEAD_END)
    config = VerifyConfig(source=str(p))
    report = render_report(config, run_suites(config), depth=2)
    lines = report.strip().splitlines()
    assert lines[-1] == "RESULT FAIL"
    fail = [l for l in lines if l.startswith("SUITE validation FAIL")]
    assert len(fail) == 1
    assert "counterexample=" in fail[0]
    assert " " not in fail[0].split("counterexample=")[1]


def test_different_seeds_change_samples():
    d = builtin_diagram("car", 3)
    f = random_cylinder(d, 2, random.Random("7:expectation"))
    g = random_cylinder(d, 2, random.Random("8:expectation"))
    assert f.table != g.table
