"""Kernels on tail-equivalent path pairs and their convolution algebra."""

import random
from fractions import Fraction

import pytest

from afpath import (
    GroupoidFunction,
    Scalar,
    ONE,
    convolve,
    diag,
    expect,
    indicator_path,
    jones_kernel,
    matrix_unit,
    represent,
    unit_kernel,
    vanishing_check,
    word_kernel,
    random_cylinder,
    AfElement,
    FinitePath,
)


def random_kernel(d, support, table, rng):
    pairs = []
    classes, _ = d.tail_classes(table, support)
    for cls in classes:
        for a in cls:
            for b in cls:
                pairs.append((a, b))
    chosen = rng.sample(pairs, min(len(pairs), 6))
    entries = {}
    for a, b in chosen:
        entries[(a, b)] = Scalar(
            Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))),
            Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))),
        )
    return GroupoidFunction(d, support, table, entries)


# -- structure -------------------------------------------------------------------


def test_jones_kernel_car(car):
    jk = jones_kernel(car, 1)
    half = Scalar(Fraction(1, 2))
    assert jk.table == {(a, b): half for a in range(2) for b in range(2)}


def test_jones_kernel_blocks(fibonacci):
    jk = jones_kernel(fibonacci, 2)
    for alpha, beta, val in jk.entries():
        assert alpha.terminal() == beta.terminal()
        assert val == Scalar(Fraction(1, fibonacci.path_count(alpha.terminal())))


def test_widen_preserves_values(car):
    jk = jones_kernel(car, 1)
    wide = jk.widen(1, 2)
    assert len(wide.table) == 8
    paths1 = car.paths(1)
    for gamma in paths1:
        for delta in paths1:
            for e in car.edges_from(gamma.terminal()):
                a = gamma.extend(e)
                b = delta.extend(e)
                assert wide.value(a, b) == jk.value(gamma, delta)


def test_widen_rejects_narrowing(car):
    jk = jones_kernel(car, 2)
    with pytest.raises(ValueError):
        jk.widen(2, 1)


def test_entries_only_on_admissible_pairs(pascal):
    rng = random.Random(3)
    f = random_cylinder(pascal, 2, rng)
    g = random_cylinder(pascal, 2, rng)
    jk = jones_kernel(pascal, 2)
    prod = convolve(convolve(diag(f), jk), diag(g))
    assert prod.table
    for alpha, beta, _ in prod.entries():
        assert alpha.terminal() == beta.terminal()


# -- the convolution algebra -------------------------------------------------------


def test_unit_kernel_is_neutral(car):
    rng = random.Random(5)
    one = unit_kernel(car)
    F = random_kernel(car, 1, 2, rng)
    assert convolve(one, F) == F
    assert convolve(F, one) == F


def test_diag_is_multiplicative(car):
    rng = random.Random(7)
    f = random_cylinder(car, 2, rng)
    g = random_cylinder(car, 2, rng)
    assert convolve(diag(f), diag(g)) == diag(f * g)
    assert diag(f).adjoint() == diag(f.conjugate())


def test_convolution_associates(fibonacci):
    rng = random.Random(11)
    for _ in range(6):
        F = random_kernel(fibonacci, 1, 2, rng)
        G = random_kernel(fibonacci, 1, 3, rng)
        H = random_kernel(fibonacci, 0, 2, rng)
        assert convolve(convolve(F, G), H) == convolve(F, convolve(G, H))


def test_convolution_star(fibonacci):
    rng = random.Random(13)
    for _ in range(6):
        F = random_kernel(fibonacci, 1, 2, rng)
        G = random_kernel(fibonacci, 2, 3, rng)
        assert convolve(F, G).adjoint() == convolve(G.adjoint(), F.adjoint())
        assert F.adjoint().adjoint() == F


def test_matmul_is_convolve(car):
    rng = random.Random(17)
    F = random_kernel(car, 1, 2, rng)
    G = random_kernel(car, 1, 2, rng)
    assert F @ G == convolve(F, G)


def test_kernel_projection_relations(pascal):
    for n in range(3):
        jk = jones_kernel(pascal, n)
        assert convolve(jk, jk) == jk
        assert jk.adjoint() == jk
    e1 = jones_kernel(pascal, 1)
    e2 = jones_kernel(pascal, 2)
    assert convolve(e2, e1) == e2
    assert convolve(e1, e2) == e2


def test_kernel_averaging_identity_frozen(car):
    # e_1 * diag(I_a) * e_1 has every admissible level-1 entry equal to 1/4
    jk = jones_kernel(car, 1)
    f = indicator_path(car, car.paths(1)[0])
    lhs = convolve(convolve(jk, diag(f)), jk)
    quarter = Scalar(Fraction(1, 4))
    assert lhs.table == {(a, b): quarter for a in range(2) for b in range(2)}
    rhs = convolve(diag(expect(f, 1)), jk)
    assert lhs == rhs


def test_kernel_averaging_identity_random(fibonacci):
    rng = random.Random(19)
    for n in range(3):
        jk = jones_kernel(fibonacci, n)
        for _ in range(4):
            f = random_cylinder(fibonacci, 3, rng)
            lhs = convolve(convolve(jk, diag(f)), jk)
            rhs = convolve(diag(expect(f, n)), jk)
            assert lhs == rhs


# -- the matrix-unit picture --------------------------------------------------------


def test_represent_is_point_mass(car):
    a, b = car.paths(1)
    F = represent(matrix_unit(car, a, b))
    assert F.table == {(0, 1): ONE}
    assert F.support_level == 1 and F.table_level == 1


def test_represent_matches_defining_word(car, pascal, fibonacci):
    for d in (car, pascal, fibonacci):
        for n in (1, 2):
            paths = d.paths(n)
            for gids in d.block_paths(n):
                for a in gids:
                    for b in gids:
                        u = matrix_unit(d, paths[a], paths[b])
                        assert represent(u) == word_kernel(d, paths[a], paths[b])


def test_represent_is_star_homomorphism(pascal):
    n = 2
    paths = pascal.paths(n)
    units = {}
    for gids in pascal.block_paths(n):
        for a in gids:
            for b in gids:
                units[(a, b)] = matrix_unit(pascal, paths[a], paths[b])
    for (a, b), u1 in units.items():
        assert represent(u1.adjoint()) == represent(u1).adjoint()
        for (c, e), u2 in units.items():
            assert convolve(represent(u1), represent(u2)) == represent(u1 * u2)


def test_represent_unital_and_linear(fibonacci):
    rng = random.Random(23)
    n = 2
    assert represent(AfElement.identity(fibonacci, n)) == unit_kernel(fibonacci).widen(0, n)
    x = represent_cylinder_sample(fibonacci, n, rng)
    y = represent_cylinder_sample(fibonacci, n, rng)
    assert represent(x + y) == represent(x) + represent(y)
    assert represent(2 * x) == 2 * represent(x)


def represent_cylinder_sample(d, n, rng):
    blocks = []
    for gids in d.block_paths(n):
        size = len(gids)
        blocks.append(
            {
                (rng.randrange(size), rng.randrange(size)): Scalar(rng.randint(-3, 3))
                for _ in range(size)
            }
        )
    return AfElement(d, n, blocks)


def test_represent_intertwines_embedding(car, fibonacci):
    for d in (car, fibonacci):
        for n in (1, 2):
            paths = d.paths(n)
            for gids in d.block_paths(n):
                for a in gids:
                    for b in gids:
                        u = matrix_unit(d, paths[a], paths[b])
                        assert represent(u.embed()) == represent(u).widen(n + 1, n + 1)


# -- separating products ------------------------------------------------------------


def test_vanishing_check_zero(car):
    assert vanishing_check(GroupoidFunction.zero(car, 1, 1), 2) is True
    assert vanishing_check(GroupoidFunction.zero(car, 0, 0), 0) is True


def test_vanishing_check_produces_witness(car, pascal):
    for d in (car, pascal):
        n = 2
        paths = d.paths(n)
        for gids in d.block_paths(n):
            for a in gids:
                for b in gids:
                    F = represent(matrix_unit(d, paths[a], paths[b]))
                    assert vanishing_check(F, n) == paths[b]


def test_vanishing_check_witness_at_deeper_level(fibonacci):
    a = fibonacci.paths(1)[0]
    F = represent(matrix_unit(fibonacci, a, a))
    w = vanishing_check(F, 3)
    assert isinstance(w, FinitePath)
    assert len(w) == 3
    assert w.prefix(1) == a


def test_vanishing_check_level_bounds(car):
    F = jones_kernel(car, 2)
    with pytest.raises(ValueError):
        vanishing_check(F, 1)
