from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st

from catlab.errors import DomainError
from catlab.mapcore import (
    CANONICAL,
    CatMatrix,
    LatticePoint,
    apply_point,
    exact_period,
    exact_period_factored,
    invert_point,
    iter_orbit,
    matrix_pow_mod,
    orbit_length,
    orbit_of,
)
from conftest import naive_order


@pytest.mark.parametrize(
    "p, expected",
    [((0, 0), (0, 0)), ((1, 0), (1, 1)), ((3, 4), (2, 1))],
)
def test_apply_point_examples(p, expected):
    assert apply_point(p, 5) == expected


def test_invert_point_examples():
    assert invert_point((0, 0), 5) == (0, 0)
    assert invert_point((2, 1), 5) == (3, 4)


def test_canonical_inverse_formula():
    for x in range(7):
        for y in range(7):
            assert invert_point((x, y), 7) == ((2 * x - y) % 7, (y - x) % 7)


@pytest.mark.parametrize("n", range(1, 65))
def test_bijective_and_round_trip(n):
    images = set()
    for x in range(n):
        for y in range(n):
            q = apply_point((x, y), n)
            assert invert_point(q, n) == (x, y)
            images.add(q)
    assert len(images) == n * n
    assert apply_point((0, 0), n) == (0, 0)


def test_non_canonical_matrix_round_trip():
    m = CatMatrix(2, 1, 1, 1)
    for x in range(9):
        for y in range(9):
            assert invert_point(apply_point((x, y), 9, m), 9, m) == (x, y)


def test_non_unimodular_rejected():
    with pytest.raises(DomainError):
        CatMatrix(1, 1, 1, 1)


def test_point_outside_lattice():
    with pytest.raises(DomainError):
        apply_point((5, 0), 5)
    with pytest.raises(DomainError):
        apply_point((0, 0), 0)


def test_matrix_pow_mod():
    assert matrix_pow_mod(CANONICAL, 0, 17) == ((1, 0), (0, 1))
    assert matrix_pow_mod(CANONICAL, 3, 2) == ((1, 0), (0, 1))
    assert matrix_pow_mod(CANONICAL, 24, 161) == ((1, 0), (0, 1))
    assert matrix_pow_mod(CANONICAL, 1, 5) == ((1, 1), (1, 2))
    with pytest.raises(DomainError):
        matrix_pow_mod(CANONICAL, -1, 5)


@given(st.integers(0, 200), st.integers(1, 500))
def test_matrix_pow_matches_stepping(k, n):
    (a, b), (c, d) = matrix_pow_mod(CANONICAL, k, n)
    x, y = 1 % n, 2 % n
    px, py = x, y
    for _ in range(k):
        px, py = apply_point((px, py), n)
    assert ((a * x + b * y) % n, (c * x + d * y) % n) == (px, py)


def test_exact_period_examples():
    assert exact_period(1) == 1
    assert exact_period(2) == 3
    assert exact_period(161) == 24
    assert exact_period(124) == 15


@pytest.mark.parametrize("n", range(2, 41))
def test_exact_period_matches_naive_order(n):
    assert exact_period(n) == naive_order(n)


def test_orbit_basics():
    o = orbit_of((0, 0), 9)
    assert o.length == 1 and o.points == (LatticePoint(0, 0),)
    o = orbit_of((1, 0), 5)
    assert len(set(o.points)) == o.length
    assert apply_point(o.points[-1], 5) == o.start
    assert orbit_length((1, 0), 5) == o.length


def test_orbit_lengths_divide_period():
    n = 10
    per = exact_period(n)
    for x in range(n):
        for y in range(n):
            assert per % orbit_length((x, y), n) == 0


@pytest.mark.parametrize("n", range(2, 31))
def test_lcm_of_orbits_is_period(n):
    lengths = {orbit_length((x, y), n) for x in range(n) for y in range(n)}
    assert lcm(*lengths) == exact_period(n)


def test_orbit_length_large_lattice_is_lazy():
    # no point list is built; (1, 0) has the full period at n = 4096
    assert orbit_length((1, 0), 4096) == exact_period(4096)
    assert next(iter_orbit((1, 0), 4096)) == (1, 0)


@pytest.mark.parametrize("n", [5, 12, 161, 300])
def test_order_divisibility(n):
    per = exact_period(n)
    ident = ((1, 0), (0, 1))
    for k in (per, 2 * per, 3 * per):
        assert matrix_pow_mod(CANONICAL, k, n) == ident
    for k in range(1, per):
        assert matrix_pow_mod(CANONICAL, k, n) != ident


@settings(max_examples=200)
@given(st.integers(1, 50), st.integers(1, 50))
def test_multiplicativity(a, b):
    if gcd(a, b) != 1:
        return
    assert exact_period(a * b) == lcm(exact_period(a), exact_period(b))


def test_factored_agrees():
    for n in range(1, 301):
        assert exact_period_factored(n) == exact_period(n)


def test_factored_single_prime():
    assert exact_period_factored(97) == exact_period(97)
    assert exact_period_factored(161) == 24


def test_non_monotone_exists():
    per = {n: exact_period(n) for n in range(1, 101)}
    assert any(per[a] > per[b] for a in per for b in per if a < b)
