from collections import Counter
from math import lcm

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from catlab.errors import DomainError
from catlab.imagelab import (
    Configuration,
    configuration_recurrence,
    cycle_decomposition,
    dispersion_curve,
    iterate_configuration,
    toroidal_l1,
)
from catlab.mapcore import apply_point, exact_period


def naive_iterate(c, k):
    n = c.n
    out = np.zeros((n, n), dtype=np.uint8)
    for x in range(n):
        for y in range(n):
            px, py = x, y
            for _ in range(k):
                px, py = apply_point((px, py), n)
            out[py, px] = c.cells[y, x]
    return Configuration(out)


def brute_recurrence(c):
    cur, m = iterate_configuration(c, 1), 1
    while cur != c:
        cur, m = iterate_configuration(cur, 1), m + 1
    return m


def test_configuration_validation():
    with pytest.raises(DomainError):
        Configuration(np.zeros((2, 3)))
    with pytest.raises(DomainError):
        Configuration([[0, 256], [0, 0]])
    c = Configuration.constant(3, 7)
    with pytest.raises(ValueError):
        c.cells[0, 0] = 1


def test_scatter_semantics():
    cells = np.zeros((5, 5), dtype=np.uint8)
    cells[0, 1] = 200  # point (x=1, y=0)
    out = iterate_configuration(Configuration(cells), 1)
    assert out[(1, 1)] == 200
    assert int(out.cells.sum()) == 200
    cells = np.zeros((5, 5), dtype=np.uint8)
    cells[4, 3] = 9  # (3, 4) -> (2, 1)
    assert iterate_configuration(Configuration(cells), 1)[(2, 1)] == 9


@pytest.mark.parametrize("n, k", [(5, 1), (6, 3), (7, 5), (11, 2), (1, 4)])
def test_iterate_matches_naive(rng, n, k):
    c = Configuration.random(n, rng)
    assert iterate_configuration(c, k) == naive_iterate(c, k)


def test_iterate_trivial_cases(rng):
    c = Configuration.random(9, rng)
    assert iterate_configuration(c, 0) == c
    flat = Configuration.constant(9, 42)
    assert iterate_configuration(flat, 17) == flat
    with pytest.raises(DomainError):
        iterate_configuration(c, -1)


def test_return_at_period_n64(rng):
    c = Configuration.random(64, rng)
    assert iterate_configuration(c, exact_period(64)) == c


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 24), st.integers(0, 60), st.integers(0, 60), st.integers(0, 2**32 - 1))
def test_composition_and_mass(n, j, k, seed):
    c = Configuration.random(n, np.random.default_rng(seed))
    step_j = iterate_configuration(c, j)
    assert iterate_configuration(step_j, k) == iterate_configuration(c, j + k)
    assert Counter(step_j.cells.ravel().tolist()) == Counter(c.cells.ravel().tolist())


def test_cycle_decomposition_basics():
    d = cycle_decomposition(1)
    assert d.cycles == ((0,),)
    for n in (5, 12, 31):
        d = cycle_decomposition(n)
        flat = [i for cyc in d.cycles for i in cyc]
        assert sorted(flat) == list(range(n * n))
        assert d.lcm_of_lengths() == exact_period(n)
        assert (0,) in d.cycles
        for cyc in d.cycles:
            pts = [(i % n, i // n) for i in cyc]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                assert apply_point(a, n) == b


def test_recurrence_constant():
    rep = configuration_recurrence(Configuration.constant(13, 3))
    assert rep.recurrence_time == 1
    assert rep.period == exact_period(13)


def test_recurrence_distinct_values_on_a_cycle():
    n = 7
    d = cycle_decomposition(n)
    longest = max(d.cycles, key=len)
    cells = np.zeros(n * n, dtype=np.uint8)
    cells[list(longest)] = np.arange(1, len(longest) + 1)
    rep = configuration_recurrence(Configuration(cells.reshape(n, n)))
    assert rep.recurrence_time % len(longest) == 0


def test_recurrence_binary_image_small_restore():
    # values 2-periodic along every cycle of even length restore in 2 steps on those cycles
    n = 6
    d = cycle_decomposition(n)
    cells = np.zeros(n * n, dtype=np.uint8)
    for cyc in d.cycles:
        if len(cyc) % 2 == 0:
            cells[list(cyc[::2])] = 255
    c = Configuration(cells.reshape(n, n))
    assert configuration_recurrence(c).recurrence_time == brute_recurrence(c)


@pytest.mark.parametrize("n", range(2, 31))
def test_recurrence_matches_brute_force(rng, n):
    # few gray levels so that short restore times actually occur
    c = Configuration(rng.integers(0, 2, size=(n, n)) * 255)
    rep = configuration_recurrence(c)
    assert rep.recurrence_time == brute_recurrence(c)
    assert rep.period % rep.recurrence_time == 0
    assert rep.period <= rep.bound


def test_recurrence_n161_divides_24(rng):
    c = Configuration.random(161, rng)
    rep = configuration_recurrence(c)
    assert 24 % rep.recurrence_time == 0
    assert rep.recurrence_time == brute_recurrence(c)


def dispersion_oracle(n, k):
    # images of p and p + (1, 0) differ by map^k applied to (1, 0)
    v = (1 % n, 0)
    for _ in range(k):
        v = apply_point(v, n)
    return float(toroidal_l1(v[0], v[1], n))


@pytest.mark.parametrize("n", [2, 3, 10, 64, 300])
def test_dispersion_curve(n):
    per = exact_period(n)
    curve = dispersion_curve(n, per)
    assert [s.step for s in curve] == list(range(per + 1))
    assert curve[0].mean_distance == 1.0
    assert curve[1].mean_distance == 2.0
    assert curve[per].mean_distance == 1.0
    for s in curve:
        assert s.mean_distance == dispersion_oracle(n, s.step)
        assert 0 <= s.mean_distance <= n


def test_dispersion_domain():
    with pytest.raises(DomainError):
        dispersion_curve(1, 3)
    with pytest.raises(DomainError):
        dispersion_curve(5, -1)


def test_toroidal_l1():
    assert toroidal_l1(9, 0, 10) == 1
    assert toroidal_l1(-3, 4, 10) == 7
    assert toroidal_l1(5, 5, 10) == 10
