import itertools
import random

import pytest

from podwa.kernel import (
    combination,
    cone_feasibility,
    positive_direction,
    rational_feasible,
    separating_normals,
    two_gen_feasibility,
)

from . import oracles


def test_empty_combination():
    assert two_gen_feasibility((0, 0), [], None, None, (0, 0)) == (0, 0)


def test_single_generator_scaling():
    assert two_gen_feasibility((0, 0), [], (2, 3), None, (4, 5)) == (2, 0)


def test_opposite_generators_never_reach():
    assert two_gen_feasibility((0, 0), [], (1, -1), (-1, 1), (1, 1)) is None
    assert oracles.two_gen_brute((0, 0), [], (1, -1), (-1, 1), (1, 1)) is None


def test_offsets_count_once():
    assert two_gen_feasibility((0, 0), [(3, 3)], None, None, (3, 2)) == (0, 0)
    assert two_gen_feasibility((0, 0), [(3, 3)], (0, 1), None, (3, 6)) == (3, 0)


def test_second_generator_only():
    assert two_gen_feasibility((0, 0), [], None, (1, 1), (2, 0)) == (0, 2)


def test_tradeoff_needs_both_generators():
    # (3,-1) and (-1,2): 2*(3,-1) + 2*(-1,2) = (4, 2)
    m, n = two_gen_feasibility((0, 0), [], (3, -1), (-1, 2), (4, 2))
    assert m * 3 - n >= 4 and -m + 2 * n >= 2


def _rand_vec(rng, lo, hi):
    return (rng.randint(lo, hi), rng.randint(lo, hi))


def test_two_gen_agrees_with_enumeration_on_seeded_instances():
    rng = random.Random(20240501)
    for _ in range(500):
        c1 = _rand_vec(rng, -5, 5)
        c2 = _rand_vec(rng, -5, 5) if rng.random() < 0.8 else None
        t = _rand_vec(rng, -10, 10)
        base = _rand_vec(rng, -5, 5)
        got = two_gen_feasibility(base, [], c1, c2, t)
        want = oracles.two_gen_brute(base, [], c1, c2, t)
        assert (got is None) == (want is None), (base, c1, c2, t)
        if got is not None:
            m, n = got
            c2v = c2 or (0, 0)
            assert all(base[i] + m * c1[i] + n * c2v[i] >= t[i] for i in (0, 1))


def test_positive_direction():
    assert positive_direction([(1, 1)]) == {(1, 1): 1}
    d = positive_direction([(2, -1), (-1, 2)])
    assert combination(d)[0] > 0 and combination(d)[1] > 0
    assert positive_direction([(1, -1), (-1, 1)]) is None
    assert positive_direction([(1, 0), (0, 1)]) is not None


def test_separating_normals_are_valid():
    gens = [(1, -1), (-2, 1)]
    for w in separating_normals(gens):
        assert w[0] >= 0 and w[1] >= 0
        assert all(w[0] * g[0] + w[1] * g[1] <= 0 for g in gens)


def test_rational_feasibility_farkas():
    assert rational_feasible((0, 0), [])
    assert not rational_feasible((1, 0), [])
    assert rational_feasible((5, -7), [(1, -1)])
    assert not rational_feasible((5, -3), [(1, -1)])
    assert not rational_feasible((1, 1), [(1, -1), (-1, 1)])


def _cone_brute(r, gens, limit):
    for counts in itertools.product(range(limit + 1), repeat=len(gens)):
        s = (sum(n * g[0] for n, g in zip(counts, gens)), sum(n * g[1] for n, g in zip(counts, gens)))
        if s[0] >= r[0] and s[1] >= r[1]:
            return counts
    return None


def test_cone_feasibility_sound_and_complete_against_enumeration():
    rng = random.Random(7)
    for _ in range(600):
        gens = [_rand_vec(rng, -4, 4) for _ in range(rng.randint(1, 3))]
        r = _rand_vec(rng, -8, 8)
        got = cone_feasibility(r, gens)
        if got is not None:
            total = combination(got)
            assert total[0] >= r[0] and total[1] >= r[1]
            assert all(n >= 0 and tuple(g) in {tuple(h) for h in gens} for g, n in got.items())
        else:
            assert _cone_brute(r, gens, 12) is None, (r, gens)


def test_cone_integer_gap():
    # half a generator would do rationally; the integer answer rounds up
    assert cone_feasibility((1, 1), [(2, 2)]) == {(2, 2): 1}
    # only even points of the line y = -x are reachable
    assert cone_feasibility((1, -1), [(2, -2), (-2, 2)]) is None
    assert rational_feasible((1, -1), [(2, -2), (-2, 2)])


@pytest.mark.parametrize("r", [(0, 0), (-3, -1)])
def test_cone_trivial_targets(r):
    assert cone_feasibility(r, [(1, -1)]) == {}
