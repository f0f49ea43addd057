import math

import pytest

from podwa.core import BINARY, ObservationScheme, Podwa, make_dwa
from podwa.engine import (
    EngineConfig,
    ThresholdQuery,
    Verdict,
    brute_force_witness,
    build_product,
    equivalent,
    max_walk_value,
    threshold_queries,
    witness_search,
)
from podwa.errors import AlphabetMismatch, CapExceeded
from podwa.generators import (
    example_ccount,
    fig2_pair,
    lambda_n,
    lambda_n_minimal,
    random_pair,
    subset_sum_pair,
    suite_pairs,
)

from . import oracles

NO_SHORT = EngineConfig(bf_len=1)


def one_state(loops, cuts=(1,)):
    letters = "abcdefgh"[: len(loops)]
    trans = {("q", x): ("q", w) for x, w in zip(letters, loops)}
    return Podwa(make_dwa(letters, ["q"], "q", trans), ObservationScheme(cuts))


# -- threshold queries -----------------------------------------------------

def test_binary_queries():
    qs = threshold_queries(BINARY, BINARY)
    assert [str(q) for q in qs] == ["v1 < 1 and v2 >= 1", "v2 < 1 and v1 >= 1"]


def test_query_count_mixed_schemes():
    qs = threshold_queries(ObservationScheme((0, 1)), BINARY)
    assert len(qs) == 3
    assert [q.lambda_low for q in qs] == [0, 1, None]
    assert (qs[2].low, qs[2].high, qs[2].lambda_high) == (2, 1, 1)


def test_query_count_identical_three_way():
    assert len(threshold_queries(ObservationScheme((0, 2)), ObservationScheme((0, 2)))) == 4


def test_queries_characterise_difference_on_suite():
    for name, p1, p2 in suite_pairs():
        qs = threshold_queries(p1.scheme, p2.scheme)
        n = 6 if len(p1.alphabet) <= 4 else 4
        for w in oracles.all_words(p1.alphabet, n):
            v1, v2 = oracles.value(p1.automaton, w), oracles.value(p2.automaton, w)
            differ = oracles.index(p1.scheme.cuts, v1) != oracles.index(p2.scheme.cuts, v2)
            assert differ == any(q.holds(v1, v2) for q in qs), (name, w)


def test_queries_characterise_difference_on_random_schemes():
    for seed in range(200):
        p1, p2 = random_pair(seed)
        qs = threshold_queries(p1.scheme, p2.scheme)
        for v1 in range(-6, 7):
            for v2 in range(-6, 7):
                differ = p1.scheme.index(v1) != p2.scheme.index(v2)
                assert differ == any(q.holds(v1, v2) for q in qs)


# -- product ---------------------------------------------------------------

def test_product_single_states():
    g = build_product(example_ccount(), example_ccount())
    assert len(g) == 1
    assert sorted(x for _, x, _, _ in g.edges()) == ["a", "b", "c"]


def test_product_subset_sum_chain():
    g = build_product(*subset_sum_pair([2, 4], 6))
    assert g.nodes == [("q0", "q0"), ("q1", "q1"), ("q2", "q2"), ("q3", "q3")]
    assert all(len(c) == 1 for c in g.sccs)
    loops = [c for c in range(len(g.sccs)) if not g.is_trivial_scc(c)]
    assert [g.sccs[c] for c in loops] == [[3]]


def test_product_fig2_has_three_nodes():
    g = build_product(*fig2_pair())
    assert sorted(g.nodes) == [("q0", "q0"), ("q1", "q0"), ("q1", "q1")]


def test_product_effects_match_weights():
    p1, p2 = lambda_n(2), lambda_n_minimal(2)
    g = build_product(p1, p2)
    for v, x, u, (w1, w2) in g.edges():
        q1, q2 = g.nodes[v]
        assert w1 == p1.automaton.weight[q1, x] and w2 == p2.automaton.weight[q2, x]
        assert g.nodes[u] == (p1.automaton.delta[q1, x], p2.automaton.delta[q2, x])


def test_product_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        build_product(example_ccount(), fig2_pair()[0])


# -- witness search --------------------------------------------------------

def test_search_subset_sum_yes():
    g = build_product(*subset_sum_pair([2, 4], 6))
    out = witness_search(g, ThresholdQuery(1, 2, 1, 1, 1))
    assert out.status == "yes"
    w = out.witness
    assert (w.word, w.value1, w.value2, w.index1, w.index2) == (("1", "1", "0"), 0, 1, 0, 1)


@pytest.mark.parametrize("cfg", [EngineConfig(), NO_SHORT])
def test_search_fig2_no(cfg):
    g = build_product(*fig2_pair())
    for q in threshold_queries(BINARY, BINARY):
        assert witness_search(g, q, cfg).status == "no"


@pytest.mark.parametrize("cfg", [EngineConfig(), NO_SHORT])
def test_search_pumps_a_loop(cfg):
    p = one_state([-1])
    q = one_state([1])
    g = build_product(p, q)
    out = witness_search(g, ThresholdQuery(1, 2, 1, 0, 5), cfg)
    assert out.status == "yes"
    assert out.witness.word == ("a",) * 5


def test_search_certificate_needs_integers():
    # both values are 2 * (#b - #a); "v1 < 2 and v2 >= 1" holds only at the half-integer d = 1/2
    p1 = one_state([-2, 2], cuts=(2,))
    p2 = one_state([-2, 2], cuts=(1,))
    g = build_product(p1, p2)
    q = ThresholdQuery(1, 2, 1, 2, 1)
    out = witness_search(g, q, NO_SHORT)
    assert out.status == "no" and out.stage == "certificate"
    assert equivalent(p1, p2, NO_SHORT).verdict is Verdict.EQUIVALENT


def test_search_reports_cap():
    g = build_product(*fig2_pair())
    with pytest.raises(CapExceeded) as info:
        witness_search(g, threshold_queries(BINARY, BINARY)[0], EngineConfig(bf_len=1, max_paths=0))
    assert info.value.cap == "max_paths"


def test_search_slack_bounded_query():
    # staying below 2 forbids every a, and then v2 never leaves 0
    p1 = one_state([2, 0], cuts=(0, 2))
    a = make_dwa("ab", ["q0", "q1", "q2", "q3"], "q0", {
        ("q0", "a"): ("q1", 2), ("q0", "b"): ("q0", 0),
        ("q1", "a"): ("q0", 1), ("q1", "b"): ("q3", 1),
        ("q2", "a"): ("q3", -1), ("q2", "b"): ("q0", 1),
        ("q3", "a"): ("q0", 1), ("q3", "b"): ("q3", 2),
    })
    p2 = Podwa(a, ObservationScheme((0, 2)))
    g = build_product(p1, p2)
    out = witness_search(g, ThresholdQuery(1, 2, 2, 2, 2), NO_SHORT)
    assert out.status == "no" and out.stage == "budget"


def test_budget_stage_agrees_with_other_stages():
    from podwa.engine import _budget_search

    for seed in range(150):
        p1, p2 = random_pair(seed, span=6)
        g = build_product(p1, p2)
        for q in threshold_queries(p1.scheme, p2.scheme):
            if q.lambda_low is None:
                continue
            b = _budget_search(g, q, q.target(), NO_SHORT, g.schemes)
            if b is None:
                continue
            main = witness_search(g, q, NO_SHORT)
            assert main.status in (b.status, "unknown"), (seed, str(q))
            if b.status == "no":
                assert not any(
                    q.holds(oracles.value(p1.automaton, w), oracles.value(p2.automaton, w))
                    for w in oracles.all_words(p1.alphabet, 5)
                )


# -- longest walk ----------------------------------------------------------

def test_max_walk_unbounded():
    g = build_product(one_state([0]), one_state([1]))
    assert max_walk_value(g, 2) == math.inf
    assert max_walk_value(g, 1) == 0


def test_max_walk_best_single_step():
    g = build_product(one_state([0, 0]), one_state([0, -1]))
    assert max_walk_value(g, 2) == 0


def test_max_walk_chain_then_sink():
    a = make_dwa("a", ["p", "s"], "p", {("p", "a"): ("s", 5), ("s", "a"): ("s", 0)})
    p = Podwa(a, BINARY)
    g = build_product(p, p)
    assert max_walk_value(g, 1) == 5
    assert max_walk_value(g, 2) == 5


def _has_positive_closed_walk(g, dim):
    n = len(g.nodes)
    for v in range(n):
        best = {v: 0}
        for _ in range(2 * n):
            nxt = {}
            for u, val in best.items():
                for j in range(len(g.letters)):
                    t = g.succ[u][j]
                    c = val + g.eff[u][j][dim - 1]
                    if c > nxt.get(t, -math.inf):
                        nxt[t] = c
            if nxt.get(v, -math.inf) > 0:
                return True
            best = nxt
    return False


def test_max_walk_infinite_iff_positive_cycle():
    for seed in range(150):
        g = build_product(*random_pair(seed))
        for dim in (1, 2):
            assert (max_walk_value(g, dim) == math.inf) == _has_positive_closed_walk(g, dim)


def test_max_walk_finite_value_matches_enumeration():
    for seed in range(60):
        p1, p2 = random_pair(seed, max_states=3, max_alphabet=2)
        g = build_product(p1, p2)
        for dim in (1, 2):
            got = max_walk_value(g, dim)
            if got == math.inf:
                continue
            auto = (p1 if dim == 1 else p2).automaton
            best = max(oracles.value(auto, w) for w in oracles.all_words(auto.alphabet, 2 * len(g) + 2))
            assert got == best


# -- oracle ----------------------------------------------------------------

def test_brute_force_examples():
    assert brute_force_witness(*subset_sum_pair([2, 4], 6), 3).word == ("1", "1", "0")
    assert brute_force_witness(*fig2_pair(), 5) is None
    for _, p, _ in suite_pairs():
        assert brute_force_witness(p, p, 6) is None


def test_brute_force_matches_plain_enumeration():
    for seed in range(300):
        p1, p2 = random_pair(seed)
        w = brute_force_witness(p1, p2, 6)
        plain = oracles.first_difference(p1, p2, 6)
        assert (None if w is None else w.word) == plain, seed


def test_brute_force_finds_one_letter_return_to_start():
    # the first letter returns to the start configuration; it must still be observed
    a = make_dwa("a", ["p", "r"], "p", {("p", "a"): ("p", 0), ("r", "a"): ("p", 0)})
    p1 = Podwa(a, ObservationScheme((3,)))
    p2 = one_state([0], cuts=(-2,))
    assert brute_force_witness(p1, p2, 3).word == ("a",)


def test_brute_force_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        brute_force_witness(example_ccount(), fig2_pair()[0], 2)


# -- top level -------------------------------------------------------------

def test_equivalent_examples():
    assert equivalent(lambda_n(3), lambda_n_minimal(3)).verdict is Verdict.EQUIVALENT
    assert equivalent(*subset_sum_pair([2, 4], 12)).verdict is Verdict.EQUIVALENT
    v = equivalent(*subset_sum_pair([2, 4], 6))
    assert v.verdict is Verdict.NOT_EQUIVALENT and v.witness.word == ("1", "1", "0")
    assert v.witness.line("01") == "witness 110 v1=0 v2=1 i1=0 i2=1"


def test_verdict_is_not_a_bool():
    with pytest.raises(TypeError):
        bool(equivalent(*fig2_pair()))


def test_cap_becomes_inconclusive():
    v = equivalent(*fig2_pair(), EngineConfig(bf_len=1, max_paths=0))
    assert v.verdict is Verdict.INCONCLUSIVE
    assert any("max_paths" in s for _, s in v.diagnostics)


def _check_against_oracle(p1, p2, cfg, max_len):
    v = equivalent(p1, p2, cfg)
    assert v.verdict is not Verdict.INCONCLUSIVE
    bf = brute_force_witness(p1, p2, max_len)
    if v.verdict is Verdict.EQUIVALENT:
        assert bf is None
    else:
        w = v.witness
        assert oracles.value(p1.automaton, w.word) == w.value1
        assert oracles.value(p2.automaton, w.word) == w.value2
        assert oracles.obs(p1, w.word) == w.index1 != w.index2 == oracles.obs(p2, w.word)
        if bf is not None:
            assert len(w.word) >= len(bf.word)
    return v


def test_suite_pairs_against_oracle():
    for _, p1, p2 in suite_pairs():
        _check_against_oracle(p1, p2, EngineConfig(), 8)


def test_pumping_and_certificate_stages_against_oracle():
    # with short words disabled every verdict comes from stages two and three
    for seed in range(400):
        p1, p2 = random_pair(seed, span=8)
        _check_against_oracle(p1, p2, NO_SHORT, 8)


def test_suite_pairs_without_short_stage():
    for _, p1, p2 in suite_pairs():
        _check_against_oracle(p1, p2, NO_SHORT, 8)


def test_long_witness_beyond_oracle_depth():
    p1, p2 = random_pair(2489)
    assert brute_force_witness(p1, p2, 8) is None
    v = _check_against_oracle(p1, p2, EngineConfig(), 8)
    assert v.verdict is Verdict.NOT_EQUIVALENT
    assert brute_force_witness(p1, p2, len(v.witness.word)).word == v.witness.word


def test_symmetry():
    for seed in range(100):
        p1, p2 = random_pair(seed)
        assert equivalent(p1, p2).verdict == equivalent(p2, p1).verdict


def test_equivalent_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        equivalent(example_ccount(), fig2_pair()[0])
