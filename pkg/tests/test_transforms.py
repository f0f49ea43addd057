import pytest

from podwa.core import evaluate, is_isomorphic, make_dwa, observe, validate
from podwa.engine import Verdict, equivalent
from podwa.errors import AlphabetMismatch, BadParameter, NonPositiveAlpha, NotACongruence, NotBinary
from podwa.generators import (
    coloring_automaton,
    example_ccount,
    fig2_pair,
    lambda_n,
    lambda_n_minimal,
    named_graphs,
    random_podwa,
)
from podwa.transforms import complement, exact_equivalent, minimize_exact, quotient, scale

from . import oracles


def test_complement_values():
    p = example_ccount()
    c = complement(p)
    assert evaluate(c, "a") == 2 and observe(c, "a") == 1
    assert observe(c, "c") == 0 and observe(p, "c") == 1
    assert len(c.automaton.states) == len(p.automaton.states) + 1


def test_complement_flip_with_reentered_initial():
    # the initial state is re-entered; the +1 must still apply once
    for p in fig2_pair() + (example_ccount(),):
        c = complement(p)
        for w in oracles.all_words(p.alphabet, 5):
            assert oracles.obs(c, w) == 1 - oracles.obs(p, w)


def test_complement_requires_binary():
    with pytest.raises(NotBinary):
        complement(lambda_n(2))


def test_double_complement_equivalent():
    p = fig2_pair()[1]
    assert equivalent(complement(complement(p)), p).verdict is Verdict.EQUIVALENT


def test_scale_identity_adds_fresh_initial_only():
    p = example_ccount()
    s = scale(p, 1, 0)
    assert s.scheme == p.scheme
    assert len(s.automaton.states) == 2
    for w in oracles.all_words(p.alphabet, 4):
        assert oracles.value(s.automaton, w) == oracles.value(p.automaton, w)


def test_scale_arithmetic():
    s = scale(example_ccount(), 2, 3)
    assert evaluate(s, "c") == 5
    assert s.scheme.cuts == (5,)
    assert observe(s, "c") == 1


def test_scale_rejects_nonpositive_alpha():
    with pytest.raises(NonPositiveAlpha):
        scale(example_ccount(), 0, 1)


def test_scale_values_and_equivalence():
    for p in (lambda_n(2), example_ccount(), fig2_pair()[0]):
        s = scale(p, 3, -2)
        for w in oracles.all_words(p.alphabet, 4):
            assert oracles.value(s.automaton, w) == 3 * oracles.value(p.automaton, w) - 2
        assert equivalent(p, s).verdict is Verdict.EQUIVALENT


def test_exact_equivalence_examples():
    a = lambda_n(2).automaton
    assert exact_equivalent(a, a)
    assert not exact_equivalent(*(p.automaton for p in fig2_pair()))
    assert not exact_equivalent(a, lambda_n_minimal(2).automaton)
    with pytest.raises(AlphabetMismatch):
        exact_equivalent(a, example_ccount().automaton)


def test_minimize_merges_identical_rows():
    a = make_dwa("a", ["p", "q"], "p", {("p", "a"): ("q", 1), ("q", "a"): ("q", 1)})
    m, f = minimize_exact(a)
    assert len(m.states) == 1
    assert f.violations() == []


def test_minimize_lambda_minimal_keeps_all_live_states():
    m, _ = minimize_exact(lambda_n_minimal(2).automaton)
    assert len(m.states) == 4


def test_minimize_matches_residual_oracle():
    for seed in range(60):
        a = random_podwa(seed, 4, 2, 1).automaton
        m, f = minimize_exact(a)
        reach = sorted(oracles.reachable(a))
        classes = {oracles.residual_signature(a, q, 6) for q in reach}
        assert len(m.states) == len(classes)
        assert exact_equivalent(a, m)
        assert f.violations() == []


def test_minimize_idempotent_up_to_isomorphism():
    for seed in range(30):
        m, _ = minimize_exact(random_podwa(seed, 5, 3, 2).automaton)
        assert is_isomorphic(minimize_exact(m)[0], m)


def test_quotient_identity_is_isomorphic():
    a = lambda_n(2).automaton
    q, f = quotient(a, [[s] for s in a.states])
    assert is_isomorphic(q, a)
    assert f.violations() == []


def test_quotient_full_merge_of_loop():
    a = make_dwa("a", ["p", "q"], "p", {("p", "a"): ("q", 1), ("q", "a"): ("q", 2)})
    q, f = quotient(a, [["p", "q"]])
    assert q.states == ("p+q",)
    assert q.delta["p+q", "a"] == "p+q"
    assert q.weight["p+q", "a"] is None  # 1 and 2 disagree
    assert [v.rule for v in validate(q)] == ["UnassignedWeight"]
    assert validate(q.with_weights({("p+q", "a"): 0})) == []


def test_quotient_coloring_endpoints_is_congruence():
    a = coloring_automaton(named_graphs()["P3"]).automaton
    q, f = quotient(a, [["q0"], ["q_u", "q_w"], ["q_v"], ["qf"]])
    assert f("q_u") == f("q_w")
    assert f.violations() == []


def test_quotient_rejects_non_congruence():
    a = make_dwa("ab", ["p", "q", "r"], "p", {
        ("p", "a"): ("q", 0), ("p", "b"): ("r", 0),
        ("q", "a"): ("q", 0), ("q", "b"): ("q", 0),
        ("r", "a"): ("p", 0), ("r", "b"): ("r", 0),
    })
    with pytest.raises(NotACongruence):
        quotient(a, [["p", "q"], ["r"]])


def test_quotient_requires_cover():
    a = lambda_n(2).automaton
    with pytest.raises(BadParameter):
        quotient(a, [["q0"]])
