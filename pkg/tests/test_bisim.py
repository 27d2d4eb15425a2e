import random

import pytest

from fmuref import bisim as B
from fmuref import kernel as K
from fmuref.corpus import FACT_PRELUDE, corpus
from fmuref.generators import random_delay
from fmuref.lang.parser import parse
from fmuref.semantics import EMPTY_HEAP, EMPTY_WORLD


def pairs(seed, n=200):
    rng = random.Random(seed)
    for _ in range(n):
        yield random_delay(rng, values=2), random_delay(rng, values=2)


def test_both_done():
    verdict, trace = B.weakly_bisimilar(K.now(2), K.now(2), 5)
    assert verdict == B.Strong(0, 2) and trace == (B.Stop(2),)


def test_extra_step_on_left():
    verdict, trace = B.weakly_bisimilar(K.delta(K.now(2)), K.now(2), 5)
    assert verdict == B.Weak(1, 0, 2) and trace == (B.WaitL(1, 2),)


def test_divergence_is_unknown():
    verdict, trace = B.weakly_bisimilar(K.diverge(), K.now(2), 50)
    assert isinstance(verdict, B.Unknown) and verdict.depth == 50 and trace is None


def test_distinct_values():
    verdict, trace = B.weakly_bisimilar(K.delta(K.now(1)), K.now(2), 5)
    assert verdict == B.Distinct(1, 2, 1, 0) and trace is None


def test_both_sides_still_running_at_depth():
    verdict, _ = B.weakly_bisimilar(K.delta_n(K.now(1), 4), K.delta_n(K.now(1), 4), 3)
    assert verdict == B.Unknown(3, 3, 3)


def test_run_to_obs():
    assert K.run(B.run_to_obs(parse("ret 3")), 5) == K.Value(3, 0)
    assert K.run(B.run_to_obs(parse("step; ret 3")), 5) == K.Value(3, 1)
    assert K.run(B.run_to_obs(parse(FACT_PRELUDE + "fact 2"), EMPTY_WORLD, EMPTY_HEAP), 5) == K.Value(2, 2)


def test_counter_clients():
    progs = corpus()
    verdict, trace = B.bisim_programs(parse(progs["counter_client_L"]), parse(progs["counter_client_R"]), 100)
    assert verdict == B.Strong(3, 2)
    assert [str(a) for a in trace] == ["step"] * 3 + ["stop"]


def test_two_increment_clients():
    progs = corpus()
    verdict, _ = B.bisim_programs(parse(progs["incr2_client_L"]), parse(progs["incr2_client_R"]), 100)
    assert isinstance(verdict, B.Weak) and verdict.left_steps == verdict.right_steps + 1


def test_non_observation_rejected():
    with pytest.raises(B.NotAnObservation):
        B.bisim_programs(parse("ret ()"), parse("ret 1"), 5)


@pytest.mark.parametrize("name", ["fact4", "counter_adt_client_L_5", "incr2_client_R"])
def test_program_reflexivity(name):
    tm = parse(corpus()[name])
    verdict, _ = B.bisim_programs(tm, tm, 100)
    assert isinstance(verdict, B.Strong)


def test_reflexivity():
    for d, _ in pairs(1):
        verdict, trace = B.weakly_bisimilar(d, d, 20)
        assert isinstance(verdict, (B.Strong, B.Unknown))
        if trace is not None:
            assert not any(isinstance(a, (B.WaitL, B.WaitR)) for a in trace)


def test_symmetry():
    for l, r in pairs(2):
        v1, t1 = B.weakly_bisimilar(l, r, 10)
        v2, t2 = B.weakly_bisimilar(r, l, 10)
        assert type(v1) is type(v2)
        if t1 is not None:
            assert B.swap(t1) == t2
        if isinstance(v1, B.Weak):
            assert (v1.left_steps, v1.right_steps) == (v2.right_steps, v2.left_steps)


def test_depth_monotonicity():
    for l, r in pairs(3):
        v, t = B.weakly_bisimilar(l, r, 6)
        if not isinstance(v, B.Unknown):
            for k in (7, 10, 50):
                assert B.weakly_bisimilar(l, r, k) == (v, t)


def test_traces_verify():
    for l, r in pairs(4):
        v, t = B.weakly_bisimilar(l, r, 20)
        if t is not None:
            assert B.trace_ok(t) and B.verify_trace(t, l, r)


def test_delta_left_agrees_with_checker():
    rng = random.Random(5)
    for _ in range(100):
        d = random_delay(rng, diverge_p=0)
        v, t = B.weakly_bisimilar(K.delta(d), d, 20)
        assert isinstance(v, B.Weak) and isinstance(t[-1], B.WaitL) and t[-1].n == 1
        other = random_delay(rng, diverge_p=0)
        v2, t2 = B.weakly_bisimilar(d, other, 20)
        if t2 is not None:
            assert B.verify_trace(B.delta_left(t2), K.delta(d), other)
            assert B.verify_trace(B.delta_right(t2), d, K.delta(other))


def test_bad_traces_rejected():
    assert not B.trace_ok(())
    assert not B.trace_ok((B.STEP,))
    assert not B.verify_trace((B.Stop(1),), K.now(2), K.now(2))
    assert not B.verify_trace((B.WaitL(2, 1),), K.delta(K.now(1)), K.now(1))
    with pytest.raises(ValueError):
        B.WaitR(0, 1)


def test_verdict_json():
    v, t = B.weakly_bisimilar(K.delta_n(K.now(2), 3), K.delta_n(K.now(2), 2), 10)
    assert B.verdict_json(v, t) == {
        "verdict": "weak",
        "left_steps": 3,
        "right_steps": 2,
        "value": 2,
        "trace": ["step", "step", "waitL 1"],
    }
