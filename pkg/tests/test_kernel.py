import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmuref import kernel as K
from fmuref.generators import random_delay


def obs(d, budget=50):
    return K.run(d, budget)


@st.composite
def delays(draw):
    return random_delay(random.Random(draw(st.integers(0, 10**9))), max_steps=8)


def kleisli(seed):
    rng = random.Random(seed)
    extra, offset = rng.randint(0, 4), rng.randint(-3, 3)
    return lambda v: K.delta_n(K.now(v + offset), extra)


# --- run ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "d, budget, expected",
    [
        (K.now(5), 0, K.Value(5, 0)),
        (K.now(()), 3, K.Value((), 0)),
        (K.delta_n(K.now(5), 3), 10, K.Value(5, 3)),
        (K.delta(K.now("a")), 0, K.Timeout(0)),
        (K.now(1), 0, K.Value(1, 0)),
        (K.delta(K.now(1)), 0, K.Timeout(0)),
        (K.delta_n(K.now(9), 4), 4, K.Value(9, 4)),
    ],
)
def test_run_examples(d, budget, expected):
    assert K.run(d, budget) == expected


def test_negative_budget_rejected():
    with pytest.raises(ValueError):
        K.run(K.now(1), -1)


def test_bind_examples():
    assert K.run(K.bind(K.now(2), lambda x: K.now(x + 1)), 1) == K.Value(3, 0)
    assert K.run(K.bind(K.delta(K.now(2)), lambda x: K.delta(K.now(x))), 5) == K.Value(2, 2)
    for budget in (0, 1, 17):
        assert K.run(K.bind(K.diverge(), K.now), budget) == K.Timeout(budget)


def test_loop_unfolding_costs_one_step():
    f = K.loop(lambda self: lambda a: K.now(a))
    assert K.run(f(7), 2) == K.Value(7, 1)


@pytest.mark.parametrize("k", [0, 1, 5, 100, 5000])
def test_diverge_times_out(k):
    assert K.run(K.diverge("x"), k) == K.Timeout(k)


def test_long_bind_chain_is_stack_safe():
    d = K.now(0)
    for _ in range(20_000):
        d = K.bind(d, lambda v: K.delta(K.now(v + 1)))
    assert K.run(d, 30_000) == K.Value(20_000, 20_000)


def test_deep_left_nested_binds_are_stack_safe():
    d = K.delta(K.now(0))
    for _ in range(20_000):
        d = K.bind(d, lambda v: K.now(v + 1))
    assert K.run(d, 5) == K.Value(20_000, 1)


# --- laws -----------------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.integers(-5, 5), st.integers(0, 10**6))
def test_left_unit(a, seed):
    f = kleisli(seed)
    assert obs(K.bind(K.now(a), f)) == obs(f(a))


@settings(max_examples=150, deadline=None)
@given(delays())
def test_right_unit(d):
    assert obs(K.bind(d, K.now)) == obs(d)


@settings(max_examples=150, deadline=None)
@given(delays(), st.integers(0, 10**6), st.integers(0, 10**6))
def test_associativity(d, s1, s2):
    f, g = kleisli(s1), kleisli(s2)
    assert obs(K.bind(K.bind(d, f), g)) == obs(K.bind(d, lambda x: K.bind(f(x), g)))


@settings(max_examples=150, deadline=None)
@given(delays(), st.integers(0, 10**6))
def test_step_additivity(d, seed):
    f = kleisli(seed)
    u = obs(d)
    if isinstance(u, K.Value):
        v = obs(f(u.result))
        assert obs(K.bind(d, f)) == K.Value(v.result, u.steps + v.steps)


@settings(max_examples=150, deadline=None)
@given(delays(), st.integers(0, 12))
def test_delta_naturality(d, k):
    u = K.run(d, k)
    if isinstance(u, K.Value):
        assert K.run(K.delta(d), k + 1) == K.Value(u.result, u.steps + 1)
    else:
        assert K.run(K.delta(d), k + 1) == K.Timeout(k + 1)


@pytest.mark.parametrize("k", range(9))
def test_loop_unfolds_like_delta(k):
    rng = random.Random(k)
    for _ in range(20):
        stop = rng.randint(0, 6)

        def f(self, stop=stop):
            return lambda n: K.now(n) if n >= stop else self(n + 1)

        x = rng.randint(0, 3)
        assert K.run(K.loop(f)(x), k) == K.run(K.delta(f(K.loop(f))(x)), k)


def test_gfix_unfolds_through_next():
    stream = K.gfix(lambda rest: (1, rest))
    head, tail = stream
    assert head == 1 and tail.force()[0] == 1


def test_theta_and_applicative():
    assert K.run(K.theta(K.next_(K.now(4))), 3) == K.Value(4, 1)
    assert K.ap(K.next_(lambda n: n * 2), K.next_(21)).force() == 42


# --- interaction trees ------------------------------------------------------------


def test_itree_ret_interprets_to_now():
    assert K.itree_to_delay(K.itree_ret(5)) == K.Now(5)


@settings(max_examples=100, deadline=None)
@given(delays(), st.integers(0, 12))
def test_step_container_round_trip(d, k):
    assert K.run(K.itree_to_delay(K.delay_to_itree(d)), k) == K.run(d, k)


def test_round_trip_preserves_step_count():
    d = K.delta_n(K.now(3), 2)
    assert K.run(K.itree_to_delay(K.delay_to_itree(d)), 10) == K.Value(3, 2)


def test_itree_bind_adds_ticks():
    tick = lambda v: K.itree_do(K.STEP, "tick", lambda _: K.itree_ret(v))  # noqa: E731
    t = K.itree_bind(tick(1), lambda v: tick(v + 1))
    assert K.run(K.itree_to_delay(t), 10) == K.Value(2, 2)


def test_fail_container_has_no_continuation():
    t = K.itree_do(K.FAIL, "fail", lambda p: pytest.fail("continuation invoked"))
    assert K.FAIL.bdry["fail"] == ()
    assert K.run(K.itree_interp(t, lambda op: K.diverge()), 100) == K.Timeout(100)


def test_container_checks():
    with pytest.raises(ValueError):
        K.Container(frozenset({"a"}), {})
    with pytest.raises(ValueError):
        K.itree_do(K.STEP, "fail", lambda p: K.itree_ret(0))


def test_infinite_itree_interprets_lazily():
    spin = K.gfix(lambda rest: K.Do("tick", lambda _: rest))
    assert K.run(K.itree_to_delay(spin), 25) == K.Timeout(25)
