import math

import pytest

from fmuref import kernel as K
from fmuref.corpus import DIVERGE_KNOT, INCR2_L, INCR2_R, fact_program
from fmuref.lang import syntax as S
from fmuref.lang.parser import parse
from fmuref.semantics import (
    EMPTY_HEAP,
    EMPTY_WORLD,
    UNIT,
    DanglingLocation,
    Heap,
    HeapTypingError,
    VComp,
    VFun,
    VInt,
    VLoc,
    VPair,
    World,
    WorldMonotonicityError,
    apply,
    checked,
    comp_bind,
    comp_get,
    comp_new,
    comp_ret,
    comp_set,
    comp_step,
    evaluate,
    fresh,
    run_comp,
    run_program,
    value_has_type,
    world_leq,
)

W0 = World({0: S.INT})


def outcome(m, w=EMPTY_WORLD, h=EMPTY_HEAP, budget=100):
    return K.run(run_comp(m, w, h), budget)


# --- store --------------------------------------------------------------------------


def test_fresh():
    assert fresh({}) == 0
    assert fresh({0: S.INT, 1: S.UNIT}) == 2
    assert fresh({0: S.INT, 2: S.INT}) == 1


def test_world_order():
    assert world_leq({}, {0: S.INT})
    assert world_leq({0: S.INT}, {0: S.INT, 1: S.UNIT})
    assert not world_leq({0: S.INT}, {0: S.UNIT})
    assert World({0: S.INT}) <= World({0: S.INT, 1: S.UNIT})


def test_worlds_compare_types_up_to_alpha():
    a = World({0: S.Forall("a", S.TVar("a"))})
    b = World({0: S.Forall("b", S.TVar("b"))})
    assert a == b and hash(a) == hash(b)


def test_world_extension_refuses_reallocation():
    with pytest.raises(ValueError):
        W0.extend(0, S.UNIT)


def test_value_typing():
    assert value_has_type(VInt(3), S.INT, {})
    assert value_has_type(VLoc(0, S.INT), S.Ref(S.INT), {0: S.INT})
    assert not value_has_type(VLoc(0, S.INT), S.Ref(S.INT), {0: S.UNIT})
    assert value_has_type(VPair(VInt(1), UNIT), S.Prod(S.INT, S.UNIT), {})


# --- the state monad -------------------------------------------------------------------


def test_ret_and_step():
    assert outcome(comp_ret(5)) == K.Value((EMPTY_WORLD, EMPTY_HEAP, 5), 0)
    assert outcome(comp_bind(comp_step(), lambda _: comp_ret(5))) == K.Value((EMPTY_WORLD, EMPTY_HEAP, 5), 1)
    assert outcome(comp_step()) == K.Value((EMPTY_WORLD, EMPTY_HEAP, UNIT), 1)
    two = comp_bind(comp_step(), lambda _: comp_step())
    assert outcome(two).steps == 2


def test_get_costs_one_step():
    h = Heap({0: VInt(7)})
    assert outcome(comp_get(VLoc(0, S.INT)), W0, h) == K.Value((W0, h, VInt(7)), 1)


def test_get_after_new():
    m = comp_bind(comp_new(S.INT, VInt(0)), comp_get)
    w, h, v = outcome(m, W0, Heap({0: VInt(3)})).result
    assert v == VInt(0) and w == World({0: S.INT, 1: S.INT}) and outcome(m, W0, Heap({0: VInt(3)})).steps == 1


def test_set_is_free():
    out = outcome(comp_set(VLoc(0, S.INT), VInt(9)), W0, Heap({0: VInt(7)}))
    assert out == K.Value((W0, Heap({0: VInt(9)}), UNIT), 0)


def test_new_allocates_fresh():
    out = outcome(comp_new(S.INT, VInt(0)))
    assert out == K.Value((W0, Heap({0: VInt(0)}), VLoc(0, S.INT)), 0)


def test_dangling_location():
    with pytest.raises(DanglingLocation):
        outcome(comp_get(VLoc(3, S.INT)), W0, Heap({0: VInt(1)}))
    with pytest.raises(DanglingLocation):
        outcome(comp_get(VLoc(0, S.UNIT)), W0, Heap({0: VInt(1)}))


def test_debug_checks_catch_ill_typed_stores():
    bad = comp_set(VLoc(0, S.INT), UNIT)
    outcome(bad, W0, Heap({0: VInt(1)}))  # unchecked: allowed
    with checked(), pytest.raises(HeapTypingError):
        outcome(bad, W0, Heap({0: VInt(1)}))
    shrink = lambda w, h: K.Now((EMPTY_WORLD, EMPTY_HEAP, UNIT))  # noqa: E731
    with checked(), pytest.raises(WorldMonotonicityError):
        outcome(comp_bind(shrink, comp_ret), W0, Heap({0: VInt(1)}))


# --- the evaluator ----------------------------------------------------------------------


def test_pure_evaluation():
    assert evaluate(parse("2 + 3")) == VInt(5)
    assert evaluate(parse("(tfun a. fun x : a. x) [Int] 7")) == VInt(7)
    assert evaluate(parse("snd (1, -4 * 2)")) == VInt(-8)
    assert evaluate(parse("ifz 1 - 1 then 10 else 20")) == VInt(10)


def test_unfold_takes_a_step():
    from fmuref.semantics import eval_delay

    d = eval_delay(parse("unfold (fold[mu b. Int] 3)"))
    assert K.run(d, 5) == K.Value(VInt(3), 1)


def test_monadic_terms_are_values():
    assert isinstance(evaluate(parse("step")), VComp)
    assert isinstance(evaluate(parse("bind r <- new[Int] 0; ret r")), VComp)


@pytest.mark.parametrize("body, extra, steps", [(INCR2_L, 2, 2), (INCR2_R, 2, 1)])
def test_two_increment_bodies(body, extra, steps):
    fn = evaluate(parse(body))
    assert isinstance(fn, VFun)
    comp = K.run(apply(fn, VLoc(0, S.INT)), 0).result
    out = outcome(comp.run, W0, Heap({0: VInt(40)}))
    assert out == K.Value((W0, Heap({0: VInt(40 + extra)}), UNIT), steps)


def test_run_program_allocate_and_read():
    rep = run_program(parse("bind r <- new[Int] 5; bind x <- get[Int] r; ret x"), 10)
    assert (rep.status, rep.value, rep.steps) == ("value", VInt(5), 1)
    assert rep.heap == Heap({0: VInt(5)})
    js = rep.to_json()
    assert js["value"] == "5" and js["heap"] == {"0": {"type": "Int", "value": "5"}}


def test_run_program_step():
    rep = run_program(parse("step"))
    assert (rep.value, rep.steps) == (UNIT, 1)


@pytest.mark.parametrize("n", range(11))
def test_fact_takes_n_steps(n):
    rep = run_program(parse(fact_program(n)), 100)
    assert (rep.status, rep.value, rep.steps) == ("value", VInt(math.factorial(n)), n)


def test_diverging_knot_times_out():
    rep = run_program(parse(DIVERGE_KNOT), 1000)
    assert rep.status == "timeout" and rep.steps == 1000
    unit_knot = DIVERGE_KNOT.replace("knot [Int] (fun f : Int -> T Int. f) 0", "knot [Unit] (fun f : Unit -> T Unit. f) ()")
    assert run_program(parse(unit_knot), 1000).status == "timeout"


def test_run_program_requires_computation():
    from fmuref.semantics import EvalStuck

    with pytest.raises(EvalStuck):
        run_program(parse("1 + 1"))


def test_higher_order_store_runs_without_check_errors():
    with checked():
        rep = run_program(parse(fact_program(5)), 100)
    assert rep.value == VInt(120)
    assert isinstance(rep.heap[0], VFun)
