import pytest

from fmuref.corpus import COUNTER_ADT_TY, corpus, expected_type
from fmuref.lang import syntax as S
from fmuref.lang.parser import parse, parse_ty
from fmuref.semantics import VInt, run_program
from fmuref.typer import typecheck


def test_required_entries():
    names = set(corpus())
    required = {"patch", "knot", "fact", "incr2_L", "incr2_R", "counter_adt_L", "counter_adt_R", "diverge"}
    assert required <= names
    assert {f"fact{n}" for n in range(11)} <= names


def test_fact_signature():
    assert S.alpha_eq_ty(typecheck(parse(corpus()["fact"])), parse_ty("Int -> T Int"))


@pytest.mark.parametrize("side", "LR")
def test_adt_has_counter_type(side):
    ty = typecheck(parse(corpus()[f"counter_adt_{side}"]))
    assert S.alpha_eq_ty(ty, parse_ty(COUNTER_ADT_TY))
    assert S.alpha_eq_ty(ty, parse_ty("exists s. T s * (s -> T Unit) * (s -> T Int)"))


@pytest.mark.parametrize("budget", [0, 1, 10, 500, 3000])
def test_diverge_times_out_at_any_budget(budget):
    for name in ("diverge", "diverge_omega"):
        rep = run_program(parse(corpus()[name]), budget)
        assert rep.status == "timeout" and rep.steps == budget


def test_closed_programs_run():
    for name, src in corpus().items():
        if expected_type(name) == "T Int" and not name.startswith("diverge"):
            rep = run_program(parse(src), 10_000)
            assert rep.status == "value" and isinstance(rep.value, VInt), name
