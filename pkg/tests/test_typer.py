import pytest

from fmuref.corpus import FACT_PRELUDE, KNOT_TY, LANDIN_PRELUDE, corpus, expected_type
from fmuref.lang import syntax as S
from fmuref.lang.parser import parse, parse_ty
from fmuref.typer import KindError, TypeCheckError, kindcheck, typecheck


def ty_of(text, **gamma):
    return typecheck(parse(text), gamma=[(k, parse_ty(v)) for k, v in gamma.items()])


def same(ty, text):
    return S.alpha_eq_ty(ty, parse_ty(text))


def test_kinding():
    kindcheck(["a"], parse_ty("Ref a"))
    kindcheck([], parse_ty("T (forall a. a -> T a)"))
    with pytest.raises(KindError) as info:
        kindcheck([], S.TVar("b"))
    assert info.value.var == "b"


@pytest.mark.parametrize(
    "src, ty",
    [
        ("()", "Unit"),
        ("2 + 3", "Int"),
        ("(1, ())", "Int * Unit"),
        ("fst (1, ())", "Int"),
        ("fun x : Int. x", "Int -> Int"),
        ("tfun a. fun x : a. x", "forall a. a -> a"),
        ("(tfun a. fun x : a. x) [Int] 7", "Int"),
        ("ret 1", "T Int"),
        ("step", "T Unit"),
        ("new[Int] 0", "T (Ref Int)"),
        ("bind r <- new[Int] 0; get[Int] r", "T Int"),
        ("bind r <- new[Int] 0; set[Int] r 4", "T Unit"),
        ("fold[mu b. Unit * b] ((), fold[mu b. Unit * b] ((), ()))", None),
        ("fun w : (mu b. b -> Int). (unfold w) w", "(mu b. b -> Int) -> Int"),
        ("pack[Int, (1, fun x : Int. x)] as exists a. a * (a -> Int)", "exists a. a * (a -> Int)"),
        ("unpack (pack[Int, 3] as exists a. a) as [b, x] in 5", "Int"),
        ("ifz 0 then 1 else 2", "Int"),
    ],
)
def test_typing_examples(src, ty):
    if ty is None:
        with pytest.raises(TypeCheckError):
            ty_of(src)
    else:
        assert same(ty_of(src), ty)


def test_knot_and_fact_types():
    assert same(typecheck(parse(LANDIN_PRELUDE + "knot")), KNOT_TY)
    assert same(typecheck(parse(FACT_PRELUDE + "fact")), "Int -> T Int")


def test_set_on_wrong_reference():
    with pytest.raises(TypeCheckError) as info:
        ty_of("set[Int] l 1", l="Ref Unit")
    assert info.value.rule == "Set"
    assert info.value.to_json()["kind"] == "TypeError"


@pytest.mark.parametrize(
    "src",
    [
        "x",
        "1 ()",
        "fst 1",
        "ret 1 + 1",
        "get[Int] 3",
        "bind x <- 1; ret x",
        "bind x <- ret 1; x",
        "(tfun a. fun x : a. x) [b]",
        "unpack (pack[Int, 3] as exists a. a) as [b, x] in x",
        "pack[Int, ()] as exists a. a",
        "unfold 3",
        "ifz () then 1 else 2",
        "ifz 0 then 1 else ()",
        "new[Int] ()",
    ],
)
def test_ill_typed(src):
    with pytest.raises((TypeCheckError, KindError)):
        ty_of(src)


def test_existential_witness_cannot_escape():
    with pytest.raises(TypeCheckError):
        ty_of("unpack p as [b, x] in ret x", p="exists a. a")


def test_weakening():
    for src, ty in [("fun x : Int. x", "Int -> Int"), ("ret (1, ())", "T (Int * Unit)")]:
        assert same(ty_of(src, unused="Ref Int", other="Unit"), ty)


def test_shadowed_type_variable_is_renamed_apart():
    src = "tfun a. fun x : a. tfun a. fun y : a. x"
    assert same(ty_of(src), "forall a. a -> forall b. b -> a")


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_types(name):
    assert same(typecheck(parse(corpus()[name])), expected_type(name))
