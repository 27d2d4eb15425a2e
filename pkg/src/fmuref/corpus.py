"""Built-in example programs (``.fmr`` sources).

Every entry is a closed term.  Parameterized families (factorial inputs,
counter tick counts) are generated from templates so that clients stay
straight-line: a loop written with the knot would add one read per iteration.
"""
from __future__ import annotations

from typing import Dict

PATCH_TY = "forall a. ((a -> T a) -> a -> T a) -> T (Ref (a -> T a))"
KNOT_TY = "forall a. ((a -> T a) -> a -> T a) -> a -> T a"

# A divergent computation of type T a, written with a recursive type.
_BOTTOM = (
    "(fun w : (mu b. b -> T a). (unfold w) w)\n"
    "        (fold[mu b. b -> T a] (fun w : (mu b. b -> T a). (unfold w) w))"
)

LANDIN_PRELUDE = f"""\
-- Recursion by backpatching a reference (Landin's knot).
let patch : {PATCH_TY} =
  tfun a. fun F : (a -> T a) -> a -> T a.
    bind r <- new[a -> T a] (fun _ : a. {_BOTTOM});
    set[a -> T a] r (F (fun x : a. bind f <- get[a -> T a] r; f x));
    ret r
in
let knot : {KNOT_TY} =
  tfun a. fun F : (a -> T a) -> a -> T a. fun x : a.
    bind r <- patch [a] F;
    F (fun z : a. bind f <- get[a -> T a] r; f z) x
in
"""

FACT_PRELUDE = LANDIN_PRELUDE + """\
let factp : (Int -> T Int) -> Int -> T Int =
  fun f : Int -> T Int. fun n : Int.
    ifz n then ret 1 else (bind m <- f (n - 1); ret (n * m))
in
let fact : Int -> T Int = knot [Int] factp in
"""

INCR = "fun r : Ref Int. bind x <- get[Int] r; set[Int] r (x + 1)"
DECR = "fun r : Ref Int. bind x <- get[Int] r; set[Int] r (x - 1)"
READ_L = "fun r : Ref Int. get[Int] r"
READ_R = "fun r : Ref Int. bind x <- get[Int] r; ret (-x)"

# two increments vs. one increment by two
INCR2_L = (
    "fun r : Ref Int.\n"
    "  bind x <- get[Int] r; set[Int] r (x + 1);\n"
    "  bind y <- get[Int] r; set[Int] r (y + 1);\n"
    "  ret ()"
)
INCR2_R = "fun r : Ref Int.\n  bind x <- get[Int] r; set[Int] r (x + 2);\n  ret ()"

COUNTER_MODULE_TY = "T (T Unit * T Int)"
COUNTER_ADT_TY = "exists a. T a * (a -> T Unit) * (a -> T Int)"

COUNTER_L = f"bind r <- new[Int] 0; ret (({INCR}) r, get[Int] r)"
COUNTER_R = f"bind r <- new[Int] 0; ret (({DECR}) r, bind x <- get[Int] r; ret (-x))"

COUNTER_ADT_L = f"pack[Ref Int, (new[Int] 0, ({INCR}, {READ_L}))] as {COUNTER_ADT_TY}"
COUNTER_ADT_R = f"pack[Ref Int, (new[Int] 0, ({DECR}, {READ_R}))] as {COUNTER_ADT_TY}"


def fact_program(n: int) -> str:
    return FACT_PRELUDE + f"fact {n}\n"


def incr2_client(side: str) -> str:
    body = {"L": INCR2_L, "R": INCR2_R}[side]
    return (
        f"-- allocate, increment by two, read back\n"
        f"let m : Ref Int -> T Unit =\n  {body}\nin\n"
        f"bind r <- new[Int] 0;\nm r;\nget[Int] r\n"
    )


def counter_client(side: str, ticks: int) -> str:
    module = {"L": COUNTER_L, "R": COUNTER_R}[side]
    lines = [f"-- {ticks} ticks then read", f"let counter : {COUNTER_MODULE_TY} =\n  {module}\nin"]
    lines.append("bind c <- counter;")
    lines += ["fst c;"] * ticks
    lines.append("snd c")
    return "\n".join(lines) + "\n"


def counter_adt_client(side: str, ticks: int) -> str:
    module = {"L": COUNTER_ADT_L, "R": COUNTER_ADT_R}[side]
    lines = [f"-- {ticks} ticks then read, through the abstract interface"]
    lines.append(f"let counter : {COUNTER_ADT_TY} =\n  {module}\nin")
    lines.append("unpack counter as [s, ops] in")
    lines.append("bind st <- fst ops;")
    lines += ["(fst (snd ops)) st;"] * ticks
    lines.append("(snd (snd ops)) st")
    return "\n".join(lines) + "\n"


DIVERGE_KNOT = LANDIN_PRELUDE + "knot [Int] (fun f : Int -> T Int. f) 0\n"

DIVERGE_OMEGA = (
    "-- self-application through a recursive type\n"
    "(fun w : (mu b. b -> T Int). (unfold w) w)\n"
    "  (fold[mu b. b -> T Int] (fun w : (mu b. b -> T Int). (unfold w) w))\n"
)

TICKS = (0, 1, 2, 5, 10)

# name -> expected type, for entries that are not closed programs of type T Int
TYPES: Dict[str, str] = {
    "patch": PATCH_TY,
    "knot": KNOT_TY,
    "fact": "Int -> T Int",
    "incr2_L": "Ref Int -> T Unit",
    "incr2_R": "Ref Int -> T Unit",
    "counter_L": COUNTER_MODULE_TY,
    "counter_R": COUNTER_MODULE_TY,
    "counter_adt_L": COUNTER_ADT_TY,
    "counter_adt_R": COUNTER_ADT_TY,
}


def corpus() -> Dict[str, str]:
    """All built-in programs by name."""
    out: Dict[str, str] = {
        "patch": LANDIN_PRELUDE + "patch\n",
        "knot": LANDIN_PRELUDE + "knot\n",
        "fact": FACT_PRELUDE + "fact\n",
    }
    for n in range(11):
        out[f"fact{n}"] = fact_program(n)
    out["incr2_L"] = INCR2_L + "\n"
    out["incr2_R"] = INCR2_R + "\n"
    out["incr2_client_L"] = incr2_client("L")
    out["incr2_client_R"] = incr2_client("R")
    out["counter_L"] = COUNTER_L + "\n"
    out["counter_R"] = COUNTER_R + "\n"
    out["counter_adt_L"] = COUNTER_ADT_L + "\n"
    out["counter_adt_R"] = COUNTER_ADT_R + "\n"
    for side in "LR":
        out[f"counter_client_{side}"] = counter_client(side, 2)
        out[f"counter_adt_client_{side}"] = counter_adt_client(side, 2)
        for k in TICKS:
            out[f"counter_client_{side}_{k}"] = counter_client(side, k)
            out[f"counter_adt_client_{side}_{k}"] = counter_adt_client(side, k)
    out["diverge"] = DIVERGE_KNOT
    out["diverge_omega"] = DIVERGE_OMEGA
    return out


def expected_type(name: str) -> str:
    return TYPES.get(name, "T Int")
