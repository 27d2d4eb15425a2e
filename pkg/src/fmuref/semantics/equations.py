"""Checking program equations by running both sides.

Two computations are equal here when, run from the same world and heap, they
produce the same final world, heap, value and step count.  Values of function
or computation type are compared by probing them (application to sampled
arguments, running from the current store) to a bounded depth.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional

from .. import kernel as K
from ..lang import syntax as S
from ..lang.parser import parse, parse_ty
from ..lang.printer import print_ty
from ..typer import typecheck
from . import monad as M
from .evaluator import RunReport, apply, comp_of, evaluate, run_comp_report
from .store import Heap, World
from .values import UNIT, SemVal, VComp, VInt, VLoc, VPair, VTFun, show_value

DEFAULT_BUDGET = 1000
PROBE_DEPTH = 2

EQUAL = "equal"
NOT_EQUAL = "not_equal"
INCONCLUSIVE = "inconclusive"


@dataclass
class Instantiation:
    """Values for the free variables of an equation, and the starting store."""

    env: Dict[str, SemVal] = field(default_factory=dict)
    gamma: Dict[str, S.Ty] = field(default_factory=dict)
    world: World = field(default_factory=World)
    heap: Heap = field(default_factory=Heap)


@dataclass
class EqReport:
    status: str
    witness: Optional[str] = None
    detail: str = ""
    left: Optional[RunReport] = None
    right: Optional[RunReport] = None

    @property
    def equal(self) -> bool:
        return self.status == EQUAL

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "detail": self.detail,
            "left": self.left.to_json() if self.left else None,
            "right": self.right.to_json() if self.right else None,
        }


# --- extensional comparison of values -------------------------------------------


def sample_values(ty: S.Ty, world: Mapping[int, S.Ty]) -> List[SemVal]:
    if isinstance(ty, S.TInt):
        return [VInt(0), VInt(1), VInt(-3)]
    if isinstance(ty, S.TUnit):
        return [UNIT]
    if isinstance(ty, S.Prod):
        lefts, rights = sample_values(ty.left, world), sample_values(ty.right, world)
        return [VPair(a, b) for a, b in itertools.islice(itertools.product(lefts, rights), 3)]
    if isinstance(ty, S.Ref):
        return [VLoc(i, t) for i, t in world.items() if S.alpha_eq_ty(t, ty.ty)][:3]
    return []


def values_agree(a: SemVal, b: SemVal, ty: S.Ty, world: World, heap: Heap, depth: int = PROBE_DEPTH) -> bool:
    if a is b:
        return True
    if isinstance(ty, S.Arrow):
        if depth <= 0:
            return True
        for arg in sample_values(ty.dom, world):
            ra = K.run(apply(a, arg), DEFAULT_BUDGET)
            rb = K.run(apply(b, arg), DEFAULT_BUDGET)
            if isinstance(ra, K.Timeout) or isinstance(rb, K.Timeout):
                if type(ra) is not type(rb):
                    return False
                continue
            if ra.steps != rb.steps or not values_agree(ra.result, rb.result, ty.cod, world, heap, depth - 1):
                return False
        return True
    if isinstance(ty, S.T):
        if depth <= 0:
            return True
        ra = run_comp_report(a.run, DEFAULT_BUDGET, world, heap)
        rb = run_comp_report(b.run, DEFAULT_BUDGET, world, heap)
        return _compare(ra, rb, ty.ty, depth - 1)[0] == EQUAL
    if isinstance(ty, S.Forall):
        if depth <= 0 or not (isinstance(a, VTFun) and isinstance(b, VTFun)):
            return isinstance(a, VTFun) and isinstance(b, VTFun)
        inst = S.subst_ty(ty.body, {ty.var: S.INT})
        ea = evaluate(a.body, a.env, {**a.tyenv, a.var: S.INT})
        eb = evaluate(b.body, b.env, {**b.tyenv, b.var: S.INT})
        return values_agree(ea, eb, inst, world, heap, depth - 1)
    if isinstance(ty, S.Prod) and isinstance(a, VPair) and isinstance(b, VPair):
        return values_agree(a.left, b.left, ty.left, world, heap, depth) and values_agree(
            a.right, b.right, ty.right, world, heap, depth
        )
    return a == b


def _compare(left: RunReport, right: RunReport, ty: Optional[S.Ty], depth: int = PROBE_DEPTH):
    if left.status != "value" or right.status != "value":
        return INCONCLUSIVE, None, "budget exhausted"
    if left.world != right.world:
        dl, dr = sorted(left.world), sorted(right.world)
        if dl != dr:
            return NOT_EQUAL, "world", f"world domains differ: {dl} vs {dr}"
        return NOT_EQUAL, "world", "world entries differ"
    for i in left.heap:
        if not values_agree(left.heap[i], right.heap[i], left.world[i], left.world, left.heap, depth):
            return (
                NOT_EQUAL,
                "heap",
                f"cell {i}: {show_value(left.heap[i])} vs {show_value(right.heap[i])}",
            )
    same_value = (
        values_agree(left.value, right.value, ty, left.world, left.heap, depth)
        if ty is not None
        else left.value == right.value
    )
    if not same_value:
        return NOT_EQUAL, "value", f"{show_value(left.value)} vs {show_value(right.value)}"
    if left.steps != right.steps:
        return NOT_EQUAL, "steps", f"{left.steps} vs {right.steps}"
    return EQUAL, None, ""


def compare_runs(left: RunReport, right: RunReport, ty: Optional[S.Ty] = None) -> EqReport:
    status, witness, detail = _compare(left, right, ty)
    return EqReport(status, witness, detail, left, right)


def check_equation(lhs, rhs, inst: Optional[Instantiation] = None, budget: int = DEFAULT_BUDGET) -> EqReport:
    """Run both sides from the instantiated store and compare exactly."""
    inst = inst or Instantiation()
    lhs = parse(lhs) if isinstance(lhs, str) else lhs
    rhs = parse(rhs) if isinstance(rhs, str) else rhs
    gamma = list(inst.gamma.items())
    lty, rty = typecheck(lhs, gamma=gamma), typecheck(rhs, gamma=gamma)
    if not S.alpha_eq_ty(lty, rty) or not isinstance(lty, S.T):
        raise ValueError(f"sides have types {print_ty(lty)} and {print_ty(rty)}")
    with M.checked():
        left = run_comp_report(comp_of(lhs, inst.env), budget, inst.world, inst.heap)
        right = run_comp_report(comp_of(rhs, inst.env), budget, inst.world, inst.heap)
    return compare_runs(left, right, lty.ty)


# --- the equations of higher-order store --------------------------------------------


@dataclass(frozen=True)
class StateEquation:
    name: str
    lhs: str
    rhs: str
    perturbed: str  # an rhs that must NOT match lhs

    def instantiate(self, ty: S.Ty):
        t = print_ty(ty)
        return tuple(parse(s.replace("TAU", t)) for s in (self.lhs, self.rhs, self.perturbed))


STATE_EQUATIONS = (
    StateEquation(
        "set-get",
        "set[TAU] l u; get[TAU] l",
        "step; set[TAU] l u; ret u",
        "set[TAU] l u; ret u",
    ),
    StateEquation("get-set", "bind x <- get[TAU] l; set[TAU] l x", "step", "ret ()"),
    StateEquation(
        "new-set",
        "bind x <- new[TAU] u; set[TAU] x v; ret x",
        "new[TAU] v",
        "new[TAU] u",
    ),
    StateEquation("set-set", "set[TAU] l u; set[TAU] l v", "set[TAU] l v", "set[TAU] l u"),
)

GROUND_TYPES = tuple(parse_ty(s) for s in ("Int", "Unit", "Int * Int", "Int * Unit * Int"))


def random_value(rng: random.Random, ty: S.Ty) -> SemVal:
    if isinstance(ty, S.TInt):
        return VInt(rng.randint(-100, 100))
    if isinstance(ty, S.TUnit):
        return UNIT
    if isinstance(ty, S.Prod):
        return VPair(random_value(rng, ty.left), random_value(rng, ty.right))
    raise ValueError(f"no generator for {print_ty(ty)}")


def random_instantiation(rng: random.Random, ty: S.Ty, max_cells: int = 5) -> Instantiation:
    """A random store of ground cells (at least one of type ``ty``) and values for l, u, v."""
    size = rng.randint(1, max_cells)
    cell_types = [rng.choice(GROUND_TYPES) for _ in range(size)]
    target = rng.randrange(size)
    cell_types[target] = ty
    world = World(dict(enumerate(cell_types)))
    heap = Heap({i: random_value(rng, t) for i, t in enumerate(cell_types)})
    candidates = [i for i, t in enumerate(cell_types) if S.alpha_eq_ty(t, ty)]
    loc = rng.choice(candidates)
    env = {"l": VLoc(loc, ty), "u": random_value(rng, ty), "v": random_value(rng, ty)}
    gamma = {"l": S.Ref(ty), "u": ty, "v": ty}
    return Instantiation(env, gamma, world, heap)


def state_equation_suite(seed: int = 0, iterations: int = 200) -> List[dict]:
    """Check every state equation and its perturbed control on random instances."""
    rng = random.Random(seed)
    results = []
    for eq in STATE_EQUATIONS:
        held = perturbed_rejected = 0
        failures = []
        for _ in range(iterations):
            ty = rng.choice(GROUND_TYPES)
            inst = random_instantiation(rng, ty)
            lhs, rhs, bad = eq.instantiate(ty)
            report = check_equation(lhs, rhs, inst)
            if report.equal:
                held += 1
            elif len(failures) < 3:
                failures.append(report.detail)
            if check_equation(lhs, bad, inst).status == NOT_EQUAL:
                perturbed_rejected += 1
        results.append(
            {
                "equation": eq.name,
                "instances": iterations,
                "held": held,
                "perturbed_rejected": perturbed_rejected,
                "passed": held == iterations and perturbed_rejected > 0,
                "failures": failures,
            }
        )
    return results


# --- monad laws and step commutation on generated computations ----------------------


def random_comp_source(rng: random.Random, cells: int, ints: List[str], ops: int = 3) -> str:
    """Source of a random ``T Int`` computation over ``Ref Int`` cells ``l0..``."""
    ints = list(ints)
    refs = [f"l{i}" for i in range(cells)]
    fresh = itertools.count()

    def expr() -> str:
        atoms = ints + [str(rng.randint(-9, 9))]
        e = rng.choice(atoms)
        if rng.random() < 0.5:
            e = f"{e} {rng.choice('+-*')} {rng.choice(atoms)}"
        return e

    parts = []
    for _ in range(rng.randint(0, ops)):
        kind = rng.choice(("get", "set", "step", "new"))
        if kind == "get" and refs:
            x = f"x{next(fresh)}"
            parts.append(f"bind {x} <- get[Int] {rng.choice(refs)};")
            ints.append(x)
        elif kind == "set" and refs:
            parts.append(f"set[Int] {rng.choice(refs)} ({expr()});")
        elif kind == "new":
            r = f"r{next(fresh)}"
            parts.append(f"bind {r} <- new[Int] ({expr()});")
            refs.append(r)
        else:
            parts.append("step;")
    parts.append(f"ret ({expr()})")
    return " ".join(parts)


@dataclass
class GeneratedComp:
    source: str
    make: Callable  # env -> Comp


def _gen_comp(rng, cells, ints=()) -> GeneratedComp:
    src = random_comp_source(rng, cells, list(ints))
    tm = parse(src)
    return GeneratedComp(src, lambda env: comp_of(tm, env))


def _gen_store(rng, cells):
    world = World({i: S.INT for i in range(cells)})
    heap = Heap({i: VInt(rng.randint(-100, 100)) for i in range(cells)})
    env = {f"l{i}": VLoc(i, S.INT) for i in range(cells)}
    return world, heap, env


def _kleisli(g: GeneratedComp, env):
    return lambda a: g.make({**env, "x": a})


def _all_agree(comps, world, heap) -> bool:
    reports = [run_comp_report(c, DEFAULT_BUDGET, world, heap) for c in comps]
    return all(compare_runs(reports[0], r, S.INT).equal for r in reports[1:])


def law_instances(rng: random.Random):
    """One random (store, m, k1, k2) tuple."""
    cells = rng.randint(0, 3)
    world, heap, env = _gen_store(rng, cells)
    m = _gen_comp(rng, cells)
    k1 = _gen_comp(rng, cells, ["x"])
    k2 = _gen_comp(rng, cells, ["x"])
    return world, heap, env, m, k1, k2


LAWS = {
    "left-unit": lambda env, m, k1, k2, a: (
        M.comp_bind(M.comp_ret(a), _kleisli(k1, env)),
        _kleisli(k1, env)(a),
    ),
    "right-unit": lambda env, m, k1, k2, a: (M.comp_bind(m.make(env), M.comp_ret), m.make(env)),
    "associativity": lambda env, m, k1, k2, a: (
        M.comp_bind(M.comp_bind(m.make(env), _kleisli(k1, env)), _kleisli(k2, env)),
        M.comp_bind(m.make(env), lambda x: M.comp_bind(_kleisli(k1, env)(x), _kleisli(k2, env))),
    ),
}


def step_commutation_forms(env, m: GeneratedComp, k: GeneratedComp):
    """delta(m >>= k), (delta m) >>= k and m >>= (delta . k)."""
    u, v = m.make(env), _kleisli(k, env)
    return (
        M.comp_delta(M.comp_bind(u, v)),
        M.comp_bind(M.comp_delta(u), v),
        M.comp_bind(u, lambda x: M.comp_delta(v(x))),
    )


def step_generic_forms(env, m: GeneratedComp):
    """``step; m`` against ``x <- m; step; ret x``."""
    u = m.make(env)
    return (
        M.comp_bind(M.comp_step(), lambda _: u),
        M.comp_bind(u, lambda x: M.comp_bind(M.comp_step(), lambda _: M.comp_ret(x))),
    )


def monad_law_suite(seed: int = 0, iterations: int = 200) -> List[dict]:
    rng = random.Random(seed)
    counts = {name: 0 for name in LAWS}
    for _ in range(iterations):
        world, heap, env, m, k1, k2 = law_instances(rng)
        a = VInt(rng.randint(-100, 100))
        with M.checked():
            for name, law in LAWS.items():
                if _all_agree(law(env, m, k1, k2, a), world, heap):
                    counts[name] += 1
    return [
        {"law": name, "instances": iterations, "held": n, "passed": n == iterations}
        for name, n in counts.items()
    ]


def step_commutation_suite(seed: int = 0, iterations: int = 100) -> List[dict]:
    rng = random.Random(seed)
    three = generic = 0
    for _ in range(iterations):
        world, heap, env, m, k1, _ = law_instances(rng)
        with M.checked():
            if _all_agree(step_commutation_forms(env, m, k1), world, heap):
                three += 1
            if _all_agree(step_generic_forms(env, m), world, heap):
                generic += 1
    return [
        {"law": "delta-bind", "instances": iterations, "held": three, "passed": three == iterations},
        {"law": "step-commutes", "instances": iterations, "held": generic, "passed": generic == iterations},
    ]


def law_suite(seed: int = 0, iterations: int = 200) -> dict:
    """Everything the ``laws`` command reports."""
    sections = {
        "state_equations": state_equation_suite(seed, iterations),
        "monad_laws": monad_law_suite(seed, iterations),
        "step_commutation": step_commutation_suite(seed, iterations),
    }
    checks = [r for rows in sections.values() for r in rows]
    passed = sum(r["passed"] for r in checks)
    return {"seed": seed, "iterations": iterations, "passed": passed, "failed": len(checks) - passed, **sections}
