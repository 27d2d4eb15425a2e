"""Denotational evaluator for Monadic System F-mu-ref.

Pure evaluation is call-by-value and produces a ``Delay`` of a value; the only
pure construct that takes a step is ``unfold``.  Monadic terms evaluate to
:class:`VComp` values without touching any heap; the heap is only threaded
once a computation is run from a ``(world, heap)`` pair.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .. import kernel as K
from ..lang import syntax as S
from ..lang.printer import print_ty
from ..typer import typecheck as typecheck_term
from . import monad as M
from .store import EMPTY_HEAP, EMPTY_WORLD, Heap, World
from .values import (
    UNIT,
    SemVal,
    VComp,
    VFold,
    VFun,
    VInt,
    VLoc,
    VPack,
    VPair,
    VTFun,
    show_value,
)

DEFAULT_FUEL = 10_000


class EvalStuck(M.SemanticsError):
    """Evaluation reached a state no well-typed program reaches."""


class EvalTimeout(M.SemanticsError):
    pass


def close_ty(ty: S.Ty, tyenv: Mapping[str, S.Ty]) -> S.Ty:
    closed = S.subst_ty(ty, dict(tyenv))
    if S.ftv(closed):
        raise EvalStuck(f"type {print_ty(closed)} is not closed at run time")
    return closed


def _extend(env: Mapping, name: str, value) -> dict:
    if name == S.WILDCARD:
        return env
    new = dict(env)
    new[name] = value
    return new


def apply(fn: SemVal, arg: SemVal) -> K.Delay:
    if not isinstance(fn, VFun):
        raise EvalStuck(f"cannot apply {show_value(fn)}")
    if fn.prim is not None:
        return fn.prim(arg)
    return eval_delay(fn.body, _extend(fn.env, fn.param, arg), fn.tyenv)


def _as(cls, v: SemVal, what: str):
    if not isinstance(v, cls):
        raise EvalStuck(f"expected {what}, got {show_value(v)}")
    return v


def _in_comp(body: S.Tm, env: Mapping, tyenv: Mapping) -> M.Comp:
    """A computation that evaluates ``body`` when run, then runs the result."""

    def run(w, h):
        return K.bind(eval_delay(body, env, tyenv), lambda c: _as(VComp, c, "a computation").run(w, h))

    return run


def _arith(op: str, args: list) -> SemVal:
    ns = [_as(VInt, a, "an integer").n for a in args]
    if op == "+":
        return VInt(ns[0] + ns[1])
    if op == "-":
        return VInt(ns[0] - ns[1])
    if op == "*":
        return VInt(ns[0] * ns[1])
    if op == "neg":
        return VInt(-ns[0])
    raise EvalStuck(f"unknown operator {op}")


def _eval_all(tms, env, tyenv) -> K.Delay:
    d = K.Now([])
    for tm in tms:
        d = K.bind(d, lambda acc, tm=tm: K.fmap(eval_delay(tm, env, tyenv), lambda v: acc + [v]))
    return d


def _check_ref(loc: VLoc, annot: S.Ty) -> VLoc:
    if not S.alpha_eq_ty(loc.ty, annot):
        raise EvalStuck(f"reference to {print_ty(loc.ty)} used at {print_ty(annot)}")
    return loc


def eval_delay(tm: S.Tm, env: Mapping = None, tyenv: Mapping = None) -> K.Delay:
    """Evaluate ``tm`` to a ``Delay`` of its value."""
    env = {} if env is None else env
    tyenv = {} if tyenv is None else tyenv

    def ev(t):
        return eval_delay(t, env, tyenv)

    if isinstance(tm, S.Var):
        if tm.name not in env:
            raise EvalStuck(f"unbound variable {tm.name}")
        return K.Now(env[tm.name])
    if isinstance(tm, S.UnitVal):
        return K.Now(UNIT)
    if isinstance(tm, S.IntLit):
        return K.Now(VInt(tm.value))
    if isinstance(tm, S.Arith):
        return K.fmap(_eval_all(tm.args, env, tyenv), lambda vs: _arith(tm.op, vs))
    if isinstance(tm, S.Lam):
        return K.Now(VFun(tm.var, tm.body, env, tyenv))
    if isinstance(tm, S.App):
        return K.bind(ev(tm.fn), lambda f: K.bind(ev(tm.arg), lambda a: apply(f, a)))
    if isinstance(tm, S.Pair):
        return K.fmap(_eval_all((tm.left, tm.right), env, tyenv), lambda vs: VPair(*vs))
    if isinstance(tm, S.Fst):
        return K.fmap(ev(tm.tm), lambda p: _as(VPair, p, "a pair").left)
    if isinstance(tm, S.Snd):
        return K.fmap(ev(tm.tm), lambda p: _as(VPair, p, "a pair").right)
    if isinstance(tm, S.TLam):
        return K.Now(VTFun(tm.var, tm.body, env, tyenv))
    if isinstance(tm, S.TApp):
        arg = close_ty(tm.ty, tyenv)

        def inst(f):
            f = _as(VTFun, f, "a type abstraction")
            return eval_delay(f.body, f.env, _extend(f.tyenv, f.var, arg))

        return K.bind(ev(tm.tm), inst)
    if isinstance(tm, S.Pack):
        witness = close_ty(tm.witness, tyenv)
        return K.fmap(ev(tm.tm), lambda v: VPack(witness, v))
    if isinstance(tm, S.Unpack):

        def open_(p):
            p = _as(VPack, p, "a package")
            return eval_delay(tm.body, _extend(env, tm.var, p.value), _extend(tyenv, tm.tyvar, p.witness))

        return K.bind(ev(tm.tm), open_)
    if isinstance(tm, S.Fold):
        return K.fmap(ev(tm.tm), VFold)
    if isinstance(tm, S.Unfold):
        # one step per unrolling of a recursive type
        return K.bind(ev(tm.tm), lambda v: K.delta(K.Now(_as(VFold, v, "a folded value").value)))
    if isinstance(tm, S.IfZ):

        def branch(c):
            return ev(tm.then if _as(VInt, c, "an integer").n == 0 else tm.orelse)

        return K.bind(ev(tm.cond), branch)
    if isinstance(tm, S.Ret):
        return K.fmap(ev(tm.tm), lambda v: VComp(M.comp_ret(v)))
    if isinstance(tm, S.Bind):

        def sequence(c):
            c = _as(VComp, c, "a computation")
            return VComp(M.comp_bind(c.run, lambda a: _in_comp(tm.body, _extend(env, tm.var, a), tyenv)))

        return K.fmap(ev(tm.tm), sequence)
    if isinstance(tm, S.Get):
        annot = close_ty(tm.ty, tyenv)
        return K.fmap(ev(tm.ref), lambda l: VComp(M.comp_get(_check_ref(_as(VLoc, l, "a location"), annot))))
    if isinstance(tm, S.Set):
        annot = close_ty(tm.ty, tyenv)

        def write(vs):
            loc = _check_ref(_as(VLoc, vs[0], "a location"), annot)
            return VComp(M.comp_set(loc, vs[1]))

        return K.fmap(_eval_all((tm.ref, tm.tm), env, tyenv), write)
    if isinstance(tm, S.New):
        annot = close_ty(tm.ty, tyenv)
        return K.fmap(ev(tm.tm), lambda v: VComp(M.comp_new(annot, v)))
    if isinstance(tm, S.Step):
        return K.Now(VComp(M.comp_step()))
    raise TypeError(f"not a term: {tm!r}")


def evaluate(tm: S.Tm, env: Mapping = None, tyenv: Mapping = None, fuel: int = DEFAULT_FUEL) -> SemVal:
    """Pure evaluation; steps taken by ``unfold`` are not reported."""
    out = K.run(eval_delay(tm, env, tyenv), fuel)
    if isinstance(out, K.Timeout):
        raise EvalTimeout(f"pure evaluation did not finish within {fuel} steps")
    return out.result


def comp_of(tm: S.Tm, env: Mapping = None, tyenv: Mapping = None) -> M.Comp:
    """The computation denoted by a term of type ``T tau``."""
    return _in_comp(tm, env or {}, tyenv or {})


@dataclass(frozen=True)
class RunReport:
    status: str  # "value" | "timeout"
    value: Optional[SemVal]
    steps: int
    world: Optional[World]
    heap: Optional[Heap]

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "value": None if self.value is None else show_value(self.value),
            "steps": self.steps,
            "heap": {},
            "world": {},
        }
        if self.world is not None:
            out["world"] = {str(i): print_ty(t) for i, t in self.world.items()}
            out["heap"] = {
                str(i): {"type": print_ty(self.world[i]), "value": show_value(v)}
                for i, v in self.heap.items()
            }
        return out


def run_comp_report(m: M.Comp, budget: int, world=None, heap=None) -> RunReport:
    w = World(world or {}) if not isinstance(world, World) else world
    h = Heap(heap or {}) if not isinstance(heap, Heap) else heap
    out = K.run(m(w, h), budget)
    if isinstance(out, K.Timeout):
        return RunReport("timeout", None, budget, None, None)
    w2, h2, v = out.result
    if M.checks_enabled():
        M._assert_store(w, w2, h2)
    return RunReport("value", v, out.steps, w2, h2)


def run_program(
    tm: S.Tm,
    budget: int = DEFAULT_FUEL,
    world=None,
    heap=None,
    env: Mapping = None,
    typecheck: bool = True,
) -> RunReport:
    """Run a closed computation from ``(world, heap)`` (empty by default)."""
    if typecheck and not env:
        ty = typecheck_term(tm)
        if not isinstance(ty, S.T):
            raise EvalStuck(f"program has type {print_ty(ty)}, expected a computation type")
    return run_comp_report(comp_of(tm, env, None), budget, world or EMPTY_WORLD, heap or EMPTY_HEAP)
