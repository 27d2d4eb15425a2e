"""Depth-bounded weak bisimulation of delayed observations.

Delay values are linear, so a proof of weak bisimilarity is a run of
``StepBoth`` atoms (both sides take a step together) closed off by one
terminal atom: ``Stop`` (both sides returned the same value), or
``WaitL(n)`` / ``WaitR(n)`` (one side returned and the other returns the same
value after ``n`` more steps).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Tuple, Union

from . import kernel as K
from .lang import syntax as S
from .lang.printer import print_ty
from .semantics import evaluator as E
from .semantics.store import EMPTY_HEAP, EMPTY_WORLD, Heap, World
from .semantics.values import VInt
from .typer import typecheck


# --- trace atoms ---------------------------------------------------------------


@dataclass(frozen=True)
class StepBoth:
    def __str__(self) -> str:
        return "step"


@dataclass(frozen=True)
class WaitL:
    n: int
    value: Any

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("waitL needs n >= 1")

    def __str__(self) -> str:
        return f"waitL {self.n}"


@dataclass(frozen=True)
class WaitR:
    n: int
    value: Any

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("waitR needs n >= 1")

    def __str__(self) -> str:
        return f"waitR {self.n}"


@dataclass(frozen=True)
class Stop:
    value: Any

    def __str__(self) -> str:
        return "stop"


Atom = Union[StepBoth, WaitL, WaitR, Stop]
Trace = Tuple[Atom, ...]
STEP = StepBoth()


def trace_ok(trace: Trace) -> bool:
    """Shape invariant: only the last atom may be terminal, and it must be."""
    if not trace or isinstance(trace[-1], StepBoth):
        return False
    return all(isinstance(a, StepBoth) for a in trace[:-1])


# --- verdicts ------------------------------------------------------------------


@dataclass(frozen=True)
class Strong:
    steps: int
    value: Any


@dataclass(frozen=True)
class Weak:
    left_steps: int
    right_steps: int
    value: Any


@dataclass(frozen=True)
class Distinct:
    left_value: Any
    right_value: Any
    left_steps: int
    right_steps: int


@dataclass(frozen=True)
class Unknown:
    depth: int
    left_steps: int = 0
    right_steps: int = 0


Verdict = Union[Strong, Weak, Distinct, Unknown]


def _plain(v):
    return v.n if isinstance(v, VInt) else v


def verdict_json(verdict: Verdict, trace: Optional[Trace]) -> dict:
    out: dict = {"verdict": type(verdict).__name__.lower()}
    if isinstance(verdict, Strong):
        out.update(left_steps=verdict.steps, right_steps=verdict.steps, value=_plain(verdict.value))
    elif isinstance(verdict, Weak):
        out.update(
            left_steps=verdict.left_steps, right_steps=verdict.right_steps, value=_plain(verdict.value)
        )
    elif isinstance(verdict, Distinct):
        out.update(
            left_steps=verdict.left_steps,
            right_steps=verdict.right_steps,
            left_value=_plain(verdict.left_value),
            right_value=_plain(verdict.right_value),
        )
    else:
        out.update(left_steps=verdict.left_steps, right_steps=verdict.right_steps, depth=verdict.depth)
    out["trace"] = None if trace is None else [str(a) for a in trace]
    return out


def _drain(d: K.Delay, budget: int):
    """Force up to ``budget`` steps; returns (Now or None, steps forced)."""
    n = 0
    while True:
        d = K.resume(d)
        if type(d) is K.Now:
            return d, n
        if n >= budget:
            return None, n
        d = d.force()
        n += 1


def weakly_bisimilar(left: K.Delay, right: K.Delay, depth: int) -> Tuple[Verdict, Optional[Trace]]:
    """Decide weak bisimilarity, forcing at most ``depth`` steps on each side."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    shared = 0
    while True:
        left, right = K.resume(left), K.resume(right)
        l_done, r_done = type(left) is K.Now, type(right) is K.Now
        if l_done and r_done:
            if left.value == right.value:
                return Strong(shared, left.value), (STEP,) * shared + (Stop(left.value),)
            return Distinct(left.value, right.value, shared, shared), None
        if l_done or r_done:
            done, pending = (left, right) if l_done else (right, left)
            out, extra = _drain(pending, depth - shared)
            if out is None:
                ls, rs = (shared, shared + extra) if l_done else (shared + extra, shared)
                return Unknown(depth, ls, rs), None
            ls, rs = (shared, shared + extra) if l_done else (shared + extra, shared)
            if out.value != done.value:
                lv, rv = (done.value, out.value) if l_done else (out.value, done.value)
                return Distinct(lv, rv, ls, rs), None
            terminal = WaitR(extra, out.value) if l_done else WaitL(extra, out.value)
            return Weak(ls, rs, out.value), (STEP,) * shared + (terminal,)
        if shared >= depth:
            return Unknown(depth, shared, shared), None
        left, right = left.force(), right.force()
        shared += 1


# --- proof-level operations ----------------------------------------------------


def delta_left(trace: Trace) -> Trace:
    """Adjust a proof for ``(l, r)`` into one for ``(delta l, r)``."""
    *prefix, last = trace
    prefix = tuple(prefix)
    if isinstance(last, Stop):
        return prefix + (WaitL(1, last.value),)
    if isinstance(last, WaitL):
        return prefix + (WaitL(last.n + 1, last.value),)
    if isinstance(last, WaitR):
        rest = Stop(last.value) if last.n == 1 else WaitR(last.n - 1, last.value)
        return prefix + (STEP, rest)
    raise ValueError("malformed trace")


def delta_right(trace: Trace) -> Trace:
    return swap(delta_left(swap(trace)))


def swap(trace: Trace) -> Trace:
    def flip(a):
        if isinstance(a, WaitL):
            return WaitR(a.n, a.value)
        if isinstance(a, WaitR):
            return WaitL(a.n, a.value)
        return a

    return tuple(flip(a) for a in trace)


def verify_trace(trace: Trace, left: K.Delay, right: K.Delay) -> bool:
    """Check a trace as a weak-bisimulation proof for the two observations."""
    if not trace_ok(trace):
        return False
    for atom in trace[:-1]:
        left, right = K.resume(left), K.resume(right)
        if type(left) is K.Now or type(right) is K.Now:
            return False
        left, right = left.force(), right.force()
    last = trace[-1]
    n_left = last.n if isinstance(last, WaitL) else 0
    n_right = last.n if isinstance(last, WaitR) else 0
    for d, n in ((left, n_left), (right, n_right)):
        out = K.run(d, n)
        if not isinstance(out, K.Value) or out.steps != n or out.result != last.value:
            return False
    return True


# --- programs -----------------------------------------------------------------


def run_to_obs(tm: S.Tm, world: World = EMPTY_WORLD, heap: Heap = EMPTY_HEAP, env=None) -> K.Delay:
    """Run a ``T Int`` program and keep only the integer, preserving its steps."""
    comp = E.comp_of(tm, env)
    w = world if isinstance(world, World) else World(world)
    h = heap if isinstance(heap, Heap) else Heap(heap)
    return K.fmap(comp(w, h), lambda res: res[2].n if isinstance(res[2], VInt) else res[2])


class NotAnObservation(Exception):
    pass


def _expect_t_int(tm: S.Tm) -> None:
    ty = typecheck(tm)
    if not S.alpha_eq_ty(ty, S.T(S.INT)):
        raise NotAnObservation(f"program has type {print_ty(ty)}, expected T Int")


def bisim_programs(left: S.Tm, right: S.Tm, depth: int) -> Tuple[Verdict, Optional[Trace]]:
    _expect_t_int(left)
    _expect_t_int(right)
    return weakly_bisimilar(run_to_obs(left), run_to_obs(right), depth)
