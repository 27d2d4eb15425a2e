"""Guarded-domain primitives realized as step-counted partiality.

A :class:`Delay` is either ``Now(value)`` or ``Later(next)`` where ``next`` is a
suspended :class:`Delay`.  Every ``Later`` layer is one abstract step.  Nothing
here ever forces an unbounded number of suspensions: observation goes through
:func:`run`, which takes an explicit budget.

Binding is trampolined: :func:`bind` on a suspended computation builds a
``_Bind`` node that :func:`resume` re-associates iteratively, so long chains of
steps (including divergent ones) do not consume Python stack.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Generic, Hashable, Mapping, TypeVar, Union

A = TypeVar("A")
B = TypeVar("B")


class Next(Generic[A]):
    """A suspension: a value available one step in the future.

    Bodies must be pure; forcing twice recomputes the same result.
    """

    __slots__ = ("_thunk",)

    def __init__(self, thunk: Callable[[], A]):
        self._thunk = thunk

    def force(self) -> A:
        return self._thunk()

    def __repr__(self) -> str:
        return "Next(...)"


def next_(value: A) -> Next[A]:
    return Next(lambda: value)


def ap(fn: Next[Callable[[A], B]], arg: Next[A]) -> Next[B]:
    """Applicative combination: both suspensions are forced under one shared step."""
    return Next(lambda: fn.force()(arg.force()))


class Delay(Generic[A]):
    __slots__ = ()


@dataclass(frozen=True)
class Now(Delay[A]):
    value: A


class Later(Delay[A]):
    __slots__ = ("rest",)

    def __init__(self, rest: Next[Delay[A]]):
        self.rest = rest

    def force(self) -> Delay[A]:
        return self.rest.force()

    def __repr__(self) -> str:
        return "Later(...)"


class _Bind(Delay[B]):
    __slots__ = ("source", "cont")

    def __init__(self, source: Delay[A], cont: Callable[[A], Delay[B]]):
        self.source = source
        self.cont = cont


class _Pending(Delay[B]):
    """``source`` followed by a frozen continuation stack (a cons list, top first)."""

    __slots__ = ("source", "stack")

    def __init__(self, source: Delay, stack: tuple):
        self.source = source
        self.stack = stack


def now(value: A) -> Delay[A]:
    return Now(value)


def later(thunk: Callable[[], Delay[A]]) -> Delay[A]:
    return Later(Next(thunk))


def theta(rest: Next[Delay[A]]) -> Delay[A]:
    """The later-algebra of the lift monad (the right injection)."""
    return Later(rest)


def delta(d: Delay[A]) -> Delay[A]:
    return Later(next_(d))


def delta_n(d: Delay[A], n: int) -> Delay[A]:
    for _ in range(n):
        d = delta(d)
    return d


def bind(d: Delay[A], f: Callable[[A], Delay[B]]) -> Delay[B]:
    if type(d) is Now:
        return f(d.value)
    return _Bind(d, f)


def fmap(d: Delay[A], f: Callable[[A], B]) -> Delay[B]:
    return bind(d, lambda a: Now(f(a)))


def _push_all(stack: tuple, below):
    # stack on top of below; linear in the length of ``stack``
    items = []
    while stack is not None:
        items.append(stack[0])
        stack = stack[1]
    for cont in reversed(items):
        below = (cont, below)
    return below


def resume(d: Delay[A]) -> Union[Now[A], Later[A]]:
    """Normalize ``d`` until its head is ``Now`` or ``Later``. Never forces a step.

    Pending continuations are kept on a persistent cons stack, so suspending
    and resuming a deep chain of binds costs O(1) per step.
    """
    stack = None
    while True:
        kind = type(d)
        if kind is _Bind:
            stack = (d.cont, stack)
            d = d.source
        elif kind is _Pending:
            stack = d.stack if stack is None else _push_all(d.stack, stack)
            d = d.source
        elif kind is Now:
            if stack is None:
                return d
            cont, stack = stack
            d = cont(d.value)
        else:
            if stack is None:
                return d
            frozen, inner = stack, d
            return Later(Next(lambda: _Pending(inner.force(), frozen)))


@dataclass(frozen=True)
class Value(Generic[A]):
    result: A
    steps: int


@dataclass(frozen=True)
class Timeout:
    budget: int


Outcome = Union[Value, Timeout]


def run(d: Delay[A], budget: int) -> Outcome:
    """Force at most ``budget`` steps of ``d``."""
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    steps = 0
    while True:
        d = resume(d)
        if type(d) is Now:
            return Value(d.value, steps)
        if steps >= budget:
            return Timeout(budget)
        d = d.force()
        steps += 1


def gfix(f: Callable[[Next[A]], A]) -> A:
    """Guarded fixed point: ``gfix f = f(next(gfix f))``."""
    return f(Next(lambda: gfix(f)))


def loop(f: Callable[[Callable[[A], Delay[B]]], Callable[[A], Delay[B]]]) -> Callable[[A], Delay[B]]:
    """Fixed point of a Delay-valued functional; each unfolding costs one step.

    ``loop(f)(a)`` is observationally ``delta(f(loop(f))(a))``.
    """

    def fixed(a: A) -> Delay[B]:
        return Later(Next(lambda: f(fixed)(a)))

    return fixed


def diverge(_: Any = None) -> Delay[Any]:
    """The divergent element: every observation times out."""
    return _DIVERGE(_)


_DIVERGE = loop(lambda self: self)


# --- guarded interaction trees over a container -----------------------------


@dataclass(frozen=True)
class Container:
    ops: frozenset
    bdry: Mapping[Hashable, tuple]

    def __post_init__(self):
        missing = set(self.ops) - set(self.bdry)
        if missing:
            raise ValueError(f"boundary undefined for operations {sorted(map(str, missing))}")

    def __hash__(self) -> int:
        return hash(self.ops)


class ITree(Generic[A]):
    __slots__ = ()


@dataclass(frozen=True)
class Ret(ITree[A]):
    value: A


@dataclass(frozen=True, eq=False)
class Do(ITree[A]):
    """An effect node; ``cont`` maps each boundary element to a suspended subtree."""

    op: Hashable
    cont: Callable[[Any], Next[ITree[A]]]


STEP = Container(frozenset({"tick"}), {"tick": (None,)})
FAIL = Container(frozenset({"fail"}), {"fail": ()})


def itree_ret(value: A) -> ITree[A]:
    return Ret(value)


def itree_do(container: Container, op: Hashable, cont: Callable[[Any], ITree[A]]) -> ITree[A]:
    if op not in container.ops:
        raise ValueError(f"{op!r} is not an operation of this container")
    return Do(op, lambda p: Next(lambda: cont(p)))


def itree_bind(t: ITree[A], f: Callable[[A], ITree[B]]) -> ITree[B]:
    if isinstance(t, Ret):
        return f(t.value)
    k = t.cont
    return Do(t.op, lambda p: Next(lambda: itree_bind(k(p).force(), f)))


def itree_interp(t: ITree[A], handler: Callable[[Hashable], Delay[Any]]) -> Delay[A]:
    """The algebra map into Delay: ``ret a -> now a``; ``do e k -> delta(handler e >>= interp . k)``."""
    if isinstance(t, Ret):
        return Now(t.value)
    k, op = t.cont, t.op
    # built lazily so infinite trees are not traversed eagerly
    return Later(Next(lambda: bind(handler(op), lambda p: itree_interp(k(p).force(), handler))))


def delay_to_itree(d: Delay[A]) -> ITree[A]:
    d = resume(d)
    if type(d) is Now:
        return Ret(d.value)
    return Do("tick", lambda _: Next(lambda: delay_to_itree(d.force())))


def itree_to_delay(t: ITree[A]) -> Delay[A]:
    return itree_interp(t, lambda op: Now(None))
