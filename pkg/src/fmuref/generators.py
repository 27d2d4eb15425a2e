"""Seeded random generators for syntax and delayed values (used by the test suites)."""
from __future__ import annotations

import random

from . import kernel as K
from .lang import syntax as S

VARS = ("x", "y", "z", "f", "g", "r", "acc", "x1", "y'")
TYVARS = ("a", "b", "c", "s")


def random_ty(rng: random.Random, depth: int = 3, bound: tuple = ()) -> S.Ty:
    leaves = [S.UNIT, S.INT] + [S.TVar(v) for v in bound]
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice(leaves)
    kind = rng.randrange(7)
    sub = lambda: random_ty(rng, depth - 1, bound)  # noqa: E731
    if kind == 0:
        return S.Prod(sub(), sub())
    if kind == 1:
        return S.Arrow(sub(), sub())
    if kind == 2:
        return S.Ref(sub())
    if kind == 3:
        return S.T(sub())
    v = rng.choice(TYVARS)
    body = random_ty(rng, depth - 1, bound + (v,))
    return (S.Forall, S.Exists, S.Mu)[kind - 4](v, body)


def random_tm(rng: random.Random, depth: int = 4) -> S.Tm:
    """A random term; not necessarily well typed, but always printable and parseable."""
    ty = lambda: random_ty(rng, 2)  # noqa: E731
    var = lambda: rng.choice(VARS)  # noqa: E731
    binder = lambda: rng.choice(VARS + (S.WILDCARD,))  # noqa: E731
    if depth <= 0 or rng.random() < 0.15:
        leaf = rng.randrange(4)
        if leaf == 0:
            return S.Var(var())
        if leaf == 1:
            return S.UnitVal()
        if leaf == 2:
            return S.IntLit(rng.randint(-50, 50))
        return S.Step()
    sub = lambda: random_tm(rng, depth - 1)  # noqa: E731
    kind = rng.randrange(22)
    if kind == 0:
        op = rng.choice(S.ARITH_OPS)
        return S.Arith(op, (sub(),) if op == "neg" else (sub(), sub()))
    if kind == 1:
        return S.Lam(binder(), ty(), sub())
    if kind in (2, 3):
        return S.App(sub(), sub())
    if kind == 4:
        return S.Pair(sub(), sub())
    if kind == 5:
        return S.Fst(sub())
    if kind == 6:
        return S.Snd(sub())
    if kind == 7:
        return S.TLam(rng.choice(TYVARS), sub())
    if kind == 8:
        return S.TApp(sub(), ty())
    if kind == 9:
        return S.Pack(ty(), sub(), S.Exists(rng.choice(TYVARS), ty()))
    if kind == 10:
        return S.Unpack(sub(), rng.choice(TYVARS), binder(), sub())
    if kind == 11:
        return S.Fold(S.Mu(rng.choice(TYVARS), ty()), sub())
    if kind == 12:
        return S.Unfold(sub())
    if kind == 13:
        return S.IfZ(sub(), sub(), sub())
    if kind == 14:
        return S.Ret(sub())
    if kind in (15, 16):
        return S.Bind(binder(), sub(), sub())
    if kind == 17:
        return S.Get(ty(), sub())
    if kind == 18:
        return S.Set(ty(), sub(), sub())
    if kind == 19:
        return S.New(ty(), sub())
    if kind == 20:
        return S.Var(var())
    return S.IntLit(rng.randint(0, 9))


def random_delay(rng: random.Random, max_steps: int = 6, values: int = 3, diverge_p: float = 0.1) -> K.Delay:
    """A random delayed integer, possibly divergent, with binds mixed in."""
    if rng.random() < diverge_p:
        return K.diverge()
    steps = rng.randint(0, max_steps)
    value = rng.randrange(values)
    if steps and rng.random() < 0.5:
        split = rng.randint(0, steps)
        return K.bind(K.delta_n(K.now(value), split), lambda v: K.delta_n(K.now(v), steps - split))
    return K.delta_n(K.now(value), steps)
