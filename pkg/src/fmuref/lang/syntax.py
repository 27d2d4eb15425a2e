"""Abstract syntax of Monadic System F-mu-ref, plus binding utilities."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Span = Optional[tuple]  # (line, column), 1-based


# --- types -------------------------------------------------------------------


class Ty:
    __slots__ = ()


@dataclass(frozen=True)
class TVar(Ty):
    name: str


@dataclass(frozen=True)
class TUnit(Ty):
    pass


@dataclass(frozen=True)
class TInt(Ty):
    pass


@dataclass(frozen=True)
class Prod(Ty):
    left: Ty
    right: Ty


@dataclass(frozen=True)
class Arrow(Ty):
    dom: Ty
    cod: Ty


@dataclass(frozen=True)
class Forall(Ty):
    var: str
    body: Ty


@dataclass(frozen=True)
class Exists(Ty):
    var: str
    body: Ty


@dataclass(frozen=True)
class Mu(Ty):
    var: str
    body: Ty


@dataclass(frozen=True)
class Ref(Ty):
    ty: Ty


@dataclass(frozen=True)
class T(Ty):
    ty: Ty


UNIT = TUnit()
INT = TInt()

BINDER_TYPES = (Forall, Exists, Mu)


# --- terms -------------------------------------------------------------------


class Tm:
    __slots__ = ()


def _span():
    return field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var(Tm):
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class UnitVal(Tm):
    span: Span = _span()


@dataclass(frozen=True)
class IntLit(Tm):
    value: int
    span: Span = _span()


ARITH_OPS = ("+", "-", "*", "neg")


@dataclass(frozen=True)
class Arith(Tm):
    """Integer arithmetic; ``neg`` is unary, the rest binary."""

    op: str
    args: tuple
    span: Span = _span()


@dataclass(frozen=True)
class Lam(Tm):
    var: str
    ty: Ty
    body: Tm
    span: Span = _span()


@dataclass(frozen=True)
class App(Tm):
    fn: Tm
    arg: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Pair(Tm):
    left: Tm
    right: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Fst(Tm):
    tm: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Snd(Tm):
    tm: Tm
    span: Span = _span()


@dataclass(frozen=True)
class TLam(Tm):
    var: str
    body: Tm
    span: Span = _span()


@dataclass(frozen=True)
class TApp(Tm):
    tm: Tm
    ty: Ty
    span: Span = _span()


@dataclass(frozen=True)
class Pack(Tm):
    witness: Ty
    tm: Tm
    ty: Ty
    span: Span = _span()


@dataclass(frozen=True)
class Unpack(Tm):
    tm: Tm
    tyvar: str
    var: str
    body: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Fold(Tm):
    ty: Ty
    tm: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Unfold(Tm):
    tm: Tm
    span: Span = _span()


@dataclass(frozen=True)
class IfZ(Tm):
    cond: Tm
    then: Tm
    orelse: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Ret(Tm):
    tm: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Bind(Tm):
    var: str
    tm: Tm
    body: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Get(Tm):
    ty: Ty
    ref: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Set(Tm):
    ty: Ty
    ref: Tm
    tm: Tm
    span: Span = _span()


@dataclass(frozen=True)
class New(Tm):
    ty: Ty
    tm: Tm
    span: Span = _span()


@dataclass(frozen=True)
class Step(Tm):
    span: Span = _span()


WILDCARD = "_"


# --- type-level binding ------------------------------------------------------


def fresh_name(base: str, avoid) -> str:
    base = base.rstrip("0123456789'") or "a"
    i = 1
    while True:
        name = f"{base}{i}"
        if name not in avoid:
            return name
        i += 1


def ftv(ty: Ty) -> frozenset:
    """Free type variables."""
    if isinstance(ty, TVar):
        return frozenset({ty.name})
    if isinstance(ty, (TUnit, TInt)):
        return frozenset()
    if isinstance(ty, (Prod,)):
        return ftv(ty.left) | ftv(ty.right)
    if isinstance(ty, Arrow):
        return ftv(ty.dom) | ftv(ty.cod)
    if isinstance(ty, BINDER_TYPES):
        return ftv(ty.body) - {ty.var}
    if isinstance(ty, (Ref, T)):
        return ftv(ty.ty)
    raise TypeError(f"not a type: {ty!r}")


def _all_tyvars(ty: Ty, acc: set) -> set:
    if isinstance(ty, TVar):
        acc.add(ty.name)
    elif isinstance(ty, Prod):
        _all_tyvars(ty.left, acc)
        _all_tyvars(ty.right, acc)
    elif isinstance(ty, Arrow):
        _all_tyvars(ty.dom, acc)
        _all_tyvars(ty.cod, acc)
    elif isinstance(ty, BINDER_TYPES):
        acc.add(ty.var)
        _all_tyvars(ty.body, acc)
    elif isinstance(ty, (Ref, T)):
        _all_tyvars(ty.ty, acc)
    return acc


def subst_ty(ty: Ty, mapping: dict) -> Ty:
    """Capture-avoiding simultaneous substitution of types for type variables."""
    if not mapping:
        return ty
    if isinstance(ty, TVar):
        return mapping.get(ty.name, ty)
    if isinstance(ty, (TUnit, TInt)):
        return ty
    if isinstance(ty, Prod):
        return Prod(subst_ty(ty.left, mapping), subst_ty(ty.right, mapping))
    if isinstance(ty, Arrow):
        return Arrow(subst_ty(ty.dom, mapping), subst_ty(ty.cod, mapping))
    if isinstance(ty, Ref):
        return Ref(subst_ty(ty.ty, mapping))
    if isinstance(ty, T):
        return T(subst_ty(ty.ty, mapping))
    if isinstance(ty, BINDER_TYPES):
        inner = {k: v for k, v in mapping.items() if k != ty.var}
        if not inner:
            return ty
        body_fv = ftv(ty.body)
        inner = {k: v for k, v in inner.items() if k in body_fv}
        if not inner:
            return ty
        incoming = frozenset().union(*(ftv(v) for v in inner.values()))
        var, body = ty.var, ty.body
        if var in incoming:
            new = fresh_name(var, incoming | body_fv | set(inner))
            body = subst_ty(body, {var: TVar(new)})
            var = new
        return type(ty)(var, subst_ty(body, inner))
    raise TypeError(f"not a type: {ty!r}")


def unroll(mu: Mu) -> Ty:
    """``mu a. t`` to ``t[mu a. t / a]``."""
    return subst_ty(mu.body, {mu.var: mu})


def _canon_ty(ty: Ty, env: dict, depth: int):
    if isinstance(ty, TVar):
        if ty.name in env:
            return ("b", depth - env[ty.name])
        return ("f", ty.name)
    if isinstance(ty, TUnit):
        return ("Unit",)
    if isinstance(ty, TInt):
        return ("Int",)
    if isinstance(ty, Prod):
        return ("*", _canon_ty(ty.left, env, depth), _canon_ty(ty.right, env, depth))
    if isinstance(ty, Arrow):
        return ("->", _canon_ty(ty.dom, env, depth), _canon_ty(ty.cod, env, depth))
    if isinstance(ty, Ref):
        return ("Ref", _canon_ty(ty.ty, env, depth))
    if isinstance(ty, T):
        return ("T", _canon_ty(ty.ty, env, depth))
    if isinstance(ty, BINDER_TYPES):
        return (type(ty).__name__, _canon_ty(ty.body, {**env, ty.var: depth + 1}, depth + 1))
    raise TypeError(f"not a type: {ty!r}")


def ty_key(ty: Ty):
    """A nameless, hashable representative of the alpha-equivalence class of ``ty``."""
    return _canon_ty(ty, {}, 0)


def alpha_eq_ty(a: Ty, b: Ty) -> bool:
    return a == b or ty_key(a) == ty_key(b)


# --- term-level binding ------------------------------------------------------


def _canon_tm(tm: Tm, env: dict, tenv: dict, depth: int):
    """Nameless form; term and type binders share one de Bruijn level counter."""

    def ty(t):
        return _canon_ty(t, tenv, depth)

    def rec(t, e=env, te=tenv, d=depth):
        return _canon_tm(t, e, te, d)

    def var(name):
        return ("b", depth - env[name]) if name in env else ("f", name)

    if isinstance(tm, Var):
        return ("var", var(tm.name))
    if isinstance(tm, UnitVal):
        return ("unit",)
    if isinstance(tm, IntLit):
        return ("int", tm.value)
    if isinstance(tm, Arith):
        return ("arith", tm.op) + tuple(rec(a) for a in tm.args)
    if isinstance(tm, Lam):
        return ("lam", ty(tm.ty), rec(tm.body, {**env, tm.var: depth + 1}, tenv, depth + 1))
    if isinstance(tm, App):
        return ("app", rec(tm.fn), rec(tm.arg))
    if isinstance(tm, Pair):
        return ("pair", rec(tm.left), rec(tm.right))
    if isinstance(tm, Fst):
        return ("fst", rec(tm.tm))
    if isinstance(tm, Snd):
        return ("snd", rec(tm.tm))
    if isinstance(tm, TLam):
        return ("tlam", rec(tm.body, env, {**tenv, tm.var: depth + 1}, depth + 1))
    if isinstance(tm, TApp):
        return ("tapp", rec(tm.tm), ty(tm.ty))
    if isinstance(tm, Pack):
        return ("pack", ty(tm.witness), rec(tm.tm), ty(tm.ty))
    if isinstance(tm, Unpack):
        return (
            "unpack",
            rec(tm.tm),
            rec(tm.body, {**env, tm.var: depth + 2}, {**tenv, tm.tyvar: depth + 1}, depth + 2),
        )
    if isinstance(tm, Fold):
        return ("fold", ty(tm.ty), rec(tm.tm))
    if isinstance(tm, Unfold):
        return ("unfold", rec(tm.tm))
    if isinstance(tm, IfZ):
        return ("ifz", rec(tm.cond), rec(tm.then), rec(tm.orelse))
    if isinstance(tm, Ret):
        return ("ret", rec(tm.tm))
    if isinstance(tm, Bind):
        return ("bind", rec(tm.tm), rec(tm.body, {**env, tm.var: depth + 1}, tenv, depth + 1))
    if isinstance(tm, Get):
        return ("get", ty(tm.ty), rec(tm.ref))
    if isinstance(tm, Set):
        return ("set", ty(tm.ty), rec(tm.ref), rec(tm.tm))
    if isinstance(tm, New):
        return ("new", ty(tm.ty), rec(tm.tm))
    if isinstance(tm, Step):
        return ("step",)
    raise TypeError(f"not a term: {tm!r}")


def tm_key(tm: Tm):
    return _canon_tm(tm, {}, {}, 0)


def alpha_eq(a, b) -> bool:
    """Alpha-equivalence of two terms or two types."""
    if isinstance(a, Ty) and isinstance(b, Ty):
        return alpha_eq_ty(a, b)
    if isinstance(a, Tm) and isinstance(b, Tm):
        return tm_key(a) == tm_key(b)
    return False


def free_vars(tm: Tm) -> frozenset:
    """Free term variables."""
    if isinstance(tm, Var):
        return frozenset({tm.name})
    if isinstance(tm, (UnitVal, IntLit, Step)):
        return frozenset()
    if isinstance(tm, Arith):
        return frozenset().union(*(free_vars(a) for a in tm.args))
    if isinstance(tm, Lam):
        return free_vars(tm.body) - {tm.var}
    if isinstance(tm, Bind):
        return free_vars(tm.tm) | (free_vars(tm.body) - {tm.var})
    if isinstance(tm, Unpack):
        return free_vars(tm.tm) | (free_vars(tm.body) - {tm.var})
    return frozenset().union(*(free_vars(c) for c in subterms(tm)))


def subterms(tm: Tm) -> tuple:
    if isinstance(tm, (Var, UnitVal, IntLit, Step)):
        return ()
    if isinstance(tm, Arith):
        return tuple(tm.args)
    if isinstance(tm, (Lam, TLam)):
        return (tm.body,)
    if isinstance(tm, App):
        return (tm.fn, tm.arg)
    if isinstance(tm, Pair):
        return (tm.left, tm.right)
    if isinstance(tm, (Fst, Snd, TApp, Pack, Fold, Unfold, Ret, New)):
        return (tm.tm,)
    if isinstance(tm, Unpack):
        return (tm.tm, tm.body)
    if isinstance(tm, IfZ):
        return (tm.cond, tm.then, tm.orelse)
    if isinstance(tm, Bind):
        return (tm.tm, tm.body)
    if isinstance(tm, Get):
        return (tm.ref,)
    if isinstance(tm, Set):
        return (tm.ref, tm.tm)
    raise TypeError(f"not a term: {tm!r}")


def rename_tyvar_in_tm(tm: Tm, old: str, new: str) -> Tm:
    """Replace free type variable ``old`` by a name ``new`` that occurs nowhere in ``tm``."""
    m = {old: TVar(new)}

    def ty(t):
        return subst_ty(t, m)

    def rec(t):
        return rename_tyvar_in_tm(t, old, new)

    sp = getattr(tm, "span", None)
    if isinstance(tm, (Var, UnitVal, IntLit, Step)):
        return tm
    if isinstance(tm, Arith):
        return Arith(tm.op, tuple(rec(a) for a in tm.args), span=sp)
    if isinstance(tm, Lam):
        return Lam(tm.var, ty(tm.ty), rec(tm.body), span=sp)
    if isinstance(tm, App):
        return App(rec(tm.fn), rec(tm.arg), span=sp)
    if isinstance(tm, Pair):
        return Pair(rec(tm.left), rec(tm.right), span=sp)
    if isinstance(tm, Fst):
        return Fst(rec(tm.tm), span=sp)
    if isinstance(tm, Snd):
        return Snd(rec(tm.tm), span=sp)
    if isinstance(tm, TLam):
        if tm.var == old:
            return tm
        return TLam(tm.var, rec(tm.body), span=sp)
    if isinstance(tm, TApp):
        return TApp(rec(tm.tm), ty(tm.ty), span=sp)
    if isinstance(tm, Pack):
        return Pack(ty(tm.witness), rec(tm.tm), ty(tm.ty), span=sp)
    if isinstance(tm, Unpack):
        body = tm.body if tm.tyvar == old else rec(tm.body)
        return Unpack(rec(tm.tm), tm.tyvar, tm.var, body, span=sp)
    if isinstance(tm, Fold):
        return Fold(ty(tm.ty), rec(tm.tm), span=sp)
    if isinstance(tm, Unfold):
        return Unfold(rec(tm.tm), span=sp)
    if isinstance(tm, IfZ):
        return IfZ(rec(tm.cond), rec(tm.then), rec(tm.orelse), span=sp)
    if isinstance(tm, Ret):
        return Ret(rec(tm.tm), span=sp)
    if isinstance(tm, Bind):
        return Bind(tm.var, rec(tm.tm), rec(tm.body), span=sp)
    if isinstance(tm, Get):
        return Get(ty(tm.ty), rec(tm.ref), span=sp)
    if isinstance(tm, Set):
        return Set(ty(tm.ty), rec(tm.ref), rec(tm.tm), span=sp)
    if isinstance(tm, New):
        return New(ty(tm.ty), rec(tm.tm), span=sp)
    raise TypeError(f"not a term: {tm!r}")


def all_tyvars_in_tm(tm: Tm) -> set:
    acc: set = set()

    def walk(t):
        for attr in ("ty", "witness"):
            v = getattr(t, attr, None)
            if isinstance(v, Ty):
                _all_tyvars(v, acc)
        if isinstance(t, TLam):
            acc.add(t.var)
        if isinstance(t, Unpack):
            acc.add(t.tyvar)
        for c in subterms(t):
            walk(c)

    walk(tm)
    return acc


TyOrTm = Union[Ty, Tm]
