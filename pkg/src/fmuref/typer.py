"""Kind and type checking for ``Xi; Gamma |- e : tau``.

Checking is syntax-directed; type equality is alpha-equivalence.  Type
variables are never shadowed in the kind context: a binder that reuses a name
already in scope is renamed apart first.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .lang import syntax as S
from .lang.printer import print_ty


class KindError(Exception):
    def __init__(self, var: str, span=None):
        super().__init__(f"unbound type variable {var}")
        self.var = var
        self.span = span

    def to_json(self) -> dict:
        return {
            "kind": "KindError",
            "message": str(self),
            "span": list(self.span) if self.span else None,
            "expected": None,
            "actual": self.var,
        }


class TypeCheckError(Exception):
    """A typing rule failed; ``rule`` names it."""

    def __init__(self, rule: str, message: str, span=None, expected=None, actual=None):
        super().__init__(f"[{rule}] {message}")
        self.rule = rule
        self.message = message
        self.span = span
        self.expected = expected
        self.actual = actual

    def to_json(self) -> dict:
        def fmt(t):
            return print_ty(t) if isinstance(t, S.Ty) else t

        return {
            "kind": "TypeError",
            "rule": self.rule,
            "message": self.message,
            "span": list(self.span) if self.span else None,
            "expected": fmt(self.expected),
            "actual": fmt(self.actual),
        }


def kindcheck(xi: Sequence[str], ty: S.Ty, span=None) -> None:
    for var in sorted(S.ftv(ty)):
        if var not in xi:
            raise KindError(var, span)


class _Ctx:
    """Xi and Gamma; Gamma is an association list searched from the end."""

    def __init__(self, xi: tuple, gamma: tuple):
        self.xi = xi
        self.gamma = gamma

    def with_tyvar(self, var: str) -> "_Ctx":
        return _Ctx(self.xi + (var,), self.gamma)

    def with_var(self, var: str, ty: S.Ty) -> "_Ctx":
        if var == S.WILDCARD:
            return self
        return _Ctx(self.xi, tuple(p for p in self.gamma if p[0] != var) + ((var, ty),))

    def lookup(self, var: str) -> Optional[S.Ty]:
        for name, ty in reversed(self.gamma):
            if name == var:
                return ty
        return None

    def used_names(self) -> set:
        names = set(self.xi)
        for _, ty in self.gamma:
            names |= S.ftv(ty)
        return names


def _fresh_tyvar(ctx: _Ctx, var: str, body: S.Tm):
    """Return a binder name not in Xi, renaming ``body`` if needed."""
    if var not in ctx.xi:
        return var, body
    new = S.fresh_name(var, ctx.used_names() | S.all_tyvars_in_tm(body))
    return new, S.rename_tyvar_in_tm(body, var, new)


def _expect(rule: str, tm: S.Tm, expected: S.Ty, actual: S.Ty) -> None:
    if not S.alpha_eq_ty(expected, actual):
        raise TypeCheckError(
            rule,
            f"expected {print_ty(expected)}, got {print_ty(actual)}",
            tm.span,
            expected,
            actual,
        )


def _shape(rule: str, tm: S.Tm, cls, ty: S.Ty, what: str):
    if not isinstance(ty, cls):
        raise TypeCheckError(rule, f"expected {what}, got {print_ty(ty)}", tm.span, what, ty)
    return ty


def _check(ctx: _Ctx, tm: S.Tm) -> S.Ty:
    sp = tm.span

    def ann(ty: S.Ty) -> S.Ty:
        kindcheck(ctx.xi, ty, sp)
        return ty

    if isinstance(tm, S.Var):
        ty = ctx.lookup(tm.name)
        if ty is None:
            raise TypeCheckError("Var", f"unbound variable {tm.name}", sp)
        return ty
    if isinstance(tm, S.UnitVal):
        return S.UNIT
    if isinstance(tm, S.IntLit):
        return S.INT
    if isinstance(tm, S.Arith):
        for arg in tm.args:
            _expect("Arith", arg, S.INT, _check(ctx, arg))
        return S.INT
    if isinstance(tm, S.Lam):
        dom = ann(tm.ty)
        return S.Arrow(dom, _check(ctx.with_var(tm.var, dom), tm.body))
    if isinstance(tm, S.App):
        fn = _shape("App", tm.fn, S.Arrow, _check(ctx, tm.fn), "a function type")
        _expect("App", tm.arg, fn.dom, _check(ctx, tm.arg))
        return fn.cod
    if isinstance(tm, S.Pair):
        return S.Prod(_check(ctx, tm.left), _check(ctx, tm.right))
    if isinstance(tm, (S.Fst, S.Snd)):
        rule = type(tm).__name__
        prod = _shape(rule, tm.tm, S.Prod, _check(ctx, tm.tm), "a product type")
        return prod.left if isinstance(tm, S.Fst) else prod.right
    if isinstance(tm, S.TLam):
        var, body = _fresh_tyvar(ctx, tm.var, tm.body)
        return S.Forall(var, _check(ctx.with_tyvar(var), body))
    if isinstance(tm, S.TApp):
        arg = ann(tm.ty)
        poly = _shape("TApp", tm.tm, S.Forall, _check(ctx, tm.tm), "a universal type")
        return S.subst_ty(poly.body, {poly.var: arg})
    if isinstance(tm, S.Pack):
        witness = ann(tm.witness)
        ex = _shape("Pack", tm, S.Exists, ann(tm.ty), "an existential type")
        _expect("Pack", tm.tm, S.subst_ty(ex.body, {ex.var: witness}), _check(ctx, tm.tm))
        return ex
    if isinstance(tm, S.Unpack):
        ex = _shape("Unpack", tm.tm, S.Exists, _check(ctx, tm.tm), "an existential type")
        var, body = _fresh_tyvar(ctx, tm.tyvar, tm.body)
        inner = ctx.with_tyvar(var).with_var(tm.var, S.subst_ty(ex.body, {ex.var: S.TVar(var)}))
        result = _check(inner, body)
        if var in S.ftv(result):
            raise TypeCheckError(
                "Unpack", f"abstract type {tm.tyvar} escapes its scope in {print_ty(result)}", sp,
                None, result,
            )
        return result
    if isinstance(tm, S.Fold):
        mu = _shape("Fold", tm, S.Mu, ann(tm.ty), "a recursive type")
        _expect("Fold", tm.tm, S.unroll(mu), _check(ctx, tm.tm))
        return mu
    if isinstance(tm, S.Unfold):
        mu = _shape("Unfold", tm.tm, S.Mu, _check(ctx, tm.tm), "a recursive type")
        return S.unroll(mu)
    if isinstance(tm, S.IfZ):
        _expect("IfZ", tm.cond, S.INT, _check(ctx, tm.cond))
        then = _check(ctx, tm.then)
        _expect("IfZ", tm.orelse, then, _check(ctx, tm.orelse))
        return then
    if isinstance(tm, S.Ret):
        return S.T(_check(ctx, tm.tm))
    if isinstance(tm, S.Bind):
        first = _shape("Bind", tm.tm, S.T, _check(ctx, tm.tm), "a computation type")
        rest = _check(ctx.with_var(tm.var, first.ty), tm.body)
        return _shape("Bind", tm.body, S.T, rest, "a computation type")
    if isinstance(tm, S.Get):
        ty = ann(tm.ty)
        _expect("Get", tm.ref, S.Ref(ty), _check(ctx, tm.ref))
        return S.T(ty)
    if isinstance(tm, S.Set):
        ty = ann(tm.ty)
        _expect("Set", tm.ref, S.Ref(ty), _check(ctx, tm.ref))
        _expect("Set", tm.tm, ty, _check(ctx, tm.tm))
        return S.T(S.UNIT)
    if isinstance(tm, S.New):
        ty = ann(tm.ty)
        _expect("New", tm.tm, ty, _check(ctx, tm.tm))
        return S.T(S.Ref(ty))
    if isinstance(tm, S.Step):
        return S.T(S.UNIT)
    raise TypeError(f"not a term: {tm!r}")


def typecheck(tm: S.Tm, xi: Iterable[str] = (), gamma: Iterable = ()) -> S.Ty:
    """Return the type of ``tm`` or raise :class:`TypeCheckError`/:class:`KindError`."""
    xi = tuple(xi)
    if len(set(xi)) != len(xi):
        raise ValueError("duplicate type variable in kind context")
    gamma = tuple(gamma)
    for _, ty in gamma:
        kindcheck(xi, ty)
    return _check(_Ctx(xi, gamma), tm)
