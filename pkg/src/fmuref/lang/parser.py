"""Recursive-descent parser for the ``.fmr`` surface syntax.

Grammar (informal)::

    ty     ::= ('forall' | 'exists' | 'mu') id '.' ty | arrow
    arrow  ::= prod ['->' arrow]
    prod   ::= tpre ['*' prod]
    tpre   ::= 'Ref' tpre | 'T' tpre | 'Unit' | 'Int' | id | '(' ty ')'

    term   ::= 'fun' id ':' ty '.' term
             | 'tfun' id '.' term
             | 'bind' id '<-' expr ';' term
             | 'let' id ':' ty '=' term 'in' term
             | 'unpack' expr 'as' '[' id ',' id ']' 'in' term
             | 'ifz' expr 'then' term 'else' term
             | 'pack' '[' ty ',' term ']' 'as' ty
             | expr [';' term]
    expr   ::= mul (('+' | '-') mul)*
    mul    ::= unary ('*' unary)*
    unary  ::= '-' int | '-' unary | app
    app    ::= 'ret' app | 'unfold' app | 'fst' app | 'snd' app
             | ('new' | 'get' | 'fold') '[' ty ']' app
             | 'set' '[' ty ']' atom atom
             | atom (atom | '[' ty ']')*
    atom   ::= id | int | 'step' | '(' ')' | '(' term ')' | '(' term ',' term ')'

``e1; e2`` abbreviates ``bind _ <- e1; e2`` and ``let`` abbreviates a
beta-redex.  Line comments start with ``--``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import syntax as S

KEYWORDS = frozenset(
    """fun tfun forall exists mu Ref T Unit Int ret bind get set new step pack as
    unpack in fold unfold fst snd ifz then else let""".split()
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|--[^\n]*)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>->|<-|[()\[\],.:;=+\-*])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected=()):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)

    def to_json(self) -> dict:
        return {
            "kind": "ParseError",
            "message": self.message,
            "span": [self.line, self.col],
            "expected": list(self.expected),
            "actual": None,
        }


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'id', 'kw', 'sym', 'eof'
    text: str
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            if kind == "id" and chunk in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


_ATOM_START_KW = ("step",)


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token plumbing

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("kw", "sym") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def fail(self, *expected: str):
        t = self.tok
        exp = ", ".join(expected)
        raise ParseError(f"expected {exp}, found {t.describe()}", t.line, t.col, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        return self.advance()

    def ident(self, binder: bool = True) -> str:
        t = self.tok
        if t.kind != "id":
            self.fail("identifier")
        if not binder and t.text == S.WILDCARD:
            raise ParseError("'_' cannot be used as a variable", t.line, t.col, ("identifier",))
        self.advance()
        return t.text

    def span(self):
        return (self.tok.line, self.tok.col)

    # -- types

    def ty(self) -> S.Ty:
        for kw, cls in (("forall", S.Forall), ("exists", S.Exists), ("mu", S.Mu)):
            if self.at(kw):
                self.advance()
                var = self.ident()
                self.expect(".")
                return cls(var, self.ty())
        dom = self.ty_prod()
        if self.at("->"):
            self.advance()
            return S.Arrow(dom, self.ty())
        return dom

    def ty_prod(self) -> S.Ty:
        left = self.ty_prefix()
        if self.at("*"):
            self.advance()
            return S.Prod(left, self.ty_prod())
        return left

    def ty_prefix(self) -> S.Ty:
        if self.at("Ref"):
            self.advance()
            return S.Ref(self.ty_prefix())
        if self.at("T"):
            self.advance()
            return S.T(self.ty_prefix())
        if self.at("Unit"):
            self.advance()
            return S.UNIT
        if self.at("Int"):
            self.advance()
            return S.INT
        if self.tok.kind == "id":
            return S.TVar(self.ident(binder=False))
        if self.at("("):
            self.advance()
            inner = self.ty()
            self.expect(")")
            return inner
        self.fail("type")

    def bracket_ty(self) -> S.Ty:
        self.expect("[")
        ty = self.ty()
        self.expect("]")
        return ty

    # -- terms

    def term(self) -> S.Tm:
        sp = self.span()
        if self.at("fun"):
            self.advance()
            var = self.ident()
            self.expect(":")
            ty = self.ty()
            self.expect(".")
            return S.Lam(var, ty, self.term(), span=sp)
        if self.at("tfun"):
            self.advance()
            var = self.ident()
            self.expect(".")
            return S.TLam(var, self.term(), span=sp)
        if self.at("bind"):
            self.advance()
            var = self.ident()
            self.expect("<-")
            rhs = self.expr()
            self.expect(";")
            return S.Bind(var, rhs, self.term(), span=sp)
        if self.at("let"):
            self.advance()
            var = self.ident()
            self.expect(":")
            ty = self.ty()
            self.expect("=")
            rhs = self.term()
            self.expect("in")
            body = self.term()
            return S.App(S.Lam(var, ty, body, span=sp), rhs, span=sp)
        if self.at("unpack"):
            self.advance()
            scrutinee = self.expr()
            self.expect("as")
            self.expect("[")
            tyvar = self.ident()
            self.expect(",")
            var = self.ident()
            self.expect("]")
            self.expect("in")
            return S.Unpack(scrutinee, tyvar, var, self.term(), span=sp)
        if self.at("ifz"):
            self.advance()
            cond = self.expr()
            self.expect("then")
            then = self.term()
            self.expect("else")
            return S.IfZ(cond, then, self.term(), span=sp)
        if self.at("pack"):
            self.advance()
            self.expect("[")
            witness = self.ty()
            self.expect(",")
            body = self.term()
            self.expect("]")
            self.expect("as")
            return S.Pack(witness, body, self.ty(), span=sp)
        first = self.expr()
        if self.at(";"):
            self.advance()
            return S.Bind(S.WILDCARD, first, self.term(), span=sp)
        return first

    def expr(self) -> S.Tm:
        sp = self.span()
        left = self.mul()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = S.Arith(op, (left, self.mul()), span=sp)
        return left

    def mul(self) -> S.Tm:
        sp = self.span()
        left = self.unary()
        while self.at("*"):
            self.advance()
            left = S.Arith("*", (left, self.unary()), span=sp)
        return left

    def unary(self) -> S.Tm:
        sp = self.span()
        if self.at("-"):
            self.advance()
            if self.tok.kind == "int":
                return S.IntLit(-int(self.advance().text), span=sp)
            return S.Arith("neg", (self.unary(),), span=sp)
        return self.app()

    def app(self) -> S.Tm:
        sp = self.span()
        for kw, cls in (("ret", S.Ret), ("unfold", S.Unfold), ("fst", S.Fst), ("snd", S.Snd)):
            if self.at(kw):
                self.advance()
                return cls(self.app(), span=sp)
        for kw, cls in (("new", S.New), ("get", S.Get), ("fold", S.Fold)):
            if self.at(kw):
                self.advance()
                ty = self.bracket_ty()
                return cls(ty, self.app(), span=sp)
        if self.at("set"):
            self.advance()
            ty = self.bracket_ty()
            ref = self.atom()
            return S.Set(ty, ref, self.atom(), span=sp)
        head = self.atom()
        while True:
            if self.at("["):
                head = S.TApp(head, self.bracket_ty(), span=sp)
            elif self.starts_atom():
                head = S.App(head, self.atom(), span=sp)
            else:
                return head

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("id", "int") or (t.kind == "kw" and t.text in _ATOM_START_KW) or self.at("(")

    def atom(self) -> S.Tm:
        sp = self.span()
        t = self.tok
        if t.kind == "id":
            return S.Var(self.ident(binder=False), span=sp)
        if t.kind == "int":
            self.advance()
            return S.IntLit(int(t.text), span=sp)
        if self.at("step"):
            self.advance()
            return S.Step(span=sp)
        if self.at("("):
            self.advance()
            if self.at(")"):
                self.advance()
                return S.UnitVal(span=sp)
            first = self.term()
            if self.at(","):
                self.advance()
                second = self.term()
                self.expect(")")
                return S.Pair(first, second, span=sp)
            self.expect(")")
            return first
        self.fail("term")

    def finish(self, result):
        if self.tok.kind != "eof":
            self.fail("end of input")
        return result


def parse(text: str) -> S.Tm:
    """Parse one top-level term."""
    p = Parser(text)
    return p.finish(p.term())


def parse_ty(text: str) -> S.Ty:
    p = Parser(text)
    return p.finish(p.ty())
