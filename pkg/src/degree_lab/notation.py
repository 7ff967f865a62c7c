"""ASCII notation for types and terms.

Grammar::

    Type := BASE | Type "->" Type        (right associative, parens allowed)
    Term := VAR | VAR ":" Type | "\\" VAR ":" Type "." Term
          | Term Term                    (left associative)
          | Term "[" Term "]"            (wrapper, postfix, binds tightest)

Free variables need no annotation: their types are inferred by unification
from the surrounding annotations, and any type left open defaults to the
base type ``0``. ``print_term`` annotates a free variable (``(f:0->0)``)
only where the default would guess wrong, so ``parse(print_term(t)) == t``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

from .errors import AnnotationMismatch, ArityMismatch, DomainMismatch, TermSyntaxError
from .syntax import (
    Abs,
    App,
    Arrow,
    Base,
    Bound,
    Hole,
    O,
    Term,
    Type,
    Var,
    Wrap,
    free_vars,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->|→)
  | (?P<lam>\\|λ)
  | (?P<ident>[A-Za-z0-9_']+)
  | (?P<punct>[:.()\[\]])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    i, line, col = 0, 1, 1
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            toks.append(_Tok(kind if kind != "punct" else chunk, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        i = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


# ----------------------------------------------------------------------------
# Parsing to a raw tree


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg):
        raise TermSyntaxError(msg, self.tok.line, self.tok.col)

    def expect(self, kind):
        if self.tok.kind != kind:
            self.error(f"expected {kind!r}, found {self.tok.text or 'end of input'!r}")
        tok = self.tok
        self.i += 1
        return tok

    def at(self, kind):
        return self.tok.kind == kind

    def finish(self):
        if not self.at("eof"):
            self.error(f"unexpected {self.tok.text!r}")

    # types
    def type_(self) -> Type:
        dom = self.atype()
        if self.at("arrow"):
            self.i += 1
            return Arrow(dom, self.type_())
        return dom

    def atype(self) -> Type:
        if self.at("("):
            self.i += 1
            ty = self.type_()
            self.expect(")")
            return ty
        return Base(self.expect("ident").text)

    # terms
    def term(self):
        if self.at("lam"):
            return self.lambda_()
        head = self.postfix()
        while True:
            if self.at("lam"):
                return ("app", head, self.lambda_())
            if self.at("ident") or self.at("("):
                head = ("app", head, self.postfix())
            else:
                return head

    def lambda_(self):
        self.expect("lam")
        tok = self.expect("ident")
        self.expect(":")
        ty = self.type_()
        self.expect(".")
        return ("lam", tok.text, ty, self.term())

    def postfix(self):
        t = self.atom()
        while self.at("["):
            self.i += 1
            mem = self.term()
            self.expect("]")
            t = ("wrap", t, mem)
        return t

    def atom(self):
        if self.at("("):
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        tok = self.expect("ident")
        ann = None
        if self.at(":"):
            self.i += 1
            ann = self.type_()
        return ("var", tok.text, ann, tok.line, tok.col)


# ----------------------------------------------------------------------------
# Elaboration with unification for free variables


class _Meta(Type):
    __slots__ = ("id",)

    def __init__(self, id):
        self.id = id

    def __repr__(self):
        return f"?{self.id}"


class _Unifier:
    def __init__(self):
        self.sol = {}
        self.counter = itertools.count()

    def fresh(self):
        return _Meta(next(self.counter))

    def walk(self, ty):
        while isinstance(ty, _Meta) and ty.id in self.sol:
            ty = self.sol[ty.id]
        return ty

    def resolve(self, ty, default):
        ty = self.walk(ty)
        if isinstance(ty, _Meta):
            return default
        if isinstance(ty, Arrow):
            return Arrow(self.resolve(ty.dom, default), self.resolve(ty.cod, default))
        return ty

    def occurs(self, m, ty):
        ty = self.walk(ty)
        if isinstance(ty, _Meta):
            return ty.id == m.id
        if isinstance(ty, Arrow):
            return self.occurs(m, ty.dom) or self.occurs(m, ty.cod)
        return False

    def unify(self, a, b) -> bool:
        a, b = self.walk(a), self.walk(b)
        if isinstance(a, _Meta) and isinstance(b, _Meta) and a.id == b.id:
            return True
        if isinstance(a, _Meta):
            if self.occurs(a, b):
                return False
            self.sol[a.id] = b
            return True
        if isinstance(b, _Meta):
            return self.unify(b, a)
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            return self.unify(a.dom, b.dom) and self.unify(a.cod, b.cod)
        return a == b


def _elaborate(raw, env: Optional[dict], default: Type) -> Term:
    u = _Unifier()
    free = {} if env is None else dict(env)

    def infer(node, scope):
        kind = node[0]
        if kind == "var":
            _, name, ann, line, col = node
            for depth, (bname, bty) in enumerate(reversed(scope)):
                if bname == name:
                    if ann is not None and ann != bty:
                        raise AnnotationMismatch(
                            f"{name} annotated {ann} under a binder of type {bty} "
                            f"(line {line}, column {col})"
                        )
                    return bty
            if name not in free:
                free[name] = u.fresh()
            if ann is not None and not u.unify(free[name], ann):
                raise AnnotationMismatch(
                    f"conflicting annotations for {name} (line {line}, column {col})"
                )
            return free[name]
        if kind == "lam":
            _, name, ty, body = node
            return Arrow(ty, infer(body, scope + [(name, ty)]))
        if kind == "app":
            ft = infer(node[1], scope)
            at = infer(node[2], scope)
            res = u.fresh()
            if not u.unify(ft, Arrow(at, res)):
                if isinstance(u.walk(ft), Base):
                    raise ArityMismatch(f"applying a term of type {u.resolve(ft, default)}")
                raise DomainMismatch(
                    f"function of type {u.resolve(ft, default)} applied to "
                    f"an argument of type {u.resolve(at, default)}"
                )
            return res
        infer(node[2], scope)
        return infer(node[1], scope)

    infer(raw, [])
    types = {name: u.resolve(ty, default) for name, ty in free.items()}

    def build(node, scope):
        kind = node[0]
        if kind == "var":
            name = node[1]
            for depth, (bname, bty) in enumerate(reversed(scope)):
                if bname == name:
                    return Bound(depth, bty)
            return Var(name, types[name])
        if kind == "lam":
            _, name, ty, body = node
            return Abs(ty, build(body, scope + [(name, ty)]), name)
        if kind == "app":
            return App(build(node[1], scope), build(node[2], scope))
        return Wrap(build(node[1], scope), build(node[2], scope))

    return build(raw, [])


def parse(text: str, env: Optional[dict] = None, default: Type = O) -> Term:
    """Parse a term; ``env`` optionally fixes the types of free variables."""
    p = _Parser(text)
    raw = p.term()
    p.finish()
    return _elaborate(raw, env, default)


def parse_type(text: str) -> Type:
    p = _Parser(text)
    ty = p.type_()
    p.finish()
    return ty


# ----------------------------------------------------------------------------
# Printing


def _needs_annotation(t: Term, default: Type) -> set:
    """Free variables whose type inference from the printed text would miss."""
    out = set()
    for name, types in free_vars(t).items():
        if types[0] != default:
            out.add(name)
    return out


def show(t: Term, annotate=False, default: Type = O) -> str:
    """Render ``t``; ``annotate=True`` adds the annotations parsing needs."""
    fv = free_vars(t)
    taken = set(fv)
    pending = _needs_annotation(t, default) if annotate else set()

    def fresh(hint, scope):
        base = hint or "x"
        if base not in taken and base not in scope:
            return base
        for i in itertools.count(1):
            cand = f"{base}{i}"
            if cand not in taken and cand not in scope:
                return cand

    def go(u, scope, ctx):
        # ctx: "top" (anything), "fun" (left of application), "arg", "wrap"
        if isinstance(u, Var):
            if u.name in pending:
                pending.discard(u.name)
                return f"({u.name}:{u.type})"
            return u.name
        if isinstance(u, Bound):
            return scope[-1 - u.index]
        if isinstance(u, Hole):
            return "□"
        if isinstance(u, Abs):
            name = fresh(u.hint, scope)
            s = f"\\{name}:{u.binder_type}. {go(u.body, scope + [name], 'top')}"
            return s if ctx == "top" else f"({s})"
        if isinstance(u, App):
            s = f"{go(u.fun, scope, 'fun')} {go(u.arg, scope, 'arg')}"
            return s if ctx in ("top", "fun") else f"({s})"
        if isinstance(u, Wrap):
            return f"{go(u.body, scope, 'wrap')}[{go(u.mem, scope, 'top')}]"
        raise TypeError(f"not a term: {u!r}")

    return go(t, [], "top")


def print_term(t: Term) -> str:
    """Printed form that parses back to ``t`` (up to alpha)."""
    return show(t, annotate=True)
