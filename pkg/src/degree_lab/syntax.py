"""Types and terms of the lambda^G-calculus.

Terms are stored with de Bruijn indices for bound variables and names for
free variables, so structural equality is alpha-equivalence. Binder name
hints are kept only for printing. Every variable carries its type (Church
style), which lets each node compute its own type on construction.

Abstractions and wrappers may carry *marks*, a frozenset of labels used for
residual tracking. Marks never take part in equality or hashing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import (
    AnnotationMismatch,
    ArityMismatch,
    DomainMismatch,
    InvalidPosition,
    TypeMismatch,
    UnboundVariable,
    Untypable,
)

NO_MARKS = frozenset()


# ----------------------------------------------------------------------------
# Types


class Type:
    __slots__ = ()


@dataclass(frozen=True)
class Base(Type):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("base type names must be non-empty")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow(Type):
    dom: Type
    cod: Type

    def __str__(self):
        dom = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{dom}->{self.cod}"


O = Base("0")


def arrow(*types: Type) -> Type:
    """Right-associated arrow: ``arrow(A, B, C) == A -> (B -> C)``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


@lru_cache(maxsize=None)
def height(ty: Type) -> int:
    if isinstance(ty, Base):
        return 0
    return 1 + max(height(ty.dom), height(ty.cod))


# ----------------------------------------------------------------------------
# Terms


class Term:
    """Abstract term node.

    Cached on every node: ``ty`` (the synthesized type, or None when the node
    is ill-typed), ``weight`` (number of wrappers), ``size`` (number of
    nodes) and ``loose`` (one more than the largest dangling de Bruijn index).
    """

    __slots__ = ("ty", "weight", "size", "loose", "_hash")

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return self._hash

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def _init(self, ty, weight, size, loose):
        object.__setattr__(self, "ty", ty)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "loose", loose)
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + self._key()))

    def __str__(self):
        from .notation import show

        return show(self)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"

    def __reduce__(self):
        return (type(self), self._args())


class Var(Term):
    """Free variable."""

    __slots__ = ("name", "type")

    def __init__(self, name: str, type: Type):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "type", type)
        self._init(type, 0, 1, 0)

    def _key(self):
        return (self.name, self.type)

    def _args(self):
        return (self.name, self.type)


class Bound(Term):
    """Bound variable as a de Bruijn index (0 is the nearest binder)."""

    __slots__ = ("index", "type")

    def __init__(self, index: int, type: Type):
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "type", type)
        self._init(type, 0, 1, index + 1)

    def _key(self):
        return (self.index, self.type)

    def _args(self):
        return (self.index, self.type)


class Abs(Term):
    __slots__ = ("binder_type", "body", "hint", "marks")

    def __init__(self, binder_type: Type, body: Term, hint: str = "x", marks=NO_MARKS):
        object.__setattr__(self, "binder_type", binder_type)
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "hint", hint)
        object.__setattr__(self, "marks", frozenset(marks))
        ty = Arrow(binder_type, body.ty) if body.ty is not None else None
        self._init(ty, body.weight, body.size + 1, max(body.loose - 1, 0))

    def _key(self):
        return (self.binder_type, self.body)

    def _args(self):
        return (self.binder_type, self.body, self.hint, self.marks)


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term):
        object.__setattr__(self, "fun", fun)
        object.__setattr__(self, "arg", arg)
        ft = fun.ty
        ty = ft.cod if isinstance(ft, Arrow) and arg.ty is not None and ft.dom == arg.ty else None
        self._init(
            ty, fun.weight + arg.weight, fun.size + arg.size + 1, max(fun.loose, arg.loose)
        )

    def _key(self):
        return (self.fun, self.arg)

    def _args(self):
        return (self.fun, self.arg)


class Wrap(Term):
    """``body<mem>``: the body with one memorized term."""

    __slots__ = ("body", "mem", "marks")

    def __init__(self, body: Term, mem: Term, marks=NO_MARKS):
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "mem", mem)
        object.__setattr__(self, "marks", frozenset(marks))
        ty = body.ty if mem.ty is not None else None
        self._init(
            ty, body.weight + mem.weight + 1, body.size + mem.size + 1, max(body.loose, mem.loose)
        )

    def _key(self):
        return (self.body, self.mem)

    def _args(self):
        return (self.body, self.mem, self.marks)


class Hole(Term):
    """The distinguished hole of a context."""

    __slots__ = ()

    def __init__(self):
        self._init(None, 0, 1, 0)

    def _key(self):
        return ()

    def _args(self):
        return ()


HOLE = Hole()

Memory = Sequence[Term]


def lam(name: str, ty: Type, body: Term, marks=NO_MARKS) -> Abs:
    """Build ``\\name:ty. body``, abstracting the free variable ``name``."""
    return Abs(ty, close(body, name, ty), name, marks)


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def attach(t: Term, memory: Memory) -> Term:
    """Append a memory to ``t``: ``t<s1>...<sn>`` with ``s1`` innermost."""
    for s in memory:
        t = Wrap(t, s)
    return t


# ----------------------------------------------------------------------------
# Index manipulation


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    if by == 0 or t.loose <= cutoff:
        return t
    if isinstance(t, Bound):
        return Bound(t.index + by, t.type) if t.index >= cutoff else t
    if isinstance(t, Abs):
        return Abs(t.binder_type, shift(t.body, by, cutoff + 1), t.hint, t.marks)
    if isinstance(t, App):
        return App(shift(t.fun, by, cutoff), shift(t.arg, by, cutoff))
    if isinstance(t, Wrap):
        return Wrap(shift(t.body, by, cutoff), shift(t.mem, by, cutoff), t.marks)
    return t


def instantiate(body: Term, arg: Term, depth: int = 0) -> Term:
    """Replace index ``depth`` in ``body`` by ``arg`` and drop that binder.

    ``arg`` lives outside the removed binder; it is shifted as it moves under
    the binders of ``body``.
    """
    if body.loose <= depth:
        return body
    if isinstance(body, Bound):
        if body.index == depth:
            return shift(arg, depth)
        return Bound(body.index - 1, body.type) if body.index > depth else body
    if isinstance(body, Abs):
        return Abs(body.binder_type, instantiate(body.body, arg, depth + 1), body.hint, body.marks)
    if isinstance(body, App):
        return App(instantiate(body.fun, arg, depth), instantiate(body.arg, arg, depth))
    if isinstance(body, Wrap):
        return Wrap(
            instantiate(body.body, arg, depth), instantiate(body.mem, arg, depth), body.marks
        )
    return body


def close(t: Term, name: str, ty: Type, depth: int = 0) -> Term:
    """Turn free occurrences of ``name`` into the index bound at ``depth``."""
    if isinstance(t, Var):
        return Bound(depth, t.type) if t.name == name else t
    if isinstance(t, Bound):
        return Bound(t.index + 1, t.type) if t.index >= depth else t
    if isinstance(t, Abs):
        return Abs(t.binder_type, close(t.body, name, ty, depth + 1), t.hint, t.marks)
    if isinstance(t, App):
        return App(close(t.fun, name, ty, depth), close(t.arg, name, ty, depth))
    if isinstance(t, Wrap):
        return Wrap(close(t.body, name, ty, depth), close(t.mem, name, ty, depth), t.marks)
    return t


def open_body(abs_: Abs, name: str) -> Term:
    return instantiate(abs_.body, Var(name, abs_.binder_type))


# ----------------------------------------------------------------------------
# Free variables and substitution


def free_vars(t: Term) -> dict:
    """Map each free variable name to the list of types it is annotated with."""
    out: dict = {}

    def go(u):
        if isinstance(u, Var):
            out.setdefault(u.name, [])
            if u.type not in out[u.name]:
                out[u.name].append(u.type)
        elif isinstance(u, Abs):
            go(u.body)
        elif isinstance(u, (App,)):
            go(u.fun)
            go(u.arg)
        elif isinstance(u, Wrap):
            go(u.body)
            go(u.mem)

    go(t)
    return out


def count_free(t: Term, name: str) -> int:
    if isinstance(t, Var):
        return int(t.name == name)
    if isinstance(t, Abs):
        return count_free(t.body, name)
    if isinstance(t, App):
        return count_free(t.fun, name) + count_free(t.arg, name)
    if isinstance(t, Wrap):
        return count_free(t.body, name) + count_free(t.mem, name)
    return 0


def subst(t: Term, x, s: Term) -> Term:
    """Capture-avoiding ``t{x := s}``; memories are substituted too.

    ``x`` is either a :class:`Var` or a variable name. The replacement must
    have the type of ``x``.
    """
    name = x.name if isinstance(x, Var) else x
    declared = {x.type} if isinstance(x, Var) else set(free_vars(t).get(name, []))
    if s.ty is None:
        raise TypeMismatch(f"replacement for {name} is ill-typed")
    for ty in declared:
        if ty != s.ty:
            raise TypeMismatch(f"cannot substitute a term of type {s.ty} for {name} : {ty}")

    def go(u, depth):
        if isinstance(u, Var):
            return shift(s, depth) if u.name == name else u
        if isinstance(u, Abs):
            return Abs(u.binder_type, go(u.body, depth + 1), u.hint, u.marks)
        if isinstance(u, App):
            return App(go(u.fun, depth), go(u.arg, depth))
        if isinstance(u, Wrap):
            return Wrap(go(u.body, depth), go(u.mem, depth), u.marks)
        return u

    return go(t, 0)


def is_pure(t: Term) -> bool:
    return t.weight == 0


def weight(t: Term) -> int:
    return t.weight


def erase_marks(t: Term) -> Term:
    if isinstance(t, Abs):
        return Abs(t.binder_type, erase_marks(t.body), t.hint)
    if isinstance(t, App):
        return App(erase_marks(t.fun), erase_marks(t.arg))
    if isinstance(t, Wrap):
        return Wrap(erase_marks(t.body), erase_marks(t.mem))
    return t


def has_marks(t: Term) -> bool:
    if isinstance(t, Abs):
        return bool(t.marks) or has_marks(t.body)
    if isinstance(t, App):
        return has_marks(t.fun) or has_marks(t.arg)
    if isinstance(t, Wrap):
        return bool(t.marks) or has_marks(t.body) or has_marks(t.mem)
    return False


# ----------------------------------------------------------------------------
# Typing


def _derived_env(t: Term) -> dict:
    env = {}
    for name, types in free_vars(t).items():
        if len(types) > 1:
            raise AnnotationMismatch(
                f"free variable {name} annotated with several types: "
                + ", ".join(map(str, types))
            )
        env[name] = types[0]
    return env


def typecheck(t: Term, env: Optional[dict] = None) -> Type:
    """Type of ``t`` under ``env`` (derived from the annotations when None)."""
    if env is None:
        env = _derived_env(t)

    def go(u, binders):
        if isinstance(u, Var):
            if u.name not in env:
                raise UnboundVariable(u.name)
            if env[u.name] != u.type:
                raise AnnotationMismatch(
                    f"{u.name} is annotated {u.type} but the environment says {env[u.name]}"
                )
            return u.type
        if isinstance(u, Bound):
            if u.index >= len(binders):
                raise UnboundVariable(f"dangling index {u.index}")
            expected = binders[-1 - u.index]
            if expected != u.type:
                raise AnnotationMismatch(
                    f"bound variable annotated {u.type} under a binder of type {expected}"
                )
            return u.type
        if isinstance(u, Abs):
            return Arrow(u.binder_type, go(u.body, binders + [u.binder_type]))
        if isinstance(u, App):
            ft = go(u.fun, binders)
            at = go(u.arg, binders)
            if not isinstance(ft, Arrow):
                raise ArityMismatch(f"applying a term of type {ft}")
            if ft.dom != at:
                raise DomainMismatch(f"function expects {ft.dom} but the argument has type {at}")
            return ft.cod
        if isinstance(u, Wrap):
            go(u.mem, binders)
            return go(u.body, binders)
        raise Untypable("holes have no type")

    return go(t, [])


def is_typable(t: Term) -> bool:
    try:
        typecheck(t)
    except Exception:
        return False
    return True


@dataclass(frozen=True)
class Judgment:
    env: tuple
    subject: Term
    type: Type

    @classmethod
    def derive(cls, t: Term, env: Optional[dict] = None) -> "Judgment":
        if env is None:
            env = _derived_env(t)
        ty = typecheck(t, env)
        return cls(tuple(sorted(env.items(), key=lambda kv: kv[0])), t, ty)

    def __str__(self):
        ctx = ", ".join(f"{k}:{v}" for k, v in self.env)
        return f"{ctx} |- {self.subject} : {self.type}"


# ----------------------------------------------------------------------------
# m-abstractions, degrees


class MAbstraction(NamedTuple):
    hint: str
    binder_type: Type
    body: Term
    memory: tuple
    abs: Abs

    @property
    def degree(self) -> int:
        return height(self.abs.ty)


def split_m_abstraction(t: Term) -> Optional[MAbstraction]:
    """Decompose ``t = (\\x.b)L``; None when ``t`` is not an m-abstraction."""
    memory = []
    while isinstance(t, Wrap):
        memory.append(t.mem)
        t = t.body
    if not isinstance(t, Abs):
        return None
    memory.reverse()
    return MAbstraction(t.hint, t.binder_type, t.body, tuple(memory), t)


def m_abstraction_degree(t: Term) -> Optional[int]:
    while isinstance(t, Wrap):
        t = t.body
    if isinstance(t, Abs):
        if t.ty is None:
            raise Untypable("m-abstraction without a type")
        return height(t.ty)
    return None


def redex_degree(t: Term) -> Optional[int]:
    """Degree of ``t`` if it is a redex ``(\\x.b)L a``, else None."""
    if isinstance(t, App):
        return m_abstraction_degree(t.fun)
    return None


def maxdeg(t: Term) -> int:
    if t.ty is None:
        raise Untypable("maxdeg of an ill-typed term")
    return _maxdeg(t)


def _maxdeg(t: Term) -> int:
    if isinstance(t, Abs):
        return _maxdeg(t.body)
    if isinstance(t, App):
        own = m_abstraction_degree(t.fun) or 0
        return max(own, _maxdeg(t.fun), _maxdeg(t.arg))
    if isinstance(t, Wrap):
        return max(_maxdeg(t.body), _maxdeg(t.mem))
    return 0


# ----------------------------------------------------------------------------
# Positions and contexts


class Sel(enum.Enum):
    """Child selectors, in left-to-right order."""

    ABS_BODY = "abs.body"
    APP_FUN = "app.fun"
    APP_ARG = "app.arg"
    WRAP_BODY = "wrap.body"
    WRAP_MEM = "wrap.mem"

    @property
    def rank(self) -> int:
        return _RANK[self]


_RANK = {
    Sel.ABS_BODY: 0,
    Sel.APP_FUN: 0,
    Sel.APP_ARG: 1,
    Sel.WRAP_BODY: 0,
    Sel.WRAP_MEM: 1,
}

Position = tuple  # tuple of Sel


def position_key(pos: Position) -> tuple:
    """Sort key giving the leftmost-outermost (preorder) order."""
    return tuple(s.rank for s in pos)


def format_position(pos: Position) -> str:
    return "/".join(s.value for s in pos)


def parse_position(text: str) -> Position:
    if not text:
        return ()
    return tuple(Sel(part) for part in text.split("/"))


def child(t: Term, sel: Sel) -> Term:
    if sel is Sel.ABS_BODY and isinstance(t, Abs):
        return t.body
    if sel is Sel.APP_FUN and isinstance(t, App):
        return t.fun
    if sel is Sel.APP_ARG and isinstance(t, App):
        return t.arg
    if sel is Sel.WRAP_BODY and isinstance(t, Wrap):
        return t.body
    if sel is Sel.WRAP_MEM and isinstance(t, Wrap):
        return t.mem
    raise InvalidPosition(f"{sel.value} does not apply to {type(t).__name__}")


def subterm_at(t: Term, pos: Position) -> Term:
    for sel in pos:
        t = child(t, sel)
    return t


def binders_above(t: Term, pos: Position) -> list:
    """Binder types crossed on the way to ``pos``, outermost first."""
    out = []
    for sel in pos:
        if sel is Sel.ABS_BODY:
            out.append(t.binder_type)
        t = child(t, sel)
    return out


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    """Variable-capturing replacement of the subterm at ``pos``."""
    if not pos:
        return new
    sel, rest = pos[0], pos[1:]
    if sel is Sel.ABS_BODY and isinstance(t, Abs):
        return Abs(t.binder_type, replace_at(t.body, rest, new), t.hint, t.marks)
    if sel is Sel.APP_FUN and isinstance(t, App):
        return App(replace_at(t.fun, rest, new), t.arg)
    if sel is Sel.APP_ARG and isinstance(t, App):
        return App(t.fun, replace_at(t.arg, rest, new))
    if sel is Sel.WRAP_BODY and isinstance(t, Wrap):
        return Wrap(replace_at(t.body, rest, new), t.mem, t.marks)
    if sel is Sel.WRAP_MEM and isinstance(t, Wrap):
        return Wrap(t.body, replace_at(t.mem, rest, new), t.marks)
    raise InvalidPosition(f"{sel.value} does not apply to {type(t).__name__}")


def children(t: Term) -> list:
    if isinstance(t, Abs):
        return [(Sel.ABS_BODY, t.body)]
    if isinstance(t, App):
        return [(Sel.APP_FUN, t.fun), (Sel.APP_ARG, t.arg)]
    if isinstance(t, Wrap):
        return [(Sel.WRAP_BODY, t.body), (Sel.WRAP_MEM, t.mem)]
    return []


def subterms(t: Term, pos: Position = ()) -> Iterator[tuple]:
    """Yield ``(position, subterm)`` pairs in preorder."""
    yield pos, t
    for sel, c in children(t):
        yield from subterms(c, pos + (sel,))


@dataclass(frozen=True)
class Context:
    """A term with exactly one hole; plugging captures variables."""

    frame: Term
    position: Position

    @classmethod
    def of(cls, t: Term, pos: Position) -> "Context":
        subterm_at(t, pos)
        return cls(replace_at(t, pos, HOLE), tuple(pos))

    def plug(self, u: Term) -> Term:
        return replace_at(self.frame, self.position, u)
