"""Seeded generation of random typable pure terms."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GenerationExhausted
from .syntax import Abs, App, Arrow, Bound, O, Term, Type, Var, height, maxdeg


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 12
    max_degree: int = 2
    count: int = 100
    # the fixed context: base-typed free variables
    free: tuple = ("w", "y", "z")
    # reject terms with fewer redexes than this (0 keeps everything)
    min_redexes: int = 0
    attempts: int = 200


def types_up_to(h: int, base: Type = O) -> list:
    """All types over one base type with height at most ``h``."""
    levels = [[base]]
    for _ in range(h):
        seen = [t for lvl in levels for t in lvl]
        new = [
            Arrow(a, b)
            for a in seen
            for b in seen
            if Arrow(a, b) not in seen and height(Arrow(a, b)) == len(levels)
        ]
        levels.append(new)
    return [t for lvl in levels for t in lvl]


class _Gen:
    def __init__(self, cfg: GenConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng
        self.arg_types = types_up_to(max(cfg.max_degree - 1, 0))

    def term(self, ty: Type, n: int, scope: list):
        """A term of type ``ty`` with at most ``n`` nodes, or None."""
        options = []
        candidates = [Bound(i, t) for i, t in enumerate(reversed(scope)) if t == ty]
        if ty == O:
            candidates += [Var(name, O) for name in self.cfg.free]
        if candidates:
            options.append(("var", 1))
        if isinstance(ty, Arrow) and n >= 2:
            options.append(("abs", 3))
        if n >= 3 and height(ty) < self.cfg.max_degree:
            options.append(("app", 4))
        self.rng.shuffle(options)
        while options:
            kinds, weights = zip(*options)
            kind = self.rng.choices(kinds, weights)[0]
            options = [o for o in options if o[0] != kind]
            if kind == "var":
                return self.rng.choice(candidates)
            if kind == "abs":
                body = self.term(ty.cod, n - 1, scope + [ty.dom])
                if body is not None:
                    return Abs(ty.dom, body, self.rng.choice("xuv"))
            if kind == "app":
                dom = self.rng.choice(self.arg_types)
                k = self.rng.randint(1, n - 2)
                fun = self.term(Arrow(dom, ty), k, scope)
                if fun is None:
                    continue
                arg = self.term(dom, n - 1 - fun.size, scope)
                if arg is not None:
                    return App(fun, arg)
        return None


def _redex_count(t: Term) -> int:
    from .reduction import enumerate_redexes

    return len(enumerate_redexes(t))


def generate(cfg: GenConfig) -> list:
    """``cfg.count`` pure terms of base type, deterministic in ``cfg.seed``.

    Distinct terms are preferred; duplicates are accepted only when the
    configuration cannot supply enough distinct ones.
    """
    rng = random.Random(cfg.seed)
    gen = _Gen(cfg, rng)
    out, seen = [], set()
    misses = 0
    while len(out) < cfg.count:
        t = gen.term(O, rng.randint(1, cfg.max_size), [])
        ok = (
            t is not None
            and maxdeg(t) <= cfg.max_degree
            and _redex_count(t) >= cfg.min_redexes
        )
        if ok and (t not in seen or misses >= cfg.attempts):
            out.append(t)
            seen.add(t)
            misses = 0
            continue
        misses += 1
        if misses > 10 * cfg.attempts:
            raise GenerationExhausted(
                f"could not generate term {len(out) + 1} of {cfg.count} within bounds"
            )
    return out
