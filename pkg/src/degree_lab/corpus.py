"""The fixed corpus of worked examples shipped with the package."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .notation import parse
from .syntax import Term

# named reduction chains over corpus entries
CHAINS = {
    "ex22": ["ex22.t", "ex22.s1", "ex22.s2", "ex22.s3", "ex22.s4"],
    "mem": ["mem.c0", "mem.c1", "mem.c2", "mem.c3", "mem.c4"],
    "dia": ["dia.t0", "dia.t1", "dia.t2", "dia.t4"],
    "dia-alt": ["dia.t0", "dia.t1", "dia.t3", "dia.t4"],
}
FORGET_CHAINS = {
    "fg.a": ["fg.a0", "fg.a1"],
    "fg.b": ["fg.b0", "fg.b1", "fg.b2", "fg.b3"],
}
# (M, N) pairs related by one beta-step
BETA_PAIRS = [("fs.M", "fs.N"), ("w4.M", "w4.N"), ("tur.M", "tur.N")]


def read_corpus(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, term = line.partition("=")
        if not sep:
            raise ValueError(f"corpus line {lineno}: expected 'name = term'")
        out[name.strip()] = parse(term)
    return out


@lru_cache(maxsize=None)
def _load() -> dict:
    text = resources.files("degree_lab").joinpath("data/corpus.txt").read_text()
    return read_corpus(text)


def load_corpus() -> dict:
    """Name to term, in file order."""
    return dict(_load())


def term(name: str) -> Term:
    return _load()[name]


def pure_terms() -> list:
    """The wrapper-free corpus entries."""
    return [t for t in _load().values() if not t.weight]
