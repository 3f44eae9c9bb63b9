"""The L_n quiver: a loop at vertex 0 followed by a line of arrow pairs.

Arrow ids are fixed: the loop ``eps`` is 0, ``a_i`` (i -> i+1) is ``1 + i``
and ``abar_i`` (i+1 -> i) is ``n + i``.  A path is read left to right, so
``a_0 abar_0`` first traverses ``a_0`` and is closed at vertex 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class Arrow:
    id: int
    name: str
    source: int
    target: int


@dataclass(frozen=True, order=True)
class Path:
    """A path; an empty ``arrows`` tuple is the trivial path at ``source``."""

    arrows: tuple
    source: int
    target: int

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def is_closed(self) -> bool:
        return self.source == self.target

    def sort_key(self) -> tuple:
        return (len(self.arrows), self.arrows, self.source)


class Quiver:
    """The quiver of type L_n with vertices ``0..n-1``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"L_n needs n >= 1, got {n}")
        self.n = n
        arrows = [Arrow(0, "eps", 0, 0)]
        arrows += [Arrow(1 + i, f"a{i}", i, i + 1) for i in range(n - 1)]
        arrows += [Arrow(n + i, f"abar{i}", i + 1, i) for i in range(n - 1)]
        self.arrows: tuple[Arrow, ...] = tuple(arrows)
        self._by_name = {a.name: a for a in arrows}

    def __repr__(self) -> str:
        return f"Quiver(L_{self.n})"

    @property
    def vertices(self) -> range:
        return range(self.n)

    def arrow(self, name: str) -> Arrow:
        return self._by_name[name]

    @cached_property
    def outgoing(self) -> dict[int, list[Arrow]]:
        out: dict[int, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a)
        return out

    @cached_property
    def incoming(self) -> dict[int, list[Arrow]]:
        inc: dict[int, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a)
        return inc

    def trivial(self, v: int) -> Path:
        if v not in self.vertices:
            raise ValueError(f"no vertex {v} in L_{self.n}")
        return Path((), v, v)

    def path(self, arrow_ids) -> Path:
        """Path through the given arrow ids; raises if they do not compose."""
        ids = tuple(arrow_ids)
        if not ids:
            raise ValueError("use trivial() for paths of length 0")
        arrows = [self.arrows[k] for k in ids]
        for x, y in zip(arrows, arrows[1:]):
            if x.target != y.source:
                raise ValueError(f"{x.name} then {y.name} is not a path")
        return Path(ids, arrows[0].source, arrows[-1].target)

    def word(self, text: str) -> Path:
        """Parse a word such as ``"a0 abar0 eps"``, ``"eps^3"`` or ``"e1"``."""
        tokens = text.split()
        if len(tokens) == 1 and re.fullmatch(r"e\d+", tokens[0]):
            return self.trivial(int(tokens[0][1:]))
        ids: list[int] = []
        for tok in tokens:
            m = re.fullmatch(r"([a-z]+\d*)(?:\^(\d+))?", tok)
            if m is None or m.group(1) not in self._by_name:
                raise ValueError(f"unknown arrow {tok!r} in L_{self.n}")
            ids += [self._by_name[m.group(1)].id] * int(m.group(2) or 1)
        return self.path(ids)

    def name(self, p: Path) -> str:
        if p.is_trivial:
            return f"e{p.source}"
        return " ".join(self.arrows[k].name for k in p.arrows)

    def adjacency(self) -> list[list[int]]:
        mat = [[0] * self.n for _ in self.vertices]
        for a in self.arrows:
            mat[a.source][a.target] += 1
        return mat


def build_quiver(n: int) -> Quiver:
    return Quiver(n)


def compose(p1: Path, p2: Path) -> Path | None:
    """``p1`` followed by ``p2``, or ``None`` when they do not meet."""
    if p1.target != p2.source:
        return None
    return Path(p1.arrows + p2.arrows, p1.source, p2.target)


def enumerate_paths(q: Quiver, max_len: int) -> list[Path]:
    """All paths of length at most ``max_len`` in (length, arrows, source) order."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    layer = [q.trivial(v) for v in q.vertices]
    out = list(layer)
    for _ in range(max_len):
        layer = [
            Path(p.arrows + (a.id,), p.source, a.target)
            for p in layer
            for a in q.outgoing[p.target]
        ]
        out += layer
    out.sort(key=Path.sort_key)
    return out
