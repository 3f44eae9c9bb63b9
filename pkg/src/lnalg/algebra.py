"""Deformed preprojective algebras L_n^p as explicit finite-dimensional algebras.

The algebra is built as a quotient of the truncated path algebra ``KQ / J^{2n}``
by the two-sided ideal generated by the defining relations.  All relations are
combinations of paths with a common source and target, so the ideal splits
into one block per vertex pair and each block is saturated independently under
multiplication by arrows.

Inside a block the coordinates run over paths in *descending* path order.
With leftmost pivots this makes every pivot the largest path of its row, and
the non-pivot paths (the quotient basis) are standard monomials.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Union

from . import exactla as la
from .quiver import Path, Quiver, compose, enumerate_paths

Combination = Mapping[Path, int]
Word = Union[Path, str, Combination]


class AlgebraBuildError(RuntimeError):
    """The computed quotient disagrees with the closed-form dimension."""


class RankDeficiency(RuntimeError):
    pass


def expected_dim(n: int) -> int:
    return n * (n + 1) * (2 * n + 1) // 3


@dataclass(frozen=True)
class DeformationPoly:
    """Coefficients of ``p(X)``; index is the exponent, trailing zeros trimmed."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, j: int) -> "DeformationPoly":
        """``X^{2j}``."""
        if j < 0:
            raise ValueError("j must be non-negative")
        return cls((0,) * (2 * j) + (1,))

    def reduced(self, q: int) -> "DeformationPoly":
        return DeformationPoly(tuple(c % q for c in self.coeffs))

    def __str__(self) -> str:
        terms = [f"{c}*X^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def _as_poly(p) -> DeformationPoly:
    if isinstance(p, DeformationPoly):
        return p
    return DeformationPoly(tuple(p))


def relation_elements(n: int, p, q: int = 2) -> list[dict[Path, int]]:
    """The defining relations of L_n^p as path combinations over GF(q).

    Order: ``a_s abar_s + abar_{s-1} a_{s-1}`` for ``1 <= s <= n-2``, then
    ``abar_{n-2} a_{n-2}``, ``eps^{2n}`` and ``eps^2 + a_0 abar_0 + eps^3 p(eps)``.
    """
    la.check_field(q)
    Q = Quiver(n)
    p = _as_poly(p).reduced(q)
    rels: list[dict[Path, int]] = []
    for s in range(1, n - 1):
        rels.append({Q.word(f"a{s} abar{s}"): 1, Q.word(f"abar{s-1} a{s-1}"): 1})
    if n >= 2:
        rels.append({Q.word(f"abar{n-2} a{n-2}"): 1})
    rels.append({Q.word(f"eps^{2 * n}"): 1})
    last: dict[Path, int] = {Q.word("eps^2"): 1}
    if n >= 2:
        last[Q.word("a0 abar0")] = 1
    for k, c in enumerate(p.coeffs):
        if c:
            w = Q.word(f"eps^{3 + k}")
            last[w] = (last.get(w, 0) + c) % q
    rels.append({w: c for w, c in last.items() if c})
    return rels


class FiniteDimAlgebra:
    """L_n^p with a path basis and a full multiplication table.

    Elements are native vectors (see :mod:`lnalg.exactla`) of length ``dim``
    in the coordinates of ``basis``.
    """

    def __init__(self, n: int, p: DeformationPoly, q: int):
        la.check_field(q)
        self.n = n
        self.q = q
        self.deformation = p.reduced(q)
        self.quiver = Quiver(n)
        self._build()

    def __repr__(self) -> str:
        return f"L_{self.n}^({self.deformation}) over GF({self.q}), dim {self.dim}"

    # -- construction ------------------------------------------------------

    def _build(self) -> None:
        n, q, Q = self.n, self.q, self.quiver
        bound = 2 * n
        paths = enumerate_paths(Q, bound - 1)
        blocks: dict[tuple[int, int], list[Path]] = {}
        for path in reversed(paths):
            blocks.setdefault((path.source, path.target), []).append(path)
        where = {path: (key, k) for key, ps in blocks.items() for k, path in enumerate(ps)}

        def shift(key, arrow, side):
            # local index map for left (side=0) or right (side=1) multiplication
            out = []
            for path in blocks[key]:
                prod = compose(arrow, path) if side == 0 else compose(path, arrow)
                out.append(where[prod][1] if prod is not None and len(prod) < bound else -1)
            return out

        arrow_paths = [Q.path([a.id]) for a in Q.arrows]
        moves: dict[tuple[int, int], list] = {}
        for key in blocks:
            s, t = key
            ms = []
            for a in Q.incoming[s]:
                ms.append(((a.source, t), shift(key, arrow_paths[a.id], 0)))
            for a in Q.outgoing[t]:
                ms.append(((s, a.target), shift(key, arrow_paths[a.id], 1)))
            moves[key] = ms

        ech = {key: la.Echelon(q, len(ps)) for key, ps in blocks.items()}
        queue: deque = deque()

        def push(key, entries: dict[int, int]):
            if not entries:
                return
            row = ech[key].add(la.from_dict(q, len(blocks[key]), entries))
            if row is not None:
                queue.append((key, row))

        for rel in relation_elements(n, self.deformation, q):
            by_key: dict = {}
            for path, c in rel.items():
                if len(path) < bound:
                    key, k = where[path]
                    by_key.setdefault(key, {})[k] = c
            for key, entries in by_key.items():
                push(key, entries)

        while queue:
            key, row = queue.popleft()
            for target, table in moves[key]:
                entries: dict[int, int] = {}
                for k, c in la.support(q, row):
                    t = table[k]
                    if t >= 0:
                        entries[t] = (entries.get(t, 0) + c) % q
                push(target, {k: c for k, c in entries.items() if c})

        ideal = {key: e.subspace() for key, e in ech.items()}
        basis = [
            blocks[key][k]
            for key, sub in ideal.items()
            for k in sub.complement_indices()
        ]
        basis.sort(key=Path.sort_key)
        if len(basis) != expected_dim(n):
            raise AlgebraBuildError(
                f"quotient of dimension {len(basis)}, expected {expected_dim(n)} for n={n}"
            )
        self.basis: list[Path] = basis
        self.index: dict[Path, int] = {b: k for k, b in enumerate(basis)}
        self.dim = len(basis)
        self.truncation = bound

        # normal forms of the pivot paths: pivot = -(rest of its row)
        reductions: dict[Path, la.Native] = {}
        for key, sub in ideal.items():
            ps = blocks[key]
            for piv, row in zip(sub.pivots, sub.rows):
                entries = {
                    self.index[ps[k]]: -c for k, c in la.support(q, row) if k != piv
                }
                reductions[ps[piv]] = la.from_dict(q, self.dim, entries)
        self._reductions = reductions
        self._ideal = ideal

        self.vertex_grading = [(b.source, b.target) for b in basis]
        self.idempotent_indices = [self.index[Q.trivial(v)] for v in Q.vertices]
        zero = la.zero(q, self.dim)
        table = []
        for u in basis:
            row = []
            for v in basis:
                w = compose(u, v)
                row.append(zero if w is None else self.path_nf(w))
            table.append(row)
        self.mult_table = table

    # -- elements ----------------------------------------------------------

    def path_nf(self, path: Path) -> la.Native:
        if len(path) >= self.truncation:
            return la.zero(self.q, self.dim)
        k = self.index.get(path)
        if k is not None:
            return la.unit(self.q, self.dim, k)
        return self._reductions[path]

    def nf(self, w: Word) -> la.Native:
        """Coordinates of the image of a path, word string or path combination."""
        if isinstance(w, str):
            w = self.quiver.word(w)
        if isinstance(w, Path):
            w = {w: 1}
        out = la.zero(self.q, self.dim)
        for path, c in w.items():
            _check_path(self.quiver, path)
            out = la.add(self.q, out, la.scale(self.q, c, self.path_nf(path)))
        return out

    def element(self, w: Word) -> la.Native:
        return self.nf(w)

    def zero(self) -> la.Native:
        return la.zero(self.q, self.dim)

    def one(self) -> la.Native:
        return la.from_dict(self.q, self.dim, {k: 1 for k in self.idempotent_indices})

    def basis_element(self, k: int) -> la.Native:
        return la.unit(self.q, self.dim, k)

    def multiply(self, x: la.Native, y: la.Native) -> la.Native:
        q, table = self.q, self.mult_table
        if q == 2:
            out = 0
            ys = list(la.support(2, y))
            for i, _ in la.support(2, x):
                row = table[i]
                for j, _ in ys:
                    out ^= row[j]
            return out
        out = la.zero(q, self.dim)
        ys = list(la.support(q, y))
        for i, a in la.support(q, x):
            row = table[i]
            for j, b in ys:
                out = la.add(q, out, la.scale(q, a * b, row[j]))
        return out

    def power(self, x: la.Native, k: int) -> la.Native:
        out = self.one()
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def commutator(self, x: la.Native, y: la.Native) -> la.Native:
        return la.sub(self.q, self.multiply(x, y), self.multiply(y, x))

    def add(self, *xs: la.Native) -> la.Native:
        out = self.zero()
        for x in xs:
            out = la.add(self.q, out, x)
        return out

    def left_mult(self, g: la.Native) -> la.LinearMap:
        """``x -> g x``."""
        cols = tuple(self.multiply(g, self.basis_element(k)) for k in range(self.dim))
        return la.LinearMap(self.q, self.dim, self.dim, cols)

    def right_mult(self, g: la.Native) -> la.LinearMap:
        """``x -> x g``."""
        cols = tuple(self.multiply(self.basis_element(k), g) for k in range(self.dim))
        return la.LinearMap(self.q, self.dim, self.dim, cols)

    @cached_property
    def generators(self) -> list[la.Native]:
        """Trivial paths followed by the arrows."""
        Q = self.quiver
        gens = [self.nf(Q.trivial(v)) for v in Q.vertices]
        gens += [self.nf(Q.path([a.id])) for a in Q.arrows]
        return gens

    @cached_property
    def arrow_elements(self) -> list[la.Native]:
        return self.generators[self.n:]

    def describe(self, x: la.Native) -> str:
        terms = []
        for k, c in la.support(self.q, x):
            name = self.quiver.name(self.basis[k])
            terms.append(name if c == 1 else f"{c}*({name})")
        return " + ".join(terms) or "0"

    # -- invariants --------------------------------------------------------

    def cartan_matrix(self) -> list[list[int]]:
        c = [[0] * self.n for _ in range(self.n)]
        for s, t in self.vertex_grading:
            c[s][t] += 1
        return c

    def descriptor(self) -> dict:
        return {
            "n": self.n,
            "char": self.q,
            "p_coeffs": list(self.deformation.coeffs),
            "dim": self.dim,
            "basis": [list(b.arrows) for b in self.basis],
            "basis_vertices": [[b.source, b.target] for b in self.basis],
            "cartan": self.cartan_matrix(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.descriptor(), **kwargs)


def _check_path(Q: Quiver, path: Path) -> None:
    if path.is_trivial:
        if path.source != path.target or path.source not in Q.vertices:
            raise ValueError(f"bad trivial path {path}")
        return
    arrows = [Q.arrows[k] for k in path.arrows]
    ok = arrows[0].source == path.source and arrows[-1].target == path.target
    ok = ok and all(x.target == y.source for x, y in zip(arrows, arrows[1:]))
    if not ok:
        raise ValueError(f"arrows {path.arrows} do not form a path")


@lru_cache(maxsize=64)
def _build_cached(n: int, coeffs: tuple, q: int) -> FiniteDimAlgebra:
    return FiniteDimAlgebra(n, DeformationPoly(coeffs), q)


def build_algebra(n: int, p=None, q: int = 2) -> FiniteDimAlgebra:
    """Build L_n^p over GF(q); ``p`` defaults to the zero polynomial.

    Results are cached, which is safe because algebras are never mutated.
    """
    if n < 1:
        raise ValueError(f"L_n needs n >= 1, got {n}")
    la.check_field(q)
    poly = DeformationPoly() if p is None else _as_poly(p)
    return _build_cached(n, poly.reduced(q).coeffs, q)


def build_monomial(n: int, j: int, q: int = 2) -> FiniteDimAlgebra:
    """A_n^j = L_n^{X^{2j}}."""
    return build_algebra(n, DeformationPoly.monomial(j), q)


def normal_form(a: FiniteDimAlgebra, w: Word) -> la.Native:
    return a.nf(w)


def multiply(a: FiniteDimAlgebra, x: la.Native, y: la.Native) -> la.Native:
    return a.multiply(x, y)


def cartan_matrix(a: FiniteDimAlgebra) -> list[list[int]]:
    return a.cartan_matrix()


def cartan_closed_form(n: int) -> list[list[int]]:
    return [[2 * min(n - i, n - j) for j in range(n)] for i in range(n)]


def is_associative(a: FiniteDimAlgebra, triples: Iterable[tuple[int, int, int]] | None = None) -> bool:
    """``(uv)w == u(vw)`` on the given basis index triples (default: all)."""
    d = a.dim
    if triples is None:
        triples = ((u, v, w) for u in range(d) for v in range(d) for w in range(d))
    table = a.mult_table
    unit = a.basis_element
    for u, v, w in triples:
        left = a.multiply(table[u][v], unit(w))
        right = a.multiply(unit(u), table[v][w])
        if left != right:
            return False
    return True


# ---------------------------------------------------------------------------
# the explicit path basis, seven families of paths


def _a(i: int, j: int) -> list[str]:
    return [f"a{r}" for r in range(i, j)]


def _abar(i: int, j: int) -> list[str]:
    """``abar_{i-1} ... abar_j``."""
    return [f"abar{r}" for r in range(i - 1, j - 1, -1)]


def path_basis_words(n: int) -> list[tuple[int, int, int, list[str]]]:
    """The seven path families as ``(family, i, j, arrow names)``, family in 1..7."""
    out = []
    V = range(n)
    for i in V:
        for j in V:
            if i < j:
                out.append((1, i, j, _a(i, j)))
                for l in range(j, n - 1):
                    out.append((2, i, j, _a(i, l + 1) + _abar(l + 1, j)))
            else:
                out.append((3, i, j, _abar(i, j)))
                for l in range(i, n - 1):
                    out.append((4, i, j, _a(i, l + 1) + _abar(l + 1, j)))
            out.append((5, i, j, _abar(i, 0) + ["eps"] + _a(0, j)))
            if i < j:
                for l in range(j, n - 1):
                    out.append((6, i, j, _abar(i, 0) + ["eps"] + _a(0, l + 1) + _abar(l + 1, j)))
            else:
                for l in range(i, n - 1):
                    out.append((7, i, j, _a(i, l + 1) + _abar(l + 1, 0) + ["eps"] + _a(0, j)))
    return out


def path_basis_paths(n: int) -> list[Path]:
    Q = Quiver(n)
    out = []
    for _, i, _, names in path_basis_words(n):
        out.append(Q.word(" ".join(names)) if names else Q.trivial(i))
    return out


def path_basis(a: FiniteDimAlgebra) -> list[la.Native]:
    """Images of the explicit basis paths, checked to be a basis of ``a``."""
    elems = [a.path_nf(p) for p in path_basis_paths(a.n)]
    rk = la.span(a.q, a.dim, elems).rank
    if len(elems) != a.dim or rk != a.dim:
        raise RankDeficiency(f"{len(elems)} paths of rank {rk} in dimension {a.dim}")
    return elems


def socle_paths(n: int) -> list[Path]:
    """The length ``2n-1`` members of the explicit basis, one per vertex."""
    return [p for p in path_basis_paths(n) if len(p) == 2 * n - 1]
