"""Exact linear algebra over prime fields GF(q).

Vectors have a *native* representation that depends on the field:

* ``q == 2``: a Python ``int`` used as a bit set, bit ``k`` holding
  coordinate ``k``.  Python integers are arrays of machine words, so row
  operations are word-parallel XORs.
* odd ``q``: a ``tuple`` of residues in ``range(q)``.

Elimination always uses the *leftmost* (lowest-index) nonzero coordinate of a
row as its pivot, and rows are consumed in input order, so every basis
produced here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

Native = Union[int, tuple]


class DimensionMismatch(ValueError):
    """Raised when vectors or maps of incompatible sizes are combined."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    k = 2
    while k * k <= q:
        if q % k == 0:
            return False
        k += 1
    return True


def check_field(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"GF({q}) is not a prime field")


# ---------------------------------------------------------------------------
# native vector helpers


def zero(q: int, dim: int) -> Native:
    return 0 if q == 2 else (0,) * dim


def unit(q: int, dim: int, k: int) -> Native:
    if not 0 <= k < dim:
        raise DimensionMismatch(f"coordinate {k} outside dimension {dim}")
    if q == 2:
        return 1 << k
    v = [0] * dim
    v[k] = 1
    return tuple(v)


def from_coords(q: int, coords: Sequence[int]) -> Native:
    """Convert a coordinate sequence to the native representation."""
    if q == 2:
        out = 0
        for k, c in enumerate(coords):
            if c % 2:
                out |= 1 << k
        return out
    return tuple(c % q for c in coords)


def to_coords(q: int, dim: int, v: Native) -> list[int]:
    if q == 2:
        return [(v >> k) & 1 for k in range(dim)]
    return list(v)


def from_dict(q: int, dim: int, entries: dict[int, int]) -> Native:
    if q == 2:
        out = 0
        for k, c in entries.items():
            if c % 2:
                out ^= 1 << k
        return out
    v = [0] * dim
    for k, c in entries.items():
        v[k] = (v[k] + c) % q
    return tuple(v)


def add(q: int, a: Native, b: Native) -> Native:
    if q == 2:
        return a ^ b
    if len(a) != len(b):
        raise DimensionMismatch("vectors of different length")
    return tuple((x + y) % q for x, y in zip(a, b))


def sub(q: int, a: Native, b: Native) -> Native:
    if q == 2:
        return a ^ b
    if len(a) != len(b):
        raise DimensionMismatch("vectors of different length")
    return tuple((x - y) % q for x, y in zip(a, b))


def scale(q: int, c: int, a: Native) -> Native:
    c %= q
    if q == 2:
        return a if c else 0
    return tuple((c * x) % q for x in a)


def is_zero(v: Native) -> bool:
    return not v if isinstance(v, int) else not any(v)


def support(q: int, v: Native) -> Iterator[tuple[int, int]]:
    """Yield ``(index, coefficient)`` for the nonzero coordinates of ``v``."""
    if q == 2:
        while v:
            low = v & -v
            yield low.bit_length() - 1, 1
            v ^= low
    else:
        for k, c in enumerate(v):
            if c:
                yield k, c


def dot(q: int, a: Native, b: Native) -> int:
    if q == 2:
        return (a & b).bit_count() & 1
    return sum(x * y for x, y in zip(a, b)) % q


def concat(q: int, low: Native, high: Native, low_dim: int) -> Native:
    """Juxtapose two vectors; ``low`` occupies the first ``low_dim`` slots."""
    if q == 2:
        return low | (high << low_dim)
    return tuple(low) + tuple(high)


def split(q: int, v: Native, low_dim: int) -> tuple[Native, Native]:
    if q == 2:
        return v & ((1 << low_dim) - 1), v >> low_dim
    return tuple(v[:low_dim]), tuple(v[low_dim:])


def _native(q: int, dim: int, row) -> Native:
    if q == 2:
        if isinstance(row, int):
            if row >> dim:
                raise DimensionMismatch(f"bit vector wider than {dim}")
            return row
    elif isinstance(row, tuple) and all(0 <= c < q for c in row):
        if len(row) != dim:
            raise DimensionMismatch(f"row of length {len(row)}, expected {dim}")
        return row
    if len(row) != dim:
        raise DimensionMismatch(f"row of length {len(row)}, expected {dim}")
    return from_coords(q, row)


# ---------------------------------------------------------------------------
# incremental elimination


class Echelon:
    """Growing semi-echelon basis with leftmost pivots.

    ``add`` reduces a vector against the rows seen so far and keeps the
    remainder when it is nonzero.  Rows are only partially reduced until
    :meth:`subspace` performs the back-substitution.
    """

    def __init__(self, q: int, dim: int):
        self.q = q
        self.dim = dim
        self.rows: dict[int, Native] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Native) -> Native:
        rows = self.rows
        if self.q == 2:
            out = 0
            while v:
                low = v & -v
                row = rows.get(low.bit_length() - 1)
                if row is None:
                    out |= low
                    v ^= low
                else:
                    v ^= row
            return out
        q = self.q
        w = list(v)
        for k in range(self.dim):
            c = w[k]
            if c and k in rows:
                row = rows[k]
                for t in range(k, self.dim):
                    if row[t]:
                        w[t] = (w[t] - c * row[t]) % q
        return tuple(w)

    def add(self, v: Native) -> Native | None:
        """Insert ``v``; return the new row, or ``None`` if ``v`` was dependent."""
        r = self.reduce(v)
        if is_zero(r):
            return None
        if self.q == 2:
            self.rows[(r & -r).bit_length() - 1] = r
            return r
        p = next(k for k, c in enumerate(r) if c)
        inv = pow(r[p], self.q - 2, self.q)
        r = tuple((inv * c) % self.q for c in r)
        self.rows[p] = r
        return r

    def extend(self, vectors: Iterable[Native]) -> None:
        for v in vectors:
            self.add(v)

    def subspace(self) -> "Subspace":
        q, dim = self.q, self.dim
        done: dict[int, Native] = {}
        back = Echelon(q, dim)
        back.rows = done
        for p in sorted(self.rows, reverse=True):
            row = self.rows[p]
            lead = unit(q, dim, p)
            done[p] = add(q, back.reduce(sub(q, row, lead)), lead)
        pivots = tuple(sorted(done))
        return Subspace(q, dim, tuple(done[p] for p in pivots), pivots)


# ---------------------------------------------------------------------------
# subspaces and maps


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^dim held as its reduced row-echelon basis."""

    q: int
    ambient_dim: int
    rows: tuple
    pivots: tuple

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _echelon(self) -> Echelon:
        e = Echelon(self.q, self.ambient_dim)
        e.rows = dict(zip(self.pivots, self.rows))
        return e

    def reduce(self, v: Native) -> Native:
        """Canonical representative of ``v + self``: supported off the pivots."""
        return self._echelon().reduce(_native(self.q, self.ambient_dim, v))

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(other.contains(r) for r in self.rows)

    def complement_indices(self) -> list[int]:
        """Coordinates not used as pivots; their unit vectors span a complement."""
        pivots = set(self.pivots)
        return [k for k in range(self.ambient_dim) if k not in pivots]

    def coords(self) -> list[list[int]]:
        return [to_coords(self.q, self.ambient_dim, r) for r in self.rows]

    def __add__(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        e = self._echelon()
        e.rows = dict(e.rows)
        e.extend(other.rows)
        return e.subspace()


def _same_ambient(s1: Subspace, s2: Subspace) -> None:
    if s1.q != s2.q or s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(
            f"subspaces of GF({s1.q})^{s1.ambient_dim} and GF({s2.q})^{s2.ambient_dim}"
        )


def span(q: int, dim: int, vectors: Iterable) -> Subspace:
    """Reduced row-echelon form of the span of ``vectors``."""
    check_field(q)
    e = Echelon(q, dim)
    for v in vectors:
        e.add(_native(q, dim, v))
    return e.subspace()


def rref(rows: Sequence, q: int = 2, dim: int | None = None) -> Subspace:
    """Row-reduce ``rows`` (coordinate sequences, or native vectors)."""
    if dim is None:
        if not rows:
            raise ValueError("dimension required for an empty row list")
        first = rows[0]
        if isinstance(first, int):
            raise ValueError("dimension required for bit-packed rows")
        dim = len(first)
    for r in rows:
        if not isinstance(r, int) and len(r) != dim:
            raise DimensionMismatch("ragged rows")
    return span(q, dim, rows)


def rank(rows: Sequence, q: int = 2, dim: int | None = None) -> int:
    return rref(rows, q, dim).rank


def zero_space(q: int, dim: int) -> Subspace:
    return Subspace(q, dim, (), ())


def full_space(q: int, dim: int) -> Subspace:
    return Subspace(q, dim, tuple(unit(q, dim, k) for k in range(dim)), tuple(range(dim)))


@dataclass(frozen=True)
class LinearMap:
    """Linear map GF(q)^dim_in -> GF(q)^dim_out given by its column images."""

    q: int
    dim_in: int
    dim_out: int
    cols: tuple

    @classmethod
    def from_matrix(cls, q: int, matrix: Sequence[Sequence[int]]) -> "LinearMap":
        """Build from a row-major matrix (``dim_out`` rows of ``dim_in`` entries)."""
        dim_out = len(matrix)
        dim_in = len(matrix[0]) if dim_out else 0
        if any(len(r) != dim_in for r in matrix):
            raise DimensionMismatch("ragged matrix")
        cols = tuple(
            from_coords(q, [matrix[r][c] for r in range(dim_out)]) for c in range(dim_in)
        )
        return cls(q, dim_in, dim_out, cols)

    @classmethod
    def identity(cls, q: int, dim: int) -> "LinearMap":
        return cls(q, dim, dim, tuple(unit(q, dim, k) for k in range(dim)))

    @classmethod
    def zero(cls, q: int, dim_in: int, dim_out: int | None = None) -> "LinearMap":
        dim_out = dim_in if dim_out is None else dim_out
        return cls(q, dim_in, dim_out, (zero(q, dim_out),) * dim_in)

    def matrix(self) -> list[list[int]]:
        cols = [to_coords(self.q, self.dim_out, c) for c in self.cols]
        return [[cols[c][r] for c in range(self.dim_in)] for r in range(self.dim_out)]

    def __call__(self, v: Native) -> Native:
        v = _native(self.q, self.dim_in, v)
        q = self.q
        if q == 2:
            out = 0
            cols = self.cols
            while v:
                low = v & -v
                out ^= cols[low.bit_length() - 1]
                v ^= low
            return out
        out = zero(q, self.dim_out)
        for k, c in support(q, v):
            out = add(q, out, scale(q, c, self.cols[k]))
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self`` after ``other``."""
        if other.dim_out != self.dim_in or other.q != self.q:
            raise DimensionMismatch("maps do not compose")
        return LinearMap(self.q, other.dim_in, self.dim_out, tuple(self(c) for c in other.cols))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return self.compose(other)

    def power(self, k: int) -> "LinearMap":
        if self.dim_in != self.dim_out:
            raise DimensionMismatch("power of a non-square map")
        out = LinearMap.identity(self.q, self.dim_in)
        for _ in range(k):
            out = self.compose(out)
        return out

    def image(self) -> Subspace:
        return span(self.q, self.dim_out, self.cols)

    @property
    def rank(self) -> int:
        return self.image().rank

    def is_square(self) -> bool:
        return self.dim_in == self.dim_out


def stack(maps: Sequence[LinearMap]) -> LinearMap:
    """The map ``v -> (m_1 v, ..., m_r v)`` into the direct sum of the targets."""
    q, dim_in = maps[0].q, maps[0].dim_in
    if any(m.q != q or m.dim_in != dim_in for m in maps):
        raise DimensionMismatch("stacked maps must share their domain")
    cols = []
    for k in range(dim_in):
        acc, width = zero(q, 0), 0
        for m in maps:
            acc = concat(q, acc, m.cols[k], width)
            width += m.dim_out
        cols.append(acc)
    return LinearMap(q, dim_in, sum(m.dim_out for m in maps), tuple(cols))


def kernel(m: LinearMap) -> Subspace:
    """``{v : m v = 0}`` by eliminating the augmented rows ``[m e_k | e_k]``."""
    q, d_out = m.q, m.dim_out
    e = Echelon(q, d_out + m.dim_in)
    for k, col in enumerate(m.cols):
        e.add(concat(q, col, unit(q, m.dim_in, k), d_out))
    vectors = []
    for row in e.rows.values():
        img, pre = split(q, row, d_out)
        if is_zero(img):
            vectors.append(pre)
    return span(q, m.dim_in, vectors)


def inverse(m: LinearMap) -> LinearMap:
    """Inverse of a bijective square map; raises ``ValueError`` if singular."""
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square map")
    q, d = m.q, m.dim_in
    e = Echelon(q, 2 * d)
    for k, col in enumerate(m.cols):
        e.add(concat(q, col, unit(q, d, k), d))
    full = e.subspace()
    if full.pivots != tuple(range(d)):
        raise ValueError("map is singular")
    cols = tuple(split(q, full.rows[t], d)[1] for t in range(d))
    return LinearMap(q, d, d, cols)


def preimage(m: LinearMap, s: Subspace) -> Subspace:
    """``{v : m v in s}``."""
    if s.ambient_dim != m.dim_out or s.q != m.q:
        raise DimensionMismatch("target subspace does not match the codomain")
    mod_s = LinearMap(m.q, m.dim_in, m.dim_out, tuple(s.reduce(c) for c in m.cols))
    return kernel(mod_s)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """Zassenhaus intersection: rows ``[u|u]`` for ``s1`` and ``[w|0]`` for ``s2``."""
    _same_ambient(s1, s2)
    q, d = s1.q, s1.ambient_dim
    e = Echelon(q, 2 * d)
    for u in s1.rows:
        e.add(concat(q, u, u, d))
    for w in s2.rows:
        e.add(concat(q, w, zero(q, d), d))
    vectors = []
    for row in e.rows.values():
        left, right = split(q, row, d)
        if is_zero(left):
            vectors.append(right)
    return span(q, d, vectors)


def restrict_quotient(m: LinearMap, s: Subspace) -> LinearMap:
    """Induced map on ``V / s`` in the coordinates of ``s.complement_indices()``.

    Requires ``m(s) ⊆ s``; raises ``ValueError`` otherwise.
    """
    if not m.is_square() or s.ambient_dim != m.dim_in:
        raise DimensionMismatch("induced map needs a square map on the ambient space")
    for r in s.rows:
        if not s.contains(m(r)):
            raise ValueError("map does not preserve the subspace")
    comp = s.complement_indices()
    q, d = m.q, len(comp)
    cols = []
    for k in comp:
        cols.append(from_coords(q, _pick(q, s.reduce(m.cols[k]), comp)))
    return LinearMap(q, d, d, tuple(cols))


def _pick(q: int, v: Native, indices: Sequence[int]) -> list[int]:
    if q == 2:
        return [(v >> k) & 1 for k in indices]
    return [v[k] for k in indices]
