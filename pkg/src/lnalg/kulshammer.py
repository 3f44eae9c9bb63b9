"""Külshammer spaces ``T_i(A) = {x : x^(2^i) in [A,A]}`` in characteristic 2.

Three independent routes are provided:

* the full algebra, via the squaring map induced on ``A/[A,A]``;
* a reduced model inside ``F_2[eps]/(eps^2n)``, where only odd powers of
  ``eps`` and powers of ``eps^2 + eps^(2j+3)`` matter;
* the closed formula ``n - k0``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from functools import lru_cache

from . import exactla as la
from .algebra import FiniteDimAlgebra, build_monomial
from .structure import commutator_subspace


class CharacteristicError(ValueError):
    """Külshammer spaces here are only defined over GF(2)."""


def _require_char2(a: FiniteDimAlgebra) -> None:
    if a.q != 2:
        raise CharacteristicError(f"need characteristic 2, got {a.q}")


# ---------------------------------------------------------------------------
# full algebra


def squaring_map(a: FiniteDimAlgebra) -> la.LinearMap:
    """The linear map ``b_k -> b_k^2`` on the engine basis.

    Over GF(2), ``(sum c_k b_k)^2`` differs from ``sum c_k b_k^2`` by a sum of
    ``b_k b_l + b_l b_k = [b_k, b_l]``, so this agrees with ``x -> x^2``
    modulo ``[A,A]``.
    """
    _require_char2(a)
    T = a.mult_table
    return la.LinearMap(2, a.dim, a.dim, tuple(T[k][k] for k in range(a.dim)))


@dataclass(frozen=True)
class QuotientPowerMap:
    """``x + [A,A] -> x^2 + [A,A]`` in the coordinates of ``comm.complement_indices()``."""

    comm: la.Subspace
    lift: la.LinearMap  # the squaring map on A
    induced: la.LinearMap
    complement: tuple

    def representative(self, coords: la.Native) -> la.Native:
        """Lift quotient coordinates to an element of A."""
        out = 0
        for t, k in enumerate(self.complement):
            if (coords >> t) & 1:
                out |= 1 << k
        return out

    def coset(self, x: la.Native) -> la.Native:
        """Quotient coordinates of ``x + [A,A]``."""
        r = self.comm.reduce(x)
        return la.from_coords(2, la._pick(2, r, self.complement))


def power_map_mod_commutator(a: FiniteDimAlgebra) -> QuotientPowerMap:
    """The squaring map induced on ``A/[A,A]``.

    Raises ``ValueError`` if the squaring map does not send ``[A,A]`` into
    itself, which would mean it is not well defined on the quotient.
    """
    _require_char2(a)
    comm = commutator_subspace(a)
    m = squaring_map(a)
    induced = la.restrict_quotient(m, comm)
    return QuotientPowerMap(comm, m, induced, tuple(comm.complement_indices()))


def power_map_is_additive(a: FiniteDimAlgebra, pm: QuotientPowerMap | None = None) -> bool:
    """``(x+y)^2 = x^2 + y^2`` mod ``[A,A]`` on all pairs of coset representatives."""
    pm = pm or power_map_mod_commutator(a)
    reps = [a.basis_element(k) for k in pm.complement]
    sq = [a.multiply(x, x) for x in reps]
    for s in range(len(reps)):
        for t in range(s + 1, len(reps)):
            x = reps[s] ^ reps[t]
            if not pm.comm.contains(a.multiply(x, x) ^ sq[s] ^ sq[t]):
                return False
    return True


def power_map_matches_squares(a: FiniteDimAlgebra, elements, pm: QuotientPowerMap | None = None) -> bool:
    """The induced map agrees with true squaring on the given elements."""
    pm = pm or power_map_mod_commutator(a)
    return all(pm.induced(pm.coset(x)) == pm.coset(a.multiply(x, x)) for x in elements)


def kulshammer_space(a: FiniteDimAlgebra, i: int, pm: QuotientPowerMap | None = None) -> la.Subspace:
    """``T_i(A)``: the preimage in A of the kernel of the i-th iterate on ``A/[A,A]``."""
    if i < 0:
        raise ValueError("i must be non-negative")
    _require_char2(a)
    pm = pm or power_map_mod_commutator(a)
    if i == 0:
        return pm.comm
    ker = la.kernel(pm.induced.power(i))
    lifted = [pm.representative(v) for v in ker.rows]
    return la.span(2, a.dim, list(pm.comm.rows) + lifted)


def kulshammer_space_direct(a: FiniteDimAlgebra, i: int) -> la.Subspace:
    """``T_i(A)`` as ``{x : M^i x in [A,A]}`` with ``M`` the squaring map on A."""
    _require_char2(a)
    return la.preimage(squaring_map(a).power(i), commutator_subspace(a))


def kulshammer_chain(a: FiniteDimAlgebra, i_max: int) -> list[la.Subspace]:
    pm = power_map_mod_commutator(a)
    return [kulshammer_space(a, i, pm) for i in range(i_max + 1)]


# ---------------------------------------------------------------------------
# reduced model


@dataclass(frozen=True)
class EpsilonPoly:
    """An element of ``F_2[eps]/(eps^(2n))``; bit ``k`` of ``bits`` is the coefficient of ``eps^k``."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "bits", self.bits & self.mask)

    @property
    def mask(self) -> int:
        return (1 << (2 * self.n)) - 1

    @classmethod
    def monomial(cls, n: int, k: int) -> "EpsilonPoly":
        return cls(n, 1 << k if k < 2 * n else 0)

    @classmethod
    def from_coeffs(cls, coeffs) -> "EpsilonPoly":
        if len(coeffs) % 2:
            raise ValueError("coefficient list must have even length 2n")
        return cls(len(coeffs) // 2, sum((c & 1) << k for k, c in enumerate(coeffs)))

    @property
    def coeffs(self) -> list[int]:
        return [(self.bits >> k) & 1 for k in range(2 * self.n)]

    def _same(self, other: "EpsilonPoly") -> None:
        if other.n != self.n:
            raise la.DimensionMismatch("truncation orders differ")

    def __add__(self, other: "EpsilonPoly") -> "EpsilonPoly":
        self._same(other)
        return EpsilonPoly(self.n, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "EpsilonPoly") -> "EpsilonPoly":
        self._same(other)
        x, y, out = self.bits, other.bits, 0
        while y:
            if y & 1:
                out ^= x
            x = (x << 1) & self.mask
            y >>= 1
        return EpsilonPoly(self.n, out)

    def __pow__(self, k: int) -> "EpsilonPoly":
        if k < 0:
            raise ValueError("negative power")
        out, base = EpsilonPoly(self.n, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.bits == 0


def reduced_target_span(n: int, j: int) -> la.Subspace:
    """``span{(eps^2 + eps^(2j+3))^m : 1 <= m <= n-1}`` inside ``F_2[eps]/(eps^2n)``."""
    g = EpsilonPoly.monomial(n, 2) + EpsilonPoly.monomial(n, 2 * j + 3)
    if not (g ** n).is_zero():
        raise AssertionError("(eps^2 + eps^(2j+3))^n should vanish")
    return la.span(2, 2 * n, [(g ** m).bits for m in range(1, n)])


def reduced_model_space(n: int, j: int, i: int) -> la.Subspace:
    """The subspace of ``(b_0, ..., b_{n-1})`` with ``(sum b_k eps^(2k+1))^(2^i)`` in the target span.

    Coordinates are the coefficients ``b_k``.  Frobenius is additive, so the
    condition is linear in ``b``.
    """
    if i < 0 or j < 0:
        raise ValueError("need i >= 0 and j >= 0")
    target = reduced_target_span(n, j)
    cols = tuple((EpsilonPoly.monomial(n, 2 * k + 1) ** (2 ** i)).bits for k in range(n))
    return la.preimage(la.LinearMap(2, n, 2 * n, cols), target)


def reduced_model_dim(n: int, j: int, i: int) -> int:
    return reduced_model_space(n, j, i).rank


# ---------------------------------------------------------------------------
# closed form


def k0(n: int, j: int, i: int) -> int:
    """``max(ceil((2n - (2^(i+1)-2) j - (2^(i+1)-1)) / 2^(i+1)), 0)``."""
    if i < 1:
        raise ValueError("the closed form needs i >= 1")
    den = 2 ** (i + 1)
    num = 2 * n - (den - 2) * j - (den - 1)
    return max(-(-num // den), 0)


def closed_form(n: int, j: int, i: int) -> tuple[int, int]:
    """``(n - k0, k0)`` for ``L_n`` deformed by ``X^(2j)``."""
    k = k0(n, j, i)
    return n - k, k


def stabilization_index(n: int) -> int:
    """Least ``i >= 1`` with ``2^(i+1) >= 2n+1``; from there on the formula gives ``n``."""
    i = 1
    while 2 ** (i + 1) < 2 * n + 1:
        i += 1
    return i


def odd_binomial(M: int, u: int) -> bool:
    """Whether ``C(M, u)`` is odd: every binary digit of ``u`` is at most that of ``M``."""
    if not 0 <= u <= M:
        raise ValueError(f"need 0 <= u <= M, got u={u}, M={M}")
    return u & M == u


def two_adic_valuation(M: int) -> int:
    if M <= 0:
        raise ValueError("M must be positive")
    return (M & -M).bit_length() - 1


def min_odd_binomial_index(M: int) -> int:
    """Least ``u >= 1`` with ``C(M, u)`` odd; equals ``2^a`` where ``2^a`` exactly divides ``M``."""
    if M <= 0:
        raise ValueError("M must be positive")
    return next(u for u in range(1, M + 1) if odd_binomial(M, u))


# ---------------------------------------------------------------------------
# results


class InvariantMismatch(AssertionError):
    def __init__(self, n: int, j: int, i: int, values: dict):
        self.n, self.j, self.i, self.values = n, j, i, values
        super().__init__(f"sources disagree at (n={n}, j={j}, i={i}): {values}")


@dataclass(frozen=True)
class KulshammerResult:
    n: int
    j: int
    i: int
    dim_commutator: int
    dim_T_full: int | None
    dim_T_reduced_plus_comm: int
    closed_form: int  # formula value + dim [A,A]
    k0: int

    @property
    def invariant(self) -> int:
        return self.closed_form - self.dim_commutator

    def consistent(self) -> bool:
        vals = {self.dim_T_reduced_plus_comm, self.closed_form}
        if self.dim_T_full is not None:
            vals.add(self.dim_T_full)
        return len(vals) == 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["invariant"] = self.invariant
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


@lru_cache(maxsize=None)
def _power_map_for(n: int, j: int) -> QuotientPowerMap:
    return power_map_mod_commutator(build_monomial(n, j, 2))


def full_invariant(n: int, j: int, i: int) -> int:
    """``dim T_i - dim [A,A]`` computed in the full algebra ``L_n^{X^2j}``."""
    pm = _power_map_for(n, j)
    if i == 0:
        return 0
    return la.kernel(pm.induced.power(i)).rank


def kulshammer_result(n: int, j: int, i: int, full: bool = True, strict: bool = True) -> KulshammerResult:
    from .structure import commutator_dim_formula

    comm = commutator_dim_formula(n)
    value, k = closed_form(n, j, i)
    res = KulshammerResult(
        n=n,
        j=j,
        i=i,
        dim_commutator=comm,
        dim_T_full=full_invariant(n, j, i) + comm if full else None,
        dim_T_reduced_plus_comm=reduced_model_dim(n, j, i) + comm,
        closed_form=value + comm,
        k0=k,
    )
    if strict and not res.consistent():
        raise InvariantMismatch(n, j, i, res.to_dict())
    return res
