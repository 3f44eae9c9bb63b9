"""Commutator subspace, centre, socle and the explicit structure of L_n^p."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from functools import lru_cache

from . import exactla as la
from .algebra import (
    DeformationPoly,
    FiniteDimAlgebra,
    build_algebra,
    path_basis_paths,
    path_basis_words,
)


class NotCentral(RuntimeError):
    pass


def commutator_dim_formula(n: int) -> int:
    return n * (n - 1) * (2 * n + 5) // 3


@lru_cache(maxsize=64)
def commutator_subspace(a: FiniteDimAlgebra) -> la.Subspace:
    """Span of ``uv - vu`` over pairs of basis elements."""
    q, T, d = a.q, a.mult_table, a.dim
    e = la.Echelon(q, d)
    for u in range(d):
        for v in range(u + 1, d):
            e.add(la.sub(q, T[u][v], T[v][u]))
    return e.subspace()


def _commutation_map(a: FiniteDimAlgebra, g: la.Native, twist: la.Native | None = None) -> la.LinearMap:
    """``x -> g x - x h`` with ``h = twist`` (defaults to ``g``)."""
    h = g if twist is None else twist
    cols = []
    for k in range(a.dim):
        b = a.basis_element(k)
        cols.append(la.sub(a.q, a.multiply(g, b), a.multiply(b, h)))
    return la.LinearMap(a.q, a.dim, a.dim, tuple(cols))


@lru_cache(maxsize=64)
def center(a: FiniteDimAlgebra) -> la.Subspace:
    """Elements commuting with every trivial path and arrow."""
    return la.kernel(la.stack([_commutation_map(a, g) for g in a.generators]))


def left_socle(a: FiniteDimAlgebra) -> la.Subspace:
    """``{x : g x = 0 for every arrow g}``."""
    return la.kernel(la.stack([a.left_mult(g) for g in a.arrow_elements]))


def right_socle(a: FiniteDimAlgebra) -> la.Subspace:
    """``{x : x g = 0 for every arrow g}``."""
    return la.kernel(la.stack([a.right_mult(g) for g in a.arrow_elements]))


@lru_cache(maxsize=64)
def socle(a: FiniteDimAlgebra) -> la.Subspace:
    """Two-sided annihilator of the radical."""
    return la.intersect(left_socle(a), right_socle(a))


def lambda_element(a: FiniteDimAlgebra) -> la.Native:
    n, q = a.n, a.q
    Q = a.quiver
    w = {Q.word("eps^2"): 1}
    for k, c in enumerate(a.deformation.coeffs):
        if c:
            path = Q.word(f"eps^{3 + k}")
            w[path] = (w.get(path, 0) + c) % q
    for l in range(n - 2):
        path = Q.word(f"abar{l} a{l}")
        w[path] = (-1) ** (l + 1) % q
    return a.nf(w)


def is_central(a: FiniteDimAlgebra, x: la.Native) -> bool:
    return all(la.is_zero(a.commutator(g, x)) for g in a.generators)


def central_lambda(a: FiniteDimAlgebra) -> la.Native:
    """``eps^2 + eps^3 p(eps) + sum_{l<=n-3} (-1)^{l+1} abar_l a_l``, verified central."""
    lam = lambda_element(a)
    if not is_central(a, lam):
        raise NotCentral(f"lambda is not central in {a!r}")
    return lam


def lambda_powers(a: FiniteDimAlgebra) -> list[la.Native]:
    lam = central_lambda(a)
    out = [a.one()]
    for _ in range(1, a.n):
        out.append(a.multiply(out[-1], lam))
    return out


def lambda_powers_independent(a: FiniteDimAlgebra) -> bool:
    powers = lambda_powers(a)
    return la.span(a.q, a.dim, powers).rank == len(powers)


def odd_epsilon_powers(a: FiniteDimAlgebra) -> list[la.Native]:
    return [a.nf(f"eps^{2 * l + 1}") for l in range(a.n)]


def coset_representatives(a: FiniteDimAlgebra) -> list[la.Native]:
    """``e_0..e_{n-1}`` followed by ``eps^{2l+1}`` for ``0 <= l <= n-1``."""
    return [a.basis_element(k) for k in a.idempotent_indices] + odd_epsilon_powers(a)


def coset_basis_check(a: FiniteDimAlgebra) -> bool:
    comm = commutator_subspace(a)
    reps = coset_representatives(a)
    modded = la.span(a.q, a.dim, [comm.reduce(r) for r in reps])
    return modded.rank == len(reps) and comm.rank + len(reps) == a.dim


def explicit_commutator_families(a: FiniteDimAlgebra) -> dict[str, list[la.Native]]:
    """The four families of the explicit commutator basis, in engine coordinates.

    Non-closed paths, even-length closed paths away from vertex 0, differences
    of odd-length closed paths at neighbouring vertices, and the loops
    ``a_0 ... a_l abar_l ... abar_0``.
    """
    n, q = a.n, a.q
    paths = path_basis_paths(n)
    fam: dict[str, list[la.Native]] = {"non_closed": [], "even_closed": [], "odd_differences": [], "loops_at_0": []}
    odd: dict[tuple[int, int], la.Native] = {}
    for p in paths:
        if not p.is_closed:
            fam["non_closed"].append(a.path_nf(p))
        elif len(p) % 2 == 0 and len(p) >= 2 and p.source != 0:
            fam["even_closed"].append(a.path_nf(p))
        elif len(p) % 2 == 1:
            odd[(p.source, len(p))] = a.path_nf(p)
    for (v, length), x in sorted(odd.items()):
        y = odd.get((v + 1, length))
        if y is not None:
            fam["odd_differences"].append(la.sub(q, x, y))
    for l in range(n - 1):
        names = [f"a{r}" for r in range(l + 1)] + [f"abar{r}" for r in range(l, -1, -1)]
        fam["loops_at_0"].append(a.nf(" ".join(names)))
    return fam


def explicit_comm_basis_check(a: FiniteDimAlgebra) -> bool:
    comm = commutator_subspace(a)
    vectors = [v for vs in explicit_commutator_families(a).values() for v in vs]
    if not all(comm.contains(v) for v in vectors):
        return False
    return len(vectors) == comm.rank == la.span(a.q, a.dim, vectors).rank


def non_closed_in_commutator(a: FiniteDimAlgebra) -> bool:
    comm = commutator_subspace(a)
    return all(
        comm.contains(a.basis_element(k))
        for k, (s, t) in enumerate(a.vertex_grading)
        if s != t
    )


# ---------------------------------------------------------------------------
# the epimorphism L_{n+1}^p -> L_n^p


@dataclass(frozen=True)
class Projection:
    big: FiniteDimAlgebra
    small: FiniteDimAlgebra
    images: tuple  # image in ``small`` of each basis element of ``big``

    def __call__(self, x: la.Native) -> la.Native:
        q = self.big.q
        out = self.small.zero()
        for k, c in la.support(q, x):
            out = la.add(q, out, la.scale(q, c, self.images[k]))
        return out

    def as_map(self) -> la.LinearMap:
        return la.LinearMap(self.big.q, self.big.dim, self.small.dim, self.images)


def projection(n: int, p=None, q: int = 2) -> Projection:
    """``pi_n``: kill ``e_n``, ``a_{n-1}``, ``abar_{n-1}``; fix everything else."""
    big = build_algebra(n + 1, p, q)
    small = build_algebra(n, p, q)
    images = []
    for path in big.basis:
        names = big.quiver.name(path)
        touches = path.source == n or path.target == n or any(
            big.quiver.arrows[k].name in (f"a{n-1}", f"abar{n-1}") for k in path.arrows
        )
        images.append(small.zero() if touches else small.nf(names))
    return Projection(big, small, tuple(images))


def vertex_ideal(a: FiniteDimAlgebra, v: int) -> la.Subspace:
    """The two-sided ideal ``A e_v A``."""
    T = a.mult_table
    into = [k for k, (_, t) in enumerate(a.vertex_grading) if t == v]
    out = [k for k, (s, _) in enumerate(a.vertex_grading) if s == v]
    return la.span(a.q, a.dim, (T[u][w] for u in into for w in out))


def projection_is_homomorphism(pi: Projection) -> bool:
    big, small = pi.big, pi.small
    if pi(big.one()) != small.one():
        return False
    T = big.mult_table
    for u in range(big.dim):
        for v in range(big.dim):
            if pi(T[u][v]) != small.multiply(pi.images[u], pi.images[v]):
                return False
    return True


def projection_check(n: int, p=None, q: int = 2) -> bool:
    """``pi_n`` is a surjective algebra map whose kernel is ``L e_n L`` of dim ``2(n+1)^2``."""
    pi = projection(n, p, q)
    m = pi.as_map()
    ker = la.kernel(m)
    ideal = vertex_ideal(pi.big, n)
    return (
        projection_is_homomorphism(pi)
        and m.rank == pi.small.dim
        and ker.rank == 2 * (n + 1) ** 2
        and ker == ideal
    )


def epsilon_power_in_vertex_ideal(n: int, p=None, q: int = 2) -> bool:
    """``eps^{2n}`` of L_{n+1}^p lies in the ideal generated by ``e_n``."""
    big = build_algebra(n + 1, p, q)
    return vertex_ideal(big, n).contains(big.nf(f"eps^{2 * n}"))


# ---------------------------------------------------------------------------
# path identities


def _word(*parts: list[str]) -> str:
    return " ".join(name for part in parts for name in part)


def reversal_identities(a: FiniteDimAlgebra) -> list[tuple[str, la.Native, la.Native]]:
    """Pairs ``(label, lhs, rhs)``: moving ``eps`` around a long loop, and vanishing turn-backs.

    ``swap(r)``: abar_{r-1}..abar_0 eps a_0..a_{n-2} abar_{n-2}..abar_r equals
    a_r..a_{n-2} abar_{n-2}..abar_0 eps a_0..a_{r-1}.
    ``vanish(l)``: abar_{n-2}..abar_l a_l = 0.
    """
    n = a.n
    ups = lambda i, j: [f"a{r}" for r in range(i, j)]  # a_i ... a_{j-1}
    downs = lambda i, j: [f"abar{r}" for r in range(i - 1, j - 1, -1)]  # abar_{i-1} ... abar_j
    out = []
    for r in range(n - 1):
        lhs = _word(downs(r, 0), ["eps"], ups(0, n - 1), downs(n - 1, r))
        rhs = _word(ups(r, n - 1), downs(n - 1, 0), ["eps"], ups(0, r))
        out.append((f"swap(r={r})", a.nf(lhs), a.nf(rhs)))
    for l in range(n - 1):
        lhs = _word(downs(n - 1, l), [f"a{l}"])
        out.append((f"vanish(l={l})", a.nf(lhs), a.zero()))
    return out


def reversal_check(a: FiniteDimAlgebra) -> bool:
    return all(lhs == rhs for _, lhs, rhs in reversal_identities(a))


def long_path_sign(n: int) -> int:
    """Sign ``s`` with ``eps^{2n-1} = s * a_0 ... a_{n-2} abar_{n-2} ... abar_0 eps``.

    Expanding ``eps * (eps^2)^{n-1}`` with the relations gives
    ``(-1)^{n-1} (a_0 abar_0)^{n-1} eps`` and straightening ``(a_0 abar_0)^m``
    into a long path costs ``(-1)^{m(m-1)/2}``; in char 2 the sign is invisible.
    """
    return -1 if (n * (n - 1) // 2) % 2 else 1


def long_path_identity(a: FiniteDimAlgebra, signed: bool = True) -> bool:
    """``eps^{2n-1} = ± a_0 ... a_{n-2} abar_{n-2} ... abar_0 eps``.

    With ``signed=False`` the plain identity is tested, which holds in char 2.
    """
    n = a.n
    names = [f"a{r}" for r in range(n - 1)] + [f"abar{r}" for r in range(n - 2, -1, -1)]
    rhs = a.nf(" ".join(names + ["eps"]))
    if signed:
        rhs = la.scale(a.q, long_path_sign(n) % a.q, rhs)
    return a.nf(f"eps^{2 * n - 1}") == rhs


def epsilon_power_basis_check(a: FiniteDimAlgebra) -> bool:
    """``{eps^l : 0 <= l < 2n}`` is a basis of ``e_0 A e_0``."""
    powers = [a.basis_element(a.idempotent_indices[0])]
    powers += [a.nf(f"eps^{l}") for l in range(1, 2 * a.n)]
    corner = sum(1 for s, t in a.vertex_grading if s == t == 0)
    in_corner = all(
        a.vertex_grading[k] == (0, 0) for x in powers for k, _ in la.support(a.q, x)
    )
    return in_corner and corner == len(powers) == la.span(a.q, a.dim, powers).rank


def path_basis_family_counts(n: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for t, *_ in path_basis_words(n):
        counts[t] = counts.get(t, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# report


@dataclass
class StructureReport:
    n: int
    char: int
    p_coeffs: list
    dim_algebra: int
    dim_commutator: int
    dim_center: int
    dim_socle: int
    coset_basis_ok: bool
    explicit_comm_basis_ok: bool
    lambda_central_ok: bool
    pi_kernel_ok: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def structure_report(a: FiniteDimAlgebra, with_projection: bool = True) -> StructureReport:
    try:
        central_lambda(a)
        lam_ok = lambda_powers_independent(a)
    except NotCentral:
        lam_ok = False
    pi_ok = projection_check(a.n, a.deformation, a.q) if with_projection else False
    return StructureReport(
        n=a.n,
        char=a.q,
        p_coeffs=list(a.deformation.coeffs),
        dim_algebra=a.dim,
        dim_commutator=commutator_subspace(a).rank,
        dim_center=center(a).rank,
        dim_socle=socle(a).rank,
        coset_basis_ok=coset_basis_check(a),
        explicit_comm_basis_ok=explicit_comm_basis_check(a),
        lambda_central_ok=lam_ok,
        pi_kernel_ok=pi_ok,
    )


def structure_for(n: int, j: int, q: int = 2) -> StructureReport:
    return structure_report(build_algebra(n, DeformationPoly.monomial(j), q))
