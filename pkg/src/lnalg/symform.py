"""The associative form built from the path basis, and the Nakayama automorphism.

For a path basis ``B`` that contains a basis of the socle, the functional
``psi`` is 1 on the socle paths of ``B`` and 0 on every other member of ``B``;
``<x, y> = psi(xy)`` is then a non-degenerate associative form.  The form is
evaluated in the coordinates of the explicit path basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import exactla as la
from .algebra import FiniteDimAlgebra, path_basis, path_basis_paths
from .structure import commutator_subspace, socle


class FormError(RuntimeError):
    """The constructed form is degenerate or not associative."""


class NotAnAutomorphism(RuntimeError):
    pass


@dataclass(frozen=True)
class GramForm:
    algebra: FiniteDimAlgebra
    basis: tuple  # path basis elements in engine coordinates
    psi: la.Native  # the functional, as a vector in engine coordinates
    gram: tuple  # gram[x][y] = psi(b_x b_y)

    @property
    def q(self) -> int:
        return self.algebra.q

    def pair(self, x: la.Native, y: la.Native) -> int:
        """``<x, y>`` for elements in engine coordinates."""
        return la.dot(self.q, self.psi, self.algebra.multiply(x, y))

    def is_symmetric(self) -> bool:
        d = len(self.gram)
        return all(self.gram[x][y] == self.gram[y][x] for x in range(d) for y in range(x))

    @cached_property
    def change_of_basis(self) -> la.LinearMap:
        """path-basis coordinates -> engine coordinates."""
        a = self.algebra
        return la.LinearMap(a.q, a.dim, a.dim, self.basis)

    @cached_property
    def gram_map(self) -> la.LinearMap:
        return la.LinearMap.from_matrix(self.q, [list(r) for r in self.gram])


def gram_form(a: FiniteDimAlgebra) -> GramForm:
    basis = path_basis(a)
    paths = path_basis_paths(a.n)
    soc = socle(a)
    is_soc = [len(p) == 2 * a.n - 1 for p in paths]
    if sum(is_soc) != soc.rank or not all(soc.contains(b) for b, s in zip(basis, is_soc) if s):
        raise FormError("the path basis does not contain a basis of the socle")

    # psi as a row vector w on engine coordinates: w . P = indicator, P = basis matrix
    P = la.LinearMap(a.q, a.dim, a.dim, tuple(basis))
    Pinv = la.inverse(P)
    indicator = la.from_coords(a.q, [1 if s else 0 for s in is_soc])
    # w_k = sum_t indicator_t * (P^{-1})_{t,k}
    psi = la.from_coords(a.q, [la.dot(a.q, indicator, col) for col in Pinv.cols])

    gram = tuple(
        tuple(la.dot(a.q, psi, a.multiply(x, y)) for y in basis) for x in basis
    )
    form = GramForm(a, tuple(basis), psi, gram)
    if form.gram_map.rank != a.dim:
        raise FormError("Gram matrix is singular")
    if not form_is_associative(form, exhaustive=a.dim <= 60):
        raise FormError("form is not associative")
    return form


def form_is_associative(form: GramForm, exhaustive: bool = True, sample: int = 20000, seed: int = 0) -> bool:
    """``psi((xy)z) == psi(x(yz))`` on engine basis triples."""
    import random

    a = form.algebra
    q, d, T, psi = a.q, a.dim, a.mult_table, form.psi
    # right[k][z] = psi(b_k b_z), left[x][k] = psi(b_x b_k)
    vals = [[la.dot(q, psi, T[k][z]) for z in range(d)] for k in range(d)]
    cols = [la.from_coords(q, [vals[k][z] for k in range(d)]) for z in range(d)]
    rows = [la.from_coords(q, vals[x]) for x in range(d)]
    if exhaustive:
        triples = ((x, y, z) for x in range(d) for y in range(d) for z in range(d))
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(d), rng.randrange(d), rng.randrange(d)) for _ in range(sample))
    for x, y, z in triples:
        if la.dot(q, T[x][y], cols[z]) != la.dot(q, T[y][z], rows[x]):
            return False
    return True


@dataclass(frozen=True)
class NakayamaMap:
    form: GramForm
    matrix: la.LinearMap  # in path-basis coordinates: N = G^{-1} G^T
    engine: la.LinearMap  # the same map in engine coordinates

    def __call__(self, x: la.Native) -> la.Native:
        return self.engine(x)

    def is_identity(self) -> bool:
        return self.matrix == la.LinearMap.identity(self.matrix.q, self.matrix.dim_in)


def _transpose(m: la.LinearMap) -> la.LinearMap:
    mat = m.matrix()
    return la.LinearMap.from_matrix(m.q, [list(r) for r in zip(*mat)])


def nakayama(g: GramForm, check: bool = True) -> NakayamaMap:
    """The representative ``G^{-1} G^T`` of the Nakayama automorphism."""
    G = g.gram_map
    N = la.inverse(G) @ _transpose(G)
    P = g.change_of_basis
    nu = NakayamaMap(g, N, P @ N @ la.inverse(P))
    if check:
        if not is_automorphism(g.algebra, nu.engine):
            raise NotAnAutomorphism("G^{-1} G^T is not an algebra automorphism")
        if not satisfies_nakayama_identity(g, nu):
            raise NotAnAutomorphism("<a,b> = <b, nu(a)> fails")
    return nu


def is_automorphism(a: FiniteDimAlgebra, m: la.LinearMap) -> bool:
    if m.rank != a.dim or m(a.one()) != a.one():
        return False
    T = a.mult_table
    images = m.cols
    return all(
        m(T[u][v]) == a.multiply(images[u], images[v])
        for u in range(a.dim)
        for v in range(a.dim)
    )


def satisfies_nakayama_identity(g: GramForm, nu: NakayamaMap) -> bool:
    """``<a, b> = <b, nu(a)>`` for all pairs of path-basis elements."""
    d = len(g.gram)
    G = g.gram
    N = nu.matrix.cols
    q = g.q
    # <b_y, nu(b_x)> = sum_k N[x]_k * G[y][k]
    for x in range(d):
        for y in range(d):
            if G[x][y] != la.dot(q, la.from_coords(q, G[y]), N[x]):
                return False
    return True


def twisted_centre(a: FiniteDimAlgebra, nu) -> la.Subspace:
    """``{x : b x = x nu(b)}`` for ``b`` running over trivial paths and arrows."""
    maps = []
    for g in a.generators:
        cols = []
        ng = nu(g)
        for k in range(a.dim):
            b = a.basis_element(k)
            cols.append(la.sub(a.q, a.multiply(g, b), a.multiply(b, ng)))
        maps.append(la.LinearMap(a.q, a.dim, a.dim, tuple(cols)))
    return la.kernel(la.stack(maps))


def twisted_centre_dimension_ok(a: FiniteDimAlgebra, nu) -> bool:
    return twisted_centre(a, nu).rank + commutator_subspace(a).rank == a.dim


def conjugated(a: FiniteDimAlgebra, nu, u: la.Native, u_inv: la.Native) -> la.LinearMap:
    """``b -> u nu(b) u^{-1}``."""
    cols = tuple(
        a.multiply(a.multiply(u, nu(a.basis_element(k))), u_inv) for k in range(a.dim)
    )
    return la.LinearMap(a.q, a.dim, a.dim, cols)


def unit_inverse(a: FiniteDimAlgebra, u: la.Native) -> la.Native:
    """Inverse of a unit via the left-multiplication map."""
    m = la.inverse(a.left_mult(u))
    return m(a.one())
