"""The eight acceptance criteria, each reported as one PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time

import lnalg
from lnalg import exactla as la
from lnalg.algebra import (
    build_monomial,
    cartan_closed_form,
    expected_dim,
    path_basis,
    path_basis_paths,
)
from lnalg.kulshammer import closed_form, kulshammer_result, kulshammer_space
from lnalg.report import distinguish, exceptional_pairs, integer_det, invariant_table
from lnalg.structure import (
    center,
    commutator_dim_formula,
    commutator_subspace,
    coset_basis_check,
    epsilon_power_basis_check,
    explicit_comm_basis_check,
    long_path_identity,
    reversal_check,
    projection,
    projection_check,
    socle,
)
from lnalg.symform import gram_form, nakayama, twisted_centre

RESULTS: dict[int, str] = {}


class Criterion:
    """Collects failures for one criterion and records a single summary line."""

    def __init__(self, number: int, title: str, budget: float | None = None):
        self.number, self.title, self.budget = number, title, budget
        self.failures: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def __enter__(self):
        lnalg.clear_caches()
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        secs = time.perf_counter() - self.t0
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if self.budget is not None and secs > self.budget:
            self.failures.append(f"took {secs:.1f}s, budget {self.budget:.0f}s")
        status = "PASS" if not self.failures else "FAIL"
        detail = "" if not self.failures else "  <- " + "; ".join(self.failures[:3])
        line = f"criterion {self.number} {status} ({secs:.1f}s) {self.title}{detail}"
        RESULTS[self.number] = line
        print(line)
        assert not self.failures, line
        return False


def test_criterion_1_dimension_formulas():
    with Criterion(1, "dimension formulas for dim A, [A,A], Z, soc", budget=300) as c:
        t0 = time.perf_counter()
        for n in range(1, 7):
            for j in range(n):
                a = build_monomial(n, j)
                where = f"n={n} j={j}"
                c.check(a.dim == n * (n + 1) * (2 * n + 1) // 3, f"dim A {where}")
                c.check(commutator_subspace(a).rank == n * (n - 1) * (2 * n + 5) // 3, f"[A,A] {where}")
                c.check(center(a).rank == 2 * n, f"Z {where}")
                c.check(socle(a).rank == n, f"soc {where}")
            if n == 4:
                c.check(time.perf_counter() - t0 < 10, "n<=4 over 10s")


def test_criterion_2_cartan():
    with Criterion(2, "Cartan matrix 2*min(n-i,n-j), det 2^n") as c:
        for n in range(1, 7):
            cm = build_monomial(n, 0).cartan_matrix()
            c.check(cm == [[2 * min(n - i, n - j) for j in range(n)] for i in range(n)], f"C n={n}")
            c.check(cm == cartan_closed_form(n), f"closed form n={n}")
            c.check(integer_det(cm) == 2 ** n, f"det n={n}")


def test_criterion_3_path_basis():
    with Criterion(3, "explicit path family is a basis, independent of p") as c:
        for n in range(1, 7):
            paths = path_basis_paths(n)
            c.check(len(paths) == expected_dim(n) == len(set(paths)), f"count n={n}")
            for j in sorted({0, 1, n - 1}):
                a = build_monomial(n, j)
                elems = [a.path_nf(p) for p in paths]
                c.check(la.span(2, a.dim, elems).rank == a.dim, f"rank n={n} j={j}")
                c.check(len(path_basis(a)) == a.dim, f"path_basis n={n} j={j}")


def test_criterion_4_symmetry():
    with Criterion(4, "symmetric non-degenerate form, nu = id, dim Z_nu = dim A - dim [A,A]") as c:
        cases = [(n, j, 2) for n in range(1, 7) for j in range(n)]
        cases += [(n, j, 3) for n in range(1, 4) for j in range(n)]
        for n, j, q in cases:
            a = build_monomial(n, j, q)
            g = gram_form(a)  # raises if degenerate or not associative
            nu = nakayama(g)  # raises unless an automorphism satisfying <a,b> = <b,nu(a)>
            where = f"n={n} j={j} q={q}"
            c.check(g.gram_map.rank == a.dim, f"rank {where}")
            c.check(g.is_symmetric(), f"symmetric {where}")
            c.check(nu.is_identity(), f"nu {where}")
            c.check(twisted_centre(a, nu).rank == a.dim - commutator_subspace(a).rank, f"Z_nu {where}")


def test_criterion_5_worked_examples():
    with Criterion(5, "worked examples for n=2, 3, 5") as c:
        c.check(kulshammer_space(build_monomial(2, 0), 1).rank == 7, "T1(A_2^0)")
        c.check(kulshammer_space(build_monomial(2, 1), 1).rank == 8, "T1(A_2^1)")
        c.check([kulshammer_space(build_monomial(3, j), 1).rank for j in range(3)] == [24, 24, 25], "T1(A_3)")
        c.check([kulshammer_space(build_monomial(3, j), 2).rank for j in range(3)] == [25, 25, 25], "T2(A_3)")
        rows = invariant_table(5, 5).rows()
        c.check(rows[0] == [3, 3, 4, 4, 5], "n=5 i=1")
        c.check(rows[1] == [4, 5, 5, 5, 5], "n=5 i=2")
        c.check(all(r == [5] * 5 for r in rows[2:]), "n=5 i>=3")
        comm = commutator_dim_formula(5)
        for j in range(5):
            full = kulshammer_space(build_monomial(5, j), 1).rank - comm
            c.check(full == rows[0][j], f"n=5 j={j} full algebra")


def test_criterion_6_triple_agreement():
    with Criterion(6, "full algebra = reduced model = closed form, n<=6, i<=5", budget=300) as c:
        for n in range(2, 7):
            for j in range(n):
                for i in range(1, 6):
                    r = kulshammer_result(n, j, i, strict=False)
                    c.check(r.consistent(), f"(n={n}, j={j}, i={i}) {r.to_dict()}")
                    c.check(r.closed_form - r.dim_commutator == closed_form(n, j, i)[0], "formula")


def test_criterion_7_structural_identities():
    with Criterion(7, "path identities, eps-power basis, coset and commutator bases, pi_n kernel") as c:
        for n in range(1, 6):
            for j in range(n):
                a = build_monomial(n, j)
                where = f"n={n} j={j}"
                c.check(reversal_check(a), f"reversal identities {where}")
                c.check(long_path_identity(a, signed=False), f"long path {where}")
                c.check(epsilon_power_basis_check(a), f"eps powers {where}")
                c.check(coset_basis_check(a), f"coset basis {where}")
                c.check(explicit_comm_basis_check(a), f"commutator basis {where}")
            c.check(projection_check(n), f"pi_n n={n}")
            c.check(la.kernel(projection(n).as_map()).rank == 2 * (n + 1) ** 2, f"ker pi_n n={n}")


def test_criterion_8_distinguishability():
    with Criterion(8, "distinguishability for n=2, 3, 5") as c:
        r2, r3, r5 = distinguish(2), distinguish(3), distinguish(5)
        c.check(r2.open_pairs() == set(), "n=2 complete")
        c.check(r3.open_pairs() == {frozenset({0, 1})}, "n=3 open {0,1}")
        c.check(r3.status(0, 2).distinguished_at == 1 and r3.status(1, 2).distinguished_at == 1, "n=3 others")
        c.check(r5.open_pairs() == {frozenset({2, 3})}, "n=5 open {2,3}")
        c.check(r5.status(0, 1).distinguished_at == 2, "n=5 {0,1} at i=2")
        for r in (r2, r3, r5):
            c.check(r.open_pairs() <= exceptional_pairs(r.n), f"open pairs n={r.n}")


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
