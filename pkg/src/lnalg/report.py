"""Invariant tables, the distinguishability report and the verification suite."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from .kulshammer import (
    InvariantMismatch,
    closed_form,
    full_invariant,
    reduced_model_dim,
    stabilization_index,
)

SOURCES = ("full", "reduced", "formula")
OPEN = "not distinguished by Külshammer invariants"


@dataclass(frozen=True)
class InvariantRecord:
    """``dim T_i - dim [A,A]`` for ``L_n^{X^2j}`` and the sources that produced it."""

    n: int
    j: int
    i: int
    invariant_value: int
    sources: tuple

    @property
    def source_flags(self) -> str:
        return "+".join(self.sources)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sources"] = list(self.sources)
        return d


def _cell_values(n: int, j: int, i_max: int, full: bool) -> list[dict[str, int]]:
    out = []
    for i in range(1, i_max + 1):
        vals = {"formula": closed_form(n, j, i)[0], "reduced": reduced_model_dim(n, j, i)}
        if full:
            vals["full"] = full_invariant(n, j, i)
        out.append(vals)
    return out


def _records_for(n: int, j: int, i_max: int, full: bool) -> list[InvariantRecord]:
    recs = []
    for i, vals in enumerate(_cell_values(n, j, i_max, full), start=1):
        if len(set(vals.values())) != 1:
            raise InvariantMismatch(n, j, i, vals)
        srcs = tuple(s for s in SOURCES if s in vals)
        recs.append(InvariantRecord(n, j, i, vals["formula"], srcs))
    return recs


def _records_task(args: tuple) -> list[InvariantRecord]:
    return _records_for(*args)


@dataclass(frozen=True)
class InvariantTable:
    n: int
    i_max: int
    records: tuple  # sorted by (j, i)

    def value(self, j: int, i: int) -> int:
        return self.records[j * self.i_max + i - 1].invariant_value

    def rows(self) -> list[list[int]]:
        """One row per ``i``, one column per ``j``."""
        return [[self.value(j, i) for j in range(self.n)] for i in range(1, self.i_max + 1)]

    def collapsed_rows(self) -> list[tuple[str, list[int]]]:
        """Rows up to stabilization; the last is labelled ``i>=i*``."""
        star = min(stabilization_index(self.n), self.i_max)
        out = [(f"i={i}", self.rows()[i - 1]) for i in range(1, star)]
        out.append((f"i>={star}" if star < self.i_max else f"i={star}", self.rows()[star - 1]))
        return out

    def to_csv(self) -> str:
        return records_to_csv(self.records)

    def to_dict(self) -> dict:
        return {"n": self.n, "i_max": self.i_max, "records": [r.to_dict() for r in self.records]}


def invariant_table(
    n: int, i_max: int, full_algebra_max: int = 6, workers: int | None = None
) -> InvariantTable:
    """All ``(j, i)`` invariants for ``L_n``; every cell is cross-checked.

    The full algebra joins the formula and the reduced model when
    ``n <= full_algebra_max``.  ``workers > 1`` spreads the ``j`` columns over
    processes.
    """
    if n < 1 or i_max < 1:
        raise ValueError("need n >= 1 and i_max >= 1")
    full = n <= full_algebra_max
    tasks = [(n, j, i_max, full) for j in range(n)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_records_task, tasks))
    else:
        chunks = [_records_task(t) for t in tasks]
    recs = sorted((r for c in chunks for r in c), key=lambda r: (r.n, r.j, r.i))
    return InvariantTable(n, i_max, tuple(recs))


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "j", "i", "invariant", "source_flags"])
    for r in sorted(records, key=lambda r: (r.n, r.j, r.i)):
        w.writerow([r.n, r.j, r.i, r.invariant_value, r.source_flags])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# distinguishability


class UnexpectedOpenPair(AssertionError):
    pass


def exceptional_pairs(n: int) -> set[frozenset]:
    """``{n-2r, n-2r-1}`` for ``1 <= r <= ceil((n-2)/2)``."""
    out = set()
    for r in range(1, -(-(n - 2) // 2) + 1):
        if n - 2 * r - 1 >= 0:
            out.add(frozenset((n - 2 * r, n - 2 * r - 1)))
    return out


def integer_det(mat) -> int:
    m = [[Fraction(x) for x in row] for row in mat]
    d, size = Fraction(1), len(m)
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(d)


@dataclass(frozen=True)
class PairStatus:
    j: int
    k: int
    distinguished_at: int | None  # least i separating the pair

    @property
    def status(self) -> str:
        if self.distinguished_at is None:
            return OPEN
        return f"distinguished(i={self.distinguished_at})"

    def to_dict(self) -> dict:
        return {"j": self.j, "k": self.k, "status": self.status, "i": self.distinguished_at}


@dataclass
class DistinguishReport:
    n: int
    i_max: int
    pairs: list[PairStatus]
    cartan_det: int
    simple_count: int
    cartan_note: str = ""
    table: InvariantTable | None = field(default=None, repr=False)

    def open_pairs(self) -> set[frozenset]:
        return {frozenset((p.j, p.k)) for p in self.pairs if p.distinguished_at is None}

    def status(self, j: int, k: int) -> PairStatus:
        j, k = sorted((j, k))
        return next(p for p in self.pairs if (p.j, p.k) == (j, k))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "i_max": self.i_max,
            "cartan_note": self.cartan_note,
            "cartan_det": self.cartan_det,
            "simple_modules": self.simple_count,
            "pairs": [p.to_dict() for p in self.pairs],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "j", "k", "status", "i"])
        for p in self.pairs:
            w.writerow([self.n, p.j, p.k, p.status, "" if p.distinguished_at is None else p.distinguished_at])
        return buf.getvalue()


def distinguish(n: int, i_max: int | None = None, full_algebra_max: int = 6) -> DistinguishReport:
    """Compare ``L_n^{X^2j}`` for all pairs ``j < k`` by their Külshammer codimensions.

    A pair that no ``i`` separates is reported as not distinguished by these
    invariants; that says nothing about whether the algebras are equivalent.
    """
    from .algebra import build_monomial, cartan_closed_form

    if n < 2:
        raise ValueError("need n >= 2 to compare deformations")
    i_max = i_max or stabilization_index(n)
    table = invariant_table(n, i_max, full_algebra_max)
    pairs = []
    for j, k in combinations(range(n), 2):
        sep = next((i for i in range(1, i_max + 1) if table.value(j, i) != table.value(k, i)), None)
        pairs.append(PairStatus(j, k, sep))

    expected = exceptional_pairs(n)
    equal_at_1 = {frozenset((p.j, p.k)) for p in pairs if table.value(p.j, 1) == table.value(p.k, 1)}
    if equal_at_1 != expected:
        raise UnexpectedOpenPair(f"n={n}: pairs equal at i=1 are {sorted(map(sorted, equal_at_1))}")
    rep = DistinguishReport(n, i_max, pairs, 0, n, table=table)
    if not rep.open_pairs() <= expected:
        raise UnexpectedOpenPair(f"n={n}: open pairs {sorted(map(sorted, rep.open_pairs()))}")

    if n <= full_algebra_max:
        cartan = build_monomial(n, 0, 2).cartan_matrix()
    else:
        cartan = cartan_closed_form(n)
    rep.cartan_det = integer_det(cartan)
    rep.cartan_note = (
        f"all L_{n}^{{X^2j}} share {n} simple modules and Cartan determinant {rep.cartan_det}"
    )
    return rep


# ---------------------------------------------------------------------------
# verification suite


@dataclass(frozen=True)
class CheckResult:
    name: str
    n: int
    j: int | None
    passed: bool
    seconds: float
    detail: str = ""


@dataclass
class VerifySummary:
    n_max: int
    results: list[CheckResult]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "results": [asdict(r) | {"seconds": round(r.seconds, 4)} for r in self.results],
        }


def _run(results: list, name: str, n: int, j, fn) -> None:
    t = time.perf_counter()
    try:
        ok, detail = fn(), ""
        if isinstance(ok, tuple):
            ok, detail = ok
    except Exception as exc:  # a crash is a failed check, not an aborted suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    results.append(CheckResult(name, n, j, bool(ok), time.perf_counter() - t, detail))


def _checks_for(n: int, j: int, full_kulshammer: bool, char3_max: int) -> list[tuple]:
    from . import algebra as alg
    from . import structure as st
    from . import symform as sf

    a = alg.build_monomial(n, j, 2)
    checks = [
        ("dimension", lambda: a.dim == alg.expected_dim(n)),
        ("cartan", lambda: a.cartan_matrix() == alg.cartan_closed_form(n)
            and integer_det(a.cartan_matrix()) == 2 ** n),
        ("path_basis", lambda: len(alg.path_basis(a)) == a.dim),
        ("commutator", lambda: st.commutator_subspace(a).rank == st.commutator_dim_formula(n)),
        ("center", lambda: st.center(a).rank == 2 * n),
        ("socle", lambda: st.socle(a).rank == n),
        ("coset_basis", lambda: st.coset_basis_check(a)),
        ("explicit_commutator_basis", lambda: st.explicit_comm_basis_check(a)),
        ("reversal_identities", lambda: st.reversal_check(a) and st.long_path_identity(a, signed=False)),
        ("epsilon_powers", lambda: st.epsilon_power_basis_check(a)),
    ]

    def symmetric(q):
        b = alg.build_monomial(n, j, q)
        g = sf.gram_form(b)
        nu = sf.nakayama(g)
        return (
            g.is_symmetric()
            and nu.is_identity()
            and sf.twisted_centre(b, nu).rank + st.commutator_subspace(b).rank == b.dim
        )

    checks.append(("symmetry_char2", lambda: symmetric(2)))
    if n <= char3_max:
        checks.append(("symmetry_char3", lambda: symmetric(3)))

    def kulshammer():
        for i in range(1, 6):
            vals = {"formula": closed_form(n, j, i)[0], "reduced": reduced_model_dim(n, j, i)}
            if full_kulshammer:
                vals["full"] = full_invariant(n, j, i)
            if len(set(vals.values())) != 1:
                return False, f"i={i}: {vals}"
        return True

    checks.append(("kulshammer_agreement", kulshammer))
    return checks


def verify_suite(n_max: int, full_algebra_max: int = 6, char3_max: int = 3) -> VerifySummary:
    """Run every structural and Külshammer check for ``1 <= n <= n_max`` and all ``j``."""
    from . import structure as st

    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    t0 = time.perf_counter()
    results: list[CheckResult] = []
    for n in range(1, n_max + 1):
        for j in range(n):
            for name, fn in _checks_for(n, j, n <= full_algebra_max, char3_max):
                _run(results, name, n, j, fn)
        if n < n_max:
            _run(results, "projection", n, None, lambda: st.projection_check(n))
        if n >= 2:
            _run(results, "distinguish", n, None,
                 lambda: distinguish(n, full_algebra_max=full_algebra_max) is not None)
    return VerifySummary(n_max, results, time.perf_counter() - t0)


def to_json(obj, **kwargs) -> str:
    return json.dumps(obj.to_dict(), ensure_ascii=False, **kwargs)
