"""Deformed preprojective algebras of type L_n over prime fields, and their Külshammer spaces."""

from __future__ import annotations

from .algebra import FiniteDimAlgebra, build_algebra, build_monomial
from .kulshammer import closed_form, kulshammer_space, reduced_model_dim
from .quiver import Path, Quiver, build_quiver

__all__ = [
    "clear_caches",
    "FiniteDimAlgebra",
    "Path",
    "Quiver",
    "build_algebra",
    "build_monomial",
    "build_quiver",
    "closed_form",
    "kulshammer_space",
    "reduced_model_dim",
]
__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoized algebras and subspaces, e.g. before timing a computation."""
    from . import algebra, kulshammer, structure

    algebra._build_cached.cache_clear()
    kulshammer._power_map_for.cache_clear()
    for fn in (structure.commutator_subspace, structure.center, structure.socle):
        fn.cache_clear()
