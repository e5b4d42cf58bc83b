"""Successive minima of restricted lattices by complete ellipsoid enumeration.

The engine enumerates integer vectors inside a Euclidean ellipsoid that
provably contains every vector of the requested aggregated norm, then picks
witnesses greedily by nondecreasing norm with exact independence tests.

Containment used by the enumeration (Q is the Euclidean form, the sum of
the squared embedding norms over all r embeddings):

* sup norm:  sup_s |x|_s <= b  implies  Q(x) = sum_s |x|_s^2 <= r * b^2,
  so the ellipsoid {Q <= r b^2} contains the sup ball of radius b.
* sum norm:  sum_s |x|_s <= b  implies  Q(x) <= (sum_s |x|_s)^2 <= b^2,
  so the ellipsoid {Q <= b^2} contains the sum ball of radius b.

Both containments are exact inequalities between nonnegative reals, hence
an enumeration that is complete in the ellipsoid is complete in the norm
ball, which is what certification rests on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from . import exactlinalg as xl
from .bundles import BundleVector, RestrictedLattice
from .numberfield import FieldElement

TOL = 1e-9
DEFAULT_BUDGET = 10_000_000

Mode = Literal["f-rank", "q-rank"]
Norm = Literal["sup", "sum"]


class BudgetExhausted(RuntimeError):
    """Node budget ran out before the computation could be certified."""


@dataclass(frozen=True)
class MinimaProfile:
    """Certified successive minima (log scale) with witness vectors."""

    values: tuple[float, ...]
    witnesses: tuple[BundleVector, ...]
    mode: Mode
    norm: Norm
    radius_used: float
    certified: bool
    nodes: int

    def __post_init__(self):
        assert all(a <= b + TOL for a, b in zip(self.values, self.values[1:])), (
            "minima must be nondecreasing"
        )


def aggregate(norms: np.ndarray, norm: Norm) -> float:
    return float(norms.max()) if norm == "sup" else float(norms.sum())


def enumerate_ellipsoid(
    gram: np.ndarray, radius_sq: float, budget: int
) -> tuple[list[np.ndarray], int]:
    """All nonzero integer x with x^T gram x <= radius_sq, up to sign.

    Sign convention: the highest-index nonzero coordinate is positive.
    Returns (vectors, nodes).  Raises BudgetExhausted when the node count
    exceeds the budget.
    """
    n = gram.shape[0]
    l = np.linalg.cholesky(gram)
    r = l.T  # upper triangular, Q(x) = |r @ x|^2
    bound = radius_sq * (1 + 1e-12) + 1e-12

    x = np.zeros(n, dtype=np.int64)
    found: list[np.ndarray] = []
    nodes = 0

    def rec(level: int, partial: float, centers_done: np.ndarray) -> None:
        nonlocal nodes
        # centers_done[j] = sum_{k>level} r[j,k] x_k   for j <= level
        c = -centers_done[level] / r[level, level]
        room = bound - partial
        if room < 0:
            return
        half = math.sqrt(room) / r[level, level]
        lo = math.ceil(c - half - 1e-12)
        hi = math.floor(c + half + 1e-12)
        higher_all_zero = not np.any(x[level + 1 :])
        if higher_all_zero:
            lo = max(lo, 0)
        for xi in range(lo, hi + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(f"enumeration exceeded budget of {budget} nodes")
            x[level] = xi
            step = r[level, level] * (xi - c)
            new_partial = partial + step * step
            if new_partial > bound:
                continue
            if level == 0:
                if xi != 0 or not higher_all_zero:
                    found.append(x.copy())
            else:
                rec(level - 1, new_partial, centers_done + r[:, level] * xi)
        x[level] = 0

    rec(n - 1, 0.0, np.zeros(n))
    return found, nodes


def _ellipsoid_radius_sq(bound: float, norm: Norm, n_embeddings: int) -> float:
    return n_embeddings * bound * bound if norm == "sup" else bound * bound


def enumerate_below(
    lattice: RestrictedLattice,
    norm: Norm,
    bound: float,
    budget: int = DEFAULT_BUDGET,
) -> list[BundleVector]:
    """All nonzero vectors with aggregated norm <= bound*(1+tol), up to sign.

    Sorted by (aggregated norm, lexicographic z-coordinates); deterministic.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    hits = _candidates(lattice, norm, bound, budget)[0]
    return [lattice.to_vector(z) for _, z in hits]


def _candidates(
    lattice, norm: Norm, bound: float, budget: int
) -> tuple[list[tuple[float, tuple[int, ...]]], int]:
    """Enumerate and norm-filter; returns sorted (norm, z) pairs and node count."""
    radius_sq = _ellipsoid_radius_sq(bound, norm, lattice.n_embeddings)
    vectors, nodes = enumerate_ellipsoid(lattice.euclid_gram, radius_sq, budget)
    hits = []
    for z in vectors:
        value = aggregate(lattice.sigma_norms(z), norm)
        if value <= bound * (1 + TOL):
            hits.append((value, tuple(int(c) for c in z)))
    hits.sort(key=lambda t: (t[0], t[1]))
    return hits, nodes


class _QRankTracker:
    """Incremental exact rank over Q of integer vectors (row reduction)."""

    def __init__(self):
        self.rows: list[list[Fraction]] = []

    def try_extend(self, z: Sequence[int]) -> bool:
        row = [Fraction(c) for c in z]
        for basis_row in self.rows:
            pivot = next(i for i, v in enumerate(basis_row) if v != 0)
            if row[pivot]:
                factor = row[pivot] / basis_row[pivot]
                row = [a - factor * b for a, b in zip(row, basis_row)]
        if any(row):
            self.rows.append(row)
            return True
        return False


class _FRankTracker:
    """Incremental exact rank over F of module-coordinate vectors."""

    def __init__(self):
        self.rows: list[list[FieldElement]] = []

    def try_extend(self, f_coords: Sequence[FieldElement]) -> bool:
        row = list(f_coords)
        for basis_row in self.rows:
            pivot = next(i for i, v in enumerate(basis_row) if not v.is_zero())
            if not row[pivot].is_zero():
                factor = row[pivot] * basis_row[pivot].inverse()
                row = [a - factor * b for a, b in zip(row, basis_row)]
        if any(not v.is_zero() for v in row):
            self.rows.append(row)
            return True
        return False


def exact_rank(vectors: Sequence[BundleVector], mode: Mode) -> int:
    """Exact rank of a family of lattice vectors, over Q or over F."""
    if not vectors:
        return 0
    if any(v.bundle is not vectors[0].bundle for v in vectors[1:]):
        raise ValueError("vectors must come from one lattice")
    if mode == "q-rank":
        return xl.rank([list(v.z_coords) for v in vectors])
    tracker = _FRankTracker()
    count = 0
    for v in vectors:
        if tracker.try_extend(v.f_coords):
            count += 1
    return count


def _initial_bound(lattice, norm: Norm) -> float:
    n = lattice.z_rank
    best = math.inf
    for i in range(n):
        z = np.zeros(n, dtype=np.int64)
        z[i] = 1
        best = min(best, aggregate(lattice.sigma_norms(z), norm))
    return best


def successive_minima(
    lattice: RestrictedLattice,
    count: int,
    mode: Mode = "f-rank",
    norm: Norm = "sup",
    budget: int = DEFAULT_BUDGET,
) -> MinimaProfile:
    """First ``count`` successive minima of the lattice under the given norm.

    Enumeration radius doubles until the greedy scan certifies ``count``
    independent vectors inside a completely enumerated ball.  On budget
    exhaustion a partial, uncertified profile is returned.
    """
    max_k = lattice.max_f_rank if mode == "f-rank" else lattice.z_rank
    if not 1 <= count <= max_k:
        raise ValueError(f"k must be between 1 and {max_k} for mode {mode}")

    bound = _initial_bound(lattice, norm)
    total_nodes = 0
    best: list[tuple[float, tuple[int, ...]]] = []
    while True:
        try:
            hits, nodes = _candidates(lattice, norm, bound, max(budget - total_nodes, 0))
        except BudgetExhausted:
            return _partial_profile(lattice, best, mode, norm, bound, budget)
        total_nodes += nodes
        chosen = _greedy_select(lattice, hits, count, mode)
        if len(chosen) == count and chosen[-1][0] <= bound:
            return MinimaProfile(
                values=tuple(math.log(v) for v, _ in chosen),
                witnesses=tuple(lattice.to_vector(z) for _, z in chosen),
                mode=mode,
                norm=norm,
                radius_used=bound,
                certified=True,
                nodes=total_nodes,
            )
        best = chosen
        bound *= 2


def _greedy_select(lattice, hits, count: int, mode: Mode):
    tracker = _FRankTracker() if mode == "f-rank" else _QRankTracker()
    chosen = []
    for value, z in hits:
        extended = (
            tracker.try_extend(lattice.f_components(z))
            if mode == "f-rank"
            else tracker.try_extend(z)
        )
        if extended:
            chosen.append((value, z))
            if len(chosen) == count:
                break
    return chosen


def _partial_profile(lattice, chosen, mode, norm, bound, nodes) -> MinimaProfile:
    return MinimaProfile(
        values=tuple(math.log(v) for v, _ in chosen),
        witnesses=tuple(lattice.to_vector(z) for _, z in chosen),
        mode=mode,
        norm=norm,
        radius_used=bound,
        certified=False,
        nodes=nodes,
    )
