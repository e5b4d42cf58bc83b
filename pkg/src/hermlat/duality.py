"""Trace duality: the module of Z-linear functionals and its lattices.

The trace module is Hom_Z(O_F, Z).  Every functional is x -> Tr(t*x) for a
unique t in the codifferent (the trace-dual lattice of O_F), so the module
is realized inside F by the codifferent basis, the trace pairing giving
exact biorthogonality with the integral basis.  The canonical generator Tr
carries the metric weight 1 at real embeddings and 2 at complex ones: as a
real-linear functional on the completion at a complex place, Tr acts by
z -> 2*Re(z), whose operator norm is 2.

Two norm families coexist on the trace-dual lattice E^v = Hom_Z(E, Z):

* plain norms: the dual-metric norm of the sigma-component of the
  C-linear extension of a functional.  Summed over all embeddings these
  give exactly the polar norm of the sup-norm unit ball, and the induced
  Euclidean form is the inverse of the primal form (classical dual
  lattice).  These are the default and feed the polar-transference check.
* weighted norms: plain norms times the metric weight of the embedding.
  These are the norms transported through the identification
  E^v = E* (x) omega and are the ones under which the comparison
  mu_k(E*) <= mu_k(E^v) + sup log|v| holds with a transfer vector v from
  the inverse trace module.

The covolume convention is fixed so that the closed form
log|disc| - 2*r2*log(2) holds: covolumes are measured relative to the
plainly-metrized ring of integers (unit covolume), with the codifferent
carrying the weighted metric.  See the README derivation note.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exactlinalg as xl
from .bundles import HermitianBundle, PrecisionError, dual_bundle, restrict_scalars
from .minima import DEFAULT_BUDGET, _candidates, successive_minima
from .numberfield import FieldElement, NumberField


class DualityError(RuntimeError):
    """A duality-side computation failed its exactness or existence guarantee."""


@dataclass(frozen=True)
class TraceModule:
    """Hom_Z(O_F, Z) with its codifferent realization and metric weights."""

    nf: NumberField
    codifferent_basis: tuple[FieldElement, ...]
    metric_weights: tuple[float, ...]  # per embedding: 1 real, 2 complex

    def __repr__(self):
        return f"TraceModule(field={self.nf!r})"


def trace_module(nf: NumberField) -> TraceModule:
    """Codifferent basis (trace-dual of the integral basis) plus weights.

    Biorthogonality Tr(b_i * c_j) = delta_ij is verified exactly.
    """
    gram = [list(row) for row in nf.trace_gram_matrix]
    try:
        inv = xl.inverse(gram)
    except ZeroDivisionError:
        raise DualityError("singular trace Gram; field data corrupted upstream") from None
    basis = []
    for j in range(nf.degree):
        c = nf.zero()
        for i in range(nf.degree):
            if inv[i][j]:
                c = c + inv[i][j] * nf.integral_basis[i]
        basis.append(c)
    for i in range(nf.degree):
        for j in range(nf.degree):
            expect = Fraction(int(i == j))
            if (nf.integral_basis[i] * basis[j]).trace() != expect:
                raise DualityError("codifferent basis failed exact biorthogonality")
    weights = tuple(1.0 if nf.conj_index[s] == s else 2.0 for s in range(nf.degree))
    return TraceModule(nf, tuple(basis), weights)


@dataclass(frozen=True)
class IdealLattice:
    """Rank-r Z-lattice of field elements with per-embedding scaled norms.

    The norm at embedding s of an element v is scale_s * |sigma_s(v)|.
    Satisfies the lattice protocol of the minima engine.
    """

    nf: NumberField
    basis: tuple[FieldElement, ...]
    sigma_scale: tuple[float, ...]
    sigma_forms: tuple[np.ndarray, ...]
    euclid_gram: np.ndarray

    @property
    def z_rank(self) -> int:
        return self.nf.degree

    @property
    def n_embeddings(self) -> int:
        return self.nf.degree

    @property
    def max_f_rank(self) -> int:
        return 1

    def sigma_norms(self, z: np.ndarray) -> np.ndarray:
        x = np.asarray(z, dtype=float)
        vals = np.array([x @ p @ x for p in self.sigma_forms])
        return np.sqrt(np.maximum(vals, 0.0))

    def element(self, z: Sequence[int]) -> FieldElement:
        acc = self.nf.zero()
        for c, b in zip(z, self.basis):
            if c:
                acc = acc + Fraction(int(c)) * b
        return acc

    def to_vector(self, z: Sequence[int]):
        return self.element(z)

    def f_components(self, z: Sequence[int]):
        return (self.element(z),)


def ideal_lattice(
    nf: NumberField, basis: Sequence[FieldElement], sigma_scale: Sequence[float]
) -> IdealLattice:
    r = nf.degree
    rows = [np.array([b.embed(s) for b in basis], dtype=complex) for s in range(r)]
    forms = []
    for s in range(r):
        m = np.outer(rows[s].conj(), rows[s]) * (sigma_scale[s] ** 2)
        forms.append(np.real(m + m.conj().T) / 2)
    gram = sum(forms)
    gram = (gram + gram.T) / 2
    return IdealLattice(nf, tuple(basis), tuple(float(s) for s in sigma_scale), tuple(forms), gram)


def codifferent_lattice(nf: NumberField) -> IdealLattice:
    """The codifferent with the canonical embedding norms |sigma(v)|."""
    tm = trace_module(nf)
    return ideal_lattice(nf, tm.codifferent_basis, [1.0] * nf.degree)


def different_lattice(nf: NumberField) -> list[FieldElement]:
    """Z-basis of the inverse of the codifferent, {y in F : y * codiff <= O_F}.

    Solved exactly: stacking the multiplication-by-c_j matrices in integral
    coordinates gives an integer system whose solution lattice is computed
    by Z-diagonalization.
    """
    tm = trace_module(nf)
    r = nf.degree
    if r == 1:
        return [nf.one()]
    # columns of m_j: integral coords of b_i * c_j
    stacked: list[list[Fraction]] = [[Fraction(0)] * r for _ in range(r * r)]
    for j, c in enumerate(tm.codifferent_basis):
        for i, b in enumerate(nf.integral_basis):
            coords = nf.to_integral_coords(b * c)
            for row in range(r):
                stacked[j * r + row][i] = coords[row]
    denom = 1
    for row in stacked:
        for v in row:
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    int_rows = [[int(v * denom) for v in row] for row in stacked]
    basis_cols = xl.integral_solution_lattice(int_rows, denom)
    out = []
    for i in range(r):
        coords = [basis_cols[row][i] for row in range(r)]
        out.append(nf.from_integral_coords(coords))
    return out


def dual_trace_module_lattice(nf: NumberField) -> IdealLattice:
    """The inverse trace module as a normed lattice: elements y of the
    different, normed by |sigma(y)| / weight_sigma (the metric inverse to
    the trace module's)."""
    tm = trace_module(nf)
    basis = different_lattice(nf)
    scales = [1.0 / w for w in tm.metric_weights]
    return ideal_lattice(nf, tuple(basis), scales)


def unit_ball_volume(nf: NumberField) -> float:
    """Volume of the unit ball in the real completion: 2^r1 * pi^r2."""
    return (2.0 ** nf.r1) * (math.pi ** nf.r2)


def codifferent_covolume(nf: NumberField) -> float:
    """Log covolume of the inverse trace module, weighted-metric convention.

    Computed directly from Gram matrices: the covolume of the codifferent
    under the weighted hermitian pairing, measured relative to the covolume
    of the plainly-metrized integral basis (so the trivial module has
    covolume one).  Equals log|disc| - 2 r2 log 2.
    """
    tm = trace_module(nf)
    r = nf.degree
    b_rows = [np.array([b.embed(s) for b in nf.integral_basis]) for s in range(r)]
    c_rows = [np.array([c.embed(s) for c in tm.codifferent_basis]) for s in range(r)]
    g_ref = np.zeros((r, r), dtype=complex)
    g_w = np.zeros((r, r), dtype=complex)
    for s in range(r):
        g_ref += np.outer(b_rows[s].conj(), b_rows[s])
        g_w += (tm.metric_weights[s] ** 2) * np.outer(c_rows[s].conj(), c_rows[s])
    sign_ref, logdet_ref = np.linalg.slogdet(g_ref)
    sign_w, logdet_w = np.linalg.slogdet(g_w)
    if sign_ref <= 0 or sign_w <= 0:
        raise PrecisionError("covolume Gram determinant lost positivity")
    return 0.5 * (logdet_ref - logdet_w)


def minkowski_codifferent_bound(nf: NumberField) -> float:
    """Log of the guaranteed sup-norm radius: (1/r)log|disc| - (r2/r)log(pi)."""
    r = nf.degree
    return math.log(abs(nf.discriminant)) / r - nf.r2 / r * math.log(math.pi)


def minkowski_codifferent_vector(
    nf: NumberField, budget: int = DEFAULT_BUDGET
) -> tuple[FieldElement, float]:
    """Shortest sup-norm vector of the codifferent; certified under the bound.

    The covolume of the codifferent in the canonical embedding is at most
    the weighted-convention covolume above, so Minkowski's first theorem
    guarantees a nonzero vector with sup log-norm at most
    (1/r)log|disc| - (r2/r)log(pi).  Failure to find one inside that radius
    indicates an implementation bug and raises DualityError.
    """
    lat = codifferent_lattice(nf)
    bound = math.exp(minkowski_codifferent_bound(nf))
    hits, _ = _candidates(lat, "sup", bound, budget)
    if not hits:
        raise DualityError(
            "no codifferent vector inside the guaranteed radius; "
            "this contradicts Minkowski's theorem and signals a bug"
        )
    value, z = hits[0]
    return lat.element(z), math.log(value)


def transfer_vector(nf: NumberField, budget: int = DEFAULT_BUDGET) -> tuple[FieldElement, float]:
    """Shortest vector of the inverse trace module in the duality metric.

    Returns (y, sup log-norm) where y ranges over the different and the
    norm at embedding s is |sigma(y)| / weight_s.  This is the vector whose
    sup log-norm bounds mu_k(E-dual-bundle) - mu_k(E-trace-dual) from above.
    """
    lat = dual_trace_module_lattice(nf)
    bound = _min_sup_start(lat)
    while True:
        hits, _ = _candidates(lat, "sup", bound, budget)
        if hits:
            value, z = hits[0]
            return lat.element(z), math.log(value)
        bound *= 2


def _min_sup_start(lat: IdealLattice) -> float:
    r = lat.z_rank
    best = math.inf
    for i in range(r):
        z = np.zeros(r, dtype=np.int64)
        z[i] = 1
        best = min(best, float(lat.sigma_norms(z).max()))
    return best


@dataclass(frozen=True)
class DualVector:
    """Vector of the trace-dual lattice: integer dual coords + exact t-vector.

    The functional is x -> sum_j Tr(t_j * xi_j(x)) with xi_j the j-th module
    coordinate of x.
    """

    z_coords: tuple[int, ...]
    t_coords: tuple[FieldElement, ...]

    def __repr__(self):
        return f"DualVector{self.z_coords}"


@dataclass(frozen=True)
class TraceDualLattice:
    """Hom_Z(E, Z) with per-embedding norms; plain family by default."""

    source: HermitianBundle
    trace_mod: TraceModule
    dual_grams: tuple[np.ndarray, ...]  # H_sigma^{-1}
    c_blocks: tuple[np.ndarray, ...]  # sigma-blocks of the inverse embedding stack
    sigma_forms: tuple[np.ndarray, ...]  # plain real forms
    euclid_gram: np.ndarray  # plain: inverse of the primal euclidean form

    @property
    def nf(self) -> NumberField:
        return self.source.nf

    @property
    def z_rank(self) -> int:
        return self.source.rank * self.nf.degree

    @property
    def n_embeddings(self) -> int:
        return self.nf.degree

    @property
    def max_f_rank(self) -> int:
        return self.source.rank

    def sigma_norms(self, z: np.ndarray) -> np.ndarray:
        x = np.asarray(z, dtype=float)
        vals = np.array([x @ p @ x for p in self.sigma_forms])
        return np.sqrt(np.maximum(vals, 0.0))

    def z_dual_basis(self) -> tuple[DualVector, ...]:
        """The dual Z-basis: functional i evaluates to 1 on primal basis
        vector i and to 0 on the others (exact biorthogonality)."""
        zr = self.z_rank
        out = []
        for i in range(zr):
            z = [0] * zr
            z[i] = 1
            out.append(self.to_vector(z))
        return tuple(out)

    def pairing(self, u: DualVector, z: Sequence[int]) -> Fraction:
        """Exact evaluation of a dual vector on an integer primal vector."""
        nf = self.nf
        r = nf.degree
        total = Fraction(0)
        for j in range(self.source.rank):
            x = nf.zero()
            for i in range(r):
                c = int(z[j * r + i])
                if c:
                    x = x + Fraction(c) * nf.integral_basis[i]
            total += (u.t_coords[j] * x).trace()
        return total

    def t_vector(self, z: Sequence[int]) -> tuple[FieldElement, ...]:
        """Exact codifferent coordinates of the functional (per module slot)."""
        nf = self.nf
        r = nf.degree
        out = []
        for j in range(self.source.rank):
            t = nf.zero()
            for i in range(r):
                c = int(z[j * r + i])
                if c:
                    t = t + Fraction(c) * self.trace_mod.codifferent_basis[i]
            out.append(t)
        return tuple(out)

    def f_components(self, z: Sequence[int]) -> tuple[FieldElement, ...]:
        return self.t_vector(z)

    def to_vector(self, z: Sequence[int]) -> DualVector:
        zz = tuple(int(c) for c in z)
        return DualVector(zz, self.t_vector(zz))

    def weighted(self) -> "WeightedDualView":
        return WeightedDualView(self)

    def sigma_norm_via_alpha(self, z: Sequence[int], s: int) -> float:
        """Norm of the sigma-component computed through the exact trace
        decomposition: embed the t-vector at sigma and take the dual-metric
        norm of the resulting functional row (bra form: row Hinv row^H).
        Independent of the numeric inversion route in sigma_norms."""
        row = np.array([t.embed(s) for t in self.t_vector(z)])
        return float(np.sqrt(max(np.real(row @ self.dual_grams[s] @ row.conj()), 0.0)))


@dataclass(frozen=True)
class WeightedDualView:
    """The trace-dual lattice normed through the alpha identification:
    plain sigma-norms times the trace-module metric weights."""

    base: TraceDualLattice

    @property
    def nf(self):
        return self.base.nf

    @property
    def z_rank(self):
        return self.base.z_rank

    @property
    def n_embeddings(self):
        return self.base.n_embeddings

    @property
    def max_f_rank(self):
        return self.base.max_f_rank

    @property
    def euclid_gram(self):
        w = self.base.trace_mod.metric_weights
        g = np.zeros_like(self.base.euclid_gram)
        for s, p in enumerate(self.base.sigma_forms):
            g += (w[s] ** 2) * p
        return (g + g.T) / 2

    def sigma_norms(self, z):
        w = np.array(self.base.trace_mod.metric_weights)
        return w * self.base.sigma_norms(z)

    def f_components(self, z):
        return self.base.f_components(z)

    def to_vector(self, z):
        return self.base.to_vector(z)


def trace_dual(bundle: HermitianBundle) -> TraceDualLattice:
    """The lattice Hom_Z(E, Z) with its per-embedding norm evaluators."""
    nf = bundle.nf
    n, r = bundle.rank, nf.degree
    zr = n * r
    primal = restrict_scalars(bundle)
    # stack the embedding maps into the square change of coordinates
    a = np.zeros((zr, zr), dtype=complex)
    for s in range(r):
        a[s * n : (s + 1) * n, :] = primal.embedding_maps[s]
    try:
        a_inv = np.linalg.inv(a)
    except np.linalg.LinAlgError:
        raise PrecisionError("embedding stack is numerically singular") from None
    blocks = []
    forms = []
    dual_grams = []
    for s in range(r):
        c = a_inv[:, s * n : (s + 1) * n]  # zr x n
        hinv = np.linalg.inv(bundle.grams[s])
        hinv = (hinv + hinv.conj().T) / 2
        m = c @ hinv @ c.conj().T
        blocks.append(c)
        dual_grams.append(hinv)
        forms.append(np.real(m + m.conj().T) / 2)
    gram = sum(forms)
    gram = (gram + gram.T) / 2
    try:
        np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise PrecisionError("dual euclidean Gram lost positive definiteness") from None
    return TraceDualLattice(
        source=bundle,
        trace_mod=trace_module(nf),
        dual_grams=tuple(dual_grams),
        c_blocks=tuple(blocks),
        sigma_forms=tuple(forms),
        euclid_gram=gram,
    )


@dataclass(frozen=True)
class DualMinimaReport:
    """The two dual minima and the transfer vector bound, with the verdict."""

    k: int
    mu_dual_bundle: float  # mu_k of E* via the inverse metric
    mu_trace_dual: float  # mu_k of E^v through the alpha identification
    transfer_log_norm: float  # sup log-norm of the transfer vector
    minkowski_log_norm: float  # sup log-norm of the codifferent Minkowski vector
    minkowski_bound: float  # (1/r)log|disc| - (r2/r)log(pi)
    certified: bool
    holds: bool


def dual_minima_comparison(
    bundle: HermitianBundle, k: int, budget: int = DEFAULT_BUDGET, slack: float = 1e-6
) -> DualMinimaReport:
    """Check mu_k(E*) <= mu_k(E^v) + sup log|v| with the transfer vector.

    The left side uses the dual bundle (inverse metrics), the middle the
    trace-dual lattice with the weighted (alpha) norms and F-independence,
    and v is the shortest vector of the inverse trace module in the duality
    metric.  The codifferent Minkowski vector and its guaranteed bound are
    reported alongside.
    """
    if not 1 <= k <= bundle.rank:
        raise ValueError("k out of range")
    nf = bundle.nf
    star = successive_minima(restrict_scalars(dual_bundle(bundle)), k, "f-rank", "sup", budget)
    dual = successive_minima(trace_dual(bundle).weighted(), k, "f-rank", "sup", budget)
    _, v_log = transfer_vector(nf, budget)
    mink_v, mink_log = minkowski_codifferent_vector(nf, budget)
    certified = star.certified and dual.certified
    lhs = star.values[k - 1]
    rhs = dual.values[k - 1] + v_log
    return DualMinimaReport(
        k=k,
        mu_dual_bundle=lhs,
        mu_trace_dual=dual.values[k - 1],
        transfer_log_norm=v_log,
        minkowski_log_norm=mink_log,
        minkowski_bound=minkowski_codifferent_bound(nf),
        certified=certified,
        holds=bool(certified and lhs <= rhs + slack),
    )
