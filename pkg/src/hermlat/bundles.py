"""Hermitian bundles over a ring of integers and their restriction to Z-lattices.

A bundle is a free rank-N module over the ring of integers of F together
with one hermitian positive-definite Gram matrix per complex embedding,
the family being invariant under complex conjugation.  Restriction of
scalars turns it into a Z-lattice of rank N*r carrying one norm per
embedding plus the aggregated Euclidean form Q(x) = sum_sigma |x|_sigma^2
used as the enumeration ellipsoid.

Everything is immutable after construction; concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numberfield import FieldElement, NumberField

HERMITIAN_TOL = 1e-12
CONJSYM_TOL = 1e-12


class BundleError(ValueError):
    """Invalid metric data for a hermitian bundle."""


class PrecisionError(RuntimeError):
    """Assembled numerical data failed its consistency checks."""


@dataclass(frozen=True)
class HermitianBundle:
    """Free module of rank N over O_F with per-embedding hermitian metrics."""

    nf: NumberField
    rank: int
    grams: tuple[np.ndarray, ...]  # indexed by embedding, each N x N complex

    def norm_sigma(self, v: np.ndarray, sigma: int) -> float:
        """Norm of a fiber coordinate vector v in E_sigma."""
        h = self.grams[sigma]
        return float(np.sqrt(max(np.real(np.conj(v) @ h @ v), 0.0)))

    def scaled(self, factor: float) -> "HermitianBundle":
        """Bundle with every Gram multiplied by factor (norms scale by sqrt)."""
        return HermitianBundle(self.nf, self.rank, tuple(factor * h for h in self.grams))

    def __repr__(self):
        return f"HermitianBundle(rank={self.rank}, field={self.nf!r})"


def make_bundle(nf: NumberField, rank: int, grams: Sequence[np.ndarray]) -> HermitianBundle:
    """Validate and build a bundle: hermitian, positive definite, conjugation-invariant."""
    if rank < 1:
        raise BundleError("rank must be at least 1")
    if len(grams) != nf.degree:
        raise BundleError(f"need one Gram per embedding ({nf.degree}), got {len(grams)}")
    mats = []
    for s, g in enumerate(grams):
        h = np.asarray(g, dtype=complex)
        if h.shape != (rank, rank):
            raise BundleError(f"Gram {s} has shape {h.shape}, expected {(rank, rank)}")
        scale = max(1.0, float(np.abs(h).max()))
        if np.abs(h - h.conj().T).max() > HERMITIAN_TOL * scale:
            raise BundleError(f"Gram {s} is not hermitian")
        h = (h + h.conj().T) / 2
        try:
            np.linalg.cholesky(h)
        except np.linalg.LinAlgError:
            raise BundleError(f"Gram {s} is not positive definite") from None
        mats.append(h)
    for s in range(nf.degree):
        sbar = nf.conj_index[s]
        scale = max(1.0, float(np.abs(mats[s]).max()))
        if np.abs(mats[sbar] - mats[s].conj()).max() > CONJSYM_TOL * scale:
            raise BundleError(
                f"Gram family violates conjugation invariance between embeddings {s} and {sbar}"
            )
    return HermitianBundle(nf, rank, tuple(m.copy() for m in mats))


def dual_bundle(bundle: HermitianBundle) -> HermitianBundle:
    """Dual bundle: same rank, Gram matrices replaced by their inverses.

    In the dual basis of E* the metric dual to H is the conjugate-transpose
    inverse, which for hermitian H is plainly H^{-1}.
    """
    inv = []
    for h in bundle.grams:
        hi = np.linalg.inv(h)
        inv.append((hi + hi.conj().T) / 2)
    return HermitianBundle(bundle.nf, bundle.rank, tuple(inv))


@dataclass(frozen=True)
class BundleVector:
    """Lattice vector: integer coordinates plus exact module coordinates."""

    bundle: HermitianBundle
    z_coords: tuple[int, ...]

    @property
    def f_coords(self) -> tuple[FieldElement, ...]:
        nf = self.bundle.nf
        r = nf.degree
        out = []
        for j in range(self.bundle.rank):
            out.append(nf.from_integral_coords(self.z_coords[j * r : (j + 1) * r]))
        return tuple(out)

    def __repr__(self):
        return f"BundleVector{self.z_coords}"


def vector_from_f_coords(bundle: HermitianBundle, f_coords: Sequence[FieldElement]) -> BundleVector:
    """Inverse of BundleVector.f_coords; requires integral coordinates."""
    nf = bundle.nf
    z: list[int] = []
    for x in f_coords:
        for c in nf.to_integral_coords(x):
            if c.denominator != 1:
                raise BundleError("element does not lie in the module")
            z.append(int(c))
    return BundleVector(bundle, tuple(z))


@dataclass(frozen=True)
class RestrictedLattice:
    """The rank-(N*r) Z-lattice underlying a bundle, with per-embedding norms.

    z-coordinates are ordered module-coordinate major: index j*r + i holds
    the coefficient of (integral basis element i) * (module generator j).
    """

    bundle: HermitianBundle
    z_rank: int
    embedding_maps: tuple[np.ndarray, ...]  # per sigma: N x (N*r) complex
    sigma_forms: tuple[np.ndarray, ...]  # per sigma: real PSD, x^T P x = |x|_sigma^2
    euclid_gram: np.ndarray  # sum of sigma_forms, SPD

    @property
    def nf(self) -> NumberField:
        return self.bundle.nf

    @property
    def n_embeddings(self) -> int:
        return self.nf.degree

    @property
    def max_f_rank(self) -> int:
        return self.bundle.rank

    def sigma_norms(self, z: np.ndarray) -> np.ndarray:
        """All embedding norms of an integer coordinate vector."""
        x = np.asarray(z, dtype=float)
        vals = np.array([x @ p @ x for p in self.sigma_forms])
        return np.sqrt(np.maximum(vals, 0.0))

    def to_vector(self, z: Sequence[int]) -> BundleVector:
        return BundleVector(self.bundle, tuple(int(c) for c in z))

    def f_components(self, z: Sequence[int]) -> tuple[FieldElement, ...]:
        return BundleVector(self.bundle, tuple(int(c) for c in z)).f_coords


def restrict_scalars(bundle: HermitianBundle) -> RestrictedLattice:
    """Z-structure of a bundle with per-embedding norm evaluators."""
    nf = bundle.nf
    n, r = bundle.rank, nf.degree
    zr = n * r
    maps = []
    forms = []
    for s in range(r):
        a = np.zeros((n, zr), dtype=complex)
        for j in range(n):
            for i in range(r):
                a[j, j * r + i] = complex(nf.integral_basis[i].embed(s))
        maps.append(a)
        p = a.conj().T @ bundle.grams[s] @ a
        p = np.real(p + p.conj().T) / 2  # x real => x^T Re(P) x = |x|^2_sigma
        forms.append(p)
    gram = np.zeros((zr, zr))
    for p in forms:
        gram += p
    gram = (gram + gram.T) / 2
    try:
        np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        raise PrecisionError(
            "euclidean Gram of the restricted lattice is not positive definite; "
            "retry at higher embedding precision"
        ) from None
    return RestrictedLattice(
        bundle=bundle,
        z_rank=zr,
        embedding_maps=tuple(maps),
        sigma_forms=tuple(forms),
        euclid_gram=gram,
    )
