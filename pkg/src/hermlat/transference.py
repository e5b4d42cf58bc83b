"""Executable transference statements and a seeded fuzz harness.

Each checker computes both sides of one inequality from certified minima
and returns a TheoremReport.  A report passes only when every inequality
holds within its declared slack AND every minima computation certified;
uncertified minima can never produce a pass.

Slack policy: 1e-6 for statements whose bound involves transcendental
constants, 1e-9 for purely structural comparisons.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bundles import HermitianBundle, dual_bundle, make_bundle, restrict_scalars
from .duality import trace_dual, transfer_vector, minkowski_codifferent_bound
from .minima import DEFAULT_BUDGET, MinimaProfile, successive_minima
from .numberfield import NumberField, duality_gap_constant

SLACK_ANALYTIC = 1e-6
SLACK_STRUCTURAL = 1e-9


@dataclass(frozen=True)
class TheoremReport:
    """Verdict plus the numeric sides of one checked statement."""

    statement: str
    digest: str
    quantities: tuple[tuple[str, float], ...]
    slack: float
    verdict: str  # pass | fail | uncertified
    witnesses: tuple[tuple[str, tuple[int, ...]], ...] = ()
    links: tuple["TheoremReport", ...] = ()
    context: tuple[tuple[str, str], ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def get(self, name: str) -> float:
        for key, value in self.quantities:
            if key == name:
                return value
        raise KeyError(name)


def _verdict(certified: bool, holds: bool) -> str:
    if not certified:
        return "uncertified"
    return "pass" if holds else "fail"


def _value(profile: MinimaProfile, idx: int) -> float:
    """Profile value, NaN when a partial profile is too short."""
    return profile.values[idx] if idx < len(profile.values) else math.nan


def _witness(profile: MinimaProfile, idx: int) -> tuple[int, ...]:
    return profile.witnesses[idx].z_coords if idx < len(profile.witnesses) else ()


def bundle_digest(bundle: HermitianBundle) -> str:
    h = hashlib.sha256()
    h.update(repr(bundle.nf.defining_poly).encode())
    h.update(str(bundle.rank).encode())
    for g in bundle.grams:
        h.update(np.round(np.asarray(g, dtype=complex), 12).tobytes())
    return h.hexdigest()[:16]


class BundleChecks:
    """Shared minima profiles for one bundle; lazily computed, memoized.

    The bundle and its derived lattices are immutable; the only mutation is
    the internal cache, which is only filled during single-threaded checks.
    """

    def __init__(self, bundle: HermitianBundle, budget: int = DEFAULT_BUDGET):
        self.bundle = bundle
        self.nf = bundle.nf
        self.budget = budget
        self.digest = bundle_digest(bundle)
        self._profiles: dict[str, MinimaProfile] = {}
        self._transfer: tuple | None = None

    # profile keys: primal/star/tdual-plain/tdual-weighted x mode x norm
    def profile(self, key: str) -> MinimaProfile:
        if key not in self._profiles:
            n, r = self.bundle.rank, self.nf.degree
            if key == "mu":  # sup-norm F-independent minima of the bundle
                lat, count, mode, norm = restrict_scalars(self.bundle), n, "f-rank", "sup"
            elif key == "mu_star":  # same for the dual bundle
                lat, count, mode, norm = restrict_scalars(dual_bundle(self.bundle)), n, "f-rank", "sup"
            elif key == "lambda":  # sup-norm Q-independent minima
                lat, count, mode, norm = restrict_scalars(self.bundle), n * r, "q-rank", "sup"
            elif key == "lambda_vee":  # polar (sum-norm) minima of the trace dual
                lat, count, mode, norm = trace_dual(self.bundle), n * r, "q-rank", "sum"
            elif key == "mu_vee":  # alpha-weighted sup minima of the trace dual
                lat, count, mode, norm = trace_dual(self.bundle).weighted(), n, "f-rank", "sup"
            else:
                raise KeyError(key)
            self._profiles[key] = successive_minima(lat, count, mode, norm, self.budget)
        return self._profiles[key]

    def transfer(self) -> tuple:
        if self._transfer is None:
            self._transfer = transfer_vector(self.nf, self.budget)
        return self._transfer


def _as_checks(bundle_or_checks) -> BundleChecks:
    if isinstance(bundle_or_checks, BundleChecks):
        return bundle_or_checks
    return BundleChecks(bundle_or_checks)


def check_sandwich(bundle_or_checks, k: int, slack: float = SLACK_ANALYTIC) -> TheoremReport:
    """Sandwich 0 <= mu_k(E) + mu_(N+1-k)(E*) <= C(N, F)."""
    ctx = _as_checks(bundle_or_checks)
    n = ctx.bundle.rank
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    pe = ctx.profile("mu")
    pd = ctx.profile("mu_star")
    total = _value(pe, k - 1) + _value(pd, n - k)
    c = duality_gap_constant(n, ctx.nf)
    certified = pe.certified and pd.certified
    holds = -slack <= total <= c + slack
    return TheoremReport(
        statement=f"sandwich[k={k}]",
        digest=ctx.digest,
        quantities=(
            ("mu_k", _value(pe, k - 1)),
            ("mu_dual_N+1-k", _value(pd, n - k)),
            ("sum", total),
            ("gap_constant", c),
        ),
        slack=slack,
        verdict=_verdict(certified, holds),
        witnesses=(
            ("mu_k", _witness(pe, k - 1)),
            ("mu_dual_N+1-k", _witness(pd, n - k)),
        ),
    )


def check_polar_transference(bundle_or_checks, k: int, slack: float = SLACK_ANALYTIC) -> TheoremReport:
    """Polar transference: lambda_k + lambda^v_(Nr+1-k) <= (3/2) log(Nr).

    The companion lower bound lambda_k + lambda^v_(Nr+1-k) >= 0 is recorded
    in the report but does not affect the verdict.
    """
    ctx = _as_checks(bundle_or_checks)
    nr = ctx.bundle.rank * ctx.nf.degree
    if not 1 <= k <= nr:
        raise ValueError("k out of range")
    pl = ctx.profile("lambda")
    pv = ctx.profile("lambda_vee")
    lam = _value(pl, k - 1)
    lam_vee = _value(pv, nr - k)
    total = lam + lam_vee
    bound = 1.5 * math.log(nr)
    certified = pl.certified and pv.certified
    holds = total <= bound + slack
    return TheoremReport(
        statement=f"polar[k={k}]",
        digest=ctx.digest,
        quantities=(
            ("lambda_k", lam),
            ("lambda_vee_Nr+1-k", lam_vee),
            ("sum", total),
            ("bound", bound),
            ("lower_companion", total),  # >= 0 expected, report-only
        ),
        slack=slack,
        verdict=_verdict(certified, holds),
        witnesses=(
            ("lambda_k", _witness(pl, k - 1)),
            ("lambda_vee_Nr+1-k", _witness(pv, nr - k)),
        ),
    )


def check_index_comparison(bundle_or_checks, k: int, slack: float = SLACK_STRUCTURAL) -> TheoremReport:
    """Index comparison mu_(k+1) <= lambda_(kr+1) between the two
    independence notions on the same sup-normed lattice."""
    ctx = _as_checks(bundle_or_checks)
    n, r = ctx.bundle.rank, ctx.nf.degree
    if not 0 <= k <= n - 1:
        raise ValueError("k out of range: need k*r+1 <= N*r")
    pe = ctx.profile("mu")
    pl = ctx.profile("lambda")
    lhs = _value(pe, k)
    rhs = _value(pl, k * r)
    certified = pe.certified and pl.certified
    return TheoremReport(
        statement=f"index[k={k}]",
        digest=ctx.digest,
        quantities=(("mu_k+1", lhs), ("lambda_kr+1", rhs)),
        slack=slack,
        verdict=_verdict(certified, lhs <= rhs + slack),
        witnesses=(("mu_k+1", _witness(pe, k)),),
    )


def check_proof_chain(bundle_or_checks, k: int) -> TheoremReport:
    """Every intermediate inequality of the duality-sandwich assembly.

    Links, for a rank-N bundle over a degree-r field with 1 <= k <= N:

      L1  mu_k(E) <= lambda_((k-1)r+1)                       [structural]
      L2  mu_(N+1-k)(E*) <= mu_(N+1-k)(E^v_w) + log|v|        [transfer]
      L3  log|v| <= (1/r)log|disc| - (r2/r)log(pi)            [minkowski]
      L4  mu_(N+1-k)(E^v_w) <= lambda^v_((N-k)r+1) + log(r)   [norm sandwich]
      L5  lambda_((k-1)r+1) + lambda^v_((N-k)r+1)
            <= lambda_(kr) + lambda^v_(Nr-kr+1)               [index shift]
      L6  lambda_(kr) + lambda^v_(Nr-kr+1) <= (3/2)log(Nr)    [polar transference]

    plus the assembled sandwich mu_k(E) + mu_(N+1-k)(E*) <= C(N,F).
    """
    ctx = _as_checks(bundle_or_checks)
    n, r = ctx.bundle.rank, ctx.nf.degree
    nr = n * r
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    pe = ctx.profile("mu")
    ps = ctx.profile("mu_star")
    pl = ctx.profile("lambda")
    pv = ctx.profile("lambda_vee")
    pw = ctx.profile("mu_vee")
    _, v_log = ctx.transfer()
    certified = all(p.certified for p in (pe, ps, pl, pv, pw))

    mu_k = _value(pe, k - 1)
    mu_star = _value(ps, n - k)
    mu_vee = _value(pw, n - k)
    lam_a = _value(pl, (k - 1) * r)  # lambda_((k-1)r+1)
    lam_b = _value(pl, k * r - 1)  # lambda_(kr)
    lamv_a = _value(pv, (n - k) * r)  # lambda^v_((N-k)r+1) == lambda^v_(Nr-kr+1)
    mink = minkowski_codifferent_bound(ctx.nf)
    c = duality_gap_constant(n, ctx.nf)

    def link(name, lhs, rhs, slack):
        return TheoremReport(
            statement=name,
            digest=ctx.digest,
            quantities=(("lhs", lhs), ("rhs", rhs)),
            slack=slack,
            verdict=_verdict(certified, lhs <= rhs + slack),
        )

    links = (
        link(f"chain.L1.index[k={k}]", mu_k, lam_a, SLACK_STRUCTURAL),
        link(f"chain.L2.dual_transfer[k={k}]", mu_star, mu_vee + v_log, SLACK_ANALYTIC),
        link(f"chain.L3.minkowski[k={k}]", v_log, mink, SLACK_ANALYTIC),
        link(f"chain.L4.log_r_step[k={k}]", mu_vee, lamv_a + math.log(r), SLACK_ANALYTIC),
        link(f"chain.L5.index_shift[k={k}]", lam_a + lamv_a, lam_b + lamv_a, SLACK_STRUCTURAL),
        link(f"chain.L6.polar[k={k}]", lam_b + lamv_a, 1.5 * math.log(nr), SLACK_ANALYTIC),
        link(f"chain.assembled[k={k}]", mu_k + mu_star, c, SLACK_ANALYTIC),
    )
    all_hold = all(l.verdict == "pass" for l in links)
    return TheoremReport(
        statement=f"chain[k={k}]",
        digest=ctx.digest,
        quantities=(
            ("mu_k", mu_k),
            ("mu_star_N+1-k", mu_star),
            ("mu_vee_N+1-k", mu_vee),
            ("transfer_log_norm", v_log),
            ("gap_constant", c),
        ),
        slack=SLACK_ANALYTIC,
        verdict=_verdict(certified, all_hold),
        links=links,
    )


ALL_STATEMENTS = ("sandwich", "polar", "index", "chain")


def check_all(bundle: HermitianBundle, budget: int = DEFAULT_BUDGET) -> list[TheoremReport]:
    """Run every checker at every valid index for one bundle."""
    ctx = BundleChecks(bundle, budget)
    n, r = bundle.rank, bundle.nf.degree
    reports = []
    for k in range(1, n + 1):
        reports.append(check_sandwich(ctx, k))
    for k in range(1, n * r + 1):
        reports.append(check_polar_transference(ctx, k))
    for k in range(0, n):
        reports.append(check_index_comparison(ctx, k))
    for k in range(1, n + 1):
        reports.append(check_proof_chain(ctx, k))
    return reports


def random_bundle(nf: NumberField, rank: int, rng: np.random.Generator,
                  cond_max: float = 1e3, floor: float = 1e-3) -> HermitianBundle:
    """Random conjugation-invariant bundle with condition number <= cond_max.

    Gram at a representative embedding is A*A^H-style Gaussian plus a small
    multiple of the identity; the conjugate embedding gets the entrywise
    conjugate.  Draws are repeated (deterministically) until the condition
    bound holds.
    """
    r = nf.degree
    while True:
        grams: list[np.ndarray | None] = [None] * r
        for s in range(r):
            if grams[s] is not None:
                continue
            sbar = nf.conj_index[s]
            if sbar == s:
                a = rng.standard_normal((rank, rank))
                h = a.T @ a + floor * np.eye(rank)
                grams[s] = h.astype(complex)
            else:
                a = rng.standard_normal((rank, rank)) + 1j * rng.standard_normal((rank, rank))
                h = a.conj().T @ a + floor * np.eye(rank)
                h = (h + h.conj().T) / 2
                grams[s] = h
                grams[sbar] = h.conj()
        conds = [np.linalg.cond(g) for g in grams]
        if max(conds) <= cond_max:
            return make_bundle(nf, rank, grams)


def fuzz(
    fields: Sequence[NumberField],
    rank_max: int,
    trials: int,
    seed: int,
    budget: int = DEFAULT_BUDGET,
    allow_large: bool = False,
) -> list[TheoremReport]:
    """Seeded randomized sweep of all checkers; deterministic for a fixed seed.

    Desk-scale guard: rank_max times the largest field degree must not
    exceed 8 unless allow_large is set.
    """
    max_deg = max(nf.degree for nf in fields)
    if rank_max * max_deg > 8 and not allow_large:
        raise ValueError("rank_max * max degree exceeds the desk-scale guard of 8")
    rng = np.random.default_rng(seed)
    reports: list[TheoremReport] = []
    for trial in range(trials):
        nf = fields[trial % len(fields)]
        rank = int(rng.integers(1, rank_max + 1))
        bundle = random_bundle(nf, rank, rng)
        trial_context = (
            ("trial", str(trial)),
            ("seed", str(seed)),
            ("field", _poly_str(nf)),
            ("rank", str(rank)),
            ("gram_dump", _gram_dump(bundle)),
        )
        for rep in check_all(bundle, budget):
            reports.append(
                TheoremReport(
                    statement=rep.statement,
                    digest=rep.digest,
                    quantities=rep.quantities,
                    slack=rep.slack,
                    verdict=rep.verdict,
                    witnesses=rep.witnesses,
                    links=rep.links,
                    context=trial_context,
                )
            )
    return reports


def _poly_str(nf: NumberField) -> str:
    return ",".join(str(c) for c in nf.defining_poly)


def _gram_dump(bundle: HermitianBundle) -> str:
    parts = []
    for s, g in enumerate(bundle.grams):
        flat = ";".join(
            f"{z.real:.12e},{z.imag:.12e}" for z in np.asarray(g, dtype=complex).ravel()
        )
        parts.append(f"{s}:{flat}")
    return "|".join(parts)
