"""Infimum analysis and the antilattice/factor equivalence machinery.

The decision procedure for a ∧ b works blockwise: inside a single full
matrix factor an infimum exists exactly when the two elements are
comparable (and then equals the smaller one), and a direct sum carries
the product order, so existence is decided block by block.  The
randomized suite cross-validates this on factors by searching for
incomparable pairs whose infimum the procedure would grant.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    AlgebraMismatch,
    HypothesisViolation,
    NotAWitnessPair,
    NotExchanging,
    NotFactor,
    NotOrthogonal,
    PreconditionUnmet,
    TrivialProjection,
    ZeroProjection,
)
from .linalg import DEFAULT_TOL, Tolerances, eigvals_sym, frob, max_eig, symmetrize
from .order import commutes, gen_infimum, loewner_cmp
from .projections import Projection, Symmetry, is_orthogonal, orthocomplement
from .sampling import random_projection, traceless_perturbation
from .spectral import find_subprojection
from .structure import AlgebraSpec, CornerAlgebra, Element, corner, is_factor

__all__ = [
    "InfimumStatus",
    "InfimumReason",
    "InfimumVerdict",
    "infimum_decide",
    "InfZeroReport",
    "inf_zero_implies_product_zero_check",
    "CommutingInfimumReport",
    "commuting_infimum_corollary_check",
    "WitnessResult",
    "witness_pipeline",
    "exchange_symmetry",
    "ExistskResult",
    "existsk_construct",
    "CornerDescentReport",
    "corner_descent",
    "AntilatticeReport",
    "antilattice_suite",
]


class InfimumStatus(Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    UNKNOWN = "Unknown"


class InfimumReason(Enum):
    COMPARABLE = "Comparable"
    COMMUTING_BLOCKWISE_COMPARABLE = "CommutingBlockwiseComparable"
    NONCOMMUTING_PROJECTIONS = "NoncommutingProjections"
    BLOCK_INCOMPARABLE = "BlockIncomparable"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True, eq=False)
class InfimumVerdict:
    status: InfimumStatus
    reason: InfimumReason
    value: Element | None = None
    falsifier: Element | None = None

    @property
    def exists(self) -> bool:
        return self.status is InfimumStatus.EXISTS


def _is_projection_matrix(m: np.ndarray, tol: Tolerances) -> bool:
    values = eigvals_sym(m, tol)
    snap = max(tol.eig, 1e-10)
    return all(abs(v) <= snap or abs(v - 1.0) <= snap for v in values)


def infimum_decide(c: Element, d: Element, tol: Tolerances = DEFAULT_TOL,
                   budget: int = 500) -> InfimumVerdict:
    """Decide existence of c ∧ d in a direct sum of full matrix factors.

    Exists iff in every block the two compressions are Loewner
    comparable; the value then takes the smaller compression in each
    block.  Unknown is never produced for this model class (budget is
    kept for API symmetry with the randomized suite)."""
    if c.algebra != d.algebra:
        raise AlgebraMismatch("elements belong to different algebras")
    algebra = c.algebra
    blocks = []
    all_comparable = True
    for cb, db in zip(c.blocks_iter(), d.blocks_iter()):
        verdict = loewner_cmp(cb, db, tol)
        if verdict.incomparable:
            all_comparable = False
            break
        blocks.append(cb if verdict.leq else db)
    if all_comparable:
        overall = loewner_cmp(c.matrix, d.matrix, tol)
        reason = (InfimumReason.COMPARABLE if overall.comparable
                  else InfimumReason.COMMUTING_BLOCKWISE_COMPARABLE)
        return InfimumVerdict(status=InfimumStatus.EXISTS, reason=reason,
                              value=Element.from_blocks(algebra, blocks))
    projections = (_is_projection_matrix(c.matrix, tol)
                   and _is_projection_matrix(d.matrix, tol))
    if projections and not commutes(c.matrix, d.matrix, tol):
        reason = InfimumReason.NONCOMMUTING_PROJECTIONS
    else:
        reason = InfimumReason.BLOCK_INCOMPARABLE
    return InfimumVerdict(status=InfimumStatus.NOT_EXISTS, reason=reason)


@dataclass(frozen=True, eq=False)
class InfZeroReport:
    ab_residual: float
    ba_residual: float
    gen_inf_nonpositive: bool
    gen_inf_slack: float

    @property
    def products_vanish(self) -> bool:
        return self.gen_inf_nonpositive


def inf_zero_implies_product_zero_check(a: Element, b: Element,
                                        tol: Tolerances = DEFAULT_TOL) -> InfZeroReport:
    """Replay of: a ∧ b = 0 forces ab = ba = 0, via the generalized
    infimum stepping stone a⊓b <= 0."""
    verdict = infimum_decide(a, b, tol)
    if not verdict.exists or frob(verdict.value.matrix) > tol.recon * max(
            1.0, frob(a.matrix), frob(b.matrix)):
        raise PreconditionUnmet("infimum does not exist or is nonzero")
    am, bm = a.matrix, b.matrix
    ab = frob(am @ bm)
    ba = frob(bm @ am)
    meet = gen_infimum(am, bm, tol)
    cmp_zero = loewner_cmp(meet, np.zeros_like(meet), tol)
    return InfZeroReport(ab_residual=ab, ba_residual=ba,
                         gen_inf_nonpositive=cmp_zero.leq,
                         gen_inf_slack=cmp_zero.slack)


@dataclass(frozen=True, eq=False)
class CommutingInfimumReport:
    infimum: Element
    commutes_with_a: bool
    commutes_with_b: bool
    a_commutes_b: bool


def commuting_infimum_corollary_check(a: Element, b: Element,
                                      tol: Tolerances = DEFAULT_TOL) -> CommutingInfimumReport:
    """If c = a ∧ b exists and commutes with both inputs, the inputs commute."""
    verdict = infimum_decide(a, b, tol)
    if not verdict.exists:
        raise PreconditionUnmet("infimum does not exist")
    cm = verdict.value.matrix
    c_a = commutes(cm, a.matrix, tol)
    c_b = commutes(cm, b.matrix, tol)
    if not (c_a and c_b):
        raise PreconditionUnmet("infimum does not commute with both inputs")
    return CommutingInfimumReport(infimum=verdict.value, commutes_with_a=c_a,
                                  commutes_with_b=c_b,
                                  a_commutes_b=commutes(a.matrix, b.matrix, tol))


@dataclass(frozen=True, eq=False)
class WitnessResult:
    """Orthogonal nonzero projections extracted from a non-antilattice witness."""

    residual_a: Element      # c - c∧d
    residual_b: Element      # d - c∧d
    lam: float
    mu: float
    p: Projection
    q: Projection
    pq_residual: float
    inf_pq: InfimumVerdict


def witness_pipeline(c: Element, d: Element,
                     tol: Tolerances = DEFAULT_TOL) -> WitnessResult:
    """From an incomparable pair with an existing infimum, produce
    orthogonal nonzero projections p, q with p ∧ q = pq = qp = 0."""
    verdict = infimum_decide(c, d, tol)
    overall = loewner_cmp(c.matrix, d.matrix, tol)
    if not verdict.exists or overall.comparable:
        raise NotAWitnessPair(
            "need an incomparable pair whose infimum exists")
    algebra = c.algebra
    m = verdict.value.matrix
    a = Element(algebra, c.matrix - m)
    b = Element(algebra, d.matrix - m)
    sub_a = find_subprojection(a.matrix, tol)
    sub_b = find_subprojection(b.matrix, tol)
    p, q = sub_a.projection, sub_b.projection
    if p.is_zero() or q.is_zero():
        raise NotAWitnessPair("subprojection extraction produced zero")
    inf_pq = infimum_decide(Element(algebra, p.matrix), Element(algebra, q.matrix), tol)
    return WitnessResult(residual_a=a, residual_b=b,
                         lam=sub_a.lam, mu=sub_b.lam,
                         p=p, q=q,
                         pq_residual=frob(p.matrix @ q.matrix),
                         inf_pq=inf_pq)


def exchange_symmetry(p: Projection, q: Projection, algebra: AlgebraSpec,
                      tol: Tolerances = DEFAULT_TOL) -> Symmetry:
    """In a single matrix factor, build a symmetry t with tpt <= q or
    tqt <= p for orthogonal nonzero p, q.

    t swaps an orthonormal basis of the smaller range with part of the
    larger range and fixes the complement of their joint span."""
    if algebra.num_blocks != 1:
        raise NotFactor("exchange symmetry construction requires a single factor block")
    if p.is_zero() or q.is_zero():
        raise ZeroProjection("both projections must be nonzero")
    if not is_orthogonal(p, q, tol):
        raise NotOrthogonal("projections are not orthogonal within tolerance")
    small, large = (p, q) if p.rank <= q.rank else (q, p)
    u_cols = small.range(tol).columns
    w_cols = large.range(tol).columns[:, : small.rank]
    n = p.dim
    swap = u_cols @ w_cols.T + w_cols @ u_cols.T
    fixed = np.eye(n) - u_cols @ u_cols.T - w_cols @ w_cols.T
    return Symmetry.from_matrix(swap + fixed, tol)


@dataclass(frozen=True, eq=False)
class ExistskResult:
    """The explicit element k <= p, p^⊥ with k not <= 0, plus its certificates."""

    k: np.ndarray
    alpha: float
    beta: float
    gamma: float
    k_leq_p_slack: float
    k_leq_p_perp_slack: float
    k_max_eigenvalue: float
    proof_identity_residual: float
    scalar_identities_exact: bool

    def passed(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        return (self.k_leq_p_slack >= -tol.psd
                and self.k_leq_p_perp_slack >= -tol.psd
                and self.k_max_eigenvalue > tol.psd
                and self.proof_identity_residual <= tol.recon
                and self.scalar_identities_exact)


def existsk_construct(p: Projection, s: Symmetry,
                      tol: Tolerances = DEFAULT_TOL) -> ExistskResult:
    """Given a symmetry exchanging p with p^⊥, build k = 2s - 25/16 and
    certify k <= p, k <= p^⊥, and k not <= 0."""
    if p.is_zero() or p.is_identity():
        raise TrivialProjection("need a projection different from 0 and 1")
    n = p.dim
    perp = orthocomplement(p)
    exchanged = s.matrix @ p.matrix @ s.matrix
    if frob(exchanged - perp.matrix) > tol.recon * max(1.0, float(n)):
        raise NotExchanging("symmetry does not exchange p with its orthocomplement")
    alpha, beta, gamma = -5.0 / 4.0, -3.0 / 4.0, 1.0
    k = symmetrize(2.0 * s.matrix - (alpha * alpha) * np.eye(n))
    d = alpha * p.matrix + gamma * s.matrix + beta * perp.matrix
    d_sq = symmetrize(d @ d)
    identities = (alpha * alpha - beta * beta == 1.0
                  and (alpha + beta) * gamma == -2.0
                  and beta * beta + gamma * gamma == 25.0 / 16.0)
    return ExistskResult(
        k=k,
        alpha=alpha, beta=beta, gamma=gamma,
        k_leq_p_slack=float(eigvals_sym(p.matrix - k, tol)[0]),
        k_leq_p_perp_slack=float(eigvals_sym(perp.matrix - k, tol)[0]),
        k_max_eigenvalue=max_eig(k, tol),
        proof_identity_residual=frob(d_sq - (p.matrix - k)),
        scalar_identities_exact=identities,
    )


@dataclass(frozen=True, eq=False)
class CornerDescentReport:
    """Constructive refutation of p ∧ q = 0 inside the corner uAu."""

    unit: Projection
    tpt: Projection
    partial_symmetry: np.ndarray
    s_squared_residual: float
    sps_residual: float
    corner: CornerAlgebra
    existsk: ExistskResult
    k: np.ndarray                 # lifted back into the parent algebra
    k_leq_p_slack: float
    k_leq_tpt_slack: float
    k_max_eigenvalue: float


def corner_descent(p: Projection, q: Projection, t: Symmetry,
                   tol: Tolerances = DEFAULT_TOL) -> CornerDescentReport:
    """Replay the corner argument: with tpt <= q, the corner uAu for
    u = p + tpt carries the symmetry s = tp + pt exchanging p with tpt,
    and the explicit k defeats p ∧ q = 0."""
    if p.is_zero() or q.is_zero():
        raise HypothesisViolation("projections must be nonzero")
    if not is_orthogonal(p, q, tol):
        raise HypothesisViolation("projections must be orthogonal")
    tpt_matrix = symmetrize(t.matrix @ p.matrix @ t.matrix)
    tpt = Projection.from_matrix(tpt_matrix, tol)
    if tpt.is_zero():
        raise HypothesisViolation("tpt vanishes")
    if not loewner_cmp(tpt.matrix, q.matrix, tol).leq:
        raise HypothesisViolation("tpt is not below q")
    n = p.dim
    unit = Projection.from_matrix(p.matrix + tpt.matrix, tol)
    s = symmetrize(t.matrix @ p.matrix + p.matrix @ t.matrix)
    s_sq_res = frob(s @ s - unit.matrix)
    sps_res = frob(s @ p.matrix @ s - tpt.matrix)
    ambient = AlgebraSpec((n,))
    cor = corner(ambient, unit, tol)
    p_c = Projection.from_matrix(cor.compress(p.matrix), tol)
    s_c = Symmetry.from_matrix(cor.compress(s), tol)
    existsk = existsk_construct(p_c, s_c, tol)
    k = cor.lift(existsk.k)
    return CornerDescentReport(
        unit=unit,
        tpt=tpt,
        partial_symmetry=s,
        s_squared_residual=s_sq_res,
        sps_residual=sps_res,
        corner=cor,
        existsk=existsk,
        k=k,
        k_leq_p_slack=float(eigvals_sym(
            cor.compress(p.matrix) - cor.compress(k), tol)[0]),
        k_leq_tpt_slack=float(eigvals_sym(
            cor.compress(tpt.matrix) - cor.compress(k), tol)[0]),
        k_max_eigenvalue=max_eig(k, tol),
    )


@dataclass(frozen=True, eq=False)
class AntilatticeReport:
    algebra: AlgebraSpec
    is_factor: bool
    center_dim: int
    verdict: str                     # "Antilattice" | "NotAntilattice"
    counterexample: tuple | None     # (c, d, infimum) matrices when NotAntilattice
    trials: int
    seed: int
    checks: tuple                    # (name, passed, residual) triples

    @property
    def all_checks_passed(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def to_dict(self) -> dict:
        out = {
            "blocks": list(self.algebra.blocks),
            "is_factor": self.is_factor,
            "center_dim": self.center_dim,
            "verdict": self.verdict,
            "trials": self.trials,
            "seed": self.seed,
            "checks": [
                {"name": name, "pass": passed, "residual": residual}
                for name, passed, residual in self.checks
            ],
        }
        if self.counterexample is not None:
            c, d, m = self.counterexample
            out["counterexample"] = {
                "c": c.tolist(), "d": d.tolist(), "infimum": m.tolist()}
        else:
            out["counterexample"] = None
        return out


def _incomparable_pair(algebra: AlgebraSpec, rng: np.random.Generator,
                       tol: Tolerances, attempts: int = 64):
    """c = r + δ1, d = r + δ2 with traceless block perturbations, resampled
    until incomparable; falls back to a plain random pair (total order case)."""
    n = algebra.total_dim
    for _ in range(attempts):
        r = algebra.random_element(rng)
        delta1 = _blockwise_traceless(algebra, rng)
        delta2 = _blockwise_traceless(algebra, rng)
        c = Element(algebra, r.matrix + delta1)
        d = Element(algebra, r.matrix + delta2)
        if n == 1 or loewner_cmp(c.matrix, d.matrix, tol).incomparable:
            return c, d
    return algebra.random_element(rng), algebra.random_element(rng)


def _blockwise_traceless(algebra: AlgebraSpec, rng: np.random.Generator) -> np.ndarray:
    out = np.zeros((algebra.total_dim, algebra.total_dim))
    for sl in algebra.block_slices():
        n = sl.stop - sl.start
        out[sl, sl] = traceless_perturbation(rng, n)
    return out


def _random_orthogonal_projection_pair(rng: np.random.Generator, n: int,
                                       tol: Tolerances):
    """Nonzero orthogonal pair: random p of rank 1..n-1, q below p^⊥."""
    rank_p = int(rng.integers(1, n))
    p = random_projection(rng, n, rank_p, tol)
    perp_cols = orthocomplement(p).range(tol).columns
    rank_q = int(rng.integers(1, perp_cols.shape[1] + 1))
    q_cols = perp_cols[:, :rank_q]
    q = Projection(matrix=symmetrize(q_cols @ q_cols.T), rank=rank_q)
    return p, q


def antilattice_suite(algebra: AlgebraSpec, trials: int = 500, seed: int = 0,
                      tol: Tolerances = DEFAULT_TOL) -> AntilatticeReport:
    """Decide Antilattice vs NotAntilattice and cross-validate against the
    factor test.

    Non-factors get the explicit central counterexample (h, h^⊥) with
    infimum 0; factors survive `trials` randomized falsification attempts
    plus exchange-symmetry spot checks on orthogonal projection pairs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    factor = is_factor(algebra, tol)
    checks = []

    def add(name, passed, residual):
        checks.append((name, bool(passed), float(residual)))

    if not factor.is_factor:
        h = Projection.from_matrix(factor.witness, tol)
        h_el = Element(algebra, h.matrix)
        h_perp_el = Element(algebra, orthocomplement(h).matrix)
        verdict = infimum_decide(h_el, h_perp_el, tol)
        cmp_h = loewner_cmp(h_el.matrix, h_perp_el.matrix, tol)
        inf_norm = frob(verdict.value.matrix) if verdict.exists else float("nan")
        add("central_pair_infimum_exists", verdict.exists, 0.0)
        add("central_pair_infimum_zero", verdict.exists and inf_norm <= tol.recon,
            inf_norm)
        add("central_pair_incomparable", cmp_h.incomparable, cmp_h.slack)
        counterexample = (h_el.matrix, h_perp_el.matrix,
                          verdict.value.matrix if verdict.exists else None)
        return AntilatticeReport(
            algebra=algebra, is_factor=False, center_dim=factor.center_dim,
            verdict="NotAntilattice", counterexample=counterexample,
            trials=0, seed=seed, checks=tuple(checks))

    counterexample = None
    violations = 0
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        c, d = _incomparable_pair(algebra, rng, tol)
        verdict = infimum_decide(c, d, tol)
        if verdict.exists and loewner_cmp(c.matrix, d.matrix, tol).incomparable:
            violations += 1
            if counterexample is None:
                counterexample = (c.matrix, d.matrix, verdict.value.matrix)
    add("no_incomparable_pair_with_infimum", violations == 0, float(violations))

    n = algebra.total_dim
    if n >= 2:
        exchange_failures = 0
        exchange_trials = min(trials, 50)
        for trial in range(exchange_trials):
            rng = np.random.default_rng([seed, trials + trial])
            p, q = _random_orthogonal_projection_pair(rng, n, tol)
            t = exchange_symmetry(p, q, algebra, tol)
            tpt = symmetrize(t.matrix @ p.matrix @ t.matrix)
            tqt = symmetrize(t.matrix @ q.matrix @ t.matrix)
            ok = (loewner_cmp(tpt, q.matrix, tol).leq
                  or loewner_cmp(tqt, p.matrix, tol).leq)
            if not ok:
                exchange_failures += 1
        add("exchange_symmetry_condition", exchange_failures == 0,
            float(exchange_failures))

    verdict_name = "Antilattice" if violations == 0 else "NotAntilattice"
    return AntilatticeReport(
        algebra=algebra, is_factor=True, center_dim=factor.center_dim,
        verdict=verdict_name, counterexample=counterexample,
        trials=trials, seed=seed, checks=tuple(checks))
