"""Closed-form protocol quantities and resource-counting comparisons.

Everything here is independently checkable against the brute-force engine in
`teleport`: the Q-outcome distribution and success probability come from a
direct double sum over ladder values, the continuous-limit sweep is a pure
formula evaluation, the outcome counts are exact integer combinatorics, and
the mean squared fidelity is obtained by exhaustively enumerating outcomes
through the engine with a uniform-amplitude input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import teleport
from .qstate import flat_state, inner
from .spectrum import HalfInt, Spectrum, as_halfint
from .teleport import embedded_input


@dataclass(frozen=True)
class SuccessReport:
    """Q-outcome distribution and post-selected success probability."""

    a: HalfInt
    b: HalfInt
    p_of_q: dict[HalfInt, float]
    p_success: float

    def to_dict(self) -> dict:
        return {
            "a2x": self.a.doubled,
            "b2x": self.b.doubled,
            "p_of_Q": [[q.doubled, float(p)] for q, p in sorted(self.p_of_q.items())],
            "P_success": float(self.p_success),
        }


@dataclass(frozen=True)
class FidelityReport:
    """Mean squared fidelity split into exact-replica and truncated parts."""

    a: HalfInt
    b: HalfInt
    exact_success_part: float
    failure_overlap_part: float
    mean_f: float

    def to_dict(self) -> dict:
        return {
            "a2x": self.a.doubled,
            "b2x": self.b.doubled,
            "exact_success_part": float(self.exact_success_part),
            "failure_overlap_part": float(self.failure_overlap_part),
            "F_mean": float(self.mean_f),
        }


def q_sum_distribution(a: HalfInt, b: HalfInt, alphas) -> dict[HalfInt, float]:
    """Probability of each sum outcome Q for a normalized input on ladder a.

    p(Q) = (2b+1)^-1 * sum over ladder pairs (q1, q2) with q1+q2 = Q of
    |alpha_{q1}|^2.  Direct double sum; sums to one.
    """
    a, b = as_halfint(a), as_halfint(b)
    alphas = np.asarray(alphas, dtype=np.complex128)
    sa, sb = Spectrum(a), Spectrum(b)
    if alphas.shape != (sa.dimension,):
        raise ValueError(f"need {sa.dimension} amplitudes, got {alphas.shape}")
    weights = np.abs(alphas) ** 2
    dist: dict[HalfInt, float] = {}
    for i, q1 in enumerate(sa.values()):
        for q2 in sb.values():
            q = q1 + q2
            dist[q] = dist.get(q, 0.0) + float(weights[i]) / sb.dimension
    return dist


def success_probability_exact(a: HalfInt, b: HalfInt, alphas) -> float:
    """Post-selected success probability, summed from the Q distribution.

    Equals 1 - 2a/(2b+1) for every normalized input.
    """
    a, b = as_halfint(a), as_halfint(b)
    cut = b.doubled - a.doubled
    dist = q_sum_distribution(a, b, alphas)
    return float(sum(p for q, p in dist.items() if abs(q.doubled) <= cut))


def success_report(a: HalfInt, b: HalfInt, alphas) -> SuccessReport:
    a, b = as_halfint(a), as_halfint(b)
    dist = q_sum_distribution(a, b, alphas)
    cut = b.doubled - a.doubled
    psucc = float(sum(p for q, p in dist.items() if abs(q.doubled) <= cut))
    return SuccessReport(a=a, b=b, p_of_q=dist, p_success=psucc)


def success_probability_formula(a: HalfInt, b: HalfInt) -> float:
    """The input-independent closed form 1 - 2a/(2b+1)."""
    a, b = as_halfint(a), as_halfint(b)
    return 1.0 - a.doubled / (b.doubled + 1)


def success_probability_dims(dim_in: int, dim_anc: int) -> float:
    """Success probability in terms of Hilbert-space dimensions.

    1 - (dim_in - 1)/dim_anc; matches the ladder form under
    dim_in = 2a+1, dim_anc = 2b+1.
    """
    if dim_in < 1:
        raise ValueError("dim_in must be >= 1")
    if dim_anc < dim_in:
        raise ValueError("dim_anc must be >= dim_in")
    return 1.0 - (dim_in - 1) / dim_anc


def continuous_limit_sweep(A: float, B: float, steps) -> list[tuple[float, float, float]]:
    """Discretized success probability against the continuous value 1 - A/B.

    For each step size eps the interval half-widths A, B are divided into
    ladders with half-widths A/eps, B/eps; returns (eps, P_disc, gap) rows
    where gap = P_disc - (1 - A/B) >= 0 shrinks linearly with eps.
    """
    if not (0 < A <= B):
        raise ValueError("need 0 < A <= B")
    rows = []
    for eps in steps:
        if eps <= 0:
            raise ValueError("steps must be positive")
        a2x, b2x = 2 * A / eps, 2 * B / eps
        if abs(a2x - round(a2x)) > 1e-9 or abs(b2x - round(b2x)) > 1e-9:
            raise ValueError(f"step {eps} does not divide the interval exactly")
        p_disc = success_probability_formula(
            HalfInt(int(round(a2x))), HalfInt(int(round(b2x)))
        )
        rows.append((float(eps), float(p_disc), float(p_disc - (1.0 - A / B))))
    return rows


def klm_outcome_count(n: int) -> int:
    """Distinguishable detector patterns in the n-photon KLM teleporter.

    Exact big-integer value (2n+2)! / ((n+1)!)^2, identically the sum over
    k = 0..n+1 of C(n+k, k).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.factorial(2 * n + 2) // math.factorial(n + 1) ** 2


def klm_outcome_count_sum(n: int) -> int:
    """Binomial-sum form of klm_outcome_count, kept as an independent route."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(math.comb(n + k, k) for k in range(n + 2))


def linear_outcome_count(a: HalfInt, b: HalfInt) -> int:
    """Upper bound (2(a+b)+1)(4b+1) on distinct sum/difference outcomes."""
    a, b = as_halfint(a), as_halfint(b)
    if b < a:
        raise ValueError("need b >= a")
    return (a.doubled + b.doubled + 1) * (2 * b.doubled + 1)


def _flat_config(a: HalfInt, b: HalfInt) -> teleport.ProtocolConfig:
    sa, sb = Spectrum(a), Spectrum(b)
    return teleport.ProtocolConfig(a=sa, b=sb, input_state=flat_state(sa))


def _overlap_sq_by_outcome(cfg: teleport.ProtocolConfig):
    """Engine pass shared by the fidelity report and the failure table.

    Yields (outcome, squared overlap with the input) where the overlap is
    taken against the raw surviving amplitudes, i.e. Bob's corrected state
    rescaled by the weight his truncated ladder kept.  That weight is
    recovered engine-side from the Q marginal: w_Q = (2b+1) * p(Q).
    """
    outcomes = teleport.enumerate_outcomes(cfg)
    target = embedded_input(cfg)
    q_marginal: dict[int, float] = {}
    for o in outcomes:
        q_marginal[o.q_sum.doubled] = (
            q_marginal.get(o.q_sum.doubled, 0.0) + o.probability
        )
    dim = cfg.b.dimension
    rows = []
    for o in outcomes:
        w = dim * q_marginal[o.q_sum.doubled]
        corrected = teleport.bob_correction(o, cfg)
        overlap_sq = w * abs(inner(target, corrected)) ** 2
        rows.append((o, float(overlap_sq)))
    return rows


def mean_squared_fidelity(a: HalfInt, b: HalfInt) -> FidelityReport:
    """Outcome-averaged squared fidelity for the uniform-amplitude input.

    Success outcomes contribute their probability exactly; failure outcomes
    contribute probability times the squared truncated overlap.  For the
    two-level input this reproduces 1 - 1/(2b+1) + 1/(4(2b+1)).
    """
    a, b = as_halfint(a), as_halfint(b)
    cfg = _flat_config(a, b)
    succ = 0.0
    fail = 0.0
    for o, overlap_sq in _overlap_sq_by_outcome(cfg):
        if teleport.is_success(cfg, o.q_sum):
            succ += o.probability
        else:
            fail += o.probability * overlap_sq
    return FidelityReport(
        a=a,
        b=b,
        exact_success_part=float(succ),
        failure_overlap_part=float(fail),
        mean_f=float(succ + fail),
    )


def failure_overlap_table(a: HalfInt, b: HalfInt) -> list[tuple[HalfInt, float, float]]:
    """Per-Q failure rows (Q, p(Q), squared overlap) for the uniform input.

    The squared overlap is constant across P at fixed Q and equals
    ((a + 1 + b - |Q|)/(2a + 1))^2.
    """
    a, b = as_halfint(a), as_halfint(b)
    cfg = _flat_config(a, b)
    per_q: dict[int, tuple[float, float]] = {}
    for o, overlap_sq in _overlap_sq_by_outcome(cfg):
        if teleport.is_success(cfg, o.q_sum):
            continue
        prob, _ = per_q.get(o.q_sum.doubled, (0.0, 0.0))
        per_q[o.q_sum.doubled] = (prob + o.probability, overlap_sq)
    return [
        (HalfInt(q2x), float(p), float(osq))
        for q2x, (p, osq) in sorted(per_q.items())
    ]


def fidelity_scaling_exponent(b_doubled_values) -> float:
    """Least-squares slope of log(1 - F_mean) against log(b) for qubit inputs.

    Uses the closed form for the two-level input; the infidelity decays like
    1/b, so the slope approaches -1 from above as b grows.
    """
    xs, ys = [], []
    for b2x in b_doubled_values:
        d = b2x + 1
        f_mean = 1.0 - 1.0 / d + 1.0 / (4 * d)
        xs.append(math.log(b2x / 2))
        ys.append(math.log(1.0 - f_mean))
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)
