"""One-shot verification harness: every acceptance check at desk scale.

Each check prints one PASS/FAIL line.  The checks pin the protocol's
headline numbers (qubit success probability 1/2, the dimension formula, the
mean-fidelity closed form, the truncated-overlap value 1/4, the outcome
counts, the continuous-limit gap bound) plus the projector-algebra
properties that everything else rests on.  `quick` trims sampling sizes but
keeps every check.
"""

from __future__ import annotations

import math

import numpy as np

from . import analysis
from .fourier import ConjugateBasis
from .qstate import PureState, flat_state, inner, random_state, schmidt_values
from .spectrum import HalfInt, Spectrum
from .teleport import (
    ProtocolConfig,
    bob_correction,
    embedded_input,
    enumerate_outcomes,
    is_success,
    joint_state,
    project_p_diff,
    project_q_sum,
    run_trials,
)

TOL_EXACT = 1e-12
TOL_FIDELITY = 1e-10


def _qubit_flat_config(b2x: int) -> ProtocolConfig:
    sa = Spectrum(HalfInt(1))
    return ProtocolConfig(a=sa, b=Spectrum(HalfInt(b2x)), input_state=flat_state(sa))


def check_qubit_success(quick: bool = False) -> tuple[bool, str]:
    """Two-level input, two-level resource: P = 1/2 exactly and empirically."""
    cfg = _qubit_flat_config(1)
    outs = enumerate_outcomes(cfg)
    p = sum(o.probability for o in outs if is_success(cfg, o.q_sum))
    trials = 20_000 if quick else 100_000
    recs = run_trials(cfg, trials, seed=7)
    rate = sum(r.success for r in recs) / trials
    band = 4 * math.sqrt(0.25 / trials)
    ok = abs(p - 0.5) <= TOL_EXACT and abs(rate - 0.5) <= band
    return ok, f"exact P={p:.15f}, sampled {rate:.5f} (allowed ±{band:.4f})"


def check_success_formula(quick: bool = False) -> tuple[bool, str]:
    """Engine success probability is 1 - 2a/(2b+1), independent of the input."""
    rng = np.random.default_rng(20240811)
    n_inputs = 5 if quick else 20
    worst_formula = 0.0
    worst_spread = 0.0
    for a2x in (1, 2, 3, 4):
        for b2x in range(a2x, 10):
            sa, sb = Spectrum(HalfInt(a2x)), Spectrum(HalfInt(b2x))
            formula = 1.0 - a2x / (b2x + 1)
            vals = []
            for _ in range(n_inputs):
                cfg = ProtocolConfig(a=sa, b=sb, input_state=random_state(sa, rng))
                outs = enumerate_outcomes(cfg)
                vals.append(
                    sum(o.probability for o in outs if is_success(cfg, o.q_sum))
                )
            worst_formula = max(worst_formula, max(abs(v - formula) for v in vals))
            worst_spread = max(worst_spread, max(vals) - min(vals))
    ok = worst_formula <= TOL_EXACT and worst_spread <= TOL_EXACT
    return ok, (
        f"max |engine-formula|={worst_formula:.2e}, "
        f"max input spread={worst_spread:.2e}"
    )


def check_dimension_formula(quick: bool = False) -> tuple[bool, str]:
    """1 - (dim_in - 1)/dim_anc reproduces the 1 - 1/(n+1) scaling."""
    worst = max(
        abs(analysis.success_probability_dims(2, n + 1) - (1.0 - 1.0 / (n + 1)))
        for n in range(1, 21)
    )
    return worst <= 1e-15, f"max deviation {worst:.2e} over n=1..20"


def check_perfect_replica(quick: bool = False) -> tuple[bool, str]:
    """Every successful outcome corrects back to the input exactly."""
    rng = np.random.default_rng(77)
    needed = 200
    worst = 1.0
    count = 0
    while count < needed:
        a2x = int(rng.integers(0, 5))
        b2x = int(rng.integers(a2x, 9))
        sa, sb = Spectrum(HalfInt(a2x)), Spectrum(HalfInt(b2x))
        cfg = ProtocolConfig(a=sa, b=sb, input_state=random_state(sa, rng))
        target = embedded_input(cfg)
        wins = [o for o in enumerate_outcomes(cfg) if is_success(cfg, o.q_sum)]
        take = wins if len(wins) <= 4 else [
            wins[int(i)] for i in rng.choice(len(wins), size=4, replace=False)
        ]
        for o in take:
            fid = abs(inner(target, bob_correction(o, cfg))) ** 2
            worst = min(worst, fid)
            count += 1
    ok = worst >= 1.0 - TOL_FIDELITY
    return ok, f"worst success fidelity {worst:.15f} over {count} triples"


def check_mean_fidelity(quick: bool = False) -> tuple[bool, str]:
    """Engine mean squared fidelity matches 1 - 1/(2b+1) + 1/(4(2b+1))."""
    worst = 0.0
    for b2x in range(1, 20, 2):
        rep = analysis.mean_squared_fidelity(HalfInt(1), HalfInt(b2x))
        d = b2x + 1
        worst = max(worst, abs(rep.mean_f - (1.0 - 1.0 / d + 1.0 / (4 * d))))
    return worst <= TOL_EXACT, f"max |engine-closed form|={worst:.2e}, b up to 19/2"


def check_failure_overlap(quick: bool = False) -> tuple[bool, str]:
    """Two-level failures: outcome weight 1/(2(2b+1)), squared overlap 1/4."""
    worst_p = 0.0
    worst_o = 0.0
    for b2x in range(1, 10, 2):
        d = b2x + 1
        rows = analysis.failure_overlap_table(HalfInt(1), HalfInt(b2x))
        edges = {r[0].doubled for r in rows}
        if edges != {-(b2x + 1), b2x + 1}:
            return False, f"unexpected failure outcomes {sorted(edges)} at b2x={b2x}"
        for _, prob, overlap_sq in rows:
            worst_p = max(worst_p, abs(prob - 1.0 / (2 * d)))
            worst_o = max(worst_o, abs(overlap_sq - 0.25))
    ok = worst_p <= TOL_EXACT and worst_o <= TOL_EXACT
    return ok, f"max prob dev {worst_p:.2e}, max overlap dev {worst_o:.2e}"


def check_outcome_counts(quick: bool = False) -> tuple[bool, str]:
    """Exact combinatorics agree; engine outcome count respects the bound."""
    for n in range(31):
        if analysis.klm_outcome_count(n) != analysis.klm_outcome_count_sum(n):
            return False, f"count forms disagree at n={n}"
    rng = np.random.default_rng(3)
    worst_margin = None
    for a2x in range(0, 10):
        for b2x in range(a2x, 10):
            sa, sb = Spectrum(HalfInt(a2x)), Spectrum(HalfInt(b2x))
            cfg = ProtocolConfig(a=sa, b=sb, input_state=random_state(sa, rng))
            bound = analysis.linear_outcome_count(HalfInt(a2x), HalfInt(b2x))
            got = len(enumerate_outcomes(cfg))
            if got > bound:
                return False, f"count {got} exceeds bound {bound} at ({a2x},{b2x})"
            margin = bound - got
            worst_margin = margin if worst_margin is None else min(worst_margin, margin)
    return True, (
        "factorial and binomial-sum forms equal for n=0..30; "
        f"engine count within bound (min slack {worst_margin})"
    )


def check_continuous_limit(quick: bool = False) -> tuple[bool, str]:
    """Discretization gap shrinks monotonically and within the linear bound."""
    A, B = 1.0, 2.0
    rows = analysis.continuous_limit_sweep(A, B, [1, 0.5, 0.25, 0.125, 0.0625])
    gaps = [gap for _, _, gap in rows]
    mono = all(g1 > g2 for g1, g2 in zip(gaps, gaps[1:]))
    bound_ok = all(
        gap <= eps * A / (2 * B * B) + TOL_EXACT for eps, _, gap in rows
    )
    return mono and bound_ok, f"gaps {['%.4f' % g for g in gaps]}"


def check_projector_algebra(quick: bool = False) -> tuple[bool, str]:
    """Completeness, idempotence, unitarity, unbiasedness, rank-1 conditionals."""
    rng = np.random.default_rng(11)
    worst_complete = 0.0
    worst_idem = 0.0
    worst_schmidt = 0.0
    noncommuting_seen = False
    for b2x in range(0, 8):
        basis = ConjugateBasis(Spectrum(HalfInt(b2x)))
        u = basis.matrix
        d = b2x + 1
        if np.max(np.abs(u.conj().T @ u - np.eye(d))) > TOL_EXACT:
            return False, f"transform not unitary at b2x={b2x}"
        if np.max(np.abs(np.abs(u) - 1.0 / math.sqrt(d))) > TOL_EXACT:
            return False, f"bases not mutually unbiased at b2x={b2x}"
    n_cfg = 4 if quick else 10
    for _ in range(n_cfg):
        a2x = int(rng.integers(0, 8))
        b2x = int(rng.integers(a2x, 8))
        sa, sb = Spectrum(HalfInt(a2x)), Spectrum(HalfInt(b2x))
        cfg = ProtocolConfig(a=sa, b=sb, input_state=random_state(sa, rng))
        outs = enumerate_outcomes(cfg)
        worst_complete = max(
            worst_complete, abs(sum(o.probability for o in outs) - 1.0)
        )
        st = joint_state(cfg)
        shift2x = cfg.frame_shift2x
        for o in outs[:: max(1, len(outs) // 6)]:
            qa = HalfInt(o.q_sum.doubled + shift2x)
            gq = project_q_sum(st, qa)
            gq2 = project_q_sum(gq, qa)
            worst_idem = max(worst_idem, float(np.max(np.abs(gq2.amps - gq.amps))))
            gp = project_p_diff(gq, o.p_diff)
            gp2 = project_p_diff(gp, o.p_diff)
            worst_idem = max(worst_idem, float(np.max(np.abs(gp2.amps - gp.amps))))
            # Schmidt rank 1 across (Alice modes | Bob mode): reorder to put
            # both Alice axes first, then split.
            t = gp.amps.reshape(gp.dims).transpose(0, 2, 1).reshape(-1)
            cond = PureState((cfg.b, cfg.b, cfg.b), t / np.linalg.norm(t))
            sv = schmidt_values(cond, 2)
            worst_schmidt = max(worst_schmidt, float(sv[1]) if len(sv) > 1 else 0.0)
            # the two projectors must not commute in general
            other = project_q_sum(project_p_diff(st, o.p_diff), qa)
            if np.max(np.abs(other.amps - gp.amps)) > 1e-6:
                noncommuting_seen = True
    ok = (
        worst_complete <= TOL_EXACT
        and worst_idem <= TOL_EXACT
        and worst_schmidt <= TOL_FIDELITY
        and noncommuting_seen
    )
    return ok, (
        f"completeness dev {worst_complete:.2e}, idempotence dev {worst_idem:.2e}, "
        f"2nd Schmidt value {worst_schmidt:.2e}, non-commutation observed: "
        f"{noncommuting_seen}"
    )


CHECKS = [
    (1, "qubit success probability", check_qubit_success),
    (2, "general success formula", check_success_formula),
    (3, "dimension form", check_dimension_formula),
    (4, "perfect replica on success", check_perfect_replica),
    (5, "mean squared fidelity", check_mean_fidelity),
    (6, "failure overlap", check_failure_overlap),
    (7, "resource counting", check_outcome_counts),
    (8, "continuous limit", check_continuous_limit),
    (9, "projector algebra", check_projector_algebra),
]


def run_verification(quick: bool = False, out=print) -> int:
    """Run every check; print one line each; return 0 iff all pass."""
    failures = 0
    for num, name, fn in CHECKS:
        ok, detail = fn(quick=quick)
        status = "PASS" if ok else "FAIL"
        out(f"{status}  {num}. {name}: {detail}")
        failures += 0 if ok else 1
    out(f"{len(CHECKS) - failures}/{len(CHECKS)} checks passed")
    return 0 if failures == 0 else 1
