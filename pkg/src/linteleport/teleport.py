"""Protocol engine: joint state, sequential projective measurement, correction.

Alice holds an unknown qudit plus one half of a maximally entangled two-mode
resource; Bob holds the other half.  Alice projects her two modes first onto
an eigenspace of the sum of the ladder observables (outcome Q), then onto an
eigenspace of the difference of the conjugate observables (outcome P).  The
two projectors do not commute, so the order matters and is fixed: sum first.

Conditioned on (Q, P), Bob's mode carries the input amplitudes shifted by Q
and twisted by P-dependent phases.  A local phase rotation plus an index
shift recovers the input exactly whenever |Q| <= b - a, i.e. whenever no
amplitude was pushed off Bob's bounded ladder; larger |Q| truncates the
state and the run is flagged as a failure.

The input mode rides on the resource ladder throughout.  Its amplitude
window is centered there, or half a step below center when the two ladders
have mismatched parity; reported Q outcomes are translated back to the
input's own ladder, so the success test reads |Q| <= b - a in all cases.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .fourier import ConjugateBasis
from .qstate import PureState, embed_state, inner, make_ancilla, tensor
from .spectrum import HalfInt, Spectrum, as_halfint

# Outcomes with Born probability below this are numerically empty eigenspaces.
PROB_FLOOR = 1e-15


@dataclass(frozen=True)
class ProtocolConfig:
    """One teleportation setup: input ladder, resource ladder, input state."""

    a: Spectrum
    b: Spectrum
    input_state: PureState

    def __post_init__(self):
        if self.b.half_width < self.a.half_width:
            raise ValueError(
                f"resource ladder {self.b} too narrow for input ladder {self.a}"
            )
        if self.input_state.modes != (self.a,):
            raise ValueError("input_state must be a single mode on ladder a")
        if not self.input_state.is_normalized(1e-9):
            raise ValueError("input_state must be normalized")

    @property
    def frame_shift2x(self) -> int:
        """Doubled value shift between embedded and original input labels.

        0 when the ladders have equal parity, -1 (half a step down) otherwise.
        """
        a2, b2 = self.a.half_width.doubled, self.b.half_width.doubled
        return a2 - b2 + 2 * ((b2 - a2) // 2)


def embedded_input(cfg: ProtocolConfig) -> PureState:
    """The input state carried on the resource ladder."""
    return embed_state(cfg.input_state, cfg.b)


def joint_state(cfg: ProtocolConfig) -> PureState:
    """Three-mode start state, ordered (Alice resource, Bob resource, input)."""
    return tensor(make_ancilla(cfg.b), embedded_input(cfg))


def _require_three_modes(state: PureState) -> tuple[np.ndarray, np.ndarray]:
    if len(state.modes) != 3:
        raise ValueError("expected the three-mode protocol layout")
    t = state.amps.reshape(state.dims)
    vals0 = np.fromiter(state.modes[0].values_doubled(), dtype=np.int64)
    vals2 = np.fromiter(state.modes[2].values_doubled(), dtype=np.int64)
    return t, np.add.outer(vals0, vals2)  # doubled (q2 + q1) per (axis0, axis2)


def project_q_sum(state: PureState, q_sum: HalfInt) -> PureState:
    """Project onto the eigenspace where Alice's two ladder values sum to q_sum.

    Zeroes every amplitude violating the constraint; unnormalized result.
    Values outside the reachable sum range give the zero vector.
    """
    q_sum = as_halfint(q_sum)
    t, sums2x = _require_three_modes(state)
    par = state.modes[0].half_width.doubled + state.modes[2].half_width.doubled
    if (q_sum.doubled - par) % 2 != 0:
        raise ValueError(f"{q_sum} is off the sum ladder")
    mask = sums2x == q_sum.doubled
    return PureState(state.modes, (t * mask[:, None, :]).reshape(-1))


def project_p_diff(state: PureState, p_diff: HalfInt) -> PureState:
    """Project onto the eigenspace where the conjugate labels differ by p_diff.

    Both Alice modes are rotated to the conjugate basis, the constraint
    (input-mode label) - (resource-mode label) = p_diff is applied, and the
    result is rotated back.  Unnormalized; idempotent.
    """
    p_diff = as_halfint(p_diff)
    if len(state.modes) != 3:
        raise ValueError("expected the three-mode protocol layout")
    if state.modes[0] != state.modes[2]:
        raise ValueError("Alice's two modes must share one spectrum")
    if p_diff.doubled % 2 != 0:
        raise ValueError(f"{p_diff} is off the difference ladder")
    u = ConjugateBasis(state.modes[0]).matrix
    t = state.amps.reshape(state.dims)
    tp = np.einsum("qp,QP,qjQ->pjP", u.conj(), u.conj(), t, optimize=True)
    vals2x = np.fromiter(state.modes[0].values_doubled(), dtype=np.int64)
    # input-mode label (axis 2) minus resource-mode label (axis 0)
    mask = -np.subtract.outer(vals2x, vals2x) == p_diff.doubled
    tp *= mask[:, None, :]
    back = np.einsum("qp,QP,pjP->qjQ", u, u, tp, optimize=True)
    return PureState(state.modes, back.reshape(-1))


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """One (Q, P) result with its Born probability and Bob's conditional state."""

    q_sum: HalfInt
    p_diff: HalfInt
    probability: float
    bob_state: PureState


@dataclass(frozen=True, eq=False)
class ProtocolRecord:
    """One full run: outcome, Bob's corrected state, success flag, fidelity."""

    outcome: MeasurementOutcome
    corrected: PureState
    success: bool
    fidelity_sq: float


def _extract_bob(tp: np.ndarray, d: int) -> np.ndarray:
    """Bob's normalized factor of a rank-1 (Alice | Bob) conditional state.

    Rows of the (Alice, Bob) matrix are all proportional; the best-conditioned
    one is the row of largest norm.  The global phase is fixed by making the
    largest amplitude real positive.
    """
    m = tp.transpose(0, 2, 1).reshape(-1, d)
    rows = np.einsum("ij,ij->i", m, m.conj()).real
    bob = m[int(np.argmax(rows))]
    bob = bob / np.linalg.norm(bob)
    k = int(np.argmax(np.abs(bob)))
    return bob * (bob[k].conjugate() / abs(bob[k]))


def enumerate_outcomes(cfg: ProtocolConfig) -> list[MeasurementOutcome]:
    """Exhaustive Born distribution over every (Q, P) pair.

    Probabilities sum to one; outcomes below PROB_FLOOR are dropped.  Q is
    reported on the input's own ladder (see module docstring); P is always
    integer-valued on -2b..2b.  For speed the conjugate rotation is applied
    once per Q and each P is a mask in the rotated frame, which is unitarily
    equivalent to composing the two projectors directly.
    """
    d = cfg.b.dimension
    b2 = cfg.b.half_width.doubled
    shift2x = cfg.frame_shift2x
    state = joint_state(cfg)
    t = state.amps.reshape(d, d, d)
    vals2x = np.fromiter(cfg.b.values_doubled(), dtype=np.int64)
    sums2x = np.add.outer(vals2x, vals2x)
    diffs2x = -np.subtract.outer(vals2x, vals2x)  # input label minus resource label
    u = ConjugateBasis(cfg.b).matrix

    outcomes = []
    for qa2x in range(-2 * b2, 2 * b2 + 1, 2):
        tq = t * (sums2x == qa2x)[:, None, :]
        if np.vdot(tq, tq).real < PROB_FLOOR:
            continue
        tp = np.einsum("qp,QP,qjQ->pjP", u.conj(), u.conj(), tq, optimize=True)
        for p2x in range(-2 * b2, 2 * b2 + 1, 2):
            tqp = tp * (diffs2x == p2x)[:, None, :]
            prob = np.vdot(tqp, tqp).real
            if prob < PROB_FLOOR:
                continue
            bob = _extract_bob(tqp, d)
            outcomes.append(
                MeasurementOutcome(
                    q_sum=HalfInt(qa2x - shift2x),
                    p_diff=HalfInt(p2x),
                    probability=float(prob),
                    bob_state=PureState((cfg.b,), bob),
                )
            )
    return outcomes


def is_success(cfg: ProtocolConfig, q_sum: HalfInt) -> bool:
    """Whether outcome q_sum leaves every input amplitude on Bob's ladder."""
    return abs(q_sum.doubled) <= cfg.b.half_width.doubled - cfg.a.half_width.doubled


def correction_phases(d: int, p_diff2x: int) -> np.ndarray:
    """Per-ladder-value phases undoing the P-dependent twist on Bob's state."""
    v2x = np.arange(-(d - 1), d, 2, dtype=np.int64)
    return np.exp(1j * np.pi * ((v2x * p_diff2x) % (4 * d)) / (2 * d))


def bob_correction(outcome: MeasurementOutcome, cfg: ProtocolConfig) -> PureState:
    """Bob's local recovery: phase rotation, then an index shift by Q.

    On success the result equals the embedded input up to a global phase.
    On failure the same rule is applied to whatever amplitudes survived.
    """
    d = cfg.b.dimension
    qa2x = outcome.q_sum.doubled + cfg.frame_shift2x
    shift = qa2x // 2  # index steps; qa2x is even in the embedded frame
    v = outcome.bob_state.amps * correction_phases(d, outcome.p_diff.doubled)
    out = np.zeros(d, dtype=np.complex128)
    src = slice(max(0, -shift), min(d, d - shift))
    out[src.start + shift : src.stop + shift] = v[src]
    return PureState((cfg.b,), out)


def _make_record(cfg: ProtocolConfig, outcome: MeasurementOutcome,
                 target: PureState) -> ProtocolRecord:
    corrected = bob_correction(outcome, cfg)
    fid = abs(inner(target, corrected)) ** 2
    return ProtocolRecord(
        outcome=outcome,
        corrected=corrected,
        success=is_success(cfg, outcome.q_sum),
        fidelity_sq=float(fid),
    )


def sample_outcome(cfg: ProtocolConfig, seed: int) -> MeasurementOutcome:
    """Draw one outcome from the Born distribution; deterministic per seed."""
    outcomes = enumerate_outcomes(cfg)
    probs = np.array([o.probability for o in outcomes])
    rng = np.random.default_rng(seed)
    return outcomes[int(rng.choice(len(outcomes), p=probs / probs.sum()))]


def run_protocol(cfg: ProtocolConfig, seed: int) -> ProtocolRecord:
    """Sample one outcome, apply Bob's correction, score the run."""
    return _make_record(cfg, sample_outcome(cfg, seed), embedded_input(cfg))


def run_trials(cfg: ProtocolConfig, trials: int, seed: int) -> list[ProtocolRecord]:
    """Many seeded runs sharing one outcome enumeration.

    Equivalent in distribution to repeated run_protocol calls; the outcome
    table, corrections, and fidelities are computed once per distinct
    outcome and the trials draw indices from a single generator.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    target = embedded_input(cfg)
    outcomes = enumerate_outcomes(cfg)
    records = [_make_record(cfg, o, target) for o in outcomes]
    probs = np.array([o.probability for o in outcomes])
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(records), size=trials, p=probs / probs.sum())
    return [records[int(i)] for i in draws]


# ---------------------------------------------------------------------------
# Trace format: one record per line, doubled-integer labels throughout.

def record_to_dict(rec: ProtocolRecord) -> dict:
    return {
        "Q2x": rec.outcome.q_sum.doubled,
        "P2x": rec.outcome.p_diff.doubled,
        "probability": float(rec.outcome.probability),
        "success": bool(rec.success),
        "fidelity_sq": float(rec.fidelity_sq),
    }


def records_to_jsonl(records) -> str:
    return "\n".join(json.dumps(record_to_dict(r)) for r in records)
