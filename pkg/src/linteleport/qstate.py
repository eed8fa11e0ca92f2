"""Dense complex state vectors over tensor products of bounded spectra.

Amplitudes are stored row-major over the tuple of mode values, lowest ladder
value first in every mode.  States are treated as immutable after
construction; all operations return new states.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .spectrum import HalfInt, Spectrum

NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    """A pure state: ordered modes plus a dense complex amplitude vector."""

    modes: tuple[Spectrum, ...]
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        modes = tuple(self.modes)
        amps = np.array(self.amps, dtype=np.complex128)
        expected = math.prod(m.dimension for m in modes)
        if amps.shape != (expected,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({expected},)"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "amps", amps)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(m.dimension for m in self.modes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= tol

    def tensor_view(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per mode (read-only view)."""
        return self.amps.reshape(self.dims)

    def amplitude(self, *values) -> complex:
        """Amplitude of a single basis state given one ladder value per mode."""
        if len(values) != len(self.modes):
            raise ValueError("one value per mode required")
        idx = 0
        for mode, v in zip(self.modes, values):
            i = mode.index_of(v)
            if i is None:
                raise ValueError(f"{v} not on {mode}")
            idx = idx * mode.dimension + i
        return complex(self.amps[idx])


def make_input_state(a: Spectrum, alphas) -> PureState:
    """Normalized single-mode state from a raw amplitude vector on ladder a."""
    alphas = np.asarray(alphas, dtype=np.complex128)
    if alphas.shape != (a.dimension,):
        raise ValueError(
            f"need {a.dimension} amplitudes for {a}, got shape {alphas.shape}"
        )
    n = np.linalg.norm(alphas)
    if n == 0.0:
        raise ValueError("zero amplitude vector cannot be normalized")
    return PureState((a,), alphas / n)


def make_ancilla(b: Spectrum) -> PureState:
    """Maximally entangled two-mode resource state on ladder b.

    Mode order is (Alice's half, Bob's half); the only nonzero amplitudes sit
    where Bob's value is minus Alice's, each equal to dimension**-0.5.
    """
    d = b.dimension
    m = np.zeros((d, d), dtype=np.complex128)
    for i in range(d):
        m[i, d - 1 - i] = 1.0 / math.sqrt(d)  # value -q sits at mirrored index
    return PureState((b, b), m.reshape(-1))


def flat_state(a: Spectrum) -> PureState:
    """Uniform-amplitude state on ladder a."""
    return make_input_state(a, np.ones(a.dimension))


def random_state(spec: Spectrum, rng: np.random.Generator) -> PureState:
    """State drawn uniformly from the unit sphere of the mode's Hilbert space."""
    z = rng.standard_normal(spec.dimension) + 1j * rng.standard_normal(spec.dimension)
    return make_input_state(spec, z)


def tensor(x: PureState, y: PureState) -> PureState:
    """Tensor product; combined mode list is x.modes + y.modes."""
    return PureState(x.modes + y.modes, np.kron(x.amps, y.amps))


def inner(x: PureState, y: PureState) -> complex:
    """<x|y>, conjugate-linear in x. Modes must match exactly."""
    if x.modes != y.modes:
        raise ValueError(f"mode mismatch: {x.modes} vs {y.modes}")
    return complex(np.vdot(x.amps, y.amps))


def embed_state(state: PureState, target: Spectrum) -> PureState:
    """Embed a single-mode state into a wider ladder.

    The source window is centered on the target ladder; when the two ladders
    have mismatched parity (e.g. half-width 1/2 into half-width 1) the window
    sits half a step below center.  Amplitudes outside the window are zero.
    """
    if len(state.modes) != 1:
        raise ValueError("embed_state expects a single-mode state")
    src = state.modes[0]
    off2 = target.half_width.doubled - src.half_width.doubled
    if off2 < 0:
        raise ValueError(f"cannot embed {src} into narrower {target}")
    k0 = off2 // 2
    out = np.zeros(target.dimension, dtype=np.complex128)
    out[k0 : k0 + src.dimension] = state.amps
    return PureState((target,), out)


def schmidt_values(state: PureState, n_left: int) -> np.ndarray:
    """Singular values of the bipartite split after the first n_left modes."""
    if not 0 < n_left < len(state.modes):
        raise ValueError("split must leave modes on both sides")
    dl = math.prod(state.dims[:n_left])
    dr = math.prod(state.dims[n_left:])
    return np.linalg.svd(state.amps.reshape(dl, dr), compute_uv=False)


def states_close(x: PureState, y: PureState, tol: float = 1e-10) -> bool:
    """Equality up to a global phase (for normalized states)."""
    if x.modes != y.modes:
        return False
    return abs(abs(np.vdot(x.amps, y.amps)) - x.norm() * y.norm()) <= tol


# ---------------------------------------------------------------------------
# State file format: {"modes": [<doubled half-widths>], "amps": [[re, im], ...]}

def state_to_dict(state: PureState) -> dict:
    return {
        "modes": [m.half_width.doubled for m in state.modes],
        "amps": [[float(z.real), float(z.imag)] for z in state.amps],
    }


def state_from_dict(data: dict) -> PureState:
    modes = tuple(Spectrum(HalfInt(int(m))) for m in data["modes"])
    amps = np.array([complex(re, im) for re, im in data["amps"]])
    return PureState(modes, amps)


def save_state(state: PureState, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(state), fh)


def load_state(path) -> PureState:
    with open(path) as fh:
        return state_from_dict(json.load(fh))
