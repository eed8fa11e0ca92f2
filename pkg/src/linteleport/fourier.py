"""Discrete Fourier conjugate basis on a bounded ladder.

The conjugate basis vector for label p is
    (1/sqrt(d)) * sum_q exp(+2*pi*i*q*p/d) |q>,   d = ladder dimension,
with p running over the same ladder as q.  The phase angle is assembled from
the exact doubled-integer product q2x*p2x, reduced mod 4d before the single
float conversion, so no precision is lost for half-integer ladders (where q*p
is a quarter-integer) or for large products.

Every pair of a ladder vector and a conjugate vector has overlap modulus
d**-0.5 (the two bases are mutually unbiased), and the transform matrix is
unitary.  Dimensions stay small here, so the transform is a direct O(d^2)
summation rather than an FFT.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .qstate import PureState
from .spectrum import HalfInt, Spectrum, as_halfint


def phase_matrix(d: int) -> np.ndarray:
    """Unitary U with U[i, j] = exp(2*pi*i*q_i*p_j/d)/sqrt(d) on ladder indices."""
    v2x = np.arange(-(d - 1), d, 2, dtype=np.int64)  # doubled ladder values
    prod = np.outer(v2x, v2x) % (4 * d)  # angle period: q2x*p2x mod 4d
    return np.exp(1j * np.pi * prod / (2 * d)) / np.sqrt(d)


@dataclass(frozen=True)
class ConjugateBasis:
    """The Fourier-conjugate orthonormal basis of one spectrum."""

    spectrum: Spectrum

    @cached_property
    def matrix(self) -> np.ndarray:
        """Columns are conjugate basis vectors in the ladder basis."""
        return phase_matrix(self.spectrum.dimension)

    def p_vector(self, p: HalfInt) -> PureState:
        """The conjugate basis vector with label p as a normalized state."""
        p = as_halfint(p)
        j = self.spectrum.index_of(p)
        if j is None:
            raise ValueError(f"{p} is not on {self.spectrum}")
        return PureState((self.spectrum,), self.matrix[:, j])

    def q_to_p(self, state: PureState) -> np.ndarray:
        """Coefficients <p|state> for every p on the ladder."""
        if state.modes != (self.spectrum,):
            raise ValueError("state must be a single mode on this spectrum")
        return self.matrix.conj().T @ state.amps

    def p_to_q(self, coeffs) -> PureState:
        """Inverse transform: rebuild the ladder-basis state from p coefficients."""
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        d = self.spectrum.dimension
        if coeffs.shape != (d,):
            raise ValueError(f"need {d} coefficients, got shape {coeffs.shape}")
        return PureState((self.spectrum,), self.matrix @ coeffs)
