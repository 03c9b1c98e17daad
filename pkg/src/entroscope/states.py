"""Constructors for the states and measurement bases the analyses use."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import DensityOperator, PureState

SQRT_HALF = 1.0 / math.sqrt(2.0)

PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class BasisAngle:
    """A measurement direction in the z-x plane, measured from z.

    Normalized to [0, pi): theta and theta + pi share the same axis, only
    the outcome labels swap, so the axis is the canonical representative.
    """

    theta: float

    def __post_init__(self):
        t = float(self.theta)
        if not math.isfinite(t):
            raise ValidationError(f"angle must be finite, got {t!r}")
        object.__setattr__(self, "theta", t % math.pi)


def _angle(value) -> float:
    if isinstance(value, BasisAngle):
        return value.theta
    return BasisAngle(float(value)).theta


def spin_observable(theta: float) -> np.ndarray:
    """cos(theta) sigma_z + sin(theta) sigma_x, eigenvalues +1 and -1.

    Takes a raw angle on purpose: theta + pi is the opposite orientation
    with outcomes swapped, which matters for correlators."""
    return math.cos(theta) * PAULI_Z + math.sin(theta) * PAULI_X


def basis_rotation(angle) -> np.ndarray:
    """Rotation taking the theta-eigenbasis to the computational basis.

    Rows are the eigenbras of spin_observable(theta), ordered (+1, -1), so
    R @ v maps the b-th eigenvector to |b> and R M R^dag = diag(1, -1).
    """
    t = _angle(angle)
    c, s = math.cos(t / 2.0), math.sin(t / 2.0)
    return np.array([[c, s], [-s, c]], dtype=complex)


def epr_singlet() -> PureState:
    """(|01> - |10>)/sqrt(2): the two-qubit total-spin singlet."""
    amps = np.zeros(4, dtype=complex)
    amps[1] = SQRT_HALF
    amps[2] = -SQRT_HALF
    return PureState(amps, (2, 2))


def ghz(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2) over n >= 3 qubits."""
    n = int(n)
    if n < 3:
        raise ValidationError(f"ghz needs at least 3 qubits, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = SQRT_HALF
    amps[-1] = SQRT_HALF
    return PureState(amps, (2,) * n)


def cat_chain(with_observer: bool) -> PureState:
    """The decay chain: factors (atom, gamma, cat) plus an observer if asked.

    Branch 0 encodes excited atom / no gamma / live cat / observer sees
    live; branch 1 the fully decayed alternative.  Amplitude-identical to
    ghz(3) or ghz(4) under this encoding.
    """
    return ghz(4 if with_observer else 3)


def random_density(dim_per_factor, seed) -> DensityOperator:
    """rho = G G^dag / Tr(G G^dag) with seeded iid complex Gaussians.

    Full rank with probability 1; deterministic for a given seed."""
    dims = tuple(int(d) for d in dim_per_factor)
    d = math.prod(dims)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityOperator(m, dims)


def random_pure(dim_per_factor, seed) -> PureState:
    """Normalized vector of seeded iid complex Gaussians."""
    dims = tuple(int(d) for d in dim_per_factor)
    d = math.prod(dims)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v), dims)
