"""Dense complex linear algebra over tensor products of small factors.

Factor ordering convention, used everywhere in this package: factor 0 is
the leftmost tensor slot and the slowest-varying index of a flat state
vector, so for qubits a basis index reads as a binary string with factor
0 as the most significant bit.  Spin encoding is up = 0, down = 1.

All state objects are immutable after construction; their numpy buffers
are marked read-only so they can be shared freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFaultError, ValidationError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NORM_TOL = 1e-12
PSD_CLAMP = -1e-10
PURITY_TOL = 1e-9

JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def kron(a, b) -> np.ndarray:
    """Kronecker product with complex dtype; factor dims multiply."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _as_dims(dims) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out:
        raise ValidationError("at least one tensor factor is required")
    if any(d < 2 for d in out):
        raise ValidationError(f"factor dims must each be >= 2, got {list(out)}")
    return out


def _hermitian_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state vector over declared tensor factors."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = _as_dims(self.dims)
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != math.prod(dims):
            raise ValidationError(
                f"{amps.size} amplitudes do not fill factor dims {list(dims)} "
                f"(product {math.prod(dims)})"
            )
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValidationError(
                f"squared norm = {norm2!r}, not 1 within {NORM_TOL}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @property
    def num_factors(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def to_density(self) -> DensityOperator:
        return DensityOperator(
            np.outer(self.amplitudes, self.amplitudes.conj()), self.dims
        )


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A Hermitian, unit-trace operator over declared tensor factors.

    Hermiticity and trace are checked on every construction.  Positive
    semidefiniteness is enforced wherever the spectrum is consumed (see
    entropy clamping) and explicitly via validate_psd() at input
    boundaries, so internal partial traces do not pay for a redundant
    eigendecomposition.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = _as_dims(self.dims)
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {mat.shape}")
        d = math.prod(dims)
        if mat.shape[0] != d:
            raise ValidationError(
                f"matrix dimension {mat.shape[0]} does not match factor dims "
                f"{list(dims)} (product {d})"
            )
        dev = _hermitian_deviation(mat)
        if dev > HERMITIAN_TOL:
            raise ValidationError(f"hermitian check failed: max deviation {dev:.3e}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace = {tr.real:.6g} != 1 (tolerance {TRACE_TOL})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def num_factors(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate_psd(self) -> None:
        evs = hermitian_eigenvalues(self.matrix)
        if evs[0] < PSD_CLAMP:
            raise ValidationError(
                f"eigenvalue {evs[0]:.3e} is below {PSD_CLAMP}: not positive semidefinite"
            )


def partial_trace(rho: DensityOperator, keep) -> DensityOperator:
    """Trace out all factors not in `keep`; kept factors stay in original order."""
    kept = sorted({int(k) for k in keep})
    if not kept:
        raise ValidationError("must keep at least one factor")
    n = rho.num_factors
    if kept[0] < 0 or kept[-1] >= n:
        raise ValidationError(f"keep indices {kept} out of range for {n} factors")
    if len(kept) == n:
        return rho
    dims = list(rho.dims)
    t = rho.matrix.reshape(dims + dims)
    # Trace descending so remaining axis indices stay valid.
    m = n
    for idx in sorted(set(range(n)) - set(kept), reverse=True):
        t = np.trace(t, axis1=idx, axis2=idx + m)
        m -= 1
    kept_dims = tuple(dims[i] for i in kept)
    d = math.prod(kept_dims)
    return DensityOperator(t.reshape(d, d), kept_dims)


def hermitian_eig(m, off_tol: float = JACOBI_OFF_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi sweeps.

    Rotations zero one off-diagonal pair at a time; sweeps repeat until the
    off-diagonal Frobenius norm drops below `off_tol`.  Robust and simply
    verified at the dimensions this package works with (<= 64).  Returns
    eigenvalues in ascending order and the matching eigenvector columns,
    so v @ diag(w) @ v.conj().T reconstructs the input.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    dev = _hermitian_deviation(a)
    if dev > HERMITIAN_TOL:
        raise ValidationError(f"hermitian check failed: max deviation {dev:.3e}")
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 1:
        return a.real.reshape(1).copy(), v
    # Elements below `skip` cannot push the off-diagonal norm above off_tol:
    # n*(n-1)/2 entries of magnitude < off_tol/n sum (doubled) below off_tol^2.
    skip = off_tol / n
    for _ in range(JACOBI_MAX_SWEEPS):
        # Sum |a_pq|^2 over the actual off-diagonal entries; subtracting the
        # diagonal from the total would cancel catastrophically near zero.
        off_part = np.abs(a) ** 2
        np.fill_diagonal(off_part, 0.0)
        if math.sqrt(float(off_part.sum())) < off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < skip:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = (t * c) * phase
                sc = s.conjugate()
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - sc * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - s * a[q, :]
                a[q, :] = sc * row_p + c * a[q, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcol_p = v[:, p].copy()
                v[:, p] = c * vcol_p - sc * v[:, q]
                v[:, q] = s * vcol_p + c * v[:, q]
    else:
        raise NumericalFaultError(
            f"jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )
    w = a.diagonal().real
    order = np.argsort(w, kind="stable")
    return w[order].copy(), v[:, order].copy()


def hermitian_eigenvalues(m, off_tol: float = JACOBI_OFF_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending."""
    return hermitian_eig(m, off_tol=off_tol)[0]


def purity(rho: DensityOperator) -> float:
    """Tr(rho^2); 1 for pure states, 1/d for the maximally mixed state."""
    return float(np.trace(rho.matrix @ rho.matrix).real)


def purify_check(rho: DensityOperator) -> bool:
    """True iff rho is pure within tolerance: Tr(rho^2) >= 1 - 1e-9."""
    return purity(rho) >= 1.0 - PURITY_TOL
