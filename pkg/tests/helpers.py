"""Independent oracles for the test suite.

Everything here deliberately takes a different route than the package:
eigenvalues come from LAPACK (the package runs Jacobi sweeps), partial
traces from explicit index loops (the package reshapes and calls
np.trace), Venn atoms from hand-solved inclusion-exclusion formulas
(the package solves a dense linear system), and the characteristic
polynomial from Faddeev-LeVerrier trace recursion (no eigensolver at
all).  Agreement between the two routes is the point of the tests.
"""

import math
from itertools import product

import numpy as np


def eig_oracle(matrix) -> np.ndarray:
    return np.linalg.eigvalsh(np.asarray(matrix, dtype=complex))


def entropy_oracle(matrix) -> float:
    """von Neumann entropy in bits via LAPACK eigenvalues."""
    lam = eig_oracle(matrix)
    lam = lam[lam > 1e-14]
    return float(-(lam * np.log2(lam)).sum()) if lam.size else 0.0


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


def brute_partial_trace(matrix, dims, keep) -> np.ndarray:
    """Reduced matrix by explicit summation over traced multi-indices."""
    mat = np.asarray(matrix, dtype=complex)
    dims = tuple(dims)
    keep = sorted(keep)
    traced = [i for i in range(len(dims)) if i not in keep]
    kept_dims = tuple(dims[i] for i in keep)
    d = int(np.prod(kept_dims))
    out = np.zeros((d, d), dtype=complex)
    for row in range(mat.shape[0]):
        ri = np.unravel_index(row, dims)
        for col in range(mat.shape[1]):
            ci = np.unravel_index(col, dims)
            if any(ri[t] != ci[t] for t in traced):
                continue
            r2 = np.ravel_multi_index([ri[k] for k in keep], kept_dims)
            c2 = np.ravel_multi_index([ci[k] for k in keep], kept_dims)
            out[r2, c2] += mat[row, col]
    return out


def charpoly_eigenvalues(matrix) -> np.ndarray:
    """Roots of the characteristic polynomial via Faddeev-LeVerrier."""
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    mk = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        if k > 1:
            mk = a @ mk + coeffs[k - 1] * np.eye(n)
        coeffs[k] = -float(np.trace(a @ mk).real) / k
    return np.sort(np.roots(coeffs).real)


def venn_atoms_2(s_a: float, s_b: float, s_ab: float) -> dict:
    """Two-party atoms solved by hand: conditionals plus the shared cell."""
    return {
        ("A",): s_ab - s_b,
        ("B",): s_ab - s_a,
        ("A", "B"): s_a + s_b - s_ab,
    }


def venn_atoms_3(j: dict) -> dict:
    """Three-party atoms from the closed-form alternating sums.

    `j` maps ("A",), ("B",), ("C",), ("A","B"), ... to joint entropies.
    """
    sa, sb, sc = j[("A",)], j[("B",)], j[("C",)]
    sab, sac, sbc = j[("A", "B")], j[("A", "C")], j[("B", "C")]
    sabc = j[("A", "B", "C")]
    return {
        ("A",): sabc - sbc,
        ("B",): sabc - sac,
        ("C",): sabc - sab,
        ("A", "B"): sac + sbc - sc - sabc,
        ("A", "C"): sab + sbc - sb - sabc,
        ("B", "C"): sab + sac - sa - sabc,
        ("A", "B", "C"): sa + sb + sc - sab - sac - sbc + sabc,
    }


def resum_joints(atoms: dict) -> dict:
    """joints[U] = sum of atoms[T] over T intersecting U (Mobius forward map)."""
    return {
        u: sum(v for t, v in atoms.items() if set(t) & set(u))
        for u in atoms
    }


def singlet_expectation(x: float, y: float) -> float:
    # analytic <M(x) x M(y)> on the singlet
    return -math.cos(x - y)


def deterministic_chsh_values() -> list:
    """All 16 deterministic local strategies, outcomes in {-1, +1}."""
    vals = []
    for a, ap, b, bp in product((-1, 1), repeat=4):
        vals.append(a * b - a * bp + ap * b + ap * bp)
    return vals


def random_classical_density(rng, dims):
    """Diagonal density operator from a sampled joint distribution."""
    d = int(np.prod(dims))
    p = rng.random(d)
    p /= p.sum()
    return np.diag(p.astype(complex)), p


def random_hermitian(rng, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2.0


def random_unitary(rng, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    # fix the phase ambiguity so the result is deterministic per seed
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
