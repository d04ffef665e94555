"""Dense symmetric eigendecomposition and the inverses built on it.

Everything numeric downstream (the resistance oracle and the structured
block inverses) funnels through this one kernel so there is a single
tolerance story.  The eigensolver is cyclic Jacobi: unconditionally stable
on symmetric input, deterministic for a fixed input because the sweep
order is fixed, and entirely adequate at the matrix orders this package
works at (a few hundred at most).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Off-diagonal Frobenius norm at which a Jacobi sweep loop stops, relative
# to max(1, ||A||_F) so the threshold survives rescaling.
JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

# Eigenvalues with |lam| <= ZERO_EIGENVALUE_RTOL * max(1, |lam|_max) are
# treated as exact zeros when inverting.
ZERO_EIGENVALUE_RTOL = 1e-10

# A matrix must be symmetric to within this (relative to max(1, ||.||_max))
# before we will eigendecompose it; float products are allowed last-ulp slack.
SYMMETRY_RTOL = 1e-10


class MatrixError(ValueError):
    """Structural problem with a matrix argument (shape, symmetry, convergence)."""


class SingularMatrixError(MatrixError):
    """A matrix that must be inverted exactly is singular to working precision."""


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (descending) and the matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


def max_abs(a: np.ndarray) -> float:
    """Largest absolute entry; 0.0 for empty arrays."""
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def _as_symmetric(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixError(f"{what} must be square, got shape {a.shape}")
    if a.size and max_abs(a - a.T) > SYMMETRY_RTOL * max(1.0, max_abs(a)):
        raise MatrixError(f"{what} is not symmetric")
    return 0.5 * (a + a.T)


def _off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, summed directly.

    Subtracting the diagonal's norm from the full norm looks equivalent but
    cancels catastrophically once the matrix is nearly diagonal, reporting
    phantom residuals around sqrt(eps * ||A||^2); summing the off-diagonal
    entries themselves stays accurate all the way down.
    """
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return float(np.sqrt(np.sum(b * b)))


def sym_eigendecompose(m: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps the strict upper triangle in a fixed row-major order, rotating away
    each off-diagonal entry, until the off-diagonal Frobenius norm falls under
    JACOBI_OFF_TOL * max(1, ||A||_F) or a sweep applies no rotation.  Returns
    eigenvalues sorted descending with eigenvector columns aligned, so that
    V @ diag(w) @ V.T reconstructs the input.
    """
    a = _as_symmetric(m)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return EigenDecomposition(np.diag(a).copy(), v)

    tol = JACOBI_OFF_TOL * max(1.0, float(np.sqrt(np.sum(a * a))))
    for sweep in range(JACOBI_MAX_SWEEPS):
        off = _off_norm(a)
        if off <= tol:
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # Entries already negligible against their diagonal pair can be
                # zeroed outright once the early sweeps have done the bulk work.
                g = 100.0 * abs(apq)
                if sweep > 3 and abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = a[q, p] = 0.0
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + g == abs(h):
                    t = apq / h
                else:
                    theta = 0.5 * h / apq
                    t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
                rotated = True
        if not rotated:
            break
    if _off_norm(a) > tol:
        raise MatrixError(
            f"Jacobi eigendecomposition did not converge in {JACOBI_MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {_off_norm(a):.3e})"
        )
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], v[:, order])


def _zero_threshold(values: np.ndarray) -> float:
    lam_max = max_abs(values)
    return ZERO_EIGENVALUE_RTOL * max(1.0, lam_max)


def pseudo_group_inverse(m: np.ndarray) -> np.ndarray:
    """Group inverse of a symmetric matrix (equals Moore-Penrose here).

    Inverts eigenvalues above the zero threshold and zeroes the rest, then
    reassembles.  For a connected graph's Laplacian this is the generalized
    inverse whose row sums vanish.
    """
    dec = sym_eigendecompose(m)
    thresh = _zero_threshold(dec.values)
    inv = np.zeros_like(dec.values)
    keep = np.abs(dec.values) > thresh
    inv[keep] = 1.0 / dec.values[keep]
    x = (dec.vectors * inv) @ dec.vectors.T
    return 0.5 * (x + x.T)


def sym_inverse(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Exact inverse of a symmetric nonsingular matrix via the eigen route."""
    dec = sym_eigendecompose(_as_symmetric(m, what))
    if dec.values.size == 0:
        return np.zeros((0, 0))
    thresh = _zero_threshold(dec.values)
    if np.min(np.abs(dec.values)) <= thresh:
        raise SingularMatrixError(f"{what} is singular to working precision")
    x = (dec.vectors / dec.values) @ dec.vectors.T
    return 0.5 * (x + x.T)


def block_one_inverse(a: np.ndarray, b: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Symmetric {1}-inverse of [[A, B], [B^T, D]] for nonsingular D.

    Forms the Schur complement H = A - B D^{-1} B^T, takes its group inverse
    Hg, and assembles

        [[Hg,            -Hg B D^{-1}                    ],
         [-D^{-1} B^T Hg, D^{-1} + D^{-1} B^T Hg B D^{-1}]]

    which satisfies M X M = M for the full matrix M regardless of whether M
    itself is singular.
    """
    a = _as_symmetric(a, "block A")
    d = _as_symmetric(d, "block D")
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.shape != (a.shape[0], d.shape[0]):
        raise MatrixError(
            f"block B must have shape {(a.shape[0], d.shape[0])}, got {b.shape}"
        )
    d_inv = sym_inverse(d, "block D")
    bd = b @ d_inv
    h = a - bd @ b.T
    hg = pseudo_group_inverse(h)
    top_right = -hg @ bd
    bottom_right = d_inv + bd.T @ hg @ bd
    x = np.block([[hg, top_right], [top_right.T, 0.5 * (bottom_right + bottom_right.T)]])
    return x


def shifted_rank_one_inverse(l: np.ndarray, a: float, b: float) -> np.ndarray:
    """Inverse of L + aI - (a/b)J for a graph Laplacian L, via rank-one shift.

    Because L J = 0, the inverse is (L + aI)^{-1} + (1/(a(b - n)))J with
    n the order of L.  Requires a > 0 and b outside {0, n}; the computed
    product is checked against the identity and a failure (for instance a
    non-Laplacian input) raises SingularMatrixError.
    """
    lap = _as_symmetric(l, "Laplacian")
    n = lap.shape[0]
    if not a > 0.0:
        raise MatrixError(f"shift a must be positive, got {a}")
    if b == 0.0 or b == float(n):
        raise ZeroDivisionError(f"b = {b} makes the rank-one correction undefined for n = {n}")
    ones = np.ones((n, n))
    shifted_inv = sym_inverse(lap + a * np.eye(n), "L + aI")
    x = shifted_inv + (1.0 / (a * (b - n))) * ones
    target = lap + a * np.eye(n) - (a / b) * ones
    residual = max_abs(target @ x - np.eye(n))
    if residual > 1e-8 * max(1.0, max_abs(target)):
        raise SingularMatrixError(
            f"shifted matrix did not invert (residual {residual:.3e}); "
            "input is singular or not a graph Laplacian"
        )
    return x


def verify_one_inverse(m: np.ndarray, x: np.ndarray) -> float:
    """Largest absolute entry of M X M - M; the {1}-inverse defect."""
    m = np.asarray(m, dtype=float)
    x = np.asarray(x, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise MatrixError(f"M must be square, got shape {m.shape}")
    if x.shape != m.shape:
        raise MatrixError(f"X must match M's shape {m.shape}, got {x.shape}")
    return max_abs(m @ x @ m - m)
