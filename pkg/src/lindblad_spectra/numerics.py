"""Dense linear-algebra oracles: eigenvalues, singular values, pseudospectra,
Hausdorff distances and Newton root finding."""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.spatial import cKDTree

from .errors import EmptySetError, NoConvergence

DENSE_CAP = 6400


def thread_count() -> int:
    env = os.environ.get("LINDBLAD_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def parallel_map(fn, items):
    """Map preserving input order; threads capped by LINDBLAD_THREADS."""
    items = list(items)
    workers = min(thread_count(), len(items)) if items else 1
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues with per-value relative residuals ``|Av - lv| / |A|``.

    ``residuals`` is None when the caller skipped the certificate (large
    clouds where only the values are needed).
    """

    values: np.ndarray
    residuals: np.ndarray | None

    @property
    def ok(self) -> bool:
        if self.residuals is None:
            return True
        return bool(np.all(self.residuals <= 1e-8))


def dense_eigenvalues(
    M: np.ndarray, cap: int = DENSE_CAP, with_residuals: bool = True
) -> EigenResult:
    """All eigenvalues of a dense complex matrix with residual certificates."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if n > cap:
        raise ValueError(f"matrix size {n} exceeds cap {cap}")
    try:
        if not with_residuals:
            return EigenResult(scipy.linalg.eigvals(M), None)
        w, v = scipy.linalg.eig(M)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    norm = np.linalg.norm(M, 2) if n <= 64 else np.linalg.norm(M, "fro")
    if norm == 0:
        return EigenResult(w, np.zeros(n))
    res = np.linalg.norm(M @ v - v * w[None, :], axis=0) / (
        norm * np.linalg.norm(v, axis=0)
    )
    return EigenResult(w, res)


def min_singular_value(M: np.ndarray) -> float:
    """Smallest singular value; ``1/sigma_min(M - z)`` is the resolvent norm."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        raise ValueError("empty matrix")
    return float(scipy.linalg.svdvals(M)[-1])


@dataclass(frozen=True)
class PseudospectrumField:
    """``sigma_min(M - z)`` sampled on a rectangular grid."""

    re: np.ndarray  # shape (nx,)
    im: np.ndarray  # shape (ny,)
    values: np.ndarray  # shape (ny, nx)

    def grid(self) -> np.ndarray:
        return self.re[None, :] + 1j * self.im[:, None]


def pseudospectrum_grid(
    M: np.ndarray, box: tuple, resolution: int
) -> PseudospectrumField:
    """Sample ``sigma_min(M - z)`` over ``box = (re0, re1, im0, im1)``.

    Warns when eigenvalues of ``M`` fall outside the box (the sublevel sets
    then miss part of the spectrum).
    """
    M = np.asarray(M, dtype=complex)
    re0, re1, im0, im1 = box
    eigs = dense_eigenvalues(M).values
    if np.any(
        (eigs.real < re0) | (eigs.real > re1) | (eigs.imag < im0) | (eigs.imag > im1)
    ):
        warnings.warn("pseudospectrum box does not contain the full spectrum")
    re = np.linspace(re0, re1, resolution)
    im = np.linspace(im0, im1, resolution)
    I = np.eye(M.shape[0], dtype=complex)

    def row(y):
        return [min_singular_value(M - (x + 1j * y) * I) for x in re]

    values = np.array(parallel_map(row, im))
    return PseudospectrumField(re, im, values)


def hausdorff_distance(A, B) -> float:
    """Exact Hausdorff distance between finite point sets in the plane."""
    A = np.asarray(A, dtype=complex).ravel()
    B = np.asarray(B, dtype=complex).ravel()
    if A.size == 0 or B.size == 0:
        raise EmptySetError("Hausdorff distance needs nonempty sets")
    if A.size * B.size <= 1_000_000:
        d = np.abs(A[:, None] - B[None, :])
        return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
    # grid-bucketed exact nearest neighbours for large clouds
    pa = np.column_stack([A.real, A.imag])
    pb = np.column_stack([B.real, B.imag])
    da = cKDTree(pb).query(pa)[0].max()
    db = cKDTree(pa).query(pb)[0].max()
    return float(max(da, db))


def one_sided_hausdorff(A, B) -> float:
    """``sup_{a in A} dist(a, B)`` for finite point sets."""
    A = np.asarray(A, dtype=complex).ravel()
    B = np.asarray(B, dtype=complex).ravel()
    if A.size == 0 or B.size == 0:
        raise EmptySetError("distance needs nonempty sets")
    if A.size * B.size <= 1_000_000:
        return float(np.abs(A[:, None] - B[None, :]).min(axis=1).max())
    pa = np.column_stack([A.real, A.imag])
    pb = np.column_stack([B.real, B.imag])
    return float(cKDTree(pb).query(pa)[0].max())


def newton_roots(
    g,
    seeds,
    tol: float = 1e-11,
    dedup: float = 1e-8,
    max_iter: int = 60,
) -> tuple:
    """Newton iteration on an analytic callback with finite-difference slope.

    Returns ``(roots, failed)`` where ``roots`` are deduplicated points with
    ``|g| < tol`` and ``failed`` counts seeds that did not converge.  The
    callback may raise to mark its exclusion set; such iterates count as
    failures.
    """
    roots: list = []
    failed = 0
    for z0 in seeds:
        z = complex(z0)
        ok = False
        try:
            for _ in range(max_iter):
                val = g(z)
                if abs(val) < tol:
                    ok = True
                    break
                h = 1e-6 * (1.0 + abs(z))
                slope = (g(z + h) - g(z - h)) / (2.0 * h)
                if slope == 0:
                    break
                with np.errstate(all="ignore"):
                    step = complex(val / slope)
                if not np.isfinite(step.real) or not np.isfinite(step.imag):
                    break
                z = z - step
        except Exception:
            failed += 1
            continue
        if not ok:
            failed += 1
            continue
        if all(abs(z - r) > dedup for r in roots):
            roots.append(z)
    return roots, failed
