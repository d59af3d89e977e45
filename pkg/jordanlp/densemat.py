"""Dense complex matrix arithmetic and spectral primitives shared by every
matrix-represented algebra.

A `CMatrix` is a two-dimensional ``complex128`` numpy array. Functions accept
anything `numpy.asarray` understands and return fresh arrays.
"""
import logging
import itertools
import numpy as np

from .errors import DimensionMismatch, NotHermitian, ConvergenceError

CMatrix = np.ndarray

HERMITIAN_TOL = 1e-12
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 64
EIG_METHODS = ('lapack', 'jacobi')


def as_cmatrix(a) -> CMatrix:
    """Coerce `a` to a 2-D complex array."""
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise DimensionMismatch(
            f"expected a 2-D matrix, received array with shape {arr.shape}")
    return arr


def frobenius(a) -> float:
    return float(np.linalg.norm(as_cmatrix(a), 'fro'))


def hermitian_defect(a) -> float:
    """Return max|A - A^dagger| scaled by max(1, ||A||_F)."""
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        return np.inf
    return float(np.max(np.abs(a - a.conj().T), initial=0.)) / max(1., frobenius(a))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_defect(a) <= tol


def matmul(a, b) -> CMatrix:
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by "
            f"{b.shape[0]}x{b.shape[1]}")
    return a @ b


def kron(a, b) -> CMatrix:
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def kron_all(*mats) -> CMatrix:
    """Kronecker product of any number of factors, left to right."""
    out = np.ones((1, 1), dtype=np.complex128)
    for m in mats:
        out = kron(out, m)
    return out


def spectral_norm(a) -> float:
    a = as_cmatrix(a)
    if a.size == 0:
        return 0.
    return float(np.linalg.norm(a, 2))


def singular_values(a) -> np.ndarray:
    return np.linalg.svd(as_cmatrix(a), compute_uv=False)


def trace_norm(a, weight: float = 1.) -> float:
    """Weighted nuclear norm ``weight * sum(singular values)``. The weight
    carries trace normalization, e.g. ``1/n`` on M_n."""
    if weight <= 0:
        raise ValueError(f"trace_norm weight must be positive, received {weight}")
    return weight * float(np.sum(singular_values(a)))


def schatten_norm(a, p: float, weight: float = 1.) -> float:
    """``(weight * sum s_i^p)^(1/p)``; ``p = inf`` gives the spectral norm."""
    if p < 1:
        raise ValueError(f"Schatten exponent must be >= 1, received {p}")
    if np.isinf(p):
        return spectral_norm(a)
    s = singular_values(a)
    return float((weight * np.sum(s ** p)) ** (1. / p))


def _check_hermitian(a: CMatrix, tol: float) -> None:
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix of shape {a.shape} is not square")
    defect = hermitian_defect(a)
    if defect > tol:
        raise NotHermitian(
            f"matrix is not Hermitian: scaled defect {defect:.3e} exceeds {tol:.1e}")


def _jacobi_eig(a: CMatrix, offdiag_tol: float, max_sweeps: int):
    """Cyclic complex Jacobi. Each rotation removes the phase of a_pq and then
    annihilates the resulting real symmetric 2x2 block."""
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128)
    scale = max(1., frobenius(a))
    for sweep in range(max_sweeps):
        off = np.sqrt(max(frobenius(a) ** 2 - float(np.sum(np.abs(np.diag(a)) ** 2)), 0.))
        if off < offdiag_tol * scale:
            break
        for p, q in itertools.combinations(range(n), 2):
            apq = a[p, q]
            mag = abs(apq)
            if mag == 0.:
                continue
            phase = apq / mag
            tau = (a[q, q].real - a[p, p].real) / (2. * mag)
            t = 1. / (abs(tau) + np.hypot(1., tau))
            if tau < 0:
                t = -t
            c = 1. / np.hypot(1., t)
            s = t * c
            g = np.array([[c, s],
                          [-s * np.conj(phase), c * np.conj(phase)]],
                         dtype=np.complex128)
            idx = [p, q]
            a[:, idx] = a[:, idx] @ g
            a[idx, :] = g.conj().T @ a[idx, :]
            a[p, q] = a[q, p] = 0.
            v[:, idx] = v[:, idx] @ g
    else:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge within {max_sweeps} sweeps")
    logging.debug(f"Jacobi converged after {sweep} sweeps (n={n})")
    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind='stable')
    return w[order], v[:, order]


def hermitian_eig(a, method: str = 'lapack', tol: float = HERMITIAN_TOL,
                  offdiag_tol: float = JACOBI_OFFDIAG_TOL,
                  max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decomposition ``A = U diag(lambda) U^dagger`` of a Hermitian
    matrix, eigenvalues ascending.

    `method` is ``'lapack'`` (numpy.linalg.eigh) or ``'jacobi'`` (cyclic
    complex Jacobi, raising `ConvergenceError` past `max_sweeps`).
    """
    a = as_cmatrix(a)
    _check_hermitian(a, tol)
    if method == 'lapack':
        w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
        return np.asarray(w, dtype=float), v
    elif method == 'jacobi':
        return _jacobi_eig(a.copy(), offdiag_tol=offdiag_tol, max_sweeps=max_sweeps)
    raise ValueError(f"unknown eigensolver {method!r}; expected one of {EIG_METHODS}")


def polar_svd(a):
    """Return ``(u, s, vh)`` with ``a = u @ diag(s) @ vh``."""
    return np.linalg.svd(as_cmatrix(a))
