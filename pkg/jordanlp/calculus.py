"""Spectral decomposition and continuous functional calculus of selfadjoint
elements, computed inside the associative subalgebra generated by the element
and the unit."""
import logging
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .core import JordanElement, jordan_product, require_selfadjoint
from .errors import FunctionDomainError

CLUSTER_TOL = 1e-8
POSITIVE_TOL = 1e-10
ZERO_TOL = 1e-12


@dataclass
class SpectralDecomposition:
    eigenvalues: np.ndarray
    idempotents: List[JordanElement]
    merged: bool = False

    @property
    def algebra(self):
        return self.idempotents[0].algebra

    def reconstruct(self) -> JordanElement:
        out = self.algebra.zero()
        for lam, e in zip(self.eigenvalues, self.idempotents):
            out = out + lam * e
        return out

    def partition_defect(self) -> float:
        """||sum e_i - 1|| (coordinate norm)."""
        total = self.algebra.zero()
        for e in self.idempotents:
            total = total + e
        return (total - self.algebra.one()).coord_norm()

    def orthogonality_defect(self) -> float:
        """max ||e_i o e_j - delta_ij e_i||."""
        worst = 0.
        for i, ei in enumerate(self.idempotents):
            for j, ej in enumerate(self.idempotents):
                target = ei if i == j else self.algebra.zero()
                worst = max(worst, (jordan_product(ei, ej) - target).coord_norm())
        return worst


@dataclass
class PolarPair:
    symmetry: JordanElement
    modulus: JordanElement
    zero_in_spectrum: bool = False


def spectral_decompose(x: JordanElement, tol: float = CLUSTER_TOL) -> SpectralDecomposition:
    require_selfadjoint(x)
    values, idem, merged = x.algebra.spectral_data(x.coords, tol)
    if merged:
        logging.warning(
            f"merged nearly coincident eigenvalues of an element of {x.algebra.label}; "
            f"idempotents are approximate")
    alg = x.algebra
    return SpectralDecomposition(
        eigenvalues=np.asarray(values, dtype=float),
        idempotents=[alg.element(c) for c in idem],
        merged=merged)


def apply_function(x: JordanElement, f: Callable[[np.ndarray], np.ndarray],
                   sd: SpectralDecomposition = None) -> JordanElement:
    """f(x) = sum f(lambda_i) e_i for a selfadjoint x."""
    if sd is None:
        sd = spectral_decompose(x)
    with np.errstate(all='ignore'):
        fvals = np.asarray(f(np.asarray(sd.eigenvalues, dtype=float)), dtype=float)
    if fvals.shape != sd.eigenvalues.shape:
        fvals = np.broadcast_to(fvals, sd.eigenvalues.shape)
    bad = ~np.isfinite(fvals)
    if np.any(bad):
        raise FunctionDomainError(float(sd.eigenvalues[np.argmax(bad)]))
    out = x.algebra.zero()
    for fv, e in zip(fvals, sd.idempotents):
        out = out + float(fv) * e
    return out


def nonnegative_power(x: JordanElement, r: float, tol: float = POSITIVE_TOL,
                      sd: SpectralDecomposition = None) -> JordanElement:
    """x^r for positive x; eigenvalues in [-tol*scale, 0) are read as 0."""
    if sd is None:
        sd = spectral_decompose(x)
    scale = max(1., float(np.max(np.abs(sd.eigenvalues))))
    low = float(np.min(sd.eigenvalues))
    if low < -tol * scale:
        raise FunctionDomainError(low, f"negative eigenvalue {low!r} of a positive element")

    def f(t):
        t = np.clip(t, 0., None)
        return np.where(t > 0, t ** r, 0. if r > 0 else 1.)
    return apply_function(x, f, sd=sd)


def absolute(x: JordanElement, sd: SpectralDecomposition = None) -> JordanElement:
    """|x| = (x^2)^(1/2)"""
    return apply_function(x, np.abs, sd=sd)


def positive_part_check(x: JordanElement, tol: float = POSITIVE_TOL) -> bool:
    """True iff x is selfadjoint with min eigenvalue >= -tol (scaled)."""
    sd = spectral_decompose(x)
    scale = max(1., float(np.max(np.abs(sd.eigenvalues))))
    return float(np.min(sd.eigenvalues)) >= -tol * scale


def min_eigenvalue(x: JordanElement) -> float:
    return float(np.min(spectral_decompose(x).eigenvalues))


def sign(t: np.ndarray, zero_tol: float = 0.) -> np.ndarray:
    """sgn with sgn(0) = +1."""
    return np.where(t >= -zero_tol, 1., -1.)


def polar_real(x: JordanElement, zero_tol: float = ZERO_TOL) -> PolarPair:
    """x = s o |x| with s = sum sgn(lambda_i) e_i, sgn(0) = +1."""
    sd = spectral_decompose(x)
    scale = max(1., float(np.max(np.abs(sd.eigenvalues))))
    tol = zero_tol * scale
    s = apply_function(x, lambda t: sign(t, tol), sd=sd)
    return PolarPair(
        symmetry=s,
        modulus=absolute(x, sd=sd),
        zero_in_spectrum=bool(np.any(np.abs(sd.eigenvalues) <= tol)))
