"""Unital Jordan *-subalgebras as algebras in their own right: the product,
involution, unit and trace are read off the ambient algebra once, in the
coordinates of a subalgebra basis, and the spectral calculus is rebuilt
from powers of the element alone."""
from typing import Sequence

import numpy as np

from ..core import JordanAlgebra, JordanElement, StructureAlgebra, cluster_eigenvalues, involution
from ..errors import NotSubalgebra

RANK_TOL = 1e-10


def _coefficients(bmat: np.ndarray, v: np.ndarray) -> np.ndarray:
    coef, *_ = np.linalg.lstsq(bmat, v, rcond=None)
    if np.linalg.norm(bmat @ coef - v) > 1e-9 * max(1., float(np.linalg.norm(v))):
        raise NotSubalgebra("element is not in the span of the subalgebra basis")
    return coef


class SubalgebraModel(StructureAlgebra):
    """Structure-constant model of the span of `basis`.

    `functional` gives the trace of the model on the basis elements; by
    default it is the canonical trace of the ambient algebra.
    """

    def __init__(self, ambient: JordanAlgebra, basis: Sequence[JordanElement],
                 functional=None, label: str = None):
        basis = list(basis)
        if not basis:
            raise NotSubalgebra("empty subalgebra basis")
        bmat = np.column_stack([b.coords for b in basis])
        d = len(basis)
        table = np.empty((d, d, d), dtype=np.complex128)
        for i, bi in enumerate(basis):
            for j in range(i, d):
                c = _coefficients(bmat, ambient.product(bi.coords, basis[j].coords))
                table[i, j] = table[j, i] = c
        self._star = np.column_stack([_coefficients(bmat, involution(b).coords) for b in basis])
        unit = _coefficients(bmat, ambient.unit)
        if functional is None:
            trace = np.array([ambient.trace_of(b.coords) for b in basis])
        else:
            trace = np.array([complex(functional(b)) for b in basis])
        self.ambient = ambient
        self.basis_matrix = bmat
        super().__init__('subalgebra', table, unit=unit, trace=trace,
                         labels=[f"b{i}" for i in range(d)],
                         label=label or f"sub({ambient.label})")

    def star(self, u):
        return self._star @ np.conj(u)

    def embed(self, u) -> JordanElement:
        return self.ambient.element(self.basis_matrix @ np.asarray(u, dtype=np.complex128))

    def minimal_roots(self, u) -> np.ndarray:
        """Roots of the minimal polynomial of `u`, found from the first
        power of `u` that falls in the span of the lower ones."""
        u = np.asarray(u, dtype=np.complex128)
        powers = [self.unit.astype(np.complex128), u]
        while True:
            lower = np.column_stack(powers[:-1])
            top = powers[-1]
            coef, *_ = np.linalg.lstsq(lower, top, rcond=None)
            if np.linalg.norm(lower @ coef - top) <= RANK_TOL * max(1., float(np.linalg.norm(top))):
                break
            if len(powers) > self.dim:
                raise NotSubalgebra(f"{self.label}: powers of the element do not close up")
            powers.append(self.product(u, top))
        roots = np.roots(np.concatenate([[1.], -coef[::-1]]))
        return np.sort(np.real(roots))

    def spectral_data(self, u, tol):
        roots = self.minimal_roots(u)
        values, groups = cluster_eigenvalues(roots, tol)
        merged = any(len(g) > 1 for g in groups)
        idempotents = []
        for i, ri in enumerate(values):
            e = self.unit.astype(np.complex128)
            for j, rj in enumerate(values):
                if i != j:
                    e = self.product(e, u - rj * self.unit) / (ri - rj)
            idempotents.append(e)
        return values, idempotents, merged

    def sup_norm(self, u) -> float:
        u = np.asarray(u, dtype=np.complex128)
        if np.linalg.norm(self.star(u) - u) <= RANK_TOL * max(1., float(np.linalg.norm(u))):
            return float(np.max(np.abs(self.minimal_roots(u))))
        # the JB*-norm of a subalgebra is the restricted ambient norm
        return self.ambient.sup_norm(self.embed(u).coords)
