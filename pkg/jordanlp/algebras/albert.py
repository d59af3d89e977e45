"""The Albert algebra H_3(O) of Hermitian 3x3 octonionic matrices,
complexified to 27 complex dimensions.

Coordinates: ``[x1, x2, x3, a(8), b(8), c(8)]`` for the matrix
``[[x1, c, b*], [c*, x2, a], [b, a*, x3]]`` where ``*`` is octonion
conjugation.
"""
import functools
from dataclasses import dataclass

import numpy as np

from ..core import StructureAlgebra, cluster_eigenvalues
from ..errors import UnsupportedKind
from .octonion import OCTONION_TABLE, Octonion, omul, oconj, onorm2

DIM = 27
SLOT_A = slice(3, 11)
SLOT_B = slice(11, 19)
SLOT_C = slice(19, 27)
RANK_TOL = 1e-10


def to_octonion_matrix(u) -> np.ndarray:
    u = np.asarray(u)
    m = np.zeros((3, 3, 8), dtype=np.result_type(u, float))
    for i in range(3):
        m[i, i, 0] = u[i]
    a, b, c = u[SLOT_A], u[SLOT_B], u[SLOT_C]
    m[1, 2], m[2, 1] = a, oconj(a)
    m[2, 0], m[0, 2] = b, oconj(b)
    m[0, 1], m[1, 0] = c, oconj(c)
    return m


def from_octonion_matrix(m) -> np.ndarray:
    m = np.asarray(m)
    return np.concatenate([[m[0, 0, 0], m[1, 1, 0], m[2, 2, 0]], m[1, 2], m[2, 0], m[0, 1]])


def octonion_matmul(x, y) -> np.ndarray:
    return np.einsum('ijp,jkq,pqr->ikr', x, y, OCTONION_TABLE)


def octonion_jordan(x, y) -> np.ndarray:
    return 0.5 * (octonion_matmul(x, y) + octonion_matmul(y, x))


@functools.lru_cache(maxsize=1)
def _albert_table() -> np.ndarray:
    eye = np.eye(DIM)
    mats = [to_octonion_matrix(eye[r]) for r in range(DIM)]
    table = np.empty((DIM, DIM, DIM))
    for r in range(DIM):
        for s in range(r, DIM):
            table[r, s] = table[s, r] = from_octonion_matrix(octonion_jordan(mats[r], mats[s]))
    return table


def _labels():
    labels = ['x1', 'x2', 'x3']
    for slot in 'abc':
        labels += [f"{slot}{i}" for i in range(8)]
    return labels


class AlbertAlgebra(StructureAlgebra):
    """Complexified H_3(O) with normalized trace ``(x1 + x2 + x3)/3``."""

    def __init__(self):
        unit = np.zeros(DIM)
        unit[:3] = 1.
        trace = np.zeros(DIM)
        trace[:3] = 1. / 3.
        super().__init__('albert', _albert_table(), unit=unit, trace=trace,
                         labels=_labels(), label='albert')

    # cubic invariants, polynomial in the coordinates
    def T(self, u) -> complex:
        return complex(u[0] + u[1] + u[2])

    def S(self, u) -> complex:
        x1, x2, x3 = u[0], u[1], u[2]
        return complex(x1 * x2 + x2 * x3 + x3 * x1
                       - onorm2(u[SLOT_A]) - onorm2(u[SLOT_B]) - onorm2(u[SLOT_C]))

    def N(self, u) -> complex:
        """Freudenthal determinant."""
        x1, x2, x3 = u[0], u[1], u[2]
        a, b, c = u[SLOT_A], u[SLOT_B], u[SLOT_C]
        return complex(x1 * x2 * x3 - x1 * onorm2(a) - x2 * onorm2(b) - x3 * onorm2(c)
                       + 2. * omul(omul(a, b), c)[0])

    def cayley_hamilton_residual(self, u) -> np.ndarray:
        """Coordinates of ``x^3 - T x^2 + S x - N 1``."""
        u = np.asarray(u, dtype=np.complex128)
        x2 = self.product(u, u)
        x3 = self.product(u, x2)
        return x3 - self.T(u) * x2 + self.S(u) * u - self.N(u) * self.unit

    def _real(self, u) -> np.ndarray:
        u = np.asarray(u)
        if np.max(np.abs(np.imag(u)), initial=0.) > 1e-10 * max(1., np.linalg.norm(u)):
            raise UnsupportedKind("albert: spectra and norms exist for selfadjoint elements only")
        return np.real(u).astype(np.complex128)

    def minimal_roots(self, u) -> np.ndarray:
        """Real roots of the minimal polynomial of a selfadjoint element,
        ascending and with multiplicity removed by rank tests on 1, x, x^2."""
        x = self._real(u)
        one = self.unit.astype(np.complex128)
        scale = max(1., float(np.linalg.norm(x)))
        centre = self.trace_of(x)
        if np.linalg.norm(x - centre * one) <= RANK_TOL * scale:
            return np.array([centre.real])
        x2 = self.product(x, x)
        basis = np.column_stack([x, one])
        coef, *_ = np.linalg.lstsq(basis, x2, rcond=None)
        if np.linalg.norm(basis @ coef - x2) <= RANK_TOL * max(1., float(np.linalg.norm(x2))):
            alpha, beta = coef.real
            disc = max(alpha * alpha + 4. * beta, 0.)
            r = np.sqrt(disc)
            return np.array([(alpha - r) / 2., (alpha + r) / 2.])
        roots = np.roots([1., -self.T(x).real, self.S(x).real, -self.N(x).real])
        return np.sort(np.real(roots))

    def spectral_data(self, u, tol):
        x = self._real(u)
        roots = self.minimal_roots(x)
        values, groups = cluster_eigenvalues(roots, tol)
        merged = any(len(g) > 1 for g in groups)
        idempotents = []
        for i, ri in enumerate(values):
            e = self.unit.astype(np.complex128)
            for j, rj in enumerate(values):
                if i != j:
                    e = self.product(e, x - rj * self.unit) / (ri - rj)
            idempotents.append(e)
        return values, idempotents, merged

    def sup_norm(self, u) -> float:
        return float(np.max(np.abs(self.minimal_roots(u))))


def albert() -> AlbertAlgebra:
    return AlbertAlgebra()


@dataclass
class AlbertElement:
    """Hermitian octonionic 3x3 matrix by its diagonal and the off-diagonal
    octonions ``a = x23``, ``b = x31``, ``c = x12``."""
    diagonal: tuple
    a: Octonion
    b: Octonion
    c: Octonion

    def coords(self) -> np.ndarray:
        return np.concatenate([np.asarray(self.diagonal, dtype=float),
                               self.a.coords, self.b.coords, self.c.coords])

    def to_element(self, alg: AlbertAlgebra):
        return alg.element(self.coords())

    @classmethod
    def from_coords(cls, u) -> 'AlbertElement':
        u = np.real(np.asarray(u))
        return cls(tuple(u[:3]), Octonion(u[SLOT_A]), Octonion(u[SLOT_B]), Octonion(u[SLOT_C]))
