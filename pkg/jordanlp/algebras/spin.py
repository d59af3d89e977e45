"""Spin factors: the abstract model ``H + C1`` and its Pauli spin-system
representations, plus the finite levels of the CAR tower."""
import math

import numpy as np

from .. import densemat
from ..core import (StructureAlgebra, RepresentedAlgebra, ElementMap,
                    JordanElement, cluster_eigenvalues)
from ..errors import UnsupportedKind, DimensionMismatch

I2 = np.eye(2, dtype=np.complex128)
# sigma_1 is diagonal and sigma_3 is the imaginary one.
SIGMA_1 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_2 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[0, 1j], [-1j, 0]], dtype=np.complex128)
PAULI = (SIGMA_1, SIGMA_2, SIGMA_3)
SPIN_VARIANTS = ('ambient', 'split')


class SpinFactor(StructureAlgebra):
    """Complexified spin factor on R^k with basis ``1, e_1, ..., e_k`` and
    product ``(a + l1) o (b + m1) = m a + l b + (<a, b> + l m) 1``.

    The norm ``||a|| + |l|`` is available on selfadjoint elements only.
    """

    def __init__(self, k: int):
        if not isinstance(k, (int, np.integer)) or k < 2:
            raise ValueError(f"spin factor needs k >= 2, received {k!r}")
        self.k = int(k)
        d = self.k + 1
        table = np.zeros((d, d, d))
        table[0, 0, 0] = 1.
        for i in range(1, d):
            table[0, i, i] = table[i, 0, i] = 1.
            table[i, i, 0] = 1.
        unit = np.eye(d)[0]
        labels = ['1'] + [f"e{i}" for i in range(1, d)]
        super().__init__('spin', table, unit=unit, trace=unit, labels=labels,
                         label=f"spin{self.k}")

    def split(self, u):
        u = np.asarray(u)
        return u[0], u[1:]

    def _selfadjoint_parts(self, u):
        if np.max(np.abs(np.imag(u)), initial=0.) > 1e-10 * max(1., np.linalg.norm(u)):
            raise UnsupportedKind(
                f"{self.label}: the abstract model carries a norm on selfadjoint "
                f"elements only; use the Pauli representation")
        lam, a = self.split(np.real(u))
        return float(lam), a

    def sup_norm(self, u) -> float:
        lam, a = self._selfadjoint_parts(u)
        return float(np.linalg.norm(a)) + abs(lam)

    def spectral_data(self, u, tol):
        lam, a = self._selfadjoint_parts(u)
        r = float(np.linalg.norm(a))
        one = self.unit
        if r <= tol * max(1., abs(lam)):
            return np.array([lam]), [one.copy()], False
        n = np.concatenate([[0.], a / r]).astype(np.complex128)
        lower = 0.5 * (one - n)
        upper = 0.5 * (one + n)
        return np.array([lam - r, lam + r]), [lower, upper], False


def spin_abstract(k: int) -> SpinFactor:
    return SpinFactor(k)


def spin_system(k: int, variant: str = 'ambient') -> np.ndarray:
    """Matrices ``s_1..s_k`` in M_{2^n}, ``n = ceil(k/2)``:
    ``s_{2i-1} = sigma_3^{(i-1)} x sigma_1 x I^{(n-i)}``,
    ``s_{2i} = sigma_3^{(i-1)} x sigma_2 x I^{(n-i)}``.

    ``variant='split'`` (odd k) builds the generators inside the block
    diagonal ``M_{2^(n-1)} + M_{2^(n-1)}``: ``I_2 x s'_j`` for j < k and
    ``sigma_1 x omega`` with ``omega = sigma_3^{(n-1)}``.
    """
    if k < 2:
        raise ValueError(f"spin system needs k >= 2, received {k}")
    if variant not in SPIN_VARIANTS:
        raise ValueError(f"unknown spin variant {variant!r}; expected one of {SPIN_VARIANTS}")
    n = math.ceil(k / 2)
    if variant == 'split':
        if k % 2 == 0:
            raise ValueError("the split representation exists for odd k only")
        inner = _generators(2 * (n - 1), n - 1)
        omega = densemat.kron_all(*([SIGMA_3] * (n - 1)))
        gens = [densemat.kron(I2, s) for s in inner]
        gens.append(densemat.kron(SIGMA_1, omega))
        return np.array(gens)
    return _generators(k, n)


def _generators(k: int, n: int) -> np.ndarray:
    gens = []
    for j in range(1, k + 1):
        i = (j + 1) // 2
        sigma = SIGMA_1 if j % 2 == 1 else SIGMA_2
        factors = [SIGMA_3] * (i - 1) + [sigma] + [I2] * (n - i)
        gens.append(densemat.kron_all(*factors))
    return np.array(gens)


def pauli_spin_representation(k: int, variant: str = 'ambient', eig_method: str = 'lapack'):
    """Represented spin factor ``span{I, s_1..s_k}`` and the Jordan
    *-isomorphism ``e_j -> s_j``, ``1 -> I`` from the abstract model."""
    gens = spin_system(k, variant)
    m = gens.shape[1]
    reps = np.concatenate([np.eye(m, dtype=np.complex128)[None], gens])
    labels = ['1'] + [f"s{i}" for i in range(1, k + 1)]
    suffix = '' if variant == 'ambient' else ':split'
    rep = RepresentedAlgebra('spin', reps, labels=labels,
                             label=f"spin{k}:represented{suffix}", eig_method=eig_method)
    rep.k = k
    abstract = SpinFactor(k)
    iso = ElementMap(abstract, rep, lambda x: rep.element(x.coords),
                     name='pauli_representation')
    return rep, iso


def anticommutation_defects(gens: np.ndarray):
    """Exact defects ``max|s_i^2 - I|`` and ``max|s_i s_j + s_j s_i|`` (i != j)."""
    m = gens.shape[1]
    eye = np.eye(m)
    square = max(float(np.max(np.abs(s @ s - eye))) for s in gens)
    anti = 0.
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            anti = max(anti, float(np.max(np.abs(gens[i] @ gens[j] + gens[j] @ gens[i]))))
    return square, anti


def tower_embed(x) -> np.ndarray:
    """CAR tower inclusion ``M_{2^n} -> M_{2^(n+1)}``, ``x -> x (x) I_2``."""
    x = densemat.as_cmatrix(x)
    if x.shape[0] != x.shape[1]:
        raise DimensionMismatch(f"tower_embed needs a square matrix, received {x.shape}")
    size = x.shape[0]
    if size & (size - 1):
        raise DimensionMismatch(f"tower levels are M_(2^n); received size {size}")
    return densemat.kron(x, I2)


def tower_level(n: int) -> np.ndarray:
    """The 2n generators of level n of the CAR tower (spin system in M_{2^n})."""
    return _generators(2 * n, n)
