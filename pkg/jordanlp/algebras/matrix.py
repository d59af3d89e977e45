import numpy as np

from ..core import RepresentedAlgebra, ElementMap, JordanElement
from ..errors import DimensionMismatch


def matrix_units(n: int) -> np.ndarray:
    units = np.zeros((n * n, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            units[i * n + j, i, j] = 1.
    return units


def matrix_jordan(n: int, eig_method: str = 'lapack') -> RepresentedAlgebra:
    """M_n(C) with the Jordan product, basis of matrix units ``E_ij`` and the
    normalized trace ``tr/n`` as canonical tracial state."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"matrix algebra size must be a positive integer, received {n!r}")
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return RepresentedAlgebra('matrix', matrix_units(n), labels=labels,
                              label=f"M{n}", eig_method=eig_method)


def matrix_element(alg: RepresentedAlgebra, m) -> JordanElement:
    return alg.element(alg.from_matrix(m))


def transpose_map(alg: RepresentedAlgebra) -> ElementMap:
    return ElementMap(alg, alg, lambda x: matrix_element(alg, x.to_matrix().T),
                      name='transpose', matrix_map=lambda m: np.asarray(m).T)


def inner_automorphism(alg: RepresentedAlgebra, u) -> ElementMap:
    """Jordan *-automorphism ``x -> u x u*`` for a unitary `u`."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (alg.ambient_dim, alg.ambient_dim):
        raise DimensionMismatch(f"unitary of shape {u.shape} does not act on {alg.label}")
    if np.linalg.norm(u @ u.conj().T - np.eye(len(u))) > 1e-10:
        raise ValueError("inner automorphism requires a unitary")
    conj = lambda m: u @ m @ u.conj().T
    return ElementMap(alg, alg, lambda x: matrix_element(alg, conj(x.to_matrix())),
                      name='inner_automorphism', matrix_map=conj)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from the QR decomposition of a Ginibre matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
