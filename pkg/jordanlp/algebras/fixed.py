import logging
from typing import List

import numpy as np
import scipy.linalg

from ..core import JordanAlgebra, JordanElement, ElementMap, involution
from ..errors import MapCheckFailed, UnsupportedKind

MAP_TOL = 1e-10


def check_antiautomorphism(alg: JordanAlgebra, alpha: ElementMap, tol: float = MAP_TOL) -> None:
    """Raise `MapCheckFailed` unless `alpha` is an involutive
    *-antiautomorphism of the representing matrices."""
    if not alg.represented or alpha.matrix_map is None:
        raise UnsupportedKind(
            f"{alpha.name}: antiautomorphism checks need a matrix representation")
    basis = alg.basis_elements()
    mats = [b.to_matrix() for b in basis]
    amap = alpha.matrix_map
    worst_inv = max(np.linalg.norm(amap(amap(m)) - m) for m in mats)
    worst_star = max(np.linalg.norm(amap(m.conj().T) - amap(m).conj().T) for m in mats)
    worst_anti = 0.
    for x in mats:
        for y in mats:
            worst_anti = max(worst_anti, np.linalg.norm(amap(x @ y) - amap(y) @ amap(x)))
    failures = []
    if worst_inv > tol:
        failures.append(f"alpha^2 != id (defect {worst_inv:.3e})")
    if worst_star > tol:
        failures.append(f"alpha does not commute with * (defect {worst_star:.3e})")
    if worst_anti > tol:
        failures.append(f"alpha(xy) != alpha(y)alpha(x) (defect {worst_anti:.3e})")
    if failures:
        msg = f"{alpha.name} is not an involutive *-antiautomorphism of {alg.label}: " + "; ".join(failures)
        logging.error(msg)
        raise MapCheckFailed(msg)


def _independent(candidates: List[np.ndarray], tol: float) -> List[np.ndarray]:
    kept = []
    for v in candidates:
        trial = np.column_stack(kept + [v])
        if np.linalg.matrix_rank(trial, tol=tol) > len(kept):
            kept.append(v)
    return kept


def fixed_point_subalgebra(alg: JordanAlgebra, alpha: ElementMap,
                           tol: float = MAP_TOL) -> List[JordanElement]:
    """Basis of ``{x : alpha(x) = x}`` made of selfadjoint elements."""
    check_antiautomorphism(alg, alpha, tol)
    a = alpha.coordinate_matrix()
    null = scipy.linalg.null_space(a - np.eye(alg.dim), rcond=1e-10)
    candidates = []
    for v in null.T:
        x = alg.element(v)
        candidates.append(x.real_part().coords)
        candidates.append(x.imag_part().coords)
    kept = _independent([c for c in candidates if np.linalg.norm(c) > 1e-9], tol=1e-8)
    if len(kept) != null.shape[1]:
        raise MapCheckFailed(
            f"fixed space of {alpha.name} has dimension {null.shape[1]} but "
            f"{len(kept)} selfadjoint generators were found")
    return [alg.element(v) for v in kept]
