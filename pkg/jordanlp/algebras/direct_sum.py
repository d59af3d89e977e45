import numpy as np

from ..core import JordanAlgebra, cluster_eigenvalues

WEIGHT_TOL = 1e-12


class DirectSumAlgebra(JordanAlgebra):
    """Finite weighted direct sum ``A_1 + ... + A_r`` with componentwise
    operations and trace ``sum_i w_i tau_i``."""
    kind = 'direct_sum'

    def __init__(self, parts, weights, label: str = None):
        self.parts = tuple(parts)
        self.weights = tuple(float(w) for w in weights)
        offsets = np.cumsum([0] + [p.dim for p in self.parts])
        self.slices = tuple(slice(int(offsets[i]), int(offsets[i + 1]))
                            for i in range(len(self.parts)))
        labels = [f"{i}:{lab}" for i, p in enumerate(self.parts) for lab in p.labels]
        unit = np.concatenate([p.unit for p in self.parts])
        trace = np.concatenate([w * p.trace for p, w in zip(self.parts, self.weights)])
        label = label or '+'.join(f"{p.label}@{w:g}" for p, w in zip(self.parts, self.weights))
        super().__init__(labels=labels, unit=unit, trace=trace, label=label)

    def components(self, u):
        return [np.asarray(u)[s] for s in self.slices]

    def embed(self, i: int, v) -> np.ndarray:
        """Coordinates of ``(0, ..., v, ..., 0)`` with `v` in part `i`."""
        out = np.zeros(self.dim, dtype=np.complex128)
        out[self.slices[i]] = v
        return out

    def product(self, u, v):
        return np.concatenate([p.product(a, b) for p, a, b in
                               zip(self.parts, self.components(u), self.components(v))])

    def star(self, u):
        return np.concatenate([p.star(a) for p, a in zip(self.parts, self.components(u))])

    def sup_norm(self, u) -> float:
        return max(p.sup_norm(a) for p, a in zip(self.parts, self.components(u)))

    def spectral_data(self, u, tol):
        pieces = []
        merged = False
        for i, (p, a) in enumerate(zip(self.parts, self.components(u))):
            values, idem, m = p.spectral_data(a, tol)
            merged = merged or m
            pieces += [(float(lam), i, e) for lam, e in zip(values, idem)]
        pieces.sort(key=lambda t: t[0])
        values, groups = cluster_eigenvalues([t[0] for t in pieces], tol)
        idempotents = []
        for g in groups:
            e = np.zeros(self.dim, dtype=np.complex128)
            for idx in g:
                _, i, part_e = pieces[idx]
                e[self.slices[i]] += part_e
            idempotents.append(e)
        return values, idempotents, merged


def direct_sum(parts) -> DirectSumAlgebra:
    """`parts` is a list of ``(algebra, weight)``; weights are positive and
    sum to 1."""
    parts = list(parts)
    if not parts:
        raise ValueError("direct_sum needs at least one part")
    weights = [float(w) for _, w in parts]
    if any(w <= 0 for w in weights):
        raise ValueError(f"direct_sum weights must be positive, received {weights}")
    if abs(sum(weights) - 1.) > WEIGHT_TOL:
        raise ValueError(f"direct_sum weights must sum to 1, received sum {sum(weights)!r}")
    return DirectSumAlgebra([a for a, _ in parts], weights)
