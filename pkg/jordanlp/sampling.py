"""Seeded random elements of an algebra."""
import numpy as np

from .core import JordanAlgebra, JordanElement, involution, jordan_product
from .errors import UnsupportedKind
from .utils.rng import get_rng

DISTRIBUTIONS = ('ball', 'selfadjoint', 'positive', 'idempotent')


def gaussian_element(alg: JordanAlgebra, rng: np.random.Generator) -> JordanElement:
    return alg.element(rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim))


def random_element(alg: JordanAlgebra, distribution: str,
                   rng: np.random.Generator) -> JordanElement:
    """Draw one element.

    ``ball``: Gaussian direction scaled into the unit ball of the algebra norm
    (coordinate norm when the kind has no complex norm). ``selfadjoint``:
    ``x + x*`` for Gaussian x. ``positive``: ``x* o x`` for a ball sample.
    ``idempotent``: spectral rounding of a selfadjoint sample.
    """
    if distribution == 'ball':
        x = gaussian_element(alg, rng)
        try:
            scale = x.norm_inf()
        except UnsupportedKind:
            scale = x.coord_norm()
        return x * (rng.uniform(0.05, 1.) / scale)
    elif distribution == 'selfadjoint':
        x = gaussian_element(alg, rng)
        return x + involution(x)
    elif distribution == 'positive':
        x = random_element(alg, 'ball', rng)
        return jordan_product(involution(x), x)
    elif distribution == 'idempotent':
        from .calculus import spectral_decompose
        h = random_element(alg, 'selfadjoint', rng)
        sd = spectral_decompose(h)
        out = alg.zero()
        for lam, e in zip(sd.eigenvalues, sd.idempotents):
            if lam > 0:
                out = out + e
        return out
    raise ValueError(f"unknown distribution {distribution!r}; expected one of {DISTRIBUTIONS}")


def generate_element(alg: JordanAlgebra, distribution: str, seed) -> JordanElement:
    """Seeded sample; the same seed always gives the same element."""
    return random_element(alg, distribution, get_rng(seed))
