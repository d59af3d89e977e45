import math
from typing import List

import numpy as np
import xsimlab as xs

from .base import CheckSuite
from .. import densemat
from ..algebras import pauli_spin_representation, tower_embed, tower_level
from ..checks import CheckReport, element_witness
from ..core import StateFunctional, jordan_product
from ..errors import UnsupportedKind
from ..lp_norms import lp_norm
from ..sampling import random_element

TOWER_LEVELS = 3


def tower_consistency() -> CheckReport:
    """Level n of the CAR tower embeds onto the first 2n generators of level n + 1."""
    report = CheckReport(name='car_tower_consistency',
                         anchor="x -> x (x) I_2 maps the level-n spin system into level n + 1",
                         tolerance=0.)
    for n in range(1, TOWER_LEVELS + 1):
        low, high = tower_level(n), tower_level(n + 1)
        defect = max(float(np.max(np.abs(tower_embed(s) - high[i]))) for i, s in enumerate(low))
        report.record(defect, lambda: {'level': n})
    return report


@xs.process
class EmbeddingSuite(CheckSuite):
    """Spin factors inside M_{2^n}: the Pauli representation is a Jordan
    *-isomorphism and intrinsic L^p norms equal the ambient normalized
    Schatten norms. Full matrix algebras compare their functional-calculus
    norm with the Schatten norm directly."""
    SUITE = 'embedding'
    batch_size = xs.variable(static=True, intent='in', default=50,
                             description='samples per exponent per batch')

    def checks(self, rng) -> List[CheckReport]:
        alg = self.jordan_algebra
        out = [tower_consistency()]
        if alg.kind == 'spin':
            k = alg.k
            variant = 'split' if alg.represented and alg.label.endswith(':split') else 'ambient'
            rep, iso = pauli_spin_representation(k, variant, eig_method=getattr(alg, 'eig_method', 'lapack'))
            abstract = iso.source
            out.append(self.homomorphism_check(iso, rng))
            to_ambient = lambda c: rep.to_matrix(c)
            source = abstract
        elif alg.kind == 'matrix':
            rep, source = alg, alg
            to_ambient = lambda c: alg.to_matrix(c)
        else:
            raise UnsupportedKind(f"{alg.label} has no ambient matrix model to compare with")
        tau = StateFunctional.trace(source)
        m = rep.ambient_dim
        for p in sorted(set(self.ps) | {1., 2., math.inf}):
            report = CheckReport(name=f"lp_ambient_schatten[p={p:g}]",
                                 anchor="||x||_p = ||x||_{S_p, tr/m} for the ambient matrix",
                                 tolerance=1e-9)
            for _ in range(self.samples):
                x = random_element(source, 'selfadjoint', rng)
                mat = to_ambient(x.coords)
                intrinsic = lp_norm(x, tau, p).value
                ambient = densemat.schatten_norm(mat, p, 1. / m)
                report.record(abs(intrinsic - ambient) / max(1., ambient),
                              lambda: element_witness(x, intrinsic=intrinsic, ambient=ambient))
            out.append(report)
        return out

    def homomorphism_check(self, iso, rng) -> CheckReport:
        report = CheckReport(name='pauli_homomorphism',
                             anchor="e_j -> s_j extends to a Jordan *-isomorphism", tolerance=1e-12)
        for _ in range(self.samples):
            x = random_element(iso.source, 'selfadjoint', rng)
            y = random_element(iso.source, 'selfadjoint', rng)
            defect = (iso(jordan_product(x, y)) - jordan_product(iso(x), iso(y))).coord_norm()
            report.record(defect / max(1., x.coord_norm() * y.coord_norm()),
                          lambda: element_witness(x, partner=element_witness(y)))
        return report
