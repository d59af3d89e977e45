from typing import List

import numpy as np
import xsimlab as xs

from .base import CheckSuite
from ..calculus import (spectral_decompose, apply_function, polar_real, min_eigenvalue,
                        positive_part_check)
from ..checks import CheckReport, element_witness
from ..core import jordan_product, operator_commute_defect
from ..sampling import random_element


@xs.process
class CalculusSuite(CheckSuite):
    """Spectral decomposition, functional calculus and real polar
    decomposition on seeded selfadjoint, positive and idempotent samples."""
    SUITE = 'calculus'

    def checks(self, rng) -> List[CheckReport]:
        alg = self.jordan_algebra
        reports = {
            'reconstruction': CheckReport(name='spectral_reconstruction',
                                          anchor="x = sum lambda_i e_i", tolerance=1e-9),
            'partition': CheckReport(name='spectral_partition', anchor="sum e_i = 1",
                                     tolerance=1e-9),
            'orthogonality': CheckReport(name='spectral_orthogonality',
                                         anchor="e_i o e_j = delta_ij e_i", tolerance=1e-9),
            'commute': CheckReport(name='spectral_operator_commute',
                                   anchor="x operator-commutes with its spectral idempotents",
                                   tolerance=1e-9),
            'homomorphism': CheckReport(name='calculus_square',
                                        anchor="f(x) = x o x for f(t) = t^2", tolerance=1e-9),
            'polar': CheckReport(name='polar_decomposition', anchor="x = s o |x|, s o s = 1",
                                 tolerance=1e-9),
            'positive': CheckReport(name='positive_samples', anchor="x* o x >= 0",
                                    tolerance=1e-10),
            'idempotent': CheckReport(name='idempotent_samples', anchor="e o e = e",
                                      tolerance=1e-10),
        }
        for _ in range(self.samples):
            x = random_element(alg, 'selfadjoint', rng)
            wit = lambda: element_witness(x)
            scale = max(1., x.coord_norm())
            sd = spectral_decompose(x)
            reports['reconstruction'].record((sd.reconstruct() - x).coord_norm() / scale, wit)
            reports['partition'].record(sd.partition_defect(), wit)
            reports['orthogonality'].record(sd.orthogonality_defect(), wit)
            reports['commute'].record(
                max(operator_commute_defect(x, e) for e in sd.idempotents) / scale, wit)
            square = apply_function(x, lambda t: t ** 2, sd=sd)
            reports['homomorphism'].record((square - x.square()).coord_norm() / scale ** 2, wit)

            pol = polar_real(x)
            defect = max((jordan_product(pol.symmetry, pol.modulus) - x).coord_norm() / scale,
                         (pol.symmetry.square() - alg.one()).coord_norm())
            reports['polar'].record(defect, wit)

            pos = random_element(alg, 'positive', rng)
            low = min_eigenvalue(pos)
            ok = positive_part_check(pos)
            reports['positive'].record(0. if ok else -low / max(1., pos.coord_norm()),
                                       lambda: element_witness(pos, min_eigenvalue=low))

            e = random_element(alg, 'idempotent', rng)
            reports['idempotent'].record((e.square() - e).coord_norm(), lambda: element_witness(e))
        return list(reports.values())
