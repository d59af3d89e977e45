import math
from typing import List

import numpy as np
import xsimlab as xs

from .base import BracketSuite
from ..checks import CheckReport, element_witness
from ..core import StateFunctional
from ..interp import CoupleSpec, bracket
from ..sampling import random_element


def perturbed_state(alg, rng: np.random.Generator, strength: float = 0.5) -> StateFunctional:
    """Faithful state with density ``1 + strength * h / ||h||`` for a seeded
    selfadjoint h."""
    h = random_element(alg, 'selfadjoint', rng)
    d = alg.one() + h * (strength / h.norm_inf())
    return StateFunctional.from_density(alg, d, normalize=True, name='perturbed')


@xs.process
class IndependenceSuite(BracketSuite):
    """Brackets of the same element under two faithful states of one
    algebra: the configured one and the trace, or a seeded perturbation of
    the trace when the configured state is the trace. Whether L^p(M, phi)
    depends on phi is open, so the largest ``|log ratio|`` of the bracket
    midpoints is reported as an observation."""
    SUITE = 'independence'

    def checks(self, rng) -> List[CheckReport]:
        phi = self.state_functional
        alg = self.jordan_algebra
        other = StateFunctional.trace(alg)
        if phi.density.allclose(alg.one(), tol=1e-12):
            other = perturbed_state(alg, rng)
        out = []
        for p in self.bracket_ps:
            first, second = CoupleSpec(phi, 1. / p), CoupleSpec(other, 1. / p)
            report = CheckReport(name=f"state_independence[p={p:g}]",
                                 anchor="is L^p(M, phi) independent of phi?",
                                 tolerance=0., exploratory=True)
            for _ in range(self.samples):
                x = random_element(alg, 'ball', rng)
                a, b = bracket(x, first, self.budget, rng), bracket(x, second, self.budget, rng)
                ratio = a.midpoint / b.midpoint if b.midpoint > 0 else math.inf
                report.record(abs(math.log(ratio)) if 0 < ratio < math.inf else math.inf,
                              lambda: element_witness(x, ratio=ratio, first=a.to_dict(),
                                                      second=b.to_dict(), other_state=other.name))
                report.inconclusive += int(a.inconclusive or b.inconclusive)
            out.append(report)
        return out
