import math
from typing import List

import xsimlab as xs

from .base import BracketSuite
from ..checks import CheckReport, element_witness
from ..interp import CoupleSpec, ricard_xu_comparison
from ..sampling import random_element


@xs.process
class RicardXuSuite(BracketSuite):
    """Ratio of the interpolation norm to ``||D^(1/p) x + x D^(1/p)||_p / 2``
    on a matrix-represented algebra. The two are equivalent up to constants
    that are not known numerically, so the observed window of ratios is
    reported rather than asserted: the recorded violation is the largest
    ``|log ratio|``."""
    SUITE = 'ricard_xu'

    def checks(self, rng) -> List[CheckReport]:
        phi = self.state_functional
        alg = self.jordan_algebra
        out = []
        for p in self.bracket_ps:
            spec = CoupleSpec(phi, 1. / p)
            report = CheckReport(name=f"ricard_xu_window[p={p:g}]",
                                 anchor="||x||_p ~ ||D^(1/p) x + x D^(1/p)||_p / 2",
                                 tolerance=0., exploratory=True)
            for _ in range(self.samples):
                x = random_element(alg, 'ball', rng)
                comp = ricard_xu_comparison(x, spec, self.budget, rng)
                ratio = comp['ratio']
                report.record(abs(math.log(ratio)) if ratio > 0 else math.inf,
                              lambda: element_witness(x, ratio=ratio, reference=comp['reference'],
                                                      midpoint=comp['midpoint']))
                if comp['bracket'].inconclusive:
                    report.inconclusive += 1
            out.append(report)
        return out
