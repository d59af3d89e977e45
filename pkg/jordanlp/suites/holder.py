import itertools
from typing import List

import xsimlab as xs

from .base import CheckSuite
from ..checks import CheckReport
from ..lp_norms import holder_check, holder_exponent, module_action_check


@xs.process
class HolderSuite(CheckSuite):
    """Holder's inequality for the Jordan product over every admissible pair
    of the exponent grid, and the contractive L^inf module action, on
    selfadjoint pairs. Violations on the nonassociative kinds, and on the
    complex pairs sampled for matrix-represented kinds, are recorded as
    observations."""
    SUITE = 'holder'

    def checks(self, rng) -> List[CheckReport]:
        phi = self.state_functional
        out = []
        if not self.needs_trace(out, 'holder', "||h o k||_r <= ||h||_p ||k||_q"):
            return out
        n = self.samples
        distributions = ['selfadjoint', 'ball'] if self.jordan_algebra.represented else ['selfadjoint']
        for distribution in distributions:
            for p, q in itertools.combinations_with_replacement(sorted(set(self.ps)), 2):
                if holder_exponent(p, q) >= 1.:
                    out.append(holder_check(phi, p, q, samples=n, rng=rng,
                                            distribution=distribution))
            for p in self.ps:
                out.append(module_action_check(phi, p, samples=n, rng=rng,
                                               distribution=distribution))
        return out
