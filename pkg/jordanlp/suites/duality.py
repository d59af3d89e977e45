from typing import List

import xsimlab as xs

from .base import CheckSuite
from ..checks import CheckReport
from ..lp_norms import dual_attainment_check


@xs.process
class DualitySuite(CheckSuite):
    """Attainment of the L^p norm by the trace pairing against the unit ball
    of L^{p*}, on selfadjoint samples."""
    SUITE = 'duality'
    batch_size = xs.variable(static=True, intent='in', default=5,
                             description='selfadjoint samples per exponent per batch')

    def checks(self, rng) -> List[CheckReport]:
        out = []
        if not self.needs_trace(out, 'dual_attainment', "(L^p)* = L^{p*} under tau(x o y)"):
            return out
        return [dual_attainment_check(self.state_functional, p, samples=self.samples, rng=rng)
                for p in self.ps]
