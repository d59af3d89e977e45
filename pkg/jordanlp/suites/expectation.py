from typing import List

import numpy as np
import xsimlab as xs

from .base import CheckSuite
from ..checks import CheckReport
from ..expect import (conditional_expectation, verify_expectation, canonical_projection,
                      lp_contractivity_check, l1_extension_check)
from ..spec_parse import parse_subalgebra


def _prefixed(entries: List[CheckReport], prefix: str) -> List[CheckReport]:
    for e in entries:
        e.name = f"{prefix}{e.name}"
    return entries


@xs.process
class ExpectationSuite(CheckSuite):
    """The trace-preserving conditional expectation onto a subalgebra: its
    defining properties, L^p contractivity and the L^1 extension. For
    ``fixed:`` subalgebras the canonical projection ``(Id + alpha)/2`` is
    checked as well and compared with the conditional expectation."""
    SUITE = 'expectation'
    subalgebra = xs.variable(static=True, intent='in', default='scalars',
                             description='scalars, diagonal, spin:<k> or fixed:transpose')

    def initialize(self):
        super().initialize()
        self.sub_basis, self.alpha = parse_subalgebra(str(self.subalgebra), self.jordan_algebra)

    def checks(self, rng) -> List[CheckReport]:
        tau = self.state_functional
        alg = self.jordan_algebra
        n = self.samples
        out = []
        if not self.needs_trace(out, 'expectation', "tau(Q(x) o y) = tau(x o y)"):
            return out
        Q = conditional_expectation(alg, self.sub_basis, tau, name=f"Q[{self.subalgebra}]")
        out += verify_expectation(Q, tau, samples=n, rng=rng)
        for p in self.ps:
            out += lp_contractivity_check(Q, tau, p, samples=n, rng=rng)
        out.append(l1_extension_check(Q, tau, samples=n, rng=rng))
        if self.alpha is None:
            return out

        P = canonical_projection(alg, self.alpha, tau)
        out += _prefixed(verify_expectation(P, tau, samples=n, rng=rng), 'canonical_')
        for p in self.ps:
            out += _prefixed(lp_contractivity_check(P, tau, p, samples=n, rng=rng), 'canonical_')
        agree = CheckReport(name='canonical_equals_expectation',
                            anchor="(Id + alpha)/2 is the trace-preserving expectation onto the fixed points",
                            tolerance=1e-10)
        agree.record(float(np.max(np.abs(P.matrix - Q.matrix))))
        out.append(agree)
        return out
