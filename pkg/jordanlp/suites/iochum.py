from typing import List

import xsimlab as xs

from .base import BracketSuite, record_bracket
from ..checks import CheckReport, element_witness
from ..errors import UnsupportedKind
from ..interp import CoupleSpec, bracket
from ..lp_norms import iochum_agreement_check, iochum_norm
from ..sampling import random_element


@xs.process
class IochumSuite(BracketSuite):
    """Iochum's norm ``(tau |x|^p)^(1/p)`` on selfadjoint elements: agreement
    with the functional-calculus norm on every kind, and containment in the
    interpolation bracket on matrix-represented kinds."""
    SUITE = 'iochum'
    agreement_samples = xs.variable(static=True, intent='in', default=20,
                                    description='selfadjoint samples per exponent for the agreement check')

    def checks(self, rng) -> List[CheckReport]:
        tau = self.state_functional
        alg = self.jordan_algebra
        out = []
        if not self.needs_trace(out, 'iochum', "(tau |x|^p)^(1/p) for selfadjoint x"):
            return out
        for p in self.ps:
            out.append(iochum_agreement_check(tau, p, samples=int(self.agreement_samples), rng=rng))
        for p in self.bracket_ps:
            report = CheckReport(name=f"iochum_embedding[p={p:g}]",
                                 anchor="L^{p,I} embeds isometrically in (M, M_*)_{1/p}",
                                 tolerance=1e-9)
            try:
                spec = CoupleSpec(tau, 1. / p)
            except UnsupportedKind as err:
                out.append(report.mark_unsupported(str(err)))
                continue
            for _ in range(self.samples):
                x = random_element(alg, 'selfadjoint', rng)
                br = bracket(x, spec, self.budget, rng)
                value = iochum_norm(x, tau, p).value
                record_bracket(report, br, value,
                               lambda: element_witness(x, iochum=value, bracket=br.to_dict()))
            out.append(report)
        return out
