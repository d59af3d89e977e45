import logging
import math
from typing import List

import numpy as np
import xsimlab as xs

from ..checks import CheckReport
from ..errors import UnsupportedKind
from ..interp import BracketBudget, NormBracket
from ..utils.rng import suite_rng


@xs.process
class CheckSuite:
    """Base process of a verification suite. Each batch, `run_step` draws a
    Philox generator from the batch seed state and the suite name, runs
    `checks` and publishes the resulting entries in the `check_entries`
    group for the report assembler.
    """
    SUITE = ''

    jordan_algebra = xs.global_ref('jordan_algebra', intent='in')
    state_functional = xs.global_ref('state_functional', intent='in')
    p_grid = xs.global_ref('p_grid', intent='in')
    seed_state = xs.global_ref('seed_state', intent='in')
    batch_size = xs.variable(static=True, intent='in', default=20,
                             description='samples per check per batch')
    entries = xs.variable(intent='out', groups=['check_entries'])

    def initialize(self):
        self.entries = []

    def run_step(self):
        rng = suite_rng(int(self.seed_state), self.SUITE)
        try:
            entries = self.checks(rng)
        except UnsupportedKind as err:
            logging.info(f"suite {self.SUITE} does not apply to {self.jordan_algebra.label}: {err}")
            entries = [CheckReport(name=self.SUITE, anchor='suite applicability')
                       .mark_unsupported(str(err))]
        for entry in entries:
            entry.suite = self.SUITE
        self.entries = entries

    def checks(self, rng: np.random.Generator) -> List[CheckReport]:
        raise NotImplementedError()

    @property
    def samples(self) -> int:
        return int(self.batch_size)

    @property
    def ps(self) -> List[float]:
        return [float(p) for p in np.atleast_1d(np.asarray(self.p_grid, dtype=float))]

    @property
    def finite_ps(self) -> List[float]:
        return [p for p in self.ps if math.isfinite(p)]

    def needs_trace(self, entries: List[CheckReport], name: str, anchor: str) -> bool:
        """Append an unsupported entry and return False unless the configured
        state is tracial."""
        phi = self.state_functional
        if phi.tracial:
            return True
        entries.append(CheckReport(name=name, anchor=anchor).mark_unsupported(
            f"{phi.name} is not tracial on {self.jordan_algebra.label}"))
        return False


@xs.process
class BracketSuite(CheckSuite):
    """Suites whose instances are interpolation brackets; the samples are few
    and the bracket budget is configurable."""
    batch_size = xs.variable(static=True, intent='in', default=2,
                             description='bracketed elements per exponent per batch')
    target_ratio = xs.variable(static=True, intent='in', default=1.05,
                               description='stop escalating once upper/lower reaches this')
    max_degree = xs.variable(static=True, intent='in', default=16,
                             description='largest candidate degree tried')

    @property
    def budget(self) -> BracketBudget:
        degrees = tuple(d for d in (2, 4, 8, 16, 32) if d <= int(self.max_degree)) or (2,)
        return BracketBudget(degrees=degrees, target_ratio=float(self.target_ratio))

    @property
    def bracket_ps(self) -> List[float]:
        """Exponents with an interior interpolation parameter 1/p."""
        return [p for p in self.finite_ps if p > 1.]


def outside(br: NormBracket, value: float) -> float:
    """Relative distance of `value` from the bracket, 0 when inside."""
    return max(br.lower - value, value - br.upper, 0.) / max(abs(value), 1e-300)


def record_bracket(report: CheckReport, br: NormBracket, value: float, witness) -> None:
    """Record containment of an oracle value; unconverged brackets that miss
    nothing count as inconclusive. Crossed bounds are recorded as a violation
    of their own size."""
    crossed = max(br.lower - br.upper, 0.) / max(abs(value), 1e-300)
    report.record(max(outside(br, value), crossed), witness)
    if br.inconclusive:
        report.inconclusive += 1
