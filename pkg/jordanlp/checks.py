"""Check entries produced by every property check and merged by the campaign
report."""
import math
from dataclasses import dataclass, field, asdict
from typing import Callable, Optional

import numpy as np

STATUSES = ('pass', 'fail', 'observed', 'inconclusive', 'unsupported')


@dataclass
class CheckReport:
    """Running maximum of a nonnegative violation over sampled instances.

    `exploratory` entries record violations with status ``'observed'``
    instead of ``'fail'``: they test statements that are conjectured rather
    than proven for the kind at hand.
    """
    name: str
    anchor: str
    tolerance: float = 1e-10
    suite: str = ''
    instances: int = 0
    max_violation: float = 0.
    exploratory: bool = False
    unsupported: bool = False
    inconclusive: int = 0
    witness: Optional[dict] = None
    note: str = ''

    def record(self, violation: float, witness: Callable[[], dict] = None) -> None:
        """Record one instance. `witness` is called only when the instance
        becomes the worst one seen and exceeds the tolerance."""
        self.instances += 1
        violation = float(violation)
        if math.isnan(violation):
            violation = math.inf
        if violation > self.max_violation or self.instances == 1:
            self.max_violation = max(violation, 0.)
            if violation > self.tolerance and witness is not None:
                self.witness = witness()

    def mark_unsupported(self, note: str) -> 'CheckReport':
        self.unsupported = True
        self.note = note
        return self

    @property
    def status(self) -> str:
        if self.unsupported:
            return 'unsupported'
        if self.max_violation > self.tolerance:
            return 'observed' if self.exploratory else 'fail'
        if self.inconclusive:
            return 'inconclusive'
        return 'pass'

    @property
    def key(self) -> tuple:
        return (self.suite, self.name)

    def merge(self, other: 'CheckReport') -> 'CheckReport':
        """Combine two entries for the same check. Associative and
        commutative up to witness choice on exact ties."""
        if self.key != other.key:
            raise ValueError(f"cannot merge check {other.key} into {self.key}")
        merged = CheckReport(
            name=self.name, anchor=self.anchor, suite=self.suite,
            tolerance=min(self.tolerance, other.tolerance),
            instances=self.instances + other.instances,
            max_violation=max(self.max_violation, other.max_violation),
            exploratory=self.exploratory and other.exploratory,
            unsupported=self.unsupported and other.unsupported,
            inconclusive=self.inconclusive + other.inconclusive,
            note=self.note or other.note,
        )
        if other.max_violation > self.max_violation:
            merged.witness = other.witness
        else:
            merged.witness = self.witness if self.witness is not None else other.witness
        return merged

    def to_dict(self) -> dict:
        d = asdict(self)
        d['status'] = self.status
        if math.isinf(d['max_violation']):
            d['max_violation'] = 'inf'
        return d

    @classmethod
    def from_dict(cls, d: dict) -> 'CheckReport':
        d = dict(d)
        d.pop('status', None)
        if d.get('max_violation') == 'inf':
            d['max_violation'] = math.inf
        return cls(**d)


def element_witness(x, **extra) -> dict:
    """JSON-ready description of an element for failure witnesses."""
    coords = np.asarray(x.coords)
    d = {
        'algebra': x.algebra.label,
        'coords_re': [float(v) for v in coords.real],
        'coords_im': [float(v) for v in coords.imag],
    }
    d.update({k: (float(v) if isinstance(v, (float, np.floating)) else v)
              for k, v in extra.items()})
    return d
