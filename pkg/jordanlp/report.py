"""Verification reports: the JSON document a campaign emits, its exit code
and the process that merges suite entries across batches."""
import json
import logging
import math
import numbers
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import xsimlab as xs

from .checks import CheckReport, STATUSES
from .utils.digest import canonical_json, digest, dumps

SCHEMA_VERSION = 1
EXIT_CODES = {'pass': 0, 'config_error': 1, 'fail': 2, 'inconclusive': 3}


def jsonable(obj):
    """Plain JSON types; non-finite floats become the strings
    ``'inf'``, ``'-inf'`` and ``'nan'``."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, numbers.Real):
        v = float(obj)
        if math.isnan(v):
            return 'nan'
        if math.isinf(v):
            return 'inf' if v > 0 else '-inf'
        return v
    if isinstance(obj, numbers.Complex):
        return {'re': jsonable(obj.real), 'im': jsonable(obj.imag)}
    return obj


def config_digest(config: dict) -> str:
    return digest(jsonable(config))


def sort_entries(entries) -> List[CheckReport]:
    return sorted(entries, key=lambda e: (e.suite, e.name))


def merge_entries(*batches) -> List[CheckReport]:
    """Merge entries with the same (suite, name) key across batches."""
    merged: Dict[tuple, CheckReport] = {}
    for entries in batches:
        for entry in entries:
            if entry.key in merged:
                merged[entry.key] = merged[entry.key].merge(entry)
            else:
                merged[entry.key] = entry
    return sort_entries(merged.values())


@dataclass
class VerificationReport:
    entries: List[CheckReport] = field(default_factory=list)
    config_digest: str = ''
    seed: Optional[int] = None
    runtime_s: float = 0.
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        self.entries = sort_entries(self.entries)

    def counts(self) -> Dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for e in self.entries:
            out[e.status] += 1
        return out

    @property
    def status(self) -> str:
        counts = self.counts()
        if counts['fail']:
            return 'fail'
        if counts['inconclusive']:
            return 'inconclusive'
        return 'pass'

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def suites(self) -> Dict[str, List[CheckReport]]:
        out: Dict[str, List[CheckReport]] = {}
        for e in self.entries:
            out.setdefault(e.suite, []).append(e)
        return out

    def to_dict(self, runtime: bool = True) -> dict:
        d = {
            'schema_version': self.schema_version,
            'config_digest': self.config_digest,
            'seed': self.seed,
            'status': self.status,
            'counts': self.counts(),
            'entries': [e.to_dict() for e in self.entries],
        }
        if runtime:
            d['runtime_s'] = self.runtime_s
        return jsonable(d)

    def to_json(self, indent: int = 2) -> str:
        return dumps(self.to_dict(), indent=indent)

    def deterministic_digest(self) -> str:
        """Digest of everything but the runtime."""
        return digest(self.to_dict(runtime=False))

    @classmethod
    def from_dict(cls, d: dict) -> 'VerificationReport':
        version = d.get('schema_version')
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema_version {version!r}; "
                             f"expected {SCHEMA_VERSION}")
        return cls(entries=[CheckReport.from_dict(e) for e in d.get('entries', [])],
                   config_digest=d.get('config_digest', ''), seed=d.get('seed'),
                   runtime_s=float(d.get('runtime_s', 0.)), schema_version=version)

    @classmethod
    def from_json(cls, s: str) -> 'VerificationReport':
        return cls.from_dict(json.loads(s))


@xs.process
class ReportAssembler:
    """Merges the `check_entries` group across batches. The merged entries
    are serialized after every batch so that the document is complete when
    the final snapshot is taken."""
    _entries = xs.group_dict('check_entries')
    document = xs.variable(intent='out', description='merged entries as canonical JSON')
    batch_worst = xs.variable(intent='out',
                              description='largest violation recorded in the batch')

    def initialize(self):
        self.merged = []
        self.document = canonical_json([])
        self.batch_worst = 0.

    def finalize_step(self):
        batch = [entries for _, entries in sorted(self._entries.items())]
        worst = [e.max_violation for entries in batch for e in entries if not e.unsupported]
        self.batch_worst = float(min(max(worst, default=0.), np.finfo(float).max))
        self.merged = merge_entries(self.merged, *batch)
        self.document = canonical_json([jsonable(e.to_dict()) for e in self.merged])
        logging.debug(f"merged {len(self.merged)} check entries")


def entries_from_document(document: str) -> List[CheckReport]:
    return [CheckReport.from_dict(d) for d in json.loads(document)]
