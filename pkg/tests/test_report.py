import json
import math

import pytest
import numpy as np

from jordanlp.checks import CheckReport
from jordanlp.report import (VerificationReport, merge_entries, jsonable, config_digest)
from jordanlp.utils.digest import canonical_json, dumps, format_float


def entry(name, violation=0., suite='axioms', tol=1e-10, **kwargs):
    e = CheckReport(name=name, anchor=f"{name} holds", tolerance=tol, suite=suite, **kwargs)
    e.record(violation, lambda: {'violation': violation})
    return e


class TestCheckReport:

    @pytest.mark.parametrize('violation, exploratory, expected', [
        (0., False, 'pass'),
        (1e-3, False, 'fail'),
        (1e-3, True, 'observed'),
    ])
    def test_status(self, violation, exploratory, expected):
        assert entry('x', violation, exploratory=exploratory).status == expected

    def test_inconclusive(self):
        e = entry('x')
        e.inconclusive = 1
        assert e.status == 'inconclusive'

    def test_unsupported_wins(self):
        e = entry('x', 1.).mark_unsupported('no norm')
        assert e.status == 'unsupported'

    def test_nan_is_worst(self):
        e = entry('x', float('nan'))
        assert math.isinf(e.max_violation)
        assert e.status == 'fail'

    def test_witness_only_past_tolerance(self):
        assert entry('x', 0.).witness is None
        assert entry('x', 1.).witness == {'violation': 1.}

    def test_merge(self):
        a, b = entry('x', 1e-12), entry('x', 1e-3)
        m = a.merge(b)
        assert m.instances == 2
        assert m.max_violation == 1e-3
        assert m.witness == {'violation': 1e-3}

    def test_merge_other_key(self):
        with pytest.raises(ValueError):
            entry('x').merge(entry('y'))

    def test_dict_round_trip(self):
        e = entry('x', math.inf)
        assert CheckReport.from_dict(json.loads(json.dumps(e.to_dict()))) == e


class TestMerge:

    def test_associative(self):
        batches = [[entry('a', 0.1), entry('b', 0.)], [entry('a', 0.3)], [entry('b', 0.2)]]
        left = merge_entries(merge_entries(*batches[:2]), batches[2])
        right = merge_entries(batches[0], merge_entries(*batches[1:]))
        assert [e.to_dict() for e in left] == [e.to_dict() for e in right]

    def test_sorted_by_suite_then_name(self):
        merged = merge_entries([entry('b', suite='lp'), entry('z', suite='axioms'), entry('a', suite='lp')])
        assert [e.key for e in merged] == [('axioms', 'z'), ('lp', 'a'), ('lp', 'b')]


class TestVerificationReport:

    @pytest.mark.parametrize('violations, inconclusive, status, code', [
        ([], 0, 'pass', 0),
        ([0., 0.], 0, 'pass', 0),
        ([0., 1.], 0, 'fail', 2),
        ([0., 0.], 1, 'inconclusive', 3),
        ([1., 0.], 1, 'fail', 2),
    ])
    def test_exit_code(self, violations, inconclusive, status, code):
        entries = [entry(f"c{i}", v) for i, v in enumerate(violations)]
        if inconclusive:
            entries.append(entry('bracket', inconclusive=inconclusive))
        report = VerificationReport(entries)
        assert report.status == status
        assert report.exit_code == code

    def test_observed_does_not_fail(self):
        report = VerificationReport([entry('window', 5., exploratory=True)])
        assert report.exit_code == 0
        assert report.counts()['observed'] == 1

    def test_json_round_trip(self):
        report = VerificationReport([entry('a', 1e-3), entry('b', math.inf, suite='lp')],
                                    config_digest='abc', seed=7, runtime_s=1.5)
        again = VerificationReport.from_json(report.to_json())
        assert again.status == "fail"
        assert again.entries[1].max_violation == math.inf
        assert again.to_json() == report.to_json()

    def test_schema_version(self):
        d = VerificationReport().to_dict()
        d['schema_version'] = 2
        with pytest.raises(ValueError):
            VerificationReport.from_dict(d)

    def test_digest_ignores_runtime(self):
        a = VerificationReport([entry('a')], runtime_s=1.)
        b = VerificationReport([entry('a')], runtime_s=2.)
        assert a.deterministic_digest() == b.deterministic_digest()

    def test_grouped_by_suite(self):
        report = VerificationReport([entry('a', suite='lp'), entry('b', suite='axioms')])
        assert list(report.suites()) == ['axioms', 'lp']


class TestJsonable:

    @pytest.mark.parametrize('value, expected', [
        (np.float64(1.5), 1.5),
        (np.int64(3), 3),
        (np.bool_(True), True),
        (math.inf, 'inf'),
        (-math.inf, '-inf'),
        (1 + 2j, {'re': 1., 'im': 2.}),
        ({1: (np.nan,)}, {'1': ['nan']}),
    ])
    def test_values(self, value, expected):
        assert jsonable(value) == expected

    def test_config_digest_is_order_free(self):
        assert config_digest({'a': 1, 'b': [1., 2.]}) == config_digest({'b': [1., 2.], 'a': 1})



class TestFloatText:

    @pytest.mark.parametrize('value, text', [
        (0.1, '0.10000000000000001'),
        (0.5, '0.5'),
        (1., '1.0'),
        (-0., '-0.0'),
        (1. / 3., '0.33333333333333331'),
    ])
    def test_seventeen_digits(self, value, text):
        assert format_float(value) == text

    def test_canonical_json(self):
        assert canonical_json({'b': [0.1, 2], 'a': True}) == '{"a":true,"b":[0.10000000000000001,2]}'

    def test_reads_back_bit_exact(self, rng):
        values = list(rng.standard_normal(50) * 10. ** rng.integers(-300, 300, 50))
        assert json.loads(dumps(values, indent=2)) == values

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            canonical_json([math.nan])

    def test_report_text(self):
        report = VerificationReport([entry('x', 0.1)], config_digest='c', seed=1)
        assert '"max_violation": 0.10000000000000001' in report.to_json()
