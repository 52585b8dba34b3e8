import json
import math
import unittest

import numpy as np

from rqbounds import __version__
from rqbounds.bounds import BoundReport, bound_catalogue
from rqbounds.core_linalg import HermitianOperator
from rqbounds.experiments import sin_theta_counterexample
from rqbounds.report import build_payload, certified, format_float, to_json, to_text


class TestFormatFloat(unittest.TestCase):
    def test_digits(self) -> None:
        """Test 17 significant digits"""
        self.assertEqual(format_float(0.1), '0.10000000000000001')
        self.assertEqual(format_float(1 / 3), '0.33333333333333331')

    def test_integral(self) -> None:
        """Test that integral floats keep a decimal point"""
        self.assertEqual(format_float(2.0), '2.0')
        self.assertEqual(format_float(1e20), '1e+20')

    def test_non_finite(self) -> None:
        """Test that NaN and infinities become null"""
        for value in (math.nan, math.inf, -math.inf):
            self.assertEqual(format_float(value), 'null')


class TestPayload(unittest.TestCase):
    def setUp(self) -> None:
        A = HermitianOperator.diagonal([1, 0, -1])
        self.reports = bound_catalogue(A, [1, 1, 1])
        self.payload = build_payload('bounds', {'dimension': 3}, self.reports)

    def test_schema(self) -> None:
        """Test the top-level keys and the report record keys"""
        self.assertEqual(list(self.payload), ['tool_version', 'command', 'inputs', 'reports'])
        self.assertEqual(self.payload['tool_version'], __version__)
        record = self.payload['reports'][0]
        self.assertEqual(list(record)[:8],
                         ['bound_name', 'lhs', 'rhs', 'holds', 'equality', 'skipped', 'reason', 'ingredients'])

    def test_json_parses(self) -> None:
        """Test that the JSON output is valid with nulls for skipped sides"""
        data = json.loads(to_json(self.payload))
        self.assertEqual(data['reports'][0]['bound_name'], 'krylov_weinstein')
        skipped = [r for r in data['reports'] if r['skipped']]
        self.assertTrue(skipped)
        self.assertIsNone(skipped[0]['lhs'])

    def test_json_stable(self) -> None:
        """Test that serialization is deterministic"""
        self.assertEqual(to_json(self.payload), to_json(build_payload('bounds', {'dimension': 3}, self.reports)))

    def test_numpy_scalars(self) -> None:
        """Test that numpy scalars serialize like Python numbers"""
        text = to_json({'a': np.float64(0.5), 'b': np.int64(3), 'c': np.bool_(True)})
        self.assertEqual(json.loads(text), {'a': 0.5, 'b': 3, 'c': True})

    def test_certified(self) -> None:
        """Test that skipped reports do not affect certification but a failing one does"""
        self.assertTrue(certified(self.payload))
        failing = build_payload('bounds', {}, [BoundReport.evaluate('b', 2.0, 1.0, {})])
        self.assertFalse(certified(failing))

    def test_text(self) -> None:
        """Test the text rendering of a bounds report"""
        text = to_text(self.payload)
        self.assertIn('krylov_weinstein', text)
        self.assertIn('skipped:', text)
        self.assertTrue(text.rstrip().endswith('CERTIFIED'))


class TestExperimentPayload(unittest.TestCase):
    def test_experiment(self) -> None:
        """Test that experiment scalars and checks are included"""
        result = sin_theta_counterexample()
        payload = build_payload('example', {'example': 'sin-theta'}, result.reports, result)
        self.assertTrue(payload['experiment']['passed'])
        self.assertIn('sin2_theta', payload['experiment']['scalars'])
        self.assertNotIn('table', payload['experiment'])
        text = to_text(payload)
        self.assertIn('[x] naive_violated', text)
        self.assertNotIn('NOT CERTIFIED', text)


if __name__ == '__main__':
    unittest.main()
