#!/usr/bin/env python3
"""
Management commands: JSON results on stdout and exit codes.
"""

import json
import os
from io import StringIO

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'reciprocity.settings')
django.setup()

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from symbols.cli import run
from symbols.serializers import SCHEMA, TUPLE_ORDER

HILBERT_SYMBOL = {
    'GLOBAL_SIGN': 1,
    'MAX_RETRIES': 5,
    'WINDOW_GROWTH': 2,
    'FIELD_PRECISION_EXTRA': 6,
    'BASIS_T1_BOUND': 2,
    'NORM_SAMPLES': 400,
}


@override_settings(HILBERT_SYMBOL=HILBERT_SYMBOL)
class CommandOutputTests(SimpleTestCase):

    def call(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, **options)
        return json.loads(out.getvalue())

    def test_symbol(self):
        data = self.call('symbol', 'z', '1-pi', p=3, m=1)
        self.assertEqual(data['schema'], SCHEMA)
        self.assertEqual(data['tuple_order'], TUPLE_ORDER)
        self.assertEqual(data['exponent'], 2)
        self.assertEqual(data['modulus'], 3)
        self.assertEqual(data['sign'], 1)
        self.assertEqual(data['field']['p'], 3)
        self.assertEqual(data['field']['minpoly'], [3, 3, 1])
        self.assertEqual(data['plan']['weights'], [1])
        self.assertEqual(data['arguments'], ['z', '1-pi'])

    def test_kummer(self):
        data = self.call('kummer', '1+pi', '1-pi', p=3)
        self.assertEqual(data['exponent'], 2)
        self.assertIsNone(data['plan']['window'])

    def test_artin_hasse(self):
        self.assertEqual(self.call('artin_hasse', '1-pi', partner='zeta')['exponent'], 1)
        self.assertEqual(self.call('artin_hasse', '1-pi', partner='pi')['exponent'], 0)

    def test_tame(self):
        data = self.call('tame', '2', 'pi', p=3, l=2)
        self.assertEqual((data['exponent'], data['modulus']), (1, 2))

    def test_basis_without_verification(self):
        data = self.call('basis', p=3)
        self.assertEqual([eps['label'] for eps in data['epsilons']], ['eps[1][0]', 'eps[2][0]'])
        self.assertEqual(data['level'], 3)
        self.assertEqual(data['orthogonality'], [])
        self.assertIsNone(data['all_passed'])

    def test_decompose(self):
        data = self.call('decompose', '1+pi', p=3)
        self.assertEqual(data['vector'], [0, 1, 0, 0])
        self.assertTrue(data['reconstructs'])

    def test_verify_pinned(self):
        data = self.call('verify', suite='pinned', trials=1, seed=0)
        self.assertEqual(data['suite'], 'pinned')
        self.assertTrue(data['passed'])
        self.assertEqual(data['failures'], 0)
        self.assertEqual(data['checks'], 3)

    def test_verify_dual_covers_every_case_whatever_the_trial_count(self):
        once = self.call('verify', suite='dual', trials=1, seed=0)
        thrice = self.call('verify', suite='dual', trials=3, seed=0)
        self.assertTrue(once['passed'])
        self.assertEqual(once['checks'], thrice['checks'])
        # four cases at n = 1 alone
        self.assertGreater(once['checks'], 4)

    def test_verify_orthogonality_covers_every_field(self):
        data = self.call('verify', suite='orthogonality', trials=1, seed=0)
        self.assertTrue(data['passed'])
        # Q_3(ζ_3) alone contributes three checks
        self.assertGreater(data['checks'], 3)


@override_settings(HILBERT_SYMBOL=HILBERT_SYMBOL)
class ExitCodeTests(SimpleTestCase):

    def assertReturnCode(self, code, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            call_command(*args, stdout=StringIO(), **options)
        self.assertEqual(ctx.exception.returncode, code)

    def test_wrong_arity_is_a_usage_error(self):
        self.assertReturnCode(2, 'symbol', 'z')

    def test_bad_element_is_a_usage_error(self):
        self.assertReturnCode(2, 'symbol', 'z', 'foo')

    def test_field_kind_must_match_dimension(self):
        self.assertReturnCode(2, 'symbol', 't1', 'pi', 'z', n=2, field='cyclotomic')

    def test_tame_order_must_divide_q_minus_one(self):
        self.assertReturnCode(2, 'tame', '2', 'pi', p=3, l=3)

    def test_invalid_trial_count(self):
        self.assertReturnCode(2, 'verify', suite='pinned', trials=0)


@override_settings(HILBERT_SYMBOL=HILBERT_SYMBOL)
class RunTests(SimpleTestCase):

    def test_alias_and_success(self):
        self.assertEqual(run(['artin-hasse', '--p', '3', '--with', 'zeta', '1-pi']), 0)

    def test_usage_error_exit_code(self):
        self.assertEqual(run(['symbol', 'z']), 2)


class SettingsTests(SimpleTestCase):

    def test_only_the_renderer_and_symbols_apps(self):
        self.assertEqual(settings.INSTALLED_APPS, ['rest_framework', 'symbols'])
