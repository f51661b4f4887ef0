#!/usr/bin/env python3
"""
The explicit pairing on Q_3(ζ_3) and its series extension, the precision
controller and the tame symbol.
"""

import os
import random

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'reciprocity.settings')
django.setup()

from django.test import SimpleTestCase

from symbols.exceptions import ShapeError
from symbols.field_model import (cyclotomic_spec, lift_element, parse_element, random_element, random_unit,
                                 relift_random)
from symbols.laurent_series import residue
from symbols.oracles import artin_hasse_pi, artin_hasse_zeta, kummer_exponent, sen_exponent
from symbols.vostokov_pairing import (LiftedElement, PrecisionPlan, initial_plan, l_op, phi_form, series_weights,
                                      tame_symbol, vostokov_exponent, vostokov_exponent_of_series)


class PlanTests(SimpleTestCase):

    def test_initial_plan(self):
        spec = cyclotomic_spec(3, 1)
        plan = initial_plan(spec, (1,))
        self.assertEqual((plan.N, plan.window, plan.step), (3, 9, 2))

    def test_growth_schedule(self):
        plan = PrecisionPlan(N=3, window=9, weights=(1,), growth=2, step=2)
        grown = plan.grown()
        self.assertEqual((grown.N, grown.window), (5, 18))
        self.assertEqual(grown.describe(), {'N': 5, 'window': 18, 'weights': [1]})

    def test_weights_make_principal_monomials_positive(self):
        spec = cyclotomic_spec(3, 1, 2)
        x = parse_element('1 + pi*t1^-1', spec)
        lift = LiftedElement.from_series(lift_element(x))
        self.assertEqual(series_weights(spec, [lift]), (1, 2))
        self.assertEqual(series_weights(cyclotomic_spec(3, 1), []), (1,))


class LiftedElementTests(SimpleTestCase):

    def setUp(self):
        self.spec = cyclotomic_spec(3, 1)

    def test_split_of_a_unit_times_pi(self):
        lift = LiftedElement.from_series(lift_element(parse_element('-pi', self.spec)))
        self.assertEqual(lift.exponents, (1,))
        self.assertEqual(self.spec.ring.reduce(lift.theta, 1), (2,))
        self.assertEqual(set(lift.principal.coeffs), {(0,)})

    def test_l_operator_kills_monomials(self):
        lift = LiftedElement.from_series(lift_element(parse_element('pi', self.spec)))
        self.assertTrue(l_op(lift, 9).is_zero())

    def test_phi_vanishes_when_every_l_term_does(self):
        lift = LiftedElement.from_series(lift_element(parse_element('pi', self.spec)))
        self.assertTrue(residue(phi_form([lift, lift], 9)).is_zero())

    def test_phi_arity(self):
        lift = LiftedElement.from_series(lift_element(parse_element('pi', self.spec)))
        with self.assertRaises(ShapeError):
            phi_form([lift], 9)


class PairingTests(SimpleTestCase):

    def setUp(self):
        self.spec = cyclotomic_spec(3, 1)

    def symbol(self, *texts, sign=1):
        return vostokov_exponent([parse_element(t, self.spec) for t in texts], self.spec, sign=sign)

    def test_zeta_against_one_minus_pi(self):
        result = self.symbol('z', '1-pi')
        self.assertEqual(result.value, 2)
        self.assertEqual(result.modulus, 3)
        self.assertEqual(result.weights, (1,))

    def test_antisymmetry_of_the_pinned_pair(self):
        self.assertEqual(self.symbol('1-pi', 'z').value, 1)

    def test_global_sign_negates(self):
        result = self.symbol('z', '1-pi', sign=-1)
        self.assertEqual(result.value, 1)
        self.assertEqual(result.sign, -1)

    def test_trivial_second_argument(self):
        self.assertEqual(self.symbol('pi', '1').value, 0)

    def test_steinberg_relation(self):
        self.assertEqual(self.symbol('pi', '1-pi').value, 0)

    def test_stabilization_provenance(self):
        result = self.symbol('z', '1-pi')
        self.assertGreaterEqual(result.attempts, 2)
        self.assertGreaterEqual(result.stabilized_at[0], 3)

    def test_arity_and_zero_arguments(self):
        with self.assertRaises(ShapeError):
            self.symbol('z')
        with self.assertRaises(ShapeError):
            self.symbol('z', '0')

    def test_two_dimensional_arity(self):
        spec = cyclotomic_spec(3, 1, 2)
        with self.assertRaises(ShapeError):
            vostokov_exponent([spec.t1(), spec.pi()], spec)


class TameSymbolTests(SimpleTestCase):

    def test_square_classes_at_three(self):
        spec = cyclotomic_spec(3, 1)
        pi, two, one = (parse_element(t, spec) for t in ('pi', '2', '1'))
        self.assertEqual(tame_symbol(pi, pi, 2), 1)
        self.assertEqual(tame_symbol(two, pi, 2), 1)
        self.assertEqual(tame_symbol(one, pi, 2), 0)

    def test_antisymmetric_at_five(self):
        spec = cyclotomic_spec(5, 1)
        pi, two = parse_element('pi', spec), parse_element('2', spec)
        self.assertEqual(tame_symbol(two, pi, 4), 1)
        self.assertEqual(tame_symbol(pi, two, 4), 3)

    def test_order_must_divide_q_minus_one(self):
        spec = cyclotomic_spec(5, 1)
        pi = parse_element('pi', spec)
        with self.assertRaises(ShapeError):
            tame_symbol(pi, pi, 3)
        with self.assertRaises(ShapeError):
            tame_symbol(pi, pi, 5)


class ClassicalFormulaAgreementTests(SimpleTestCase):

    def test_kummer(self):
        rng = random.Random(11)
        for p in (3, 5):
            spec = cyclotomic_spec(p, 1)
            for _ in range(3):
                eps, eta = random_unit(spec, rng, principal=True), random_unit(spec, rng, principal=True)
                self.assertEqual(vostokov_exponent([eps, eta], spec).value,
                                 kummer_exponent(lift_element(eps), lift_element(eta), p))

    def test_artin_hasse_zeta_pairs_epsilon_first(self):
        rng = random.Random(12)
        for p, m in ((3, 1), (3, 2), (5, 1)):
            spec = cyclotomic_spec(p, m)
            for _ in range(2):
                eps = random_unit(spec, rng, principal=True)
                self.assertEqual(vostokov_exponent([eps, spec.zeta()], spec).value, artin_hasse_zeta(eps, spec))

    def test_artin_hasse_pi_pairs_pi_first(self):
        rng = random.Random(13)
        for p, m in ((3, 1), (3, 2), (5, 1)):
            spec = cyclotomic_spec(p, m)
            for _ in range(2):
                eps = random_unit(spec, rng, principal=True)
                expected = artin_hasse_pi(eps, spec)
                self.assertEqual(vostokov_exponent([spec.pi(), eps], spec).value, expected)
                self.assertEqual(vostokov_exponent([eps, spec.pi()], spec).value, -expected % spec.pm)

    def test_sen_pairs_beta_first(self):
        rng = random.Random(14)
        spec = cyclotomic_spec(3, 1)
        for beta in (spec.pi(), spec.zeta(), random_unit(spec, rng), random_unit(spec, rng)):
            alpha = random_unit(spec, rng, principal=True, level=2)
            self.assertEqual(vostokov_exponent([beta, alpha], spec).value, sen_exponent(alpha, beta, spec))


class RandomLiftTests(SimpleTestCase):

    def test_value_does_not_depend_on_the_lift(self):
        rng = random.Random(15)
        for p in (3, 5):
            spec = cyclotomic_spec(p, 1)
            for _ in range(3):
                xs = [random_element(spec, rng, exponent_range=(-1, 1)) for _ in range(2)]
                expected = vostokov_exponent(xs, spec).value
                lifts = [relift_random(x, rng) for x in xs]
                self.assertEqual(vostokov_exponent_of_series(lifts, spec).value, expected)


class TwoDimensionalAxiomTests(SimpleTestCase):

    def setUp(self):
        self.spec = cyclotomic_spec(3, 1, 2)

    def symbol(self, *texts):
        return vostokov_exponent([parse_element(t, self.spec) for t in texts], self.spec).value

    def test_steinberg(self):
        self.assertEqual(self.symbol('t1', '1-t1', 'pi'), 0)
        self.assertEqual(self.symbol('1+pi', 'pi', '-pi'), 0)

    def test_multilinear_in_each_slot(self):
        x, y, u, w = '1+pi', 't1', 'pi', '1+t1'
        self.assertEqual(self.symbol(f'({x})*({y})', u, w), (self.symbol(x, u, w) + self.symbol(y, u, w)) % 3)
        self.assertEqual(self.symbol(u, w, f'({x})*({y})'), (self.symbol(u, w, x) + self.symbol(u, w, y)) % 3)

    def test_antisymmetry(self):
        for xs in (('t1', 'pi', '1+t1'), ('z', 't1', '1+pi*t1^-1')):
            swapped = (xs[1], xs[0], xs[2])
            self.assertEqual((self.symbol(*xs) + self.symbol(*swapped)) % 3, 0)
