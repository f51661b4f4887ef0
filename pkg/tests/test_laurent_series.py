#!/usr/bin/env python3
"""
Windowed Laurent series over W: arithmetic, inversion, logarithms, the
Artin–Hasse exponential and residues of differential forms.
"""

import os
from fractions import Fraction
from math import comb

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'reciprocity.settings')
django.setup()

from django.test import SimpleTestCase

from symbols.exceptions import ShapeError, WindowTooSmall
from symbols.laurent_series import (DiffForm, IterSeries, OneForm, artin_hasse_coefficients, delta_twist,
                                    derivative, dlog, exp_precision_loss, invert_s, invert_unit, log_unit,
                                    order_key, residue,
                                    series_arith, shafarevich_exp, twisted_derivative_over_p, wedge)
from symbols.witt_arith import make_ring


def series(ring, coeffs, n=1, prec=None, bound=None):
    prec = ring.N if prec is None else prec
    return IterSeries.make(ring, n, {k: ring.from_int(v, prec) for k, v in coeffs.items()}, prec, bound=bound)


class TupleOrderTests(SimpleTestCase):

    def test_last_coordinate_is_most_significant(self):
        self.assertEqual(order_key((1, 2)), (2, 1))
        self.assertLess(order_key((5, 0)), order_key((-3, 1)))

    def test_leading_exponent_uses_tuple_order(self):
        ring = make_ring(3, 1, 4)
        a = series(ring, {(5, 0): 1, (-3, 1): 1}, n=2)
        self.assertEqual(a.leading_exponent(), (5, 0))


class SeriesArithmeticTests(SimpleTestCase):

    def setUp(self):
        self.ring = make_ring(3, 1, 4)

    def test_product_of_polynomials(self):
        a = series(self.ring, {(0,): 1, (1,): 1})
        b = series(self.ring, {(0,): 1, (1,): -1})
        self.assertTrue((a * b).agrees_with(series(self.ring, {(0,): 1, (2,): -1})))

    def test_window_moves_with_the_valuation(self):
        a = series(self.ring, {(0,): 1, (1,): 2}, bound=5)
        x = series(self.ring, {(1,): 1})
        self.assertEqual((a * x).bound, 6)

    def test_coefficient_outside_window_raises(self):
        a = series(self.ring, {(0,): 1}, bound=3)
        self.assertEqual(int(a.coefficient((2,))), 0)
        with self.assertRaises(WindowTooSmall):
            a.coefficient((3,))

    def test_series_arith_dispatch(self):
        a = series(self.ring, {(0,): 1, (1,): 1})
        b = series(self.ring, {(1,): 2})
        self.assertTrue(series_arith(a, b, 'add').agrees_with(series(self.ring, {(0,): 1, (1,): 3})))
        self.assertTrue(series_arith(a, b, 'sub').agrees_with(series(self.ring, {(0,): 1, (1,): -1})))
        self.assertTrue(series_arith(a, b, 'mul').agrees_with(series(self.ring, {(1,): 2, (2,): 2})))
        with self.assertRaises(ShapeError):
            series_arith(a, b, 'div')

    def test_mixed_arities_are_rejected(self):
        with self.assertRaises(ShapeError):
            series(self.ring, {(0,): 1}) + series(self.ring, {(0, 0): 1}, n=2)

    def test_derivative(self):
        a = series(self.ring, {(3,): 1, (1,): 2})
        self.assertTrue(derivative(a, 0).agrees_with(series(self.ring, {(2,): 3, (0,): 2})))

    def test_delta_twist_raises_exponents_to_the_p(self):
        a = series(self.ring, {(1,): 1, (0,): 2})
        self.assertTrue(delta_twist(a).agrees_with(series(self.ring, {(3,): 1, (0,): 2})))

    def test_twisted_derivative_is_computed_without_division(self):
        a = series(self.ring, {(2,): 1})
        # (1/p) d/dX (X^6) = 2 X^5
        self.assertTrue(twisted_derivative_over_p(a, 0).agrees_with(series(self.ring, {(5,): 2})))


class InversionTests(SimpleTestCase):

    def setUp(self):
        self.ring = make_ring(3, 1, 4)

    def test_geometric_series(self):
        inv = invert_unit(series(self.ring, {(0,): 1, (1,): 1}), bound=5)
        for k in range(5):
            self.assertEqual(int(inv.coefficient((k,))), (-1) ** k % 81)
        with self.assertRaises(WindowTooSmall):
            inv.coefficient((5,))

    def test_monomial_inverse_is_exact(self):
        inv = invert_unit(series(self.ring, {(2,): 2}))
        self.assertIsNone(inv.bound)
        self.assertEqual(int(inv.coefficient((-2,))), 41)

    def test_non_unit_leading_coefficient(self):
        with self.assertRaises(ShapeError):
            invert_unit(series(self.ring, {(0,): 3, (1,): 1}), bound=4)

    def test_infinite_inverse_needs_a_window(self):
        with self.assertRaises(WindowTooSmall):
            invert_unit(series(self.ring, {(0,): 1, (1,): 1}))

    def test_inverse_of_s_reconstructs_one(self):
        for m in (1, 2):
            pm = 3 ** m
            s = series(self.ring, {(k,): comb(pm, k) for k in range(1, pm + 1)})
            inverse = invert_s(s, m)
            one = IterSeries.constant(self.ring, 1, 1, m)
            self.assertTrue(inverse.product_with(s).agrees_with(one))


class LogarithmTests(SimpleTestCase):

    def setUp(self):
        self.ring = make_ring(3, 1, 4)

    def test_log_of_one_plus_p_x(self):
        log = log_unit(series(self.ring, {(0,): 1, (1,): 3}), bound=6)
        self.assertEqual(log.prec, 3)
        self.assertEqual(int(log.coefficient((1,))), 3)
        # −9/2 mod 27
        self.assertEqual(int(log.coefficient((2,))), 9)

    def test_log_is_additive(self):
        a = series(self.ring, {(0,): 1, (1,): 3})
        b = series(self.ring, {(0,): 1, (2,): 6, (3,): 3})
        self.assertTrue(log_unit(a * b, 6).agrees_with(log_unit(a, 6) + log_unit(b, 6)))

    def test_log_of_one_is_zero(self):
        self.assertTrue(log_unit(series(self.ring, {(0,): 1}), 4).is_zero())

    def test_wider_window_extends_the_narrow_one(self):
        a = series(self.ring, {(0,): 1, (1,): 3, (2,): 6})
        narrow, wide = log_unit(a, 5), log_unit(a, 9)
        self.assertEqual(wide.bound, 9)
        self.assertTrue(wide.truncate(5).agrees_with(narrow))
        self.assertTrue(invert_unit(a, 8).truncate(4).agrees_with(invert_unit(a, 4)))


class ArtinHasseTests(SimpleTestCase):

    def test_coefficients(self):
        self.assertEqual(artin_hasse_coefficients(3, 4),
                         (Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2)))

    def test_exponential_of_x_mod_3(self):
        ring = make_ring(3, 1, 4)
        e = shafarevich_exp(series(ring, {(1,): 1}), bound=3)
        self.assertEqual([int(e.coefficient((k,))) % 3 for k in range(3)], [1, 1, 2])

    def test_exponential_is_additive(self):
        ring = make_ring(3, 1, 3)
        f = series(ring, {(1,): 2, (2,): 5})
        g = series(ring, {(1,): 4})
        self.assertTrue(shafarevich_exp(f + g, 6).agrees_with(shafarevich_exp(f, 6) * shafarevich_exp(g, 6)))

    def test_exponential_is_additive_on_a_wide_window(self):
        ring = make_ring(3, 1, 5)
        f = series(ring, {(1,): 117, (3,): 75})
        g = series(ring, {(1,): 68})
        whole = shafarevich_exp(f + g, 8)
        self.assertEqual(whole.prec, 4)
        self.assertTrue(whole.agrees_with(shafarevich_exp(f, 8) * shafarevich_exp(g, 8)))

    def test_exponential_of_a_wrapped_coefficient(self):
        ring = make_ring(3, 1, 5)
        f = series(ring, {(1,): 200, (2,): 100})
        g = series(ring, {(1,): 100, (2,): 50})
        self.assertTrue(shafarevich_exp(f + g, 8).agrees_with(shafarevich_exp(f, 8) * shafarevich_exp(g, 8)))
        minus_one = shafarevich_exp(series(ring, {(1,): 242}), 8)
        self.assertTrue((minus_one * shafarevich_exp(series(ring, {(1,): 1}), 8)).agrees_with(
            series(ring, {(0,): 1}, bound=8)))

    def test_precision_loss_grows_with_the_window(self):
        self.assertEqual(exp_precision_loss(3, 1, 3), 0)
        self.assertEqual(exp_precision_loss(3, 1, 8), 1)
        self.assertEqual(exp_precision_loss(3, 1, 10), 2)
        self.assertEqual(exp_precision_loss(3, 2, 10), 1)
        self.assertEqual(exp_precision_loss(5, 1, 8), 1)

    def test_exponential_needs_positive_order(self):
        ring = make_ring(3, 1, 3)
        with self.assertRaises(ShapeError):
            shafarevich_exp(series(ring, {(0,): 1}), 4)


class ResidueTests(SimpleTestCase):

    def setUp(self):
        self.ring = make_ring(3, 1, 4)

    def test_residue_of_x_inverse(self):
        self.assertEqual(int(residue(DiffForm(series(self.ring, {(-1,): 1})))), 1)

    def test_exact_forms_have_no_residue(self):
        a = series(self.ring, {(-2,): 5, (-1,): 7, (3,): 1})
        self.assertTrue(residue(DiffForm(derivative(a, 0))).is_zero())

    def test_dlog_of_the_variable(self):
        x = series(self.ring, {(1,): 1})
        self.assertEqual(int(residue(wedge(dlog(x)))), 1)

    def test_wedge_of_two_logarithmic_forms(self):
        zero = series(self.ring, {}, n=2)
        first = OneForm((series(self.ring, {(-1, 0): 1}, n=2), zero))
        second = OneForm((zero, series(self.ring, {(0, -1): 1}, n=2)))
        self.assertEqual(int(residue(wedge(first, second))), 1)
        self.assertEqual(int(residue(wedge(second, first))), 80)

    def test_transposed_form_flips_the_residue(self):
        form = DiffForm(series(self.ring, {(-1,): 2}))
        self.assertEqual(int(residue(form.transposed())), 79)
