#!/usr/bin/env python3
"""
Shafarevich bases: index sets, orthogonality, dual partners, p-th roots
and decomposition of units over the basis.
"""

import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'reciprocity.settings')
django.setup()

from django.test import SimpleTestCase

from symbols.exceptions import ShapeError
from symbols.field_model import cyclotomic_spec, parse_element
from symbols.shafarevich import (build_basis, decompose, dual_search, index_set, pth_root, reconstruct,
                                 verify_orthogonality)


class IndexSetTests(SimpleTestCase):

    def test_one_dimensional_indices_skip_multiples_of_p(self):
        self.assertEqual(index_set(cyclotomic_spec(3, 1)), [(1,), (2,)])
        self.assertEqual(index_set(cyclotomic_spec(5, 1)), [(1,), (2,), (3,), (4,)])
        self.assertEqual(index_set(cyclotomic_spec(3, 2)), [(1,), (2,), (4,), (5,), (7,), (8,)])

    def test_two_dimensional_indices_are_bounded_in_t1(self):
        indices = index_set(cyclotomic_spec(3, 1, 2), t1_bound=2)
        self.assertEqual(len(indices), 14)
        self.assertIn((-1, 3), indices)
        self.assertNotIn((0, 3), indices)
        self.assertNotIn((0, 0), indices)


class BasisTests(SimpleTestCase):

    def setUp(self):
        self.spec = cyclotomic_spec(3, 1)
        self.basis = build_basis(self.spec)

    def test_shape(self):
        self.assertEqual(len(self.basis), 4)
        self.assertEqual(self.basis.level, 3)
        self.assertEqual([eps.label for eps in self.basis.epsilons], ['eps[1][0]', 'eps[2][0]'])
        self.assertEqual(int(self.basis.generator), 1)

    def test_units_are_one_plus_a_monomial(self):
        self.assertTrue(self.basis.unit(((2,), 0)).element.equals(parse_element('1+pi^2', self.spec)))
        with self.assertRaises(KeyError):
            self.basis.unit(((3,), 0))

    def test_orthogonality(self):
        report = verify_orthogonality(self.basis)
        self.assertEqual(len(report.entries), 3)
        self.assertTrue(report.all_passed)
        self.assertEqual(report.entries[-1].label, 'omega')


class DualSearchTests(SimpleTestCase):

    def setUp(self):
        self.spec = cyclotomic_spec(3, 1)

    def test_partner_of_zeta(self):
        dual = dual_search(parse_element('1+pi', self.spec), 1, self.spec)
        self.assertEqual(dual.exponent, 1)
        self.assertEqual(dual.theta, (2,))
        self.assertTrue(dual.partner.equals(parse_element('1-pi^2', self.spec)))

    def test_invalid_inputs(self):
        with self.assertRaises(ShapeError):
            dual_search(self.spec.one(), 1, self.spec)
        with self.assertRaises(ShapeError):
            dual_search(parse_element('1+pi^3', self.spec), 1, self.spec)
        with self.assertRaises(ShapeError):
            dual_search(parse_element('1+pi', self.spec), 2, self.spec)


class PthRootTests(SimpleTestCase):

    def setUp(self):
        self.spec = cyclotomic_spec(3, 1)

    def test_root_of_a_cube(self):
        u = parse_element('(1+pi^2)^3', self.spec)
        root = pth_root(u)
        self.assertTrue(root.equals(parse_element('1+pi^2', self.spec)))

    def test_root_of_a_deep_unit(self):
        u = parse_element('1+pi^4', self.spec)
        self.assertTrue((pth_root(u) ** 3).equals(u))

    def test_shallow_units_have_no_root(self):
        with self.assertRaises(ShapeError):
            pth_root(parse_element('1+pi', self.spec))
        with self.assertRaises(ShapeError):
            pth_root(cyclotomic_spec(3, 1, 2).one())


class DecompositionTests(SimpleTestCase):

    def setUp(self):
        self.spec = cyclotomic_spec(3, 1)
        self.basis = build_basis(self.spec)

    def test_basis_unit(self):
        dec = decompose(parse_element('1+pi', self.spec), self.basis)
        self.assertEqual(dec.vector(), [0, 1, 0, 0])

    def test_uniformizer(self):
        dec = decompose(parse_element('-pi', self.spec), self.basis)
        self.assertEqual(dec.exponents, (1,))
        self.assertEqual(dec.vector(), [1, 0, 0, 0])

    def test_omega(self):
        dec = decompose(self.basis.omega, self.basis)
        self.assertEqual(dec.vector(), [0, 0, 0, 1])

    def test_reconstruction(self):
        for text in ('2*pi*(1+pi^2)', '(1-pi)^2*pi^4', 'z*(1+3*pi)'):
            alpha = parse_element(text, self.spec)
            self.assertTrue(reconstruct(decompose(alpha, self.basis), self.basis).equals(alpha))

    def test_exponents_modulo_p_squared(self):
        basis = build_basis(self.spec, 2)
        alpha = parse_element('pi^2*(1+pi^2)^3', self.spec)
        dec = decompose(alpha, basis)
        self.assertEqual(dec.modulus, 9)
        self.assertEqual(dec.exponents, (2,))
        self.assertEqual(dec.b, {((1,), 0): 0, ((2,), 0): 3})
        self.assertEqual(dec.c, 0)
        self.assertTrue(reconstruct(dec, basis).equals(alpha))

    def test_zero_is_rejected(self):
        with self.assertRaises(ShapeError):
            decompose(parse_element('0', self.spec), self.basis)
