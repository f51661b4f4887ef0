"""
Named property suites run by `manage.py verify`. Each suite draws its
inputs from random.Random(seed), counts the checks it makes and keeps a
JSON-ready counterexample for every failed check.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Sequence

from .exceptions import ShapeError
from .field_model import (FieldElement, FieldSpec, cyclotomic_spec, lift_element, parse_element, random_element,
                          random_unit, relift_random, s_series)
from .laurent_series import (DiffForm, IterSeries, OneForm, delta_twist, derivative, invert_s, log_unit, residue,
                             shafarevich_exp, wedge)
from .oracles import artin_hasse_pi, artin_hasse_zeta, kummer_exponent, norm_membership, sen_exponent
from .shafarevich import build_basis, decompose, dual_search, index_set, reconstruct, verify_orthogonality
from .symbol_service import hilbert_settings
from .vostokov_pairing import (LiftedElement, exponent_of_lifts, initial_plan, series_weights, vostokov_exponent,
                               vostokov_exponent_of_series)
from .witt_arith import make_ring

logger = logging.getLogger(__name__)

AXIOM_FIELDS = ((3, 1, 1), (5, 1, 1), (3, 1, 2))


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    sign: int
    checks: int = 0
    counterexamples: List[dict] = field(default_factory=list)

    @property
    def failure_count(self) -> int:
        return len(self.counterexamples)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def check(self, ok: bool, name: str, **details):
        self.checks += 1
        if not ok:
            details = {'check': name, **details}
            logger.warning(f'{self.suite}: counterexample {details}')
            self.counterexamples.append(details)
        return ok


def _texts(xs: Sequence[FieldElement]) -> List[str]:
    return [x.to_text() for x in xs]


def _field(spec: FieldSpec) -> List[int]:
    return [spec.p, spec.m, spec.n]


def _symbol(xs: Sequence[FieldElement], spec: FieldSpec, sign: int) -> int:
    return vostokov_exponent(xs, spec, sign=sign).value


def _nonzero_element(spec: FieldSpec, rng: random.Random) -> FieldElement:
    return random_element(spec, rng, exponent_range=(-1, 1))


# -- arithmetic kernel ----------------------------------------------------------

def _random_polynomial(ring, n: int, rng: random.Random, prec: int, low: int = 0, high: int = 3) -> IterSeries:
    coeffs = {}
    for _ in range(rng.randint(1, 4)):
        exp = tuple(rng.randint(low, high) for _ in range(n))
        coeffs[exp] = ring.random_coords(rng, prec)
    return IterSeries.make(ring, n, coeffs, prec)


def kernel_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        p = (3, 5)[trial % 2]
        f = 1 + trial % 3 // 2
        ring = make_ring(p, f, 5)
        a, b = ring.random_coords(rng), ring.random_coords(rng)
        fa, fb = ring.frobenius(a), ring.frobenius(b)
        report.check(ring.frobenius(ring.mul(a, b)) == ring.mul(fa, fb), 'frobenius-multiplicative',
                     p=p, f=f, a=list(a), b=list(b))
        report.check(ring.frobenius(ring.add(a, b)) == ring.add(fa, fb), 'frobenius-additive',
                     p=p, f=f, a=list(a), b=list(b))
        x = a
        for _ in range(f):
            x = ring.frobenius(x)
        report.check(x == a, 'frobenius-order', p=p, f=f, a=list(a))
        report.check(ring.reduce(fa, 1) == ring.reduce(ring.pow(a, p), 1), 'frobenius-mod-p', p=p, f=f, a=list(a))
        report.check(ring.trace(fa) == ring.trace(a), 'trace-frobenius', p=p, f=f, a=list(a))
        residue_coords = ring.reduce(a, 1)
        t = ring.teichmuller(residue_coords)
        report.check(ring.pow(t, ring.q) == t, 'teichmuller-fixed', p=p, f=f, residue=list(residue_coords))

        n = 1 + trial % 2
        u, v = _random_polynomial(ring, n, rng, 5), _random_polynomial(ring, n, rng, 5)
        report.check(delta_twist(u * v).agrees_with(delta_twist(u) * delta_twist(v)), 'delta-multiplicative',
                     p=p, f=f, u=repr(u), v=repr(v))
        report.check(delta_twist(u).agrees_with((u ** p).truncate(prec=1)), 'delta-mod-p', p=p, f=f, u=repr(u))

        g = _random_polynomial(ring, 1, rng, 5)
        h = _random_polynomial(ring, 1, rng, 5)
        x1 = 1 + g.scale(p)
        x2 = 1 + h.scale(p)
        bound = 8
        report.check(log_unit(x1 * x2, bound).agrees_with(log_unit(x1, bound) + log_unit(x2, bound)),
                     'log-additive', p=p, f=f, g=repr(g), h=repr(h))

        g1 = _random_polynomial(ring, 1, rng, 5, low=1)
        h1 = _random_polynomial(ring, 1, rng, 5, low=1)
        report.check(shafarevich_exp(g1 + h1, bound).agrees_with(
            shafarevich_exp(g1, bound) * shafarevich_exp(h1, bound)), 'exp-additive', p=p, f=f,
            g=repr(g1), h=repr(h1))

        lau = _random_polynomial(ring, n, rng, 5, low=-3)
        if n == 1:
            exact = DiffForm(derivative(lau, 0))
        else:
            other = _random_polynomial(ring, n, rng, 5, low=-3)
            exact = wedge(OneForm((derivative(lau, 0), derivative(lau, 1))),
                          OneForm((derivative(other, 0), derivative(other, 1))))
        report.check(residue(exact).is_zero(), 'exact-form-residue', p=p, f=f, series=repr(lau))

        spec = cyclotomic_spec(p, 1 + trial % 2, n, f)
        s = s_series(spec, spec.N)
        inverse = invert_s(s, spec.m)
        one = IterSeries.constant(spec.ring, spec.n, 1, spec.m)
        report.check(inverse.product_with(s).agrees_with(one), 'invert-s', field=_field(spec))


# -- oracle agreement -------------------------------------------------------------

def kummer_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        spec = cyclotomic_spec((3, 5)[trial % 2], 1)
        eps = random_unit(spec, rng, principal=True)
        eta = random_unit(spec, rng, principal=True)
        expected = kummer_exponent(lift_element(eps), lift_element(eta), spec.p)
        got = _symbol([eps, eta], spec, report.sign)
        report.check(got == expected, 'kummer', field=_field(spec), arguments=_texts([eps, eta]),
                     expected=expected, got=got)


def artin_hasse_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        p, m = ((3, 1), (3, 2), (5, 1))[trial % 3]
        spec = cyclotomic_spec(p, m)
        eps = random_unit(spec, rng, principal=True)
        expected = artin_hasse_zeta(eps, spec)
        got = _symbol([eps, spec.zeta()], spec, report.sign)
        report.check(got == expected, 'artin-hasse-zeta', field=_field(spec), arguments=_texts([eps]),
                     expected=expected, got=got)
        # the π formula computes (π, ε)
        expected = artin_hasse_pi(eps, spec)
        got = _symbol([spec.pi(), eps], spec, report.sign)
        report.check(got == expected, 'artin-hasse-pi', field=_field(spec), arguments=_texts([eps]),
                     expected=expected, got=got)


def pinned_suite(report: SuiteReport, rng: random.Random, trials: int):
    spec = cyclotomic_spec(3, 1)
    zeta, other = parse_element('z', spec), parse_element('1-pi', spec)
    got = _symbol([zeta, other], spec, report.sign)
    report.check(got == 2, 'pinned-value', arguments=['z', '1-pi'], expected=2, got=got)
    kummer = report.sign * kummer_exponent(lift_element(zeta), lift_element(other), 3) % 3
    report.check(kummer == 2, 'pinned-kummer', expected=2, got=kummer)
    # V(ζ, 1 − π) = −V(1 − π, ζ)
    artin_hasse = -artin_hasse_zeta(other, spec) % 3
    report.check(artin_hasse == 2, 'pinned-artin-hasse', expected=2, got=artin_hasse)


def sen_suite(report: SuiteReport, rng: random.Random, trials: int):
    spec = cyclotomic_spec(3, 1)
    level = -(-2 * spec.e // (spec.p - 1))
    for trial in range(trials):
        alpha = random_unit(spec, rng, principal=True, level=level)
        beta = (spec.pi(), spec.zeta(), random_unit(spec, rng))[trial % 3]
        # Sen's formula computes (β, α)
        expected = sen_exponent(alpha, beta, spec)
        got = _symbol([beta, alpha], spec, report.sign)
        report.check(got == expected, 'sen', arguments=_texts([alpha, beta]), expected=expected, got=got)


def norm_suite(report: SuiteReport, rng: random.Random, trials: int):
    spec = cyclotomic_spec(3, 1)
    samples = hilbert_settings().get('NORM_SAMPLES', 400)
    done = 0
    while done < trials:
        alpha, beta = _nonzero_element(spec, rng), _nonzero_element(spec, rng)
        try:
            is_norm = norm_membership(alpha, beta, spec, samples=samples, seed=rng.randrange(2 ** 32))
        except ShapeError:
            # β is a cube; draw again
            continue
        value = _symbol([alpha, beta], spec, report.sign)
        report.check(is_norm == (value == 0), 'norm-membership', arguments=_texts([alpha, beta]),
                     is_norm=is_norm, exponent=value)
        done += 1


# -- symbol axioms -----------------------------------------------------------------

def multilinear_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        spec = cyclotomic_spec(*AXIOM_FIELDS[trial % len(AXIOM_FIELDS)])
        xs = [_nonzero_element(spec, rng) for _ in range(spec.n + 1)]
        slot = rng.randrange(spec.n + 1)
        extra = _nonzero_element(spec, rng)
        joined = list(xs)
        joined[slot] = xs[slot] * extra
        split = list(xs)
        split[slot] = extra
        left = _symbol(joined, spec, report.sign)
        right = (_symbol(xs, spec, report.sign) + _symbol(split, spec, report.sign)) % spec.pm
        report.check(left == right, 'multilinear', field=_field(spec), arguments=_texts(xs),
                     factor=extra.to_text(), slot=slot, expected=right, got=left)


def steinberg_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        spec = cyclotomic_spec(*AXIOM_FIELDS[trial % len(AXIOM_FIELDS)])
        alpha = _nonzero_element(spec, rng)
        rest = [_nonzero_element(spec, rng) for _ in range(spec.n - 1)]
        complement = 1 - alpha
        if not complement.is_zero():
            got = _symbol([alpha, complement] + rest, spec, report.sign)
            report.check(got == 0, 'steinberg', field=_field(spec), arguments=_texts([alpha] + rest), got=got)
        got = _symbol([alpha, -alpha] + rest, spec, report.sign)
        report.check(got == 0, 'minus-alpha', field=_field(spec), arguments=_texts([alpha] + rest), got=got)


def antisymmetry_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        spec = cyclotomic_spec(*AXIOM_FIELDS[trial % len(AXIOM_FIELDS)])
        xs = [_nonzero_element(spec, rng) for _ in range(spec.n + 1)]
        swapped = [xs[1], xs[0]] + xs[2:]
        total = (_symbol(xs, spec, report.sign) + _symbol(swapped, spec, report.sign)) % spec.pm
        report.check(total == 0, 'antisymmetry', field=_field(spec), arguments=_texts(xs), got=total)


def well_defined_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        spec = cyclotomic_spec((3, 5)[trial % 2], 1)
        xs = [_nonzero_element(spec, rng) for _ in range(2)]
        expected = _symbol(xs, spec, report.sign)
        lifts = [relift_random(x, rng) for x in xs]
        got = vostokov_exponent_of_series(lifts, spec, sign=report.sign).value
        report.check(got == expected, 'relift', field=_field(spec), arguments=_texts(xs),
                     expected=expected, got=got)


def stability_suite(report: SuiteReport, rng: random.Random, trials: int):
    for trial in range(trials):
        spec = cyclotomic_spec(*AXIOM_FIELDS[trial % len(AXIOM_FIELDS)])
        xs = [_nonzero_element(spec, rng) for _ in range(spec.n + 1)]
        lifts = [LiftedElement.from_series(lift_element(x)) for x in xs]
        result = exponent_of_lifts(lifts, spec, sign=report.sign)
        N, window = result.stabilized_at
        doubled = replace(initial_plan(spec, series_weights(spec, lifts)), N=2 * N, window=2 * window)
        got = exponent_of_lifts(lifts, spec, doubled, report.sign).value
        report.check(got == result.value, 'doubled-plan', field=_field(spec), arguments=_texts(xs),
                     expected=result.value, got=got, plan=[N, window])


# -- Shafarevich basis ---------------------------------------------------------------

ORTHOGONALITY_FIELDS = ((3, 1, 1), (5, 1, 1), (3, 2, 1), (3, 1, 2))


def orthogonality_suite(report: SuiteReport, rng: random.Random, trials: int):
    for p, m, n in ORTHOGONALITY_FIELDS:
        spec = cyclotomic_spec(p, m, n)
        result = verify_orthogonality(build_basis(spec, m), report.sign)
        for entry in result.entries:
            report.check(entry.passed, 'orthogonality', field=[p, m, n], label=entry.label,
                         expected=entry.expected, got=entry.value)


def dual_suite(report: SuiteReport, rng: random.Random, trials: int):
    """Every admissible (θ, I, l) at p = 3, m = 1"""
    for n in (1, 2):
        spec = cyclotomic_spec(3, 1, n)
        cases = [(residue, J, l)
                 for J in index_set(spec)
                 for l in range(1, n + 1) if J[l - 1] % spec.p
                 for residue in spec.ring.residues() if any(residue)]
        for residue, J, l in cases:
            theta = spec.teichmuller(residue).shift_pi(J[-1])
            eps = 1 + (theta.shift_t1(J[0]) if n == 2 else theta)
            partner = dual_search(eps, l, spec, sign=report.sign)
            report.check(partner.exponent in (1, spec.pm - 1), 'dual-partner', field=_field(spec),
                         element=eps.to_text(), slot=l, got=partner.exponent)


def decomposition_suite(report: SuiteReport, rng: random.Random, trials: int):
    spec = cyclotomic_spec(3, 1)
    basis = build_basis(spec, 1)
    generators = basis.params + [basis.unit(key).element for key in sorted(eps.key for eps in basis.epsilons)]
    generators.append(basis.omega)
    for _ in range(trials):
        alpha = _nonzero_element(spec, rng)
        dec = decompose(alpha, basis)
        report.check(reconstruct(dec, basis).equals(alpha), 'reconstruct', element=alpha.to_text())
        beta = _nonzero_element(spec, rng)
        direct = _symbol([alpha, beta], spec, report.sign)
        combined = sum(c * _symbol([g, beta], spec, report.sign) for c, g in zip(dec.vector(), generators))
        report.check(direct == combined % spec.pm, 'pairing-consistency', element=alpha.to_text(),
                     partner=beta.to_text(), expected=direct, got=combined % spec.pm)


SUITES: Dict[str, Callable[[SuiteReport, random.Random, int], None]] = {
    'kernel': kernel_suite,
    'kummer': kummer_suite,
    'artin-hasse': artin_hasse_suite,
    'pinned': pinned_suite,
    'multilinear': multilinear_suite,
    'steinberg': steinberg_suite,
    'antisymmetry': antisymmetry_suite,
    'well-defined': well_defined_suite,
    'stability': stability_suite,
    'orthogonality': orthogonality_suite,
    'dual': dual_suite,
    'decomposition': decomposition_suite,
    'sen': sen_suite,
    'norm': norm_suite,
}


def run_suite(name: str, trials: int, seed: int, sign: int = 1) -> SuiteReport:
    if name not in SUITES:
        raise ShapeError(f'unknown suite {name!r}; choose from {", ".join(SUITES)}')
    if trials < 1:
        raise ShapeError('trials must be positive')
    report = SuiteReport(name, trials, seed, sign)
    SUITES[name](report, random.Random(seed), trials)
    logger.info(f'suite {name}: {report.checks} checks, {report.failure_count} failures')
    return report
