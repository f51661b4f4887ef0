"""
Classical formulas used as ground truth for the pairing: Kummer's residue
formula, the two Artin–Hasse trace formulas, Sen's formula and a
brute-force norm-group membership test.
"""

import itertools
import logging
import random
from functools import lru_cache
from typing import List, Optional, Sequence

from sympy import GF
from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix

from .exceptions import PrecisionFault, SearchFailure, ShapeError
from .field_model import (FieldElement, FieldSpec, cyclotomic_spec, evaluate_series, field_log, field_trace,
                          lift_element, parse_element, random_element)
from .laurent_series import IterSeries, derivative, dlog, log_unit
from .shafarevich import build_basis, decompose
from .vostokov_pairing import vostokov_exponent
from .witt_arith import WittElement

logger = logging.getLogger(__name__)


def _check_principal_series(a: IterSeries, name: str):
    ring = a.ring
    if any(k[0] < 0 for k in a.coeffs) or a.coeffs.get((0,)) != ring.reduce(ring.one(), a.prec):
        raise ShapeError(f'{name} is not ≡ 1 mod X')
    if any(any(c[1:]) for c in a.coeffs.values()):
        raise ShapeError(f'{name} has coefficients outside Z_p')


def kummer_exponent(eps: IterSeries, eta: IterSeries, p: int) -> int:
    """res(log η · dlog ε · X^{-p}) mod p, i.e. the X^{p-1} coefficient of log η · ε'/ε"""
    if eps.n != 1 or eta.n != 1:
        raise ShapeError('the Kummer formula is one-dimensional')
    _check_principal_series(eps, 'eps')
    _check_principal_series(eta, 'eta')
    log_eta = log_unit(eta, bound=p)
    form = dlog(eps, bound=p).components[0]
    value = (log_eta * form).truncate(p).coefficient((p - 1,))
    return int(value) % p


def _divide_trace(t: WittElement, spec: FieldSpec) -> int:
    for _ in range(spec.m):
        if t.coords[0] % spec.p:
            raise PrecisionFault(f'trace {t.coords[0]} is not divisible by p^{spec.m}')
        t = t.divide_by_p()
    if t.prec < spec.m:
        raise PrecisionFault(f'trace is only known modulo p^{t.prec}')
    return int(t) % spec.pm


def _check_oracle_field(spec: FieldSpec):
    if spec.n != 1 or spec.f != 1:
        raise ShapeError('trace oracles need K = Q_p(ζ_{p^m})')


def artin_hasse_zeta(eps: FieldElement, spec: FieldSpec) -> int:
    """(ε, ζ) = ζ^{Tr(−log ε)/p^m}"""
    _check_oracle_field(spec)
    return _divide_trace(field_trace(-field_log(eps)), spec)


def artin_hasse_pi(eps: FieldElement, spec: FieldSpec) -> int:
    """(π, ε) = ζ^{Tr(π^{-1} ζ log ε)/p^m}"""
    _check_oracle_field(spec)
    value = field_log(eps).shift_pi(-1) * spec.zeta(eps.prec)
    return _divide_trace(field_trace(value), spec)


def default_sen_polynomials(beta: FieldElement) -> tuple:
    """g with g(π) = β and h = 1 + X"""
    spec = beta.spec
    g = lift_element(beta)
    h = IterSeries.make(spec.ring, 1, {(0,): spec.ring.one(), (1,): spec.ring.one()}, g.prec)
    return g, h


def sen_exponent(alpha: FieldElement, beta: FieldElement, spec: FieldSpec,
                 g: Optional[IterSeries] = None, h: Optional[IterSeries] = None) -> int:
    """
    (β, α) = ζ^c with c = Tr(ζ/h'(π) · g'(π)/β · log α) / p^m for g(π) = β,
    h(π) = ζ, and α a principal unit with v(α − 1) >= 2e/(p − 1).
    """
    _check_oracle_field(spec)
    if beta.is_zero():
        raise ShapeError('β must be nonzero')
    default_g, default_h = default_sen_polynomials(beta)
    g = default_g if g is None else g
    h = default_h if h is None else h
    if not evaluate_series(g, spec).equals(beta):
        raise ShapeError('g(π) does not evaluate to β')
    zeta = spec.zeta(alpha.prec)
    if not evaluate_series(h, spec).equals(zeta):
        raise ShapeError('h(π) does not evaluate to ζ')
    w = alpha - 1
    if w.is_zero():
        return 0
    level = 2 * spec.e / (spec.p - 1)
    if alpha.denom or w.valuation()[0] < level:
        raise ShapeError(f'α must satisfy v(α − 1) >= {level:g}')
    g_prime = evaluate_series(derivative(g, 0), spec)
    h_prime = evaluate_series(derivative(h, 0), spec)
    value = zeta * h_prime.inverse() * g_prime * beta.inverse() * field_log(alpha)
    return _divide_trace(field_trace(value), spec)


# -- norm groups ---------------------------------------------------------------

def _norm(coeffs: Sequence[FieldElement], beta: FieldElement) -> FieldElement:
    """N_{L/K}(Σ x_k Y^k) for L = K[Y]/(Y^p − β), as the determinant of multiplication"""
    p = len(coeffs)
    # column k holds the coordinates of x·Y^k
    matrix = [[None] * p for _ in range(p)]
    for k in range(p):
        for i, x in enumerate(coeffs):
            row = i + k
            matrix[row % p][k] = x * beta if row >= p else x
    spec = beta.spec
    total = spec.constant(0, beta.prec)
    for perm in itertools.permutations(range(p)):
        term = spec.one(beta.prec)
        for col, row in enumerate(perm):
            term = term * matrix[row][col]
        sign = Permutation(list(perm)).signature()
        total = total + term if sign > 0 else total - term
    return total


def _rank(rows: List[List[int]], p: int) -> int:
    if not rows:
        return 0
    field = GF(p)
    matrix = DomainMatrix([[field(x) for x in row] for row in rows], (len(rows), len(rows[0])), field)
    return matrix.rank()


def norm_membership(alpha: FieldElement, beta: FieldElement, spec: FieldSpec, samples: int = 400,
                    seed: int = 0) -> bool:
    """
    Whether α is a norm from L = K(β^{1/p}), by sampling norms until they
    span a hyperplane of K^*/K^{*p} and testing α against that span.
    """
    if (spec.p, spec.m, spec.n) != (3, 1, 1):
        raise ShapeError('norm membership is implemented for Q_3(ζ_3) only')
    basis = build_basis(spec, 1)
    beta_vector = decompose(beta, basis, 1).vector()
    if not any(beta_vector):
        raise ShapeError('β is a p-th power; the extension is degenerate')
    dim = len(beta_vector)
    rng = random.Random(seed)
    span: List[List[int]] = [beta_vector]  # N(Y) = β for odd p
    rank = _rank(span, spec.p)
    for _ in range(samples):
        if rank >= dim - 1:
            break
        coeffs = [random_element(spec, rng, exponent_range=(0, 2)) for _ in range(spec.p)]
        norm = _norm(coeffs, beta)
        if norm.is_zero():
            continue
        vector = decompose(norm, basis, 1).vector()
        if _rank(span + [vector], spec.p) > rank:
            span.append(vector)
            rank += 1
    if rank < dim - 1:
        raise SearchFailure(f'norm samples spanned only rank {rank} of {dim - 1}')
    alpha_vector = decompose(alpha, basis, 1).vector()
    return _rank(span + [alpha_vector], spec.p) == rank


# -- global sign -----------------------------------------------------------------

@lru_cache(maxsize=None)
def fit_global_sign() -> int:
    """σ with V(ζ, 1 − π) = σ·kummer(ζ, 1 − π) on Q_3(ζ_3)"""
    spec = cyclotomic_spec(3, 1, 1)
    zeta, other = parse_element('z', spec), parse_element('1-pi', spec)
    raw = vostokov_exponent([zeta, other], spec).value
    reference = kummer_exponent(lift_element(zeta), lift_element(other), 3)
    if raw == reference:
        sign = 1
    elif raw == (-reference) % 3:
        sign = -1
    else:
        raise PrecisionFault(f'pinned value {raw} matches neither sign of {reference}')
    logger.info(f'fitted global sign {sign:+d}')
    return sign
