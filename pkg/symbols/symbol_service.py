"""
Facade between the management commands and the arithmetic modules.
Reads settings.HILBERT_SYMBOL and assembles the result objects that
symbols.serializers renders.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from django.conf import settings

from .exceptions import ShapeError
from .field_model import FieldSpec, cyclotomic_spec, lift_element, parse_element, parse_elements
from .oracles import artin_hasse_pi, artin_hasse_zeta, fit_global_sign, kummer_exponent, sen_exponent
from .shafarevich import (BasisDescription, Decomposition, DualPartner, OrthogonalityReport, build_basis,
                          decompose, dual_search, reconstruct, verify_orthogonality)
from .vostokov_pairing import LiftedElement, exponent_of_lifts, initial_plan, series_weights, tame_symbol

logger = logging.getLogger(__name__)

FIELD_KINDS = ('cyclotomic', 'series-over-cyclotomic')


@dataclass
class SymbolResult:
    command: str
    spec: FieldSpec
    sign: int
    plan: dict
    arguments: List[str]
    exponent: int
    modulus: int
    attempts: Optional[int] = None


@dataclass
class BasisResult:
    command: str
    spec: FieldSpec
    sign: int
    plan: dict
    modulus: int
    basis: BasisDescription
    report: OrthogonalityReport = field(default_factory=OrthogonalityReport)
    verified: bool = False


@dataclass
class DualResult:
    command: str
    spec: FieldSpec
    sign: int
    plan: dict
    element: str
    slot: int
    dual: DualPartner
    modulus: int


@dataclass
class DecompositionResult:
    command: str
    spec: FieldSpec
    sign: int
    plan: dict
    element: str
    decomposition: Decomposition
    reconstructs: bool


def hilbert_settings() -> dict:
    return getattr(settings, 'HILBERT_SYMBOL', {})


def build_field(p: int, m: int, n: int = 1, f: int = 1, kind: Optional[str] = None) -> FieldSpec:
    if kind is not None:
        if kind not in FIELD_KINDS:
            raise ShapeError(f'unknown field kind {kind!r}')
        if FIELD_KINDS.index(kind) + 1 != n:
            raise ShapeError(f'field kind {kind} does not have dimension n = {n}')
    extra = hilbert_settings().get('FIELD_PRECISION_EXTRA', 6)
    return cyclotomic_spec(p, m, n, f, N=m + 2 + extra)


def global_sign() -> int:
    configured = hilbert_settings().get('GLOBAL_SIGN')
    if configured is None:
        return fit_global_sign()
    if configured not in (1, -1):
        raise ShapeError(f'HILBERT_GLOBAL_SIGN must be +1 or -1, got {configured}')
    return configured


def starting_plan(spec: FieldSpec, lifts: Sequence[LiftedElement] = ()):
    config = hilbert_settings()
    weights = series_weights(spec, lifts) if lifts else (1,) * spec.n
    return initial_plan(spec, weights, growth=config.get('WINDOW_GROWTH', 2),
                        max_retries=config.get('MAX_RETRIES', 5))


def _field_plan(spec: FieldSpec) -> dict:
    """Provenance for results computed directly in the field"""
    return {'N': spec.N, 'window': None, 'weights': [1] * spec.n}


def compute_symbol(p: int, m: int, n: int, args: Sequence[str], f: int = 1,
                   kind: Optional[str] = None) -> SymbolResult:
    spec = build_field(p, m, n, f, kind)
    xs = parse_elements(args, spec)
    if len(xs) != n + 1:
        raise ShapeError(f'the symbol takes {n + 1} arguments, got {len(xs)}')
    if any(x.is_zero() for x in xs):
        raise ShapeError('symbol arguments must be nonzero')
    sign = global_sign()
    lifts = [LiftedElement.from_series(lift_element(x)) for x in xs]
    result = exponent_of_lifts(lifts, spec, starting_plan(spec, lifts), sign)
    N, window = result.stabilized_at
    logger.info(f'V({", ".join(args)}) = {result.value} mod {result.modulus} after {result.attempts} plans')
    return SymbolResult('symbol', spec, sign, {'N': N, 'window': window, 'weights': list(result.weights)},
                        list(args), result.value, result.modulus, result.attempts)


def compute_kummer(p: int, eps: str, eta: str) -> SymbolResult:
    spec = build_field(p, 1)
    a, b = parse_elements([eps, eta], spec)
    value = kummer_exponent(lift_element(a), lift_element(b), p)
    return SymbolResult('kummer', spec, global_sign(), _field_plan(spec), [eps, eta], value, p)


def compute_artin_hasse(p: int, m: int, eps: str, partner: str) -> SymbolResult:
    spec = build_field(p, m)
    x = parse_element(eps, spec)
    if partner == 'zeta':
        value = artin_hasse_zeta(x, spec)
    elif partner == 'pi':
        value = artin_hasse_pi(x, spec)
    else:
        raise ShapeError(f'unknown Artin-Hasse partner {partner!r}')
    return SymbolResult('artin-hasse', spec, global_sign(), _field_plan(spec), [eps, partner], value, spec.pm)


def compute_sen(p: int, m: int, alpha: str, beta: str) -> SymbolResult:
    spec = build_field(p, m)
    a, b = parse_elements([alpha, beta], spec)
    value = sen_exponent(a, b, spec)
    return SymbolResult('sen', spec, global_sign(), _field_plan(spec), [alpha, beta], value, spec.pm)


def compute_tame(p: int, l: int, a: str, b: str, f: int = 1) -> SymbolResult:
    spec = build_field(p, 1, 1, f)
    x, y = parse_elements([a, b], spec)
    if x.is_zero() or y.is_zero():
        raise ShapeError('tame symbol arguments must be nonzero')
    value = tame_symbol(x, y, l)
    return SymbolResult('tame', spec, global_sign(), _field_plan(spec), [a, b], value, l)


def describe_basis(p: int, m: int, n: int = 1, f: int = 1, verify: bool = False) -> BasisResult:
    spec = build_field(p, m, n, f)
    basis = build_basis(spec, m, t1_bound=hilbert_settings().get('BASIS_T1_BOUND', 2))
    sign = global_sign()
    plan = starting_plan(spec)
    result = BasisResult('basis', spec, sign, plan.describe(), spec.pm, basis)
    if verify:
        result.report = verify_orthogonality(basis, sign, plan)
        result.verified = True
        logger.info(f'orthogonality: {len(result.report.failures)} failures over {len(result.report.entries)} pairs')
    return result


def find_dual(p: int, m: int, n: int, element: str, slot: int, f: int = 1) -> DualResult:
    spec = build_field(p, m, n, f)
    eps = parse_element(element, spec)
    sign = global_sign()
    plan = starting_plan(spec)
    partner = dual_search(eps, slot, spec, m, sign, plan)
    return DualResult('dual', spec, sign, plan.describe(), element, slot, partner, spec.pm)


def decompose_element(p: int, m: int, element: str, f: int = 1) -> DecompositionResult:
    spec = build_field(p, m, 1, f)
    alpha = parse_element(element, spec)
    basis = build_basis(spec, m)
    dec = decompose(alpha, basis, m)
    reconstructs = reconstruct(dec, basis).equals(alpha)
    if not reconstructs:
        logger.warning(f'decomposition of {element} does not reconstruct')
    return DecompositionResult('decompose', spec, global_sign(), _field_plan(spec), element, dec, reconstructs)
