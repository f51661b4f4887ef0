"""
The explicit pairing V(α₁, ..., α_{n+1}) = ζ^{Tr res Φ/s}.

Arguments are lifted to iterated Laurent series X^i·θ·u, Φ is assembled
from the l-operator and logarithmic derivatives, and the residue of Φ/s
is traced down to Z/p^m. The window and the p-adic precision are grown
until two successive plans give the same exponent.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple, Union

from sympy.ntheory import discrete_log, primefactors, primitive_root

from .exceptions import ShapeError, StabilizationError, WindowTooSmall
from .field_model import FieldElement, FieldSpec, lift_element, s_series
from .laurent_series import (DiffForm, IterSeries, OneForm, delta_twist, derivative, invert_s, invert_unit,
                             log_p_small, residue_mixed, twisted_derivative_over_p, wedge)
from .witt_arith import Coords, trace_wzp

logger = logging.getLogger(__name__)

DEFAULT_GROWTH = 2
DEFAULT_RETRIES = 5


@dataclass(frozen=True)
class LiftedElement:
    """A unit-shaped series X^exponents · θ · principal"""
    exponents: Tuple[int, ...]
    theta: Coords
    principal: IterSeries

    @classmethod
    def from_series(cls, a: IterSeries) -> 'LiftedElement':
        """Split off the tuple-order leading monomial and its Teichmüller part"""
        ring = a.ring
        lead = a.leading_exponent()
        c = a.coeffs[lead]
        if not ring.is_unit(c):
            raise ShapeError(f'leading coefficient at {lead} is not a unit')
        theta = ring.teichmuller(ring.reduce(c, 1), a.prec)
        u = a.shift(tuple(-x for x in lead)).scale(ring.element(ring.inverse(theta, a.prec), a.prec))
        return cls(lead, theta, u)

    @property
    def n(self) -> int:
        return self.principal.n

    def regraded(self, weights: Sequence[int], prec: int) -> 'LiftedElement':
        u = self.principal.truncate(prec=prec)
        if tuple(weights) != u.weights:
            u = u.with_weights(weights)
        return replace(self, principal=u)


@dataclass(frozen=True)
class PrecisionPlan:
    """p-adic digits N, graded window bound and the growth schedule"""
    N: int
    window: int
    weights: Tuple[int, ...]
    growth: int = DEFAULT_GROWTH
    max_retries: int = DEFAULT_RETRIES
    step: int = 1

    def grown(self) -> 'PrecisionPlan':
        return replace(self, N=self.N + self.step, window=self.window * self.growth)

    def describe(self) -> dict:
        return {'N': self.N, 'window': self.window, 'weights': list(self.weights)}


def series_weights(spec: FieldSpec, lifts: Sequence[LiftedElement]) -> Tuple[int, ...]:
    """(1) for n = 1; (1, L) with every principal monomial of positive weight for n = 2"""
    if spec.n == 1:
        return (1,)
    L = 1
    for lift in lifts:
        for j1, j2 in lift.principal.coeffs:
            if j2 >= 1:
                L = max(L, -j1 // j2 + 1)
    return (1, L)


def initial_plan(spec: FieldSpec, weights: Tuple[int, ...], growth: int = DEFAULT_GROWTH,
                 max_retries: int = DEFAULT_RETRIES) -> PrecisionPlan:
    pi_weight = weights[-1]
    return PrecisionPlan(N=spec.m + 2, window=pi_weight * spec.pm * (spec.m + 2), weights=tuple(weights),
                         growth=growth, max_retries=max_retries, step=spec.m + 1)


@dataclass(frozen=True)
class SymbolExponent:
    """The exponent c of ζ_{p^m}^c together with its provenance"""
    value: int
    modulus: int
    stabilized_at: Tuple[int, int]
    weights: Tuple[int, ...] = (1,)
    sign: int = 1
    attempts: int = 2


# -- building blocks --------------------------------------------------------

def _as_lift(a: Union[IterSeries, LiftedElement]) -> LiftedElement:
    return a if isinstance(a, LiftedElement) else LiftedElement.from_series(a)


def l_op(a: Union[IterSeries, LiftedElement], bound: Optional[int] = None) -> IterSeries:
    """
    l(a) = (1/p) log(a^p / Δa). Monomials and Teichmüller constants drop
    out, so only the principal part u is used.
    """
    u = _as_lift(a).principal
    bound = u.bound if bound is None else bound
    ratio = (u ** u.ring.p) * invert_unit(delta_twist(u), bound)
    w = ratio - 1
    if not w.is_p_divisible():
        raise ShapeError('a^p / Δa is not congruent to 1 modulo p')
    return log_p_small(w.divide_by_p(), bound)


def _monomial_part(lift: LiftedElement, index: int) -> IterSeries:
    u = lift.principal
    exp = tuple(-1 if i == index else 0 for i in range(u.n))
    return IterSeries.make(u.ring, u.n, {exp: u.ring.from_int(lift.exponents[index], u.prec)},
                           u.prec, u.weights)


def dlog_lifted(a: Union[IterSeries, LiftedElement], bound: Optional[int] = None) -> OneForm:
    """dα/α = Σ_j (i_j / X_j + ∂_j u / u) dX_j"""
    lift = _as_lift(a)
    u = lift.principal
    inv = invert_unit(u, bound)
    return OneForm(tuple(_monomial_part(lift, j) + derivative(u, j) * inv for j in range(u.n)))


def twisted_dlog_lifted(a: Union[IterSeries, LiftedElement], bound: Optional[int] = None) -> OneForm:
    """(1/p) dΔα/Δα = Σ_j (i_j / X_j + (1/p)∂_jΔu / Δu) dX_j"""
    lift = _as_lift(a)
    u = lift.principal
    inv = invert_unit(delta_twist(u), bound)
    return OneForm(tuple(_monomial_part(lift, j) + twisted_derivative_over_p(u, j) * inv
                         for j in range(u.n)))


def phi_form(args: Sequence[Union[IterSeries, LiftedElement]], bound: Optional[int] = None) -> DiffForm:
    """
    Φ = Σ_i (−1)^{n−i+1} l(α_i) · dlog α_1 ∧ ... ∧ dlog α_{i−1}
        ∧ (1/p)dlog Δα_{i+1} ∧ ... ∧ (1/p)dlog Δα_{n+1}

    The p^{-(n−i+1)} factors are absorbed by the twisted derivatives.
    """
    lifts = [_as_lift(a) for a in args]
    n = lifts[0].n
    if len(lifts) != n + 1:
        raise ShapeError(f'Φ takes {n + 1} arguments in dimension {n}, got {len(lifts)}')
    plain = [dlog_lifted(x, bound) for x in lifts]
    twisted = [twisted_dlog_lifted(x, bound) for x in lifts]
    total = None
    for i, lift in enumerate(lifts, start=1):
        l_value = l_op(lift, bound)
        if l_value.is_zero():
            continue
        factors = plain[:i - 1] + twisted[i:]
        body = wedge(*factors).body * l_value
        if (n - i + 1) % 2:
            body = -body
        total = body if total is None else total + body
    if total is None:
        u = lifts[0].principal
        total = IterSeries.make(u.ring, u.n, {}, u.prec, u.weights, bound)
    return DiffForm(total)


# -- the pairing -------------------------------------------------------------

def _exponent_at(lifts: Sequence[LiftedElement], spec: FieldSpec, plan: PrecisionPlan) -> int:
    prec = min(plan.N, spec.N)
    graded = [x.regraded(plan.weights, prec) for x in lifts]
    phi = phi_form(graded, plan.window)
    inverse = invert_s(s_series(spec, prec, plan.weights), spec.m)
    res = residue_mixed(phi, inverse, spec.m)
    return trace_wzp(res) % spec.pm


def exponent_of_lifts(lifts: Sequence[LiftedElement], spec: FieldSpec, plan: Optional[PrecisionPlan] = None,
                      sign: int = 1) -> SymbolExponent:
    """Run the precision controller until two successive plans agree"""
    if len(lifts) != spec.n + 1:
        raise ShapeError(f'the symbol takes {spec.n + 1} arguments, got {len(lifts)}')
    weights = series_weights(spec, lifts)
    if plan is None:
        plan = initial_plan(spec, weights)
    elif plan.weights != weights:
        # keep the caller's schedule, restart the window for the new grading
        plan = initial_plan(spec, weights, plan.growth, plan.max_retries)
    previous: Optional[Tuple[int, PrecisionPlan]] = None
    for attempt in range(plan.max_retries + 1):
        try:
            value = _exponent_at(lifts, spec, plan)
        except WindowTooSmall as exc:
            logger.info(f'window {plan.window} too small at N={plan.N}: {exc}')
            value = None
        if value is not None and previous is not None and previous[0] == value:
            first = previous[1]
            return SymbolExponent(value=sign * value % spec.pm, modulus=spec.pm,
                                  stabilized_at=(first.N, first.window), weights=weights,
                                  sign=sign, attempts=attempt + 1)
        if value is not None and previous is not None:
            logger.info(f'plans N={previous[1].N} and N={plan.N} disagree ({previous[0]} != {value})')
        previous = (value, plan) if value is not None else None
        plan = plan.grown()
        logger.info(f'growing precision plan to N={plan.N}, window={plan.window}')
    logger.warning(f'symbol did not stabilise within {plan.max_retries} retries')
    raise StabilizationError(f'no two successive precision plans agreed after {plan.max_retries} retries')


def vostokov_exponent(xs: Sequence[FieldElement], spec: FieldSpec, plan: Optional[PrecisionPlan] = None,
                      sign: int = 1) -> SymbolExponent:
    """Tr res Φ(α₁, ..., α_{n+1})/s mod p^m, times the global sign"""
    if len(xs) != spec.n + 1:
        raise ShapeError(f'the symbol takes {spec.n + 1} arguments, got {len(xs)}')
    if any(x.is_zero() for x in xs):
        raise ShapeError('symbol arguments must be nonzero')
    lifts = [LiftedElement.from_series(lift_element(x)) for x in xs]
    return exponent_of_lifts(lifts, spec, plan, sign)


def vostokov_exponent_of_series(series: Sequence[IterSeries], spec: FieldSpec,
                                plan: Optional[PrecisionPlan] = None, sign: int = 1) -> SymbolExponent:
    """The same pairing evaluated on caller-supplied lifts"""
    return exponent_of_lifts([LiftedElement.from_series(s) for s in series], spec, plan, sign)


# -- tame symbol --------------------------------------------------------------

def _residue_generator(spec: FieldSpec) -> Coords:
    ring = spec.ring
    if ring.f == 1:
        return (primitive_root(ring.p),)
    order = ring.q - 1
    prime_factors = primefactors(order)
    for g in ring.residues():
        if not any(g):
            continue
        if all(ring.pow(g, order // d, 1) != ring.one() for d in prime_factors):
            return g
    raise ShapeError(f'no generator of F_{ring.q}^*')  # pragma: no cover


def _residue_log(spec: FieldSpec, c: Coords, g: Coords) -> int:
    ring = spec.ring
    if ring.f == 1:
        return discrete_log(ring.p, c[0], g[0])
    x = ring.one()
    for d in range(ring.q - 1):
        if x == c:
            return d
        x = ring.mul(x, g, 1)
    raise ShapeError(f'{c} is not a power of {g}')  # pragma: no cover


def tame_symbol(a: FieldElement, b: FieldElement, l: int) -> int:
    """
    d mod l where (−1)^{v(a)v(b)} a^{v(b)} / b^{v(a)} ≡ g^d in the residue
    field, g the fixed generator of F_q^*
    """
    spec, ring = a.spec, a.spec.ring
    if spec.n != 1:
        raise ShapeError('the tame symbol is only defined for n = 1')
    if l < 1 or (ring.q - 1) % l or l % spec.p == 0:
        raise ShapeError(f'l = {l} must divide q − 1 = {ring.q - 1} and be prime to p')
    na, nb = a.normal_form(), b.normal_form()
    i, j = na.exponents[0], nb.exponents[0]
    theta_a = ring.reduce(na.theta, 1)
    theta_b = ring.reduce(nb.theta, 1)
    c = ring.mul(ring.pow(theta_a, j, 1), ring.pow(theta_b, -i, 1), 1)
    if (i * j) % 2:
        c = ring.neg(c, 1)
    g = _residue_generator(spec)
    return _residue_log(spec, c, g) % l

