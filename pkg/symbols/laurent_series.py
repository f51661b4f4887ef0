"""
Iterated truncated Laurent series over W(F_q) / p^N in one or two variables.

A series is a sparse map from exponent tuples to coefficient coordinates.
Truncation is graded: every series carries a weight vector w and an
exclusive bound D, and is exact on all monomials J with <w, J> < D
(bound None means the series is an exact Laurent polynomial). Products
follow D(ab) = min(D(a) + v(b), D(b) + v(a)) with v the minimal weight,
the same bookkeeping a relative-precision power series ring uses.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .exceptions import PrecisionFault, ShapeError, WindowTooSmall
from .witt_arith import Coords, WittElement, WittRingSpec

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]

_MAX_NEWTON_STEPS = 64


def order_key(exponent: Exponent) -> Exponent:
    """Tuple order on exponents: the last coordinate is the most significant"""
    return tuple(reversed(exponent))


def _min_bound(*bounds: Optional[int]) -> Optional[int]:
    finite = [b for b in bounds if b is not None]
    return min(finite) if finite else None


def _shift_bound(bound: Optional[int], shift: Optional[int]) -> Optional[int]:
    if bound is None or shift is None:
        return None
    return bound + shift


@dataclass(frozen=True, eq=False)
class IterSeries:
    """Σ c_J X^J, exact on weights below `bound` and modulo p^prec"""
    ring: WittRingSpec
    n: int
    coeffs: Dict[Exponent, Coords]
    prec: int
    weights: Tuple[int, ...]
    bound: Optional[int] = None

    # -- construction ------------------------------------------------------

    @classmethod
    def make(cls, ring: WittRingSpec, n: int, coeffs: Dict[Exponent, Coords], prec: int,
             weights: Optional[Sequence[int]] = None, bound: Optional[int] = None) -> 'IterSeries':
        if n not in (1, 2):
            raise ShapeError(f'only one or two variables are supported, got n = {n}')
        if prec < 1:
            raise PrecisionFault('series precision dropped below one digit')
        weights = tuple(weights) if weights is not None else (1,) * n
        clean = {}
        for exp, c in coeffs.items():
            if bound is not None and _weight(weights, exp) >= bound:
                continue
            c = ring.reduce(c, prec)
            if any(c):
                clean[tuple(exp)] = c
        return cls(ring, n, clean, prec, weights, bound)

    @classmethod
    def constant(cls, ring: WittRingSpec, n: int, value, prec: int,
                 weights: Optional[Sequence[int]] = None) -> 'IterSeries':
        return cls.monomial(ring, n, (0,) * n, value, prec, weights)

    @classmethod
    def monomial(cls, ring: WittRingSpec, n: int, exponent: Exponent, value, prec: int,
                 weights: Optional[Sequence[int]] = None) -> 'IterSeries':
        coords = _as_coords(ring, value, prec)
        return cls.make(ring, n, {tuple(exponent): coords}, prec, weights)

    @classmethod
    def variable(cls, ring: WittRingSpec, n: int, index: int, prec: int,
                 weights: Optional[Sequence[int]] = None) -> 'IterSeries':
        exp = tuple(1 if i == index else 0 for i in range(n))
        return cls.monomial(ring, n, exp, 1, prec, weights)

    def _like(self, coeffs, prec=None, bound='same') -> 'IterSeries':
        return IterSeries.make(self.ring, self.n, coeffs, self.prec if prec is None else prec,
                               self.weights, self.bound if bound == 'same' else bound)

    # -- inspection --------------------------------------------------------

    def weight(self, exponent: Exponent) -> int:
        return _weight(self.weights, exponent)

    def valuation(self) -> Optional[int]:
        """Minimal weight of the support; None for the zero series"""
        if not self.coeffs:
            return None
        return min(self.weight(e) for e in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exponent: Exponent) -> WittElement:
        exponent = tuple(exponent)
        if self.bound is not None and self.weight(exponent) >= self.bound:
            raise WindowTooSmall(f'coefficient {exponent} lies outside the window < {self.bound}')
        return WittElement(self.ring, self.coeffs.get(exponent, self.ring.zero()), self.prec)

    def leading_exponent(self) -> Exponent:
        if not self.coeffs:
            raise ShapeError('the zero series has no leading term')
        return min(self.coeffs, key=order_key)

    def truncate(self, bound: Optional[int] = None, prec: Optional[int] = None) -> 'IterSeries':
        bound = _min_bound(self.bound, bound)
        prec = self.prec if prec is None else min(prec, self.prec)
        return self._like(self.coeffs, prec=prec, bound=bound)

    def with_weights(self, weights: Sequence[int]) -> 'IterSeries':
        if self.bound is not None:
            raise ShapeError('only exact series can be regraded')
        return IterSeries.make(self.ring, self.n, self.coeffs, self.prec, weights, None)

    def agrees_with(self, other: 'IterSeries') -> bool:
        """Equality on the common window at the common precision"""
        prec = min(self.prec, other.prec)
        bound = _min_bound(self.bound, other.bound)
        mod = self.ring.pn(prec)
        keys = set(self.coeffs) | set(other.coeffs)
        for k in keys:
            if bound is not None and self.weight(k) >= bound:
                continue
            a = self.coeffs.get(k, self.ring.zero())
            b = other.coeffs.get(k, self.ring.zero())
            if any((x - y) % mod for x, y in zip(a, b)):
                return False
        return True

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: 'IterSeries'):
        if not isinstance(other, IterSeries):
            raise ShapeError(f'cannot combine a series with {type(other).__name__}')
        if other.ring != self.ring or other.n != self.n:
            raise ShapeError('series over different rings or arities')
        if other.weights != self.weights:
            raise ShapeError(f'series graded by {self.weights} and {other.weights}')

    def _coerce(self, other) -> 'IterSeries':
        if isinstance(other, (int, WittElement)):
            return IterSeries.constant(self.ring, self.n, other, self.prec, self.weights)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = self.ring.add(out[k], c, prec) if k in out else c
        return IterSeries.make(self.ring, self.n, out, prec, self.weights,
                               _min_bound(self.bound, other.bound))

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: self.ring.neg(c, self.prec) for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, WittElement)):
            return self.scale(other)
        self._check(other)
        prec = min(self.prec, other.prec)
        bound = _min_bound(_shift_bound(self.bound, other.valuation()),
                           _shift_bound(other.bound, self.valuation()))
        if self.is_zero() or other.is_zero():
            return IterSeries.make(self.ring, self.n, {}, prec, self.weights, bound)
        return IterSeries.make(self.ring, self.n, _convolve(self, other, bound, prec),
                               prec, self.weights, bound)

    __rmul__ = __mul__

    def scale(self, value) -> 'IterSeries':
        prec = self.prec
        if isinstance(value, WittElement):
            prec = min(prec, value.prec)
        c = _as_coords(self.ring, value, prec)
        return self._like({k: self.ring.mul(v, c, prec) for k, v in self.coeffs.items()}, prec=prec)

    def __pow__(self, e: int) -> 'IterSeries':
        if e < 0:
            raise ShapeError('use invert_unit for negative powers')
        result = IterSeries.constant(self.ring, self.n, 1, self.prec, self.weights)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, exponent: Exponent) -> 'IterSeries':
        """Multiplication by the monomial X^exponent"""
        exponent = tuple(exponent)
        moved = {tuple(a + b for a, b in zip(k, exponent)): c for k, c in self.coeffs.items()}
        return self._like(moved, bound=_shift_bound(self.bound, self.weight(exponent)))

    def map_coefficients(self, fn) -> 'IterSeries':
        return self._like({k: fn(c) for k, c in self.coeffs.items()})

    def divide_by_p(self) -> 'IterSeries':
        return self._like({k: self.ring.divide_by_p(c, self.prec - 1) for k, c in self.coeffs.items()},
                          prec=self.prec - 1)

    def is_p_divisible(self) -> bool:
        return all(x % self.ring.p == 0 for c in self.coeffs.values() for x in c)

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda kv: order_key(kv[0]))[:8]
        body = ' + '.join(f'{c}*X^{k}' for k, c in terms) or '0'
        more = ' + ...' if len(self.coeffs) > 8 else ''
        return f'IterSeries({body}{more}; mod p^{self.prec}, weight < {self.bound})'


def _weight(weights: Sequence[int], exponent: Exponent) -> int:
    return sum(w * e for w, e in zip(weights, exponent))


def _as_coords(ring: WittRingSpec, value, prec: int) -> Coords:
    if isinstance(value, WittElement):
        return ring.reduce(value.coords, prec)
    if isinstance(value, int):
        return ring.from_int(value, prec)
    return ring.reduce(value, prec)


def _convolve(a: IterSeries, b: IterSeries, bound: Optional[int], prec: int) -> Dict[Exponent, Coords]:
    ring = a.ring
    w = a.weights
    mod = ring.pn(prec)
    items_b = sorted(((a.weight(k), k, c) for k, c in b.coeffs.items()))
    out: Dict[Exponent, list] = {}
    scalar = ring.f == 1
    for ka, ca in a.coeffs.items():
        wa = _weight(w, ka)
        for wb, kb, cb in items_b:
            if bound is not None and wa + wb >= bound:
                break
            k = tuple(x + y for x, y in zip(ka, kb))
            if scalar:
                prev = out.get(k)
                out[k] = [(prev[0] if prev else 0) + ca[0] * cb[0]]
            else:
                prod = ring.mul(ca, cb, prec)
                prev = out.get(k)
                out[k] = [x + y for x, y in zip(prev, prod)] if prev else list(prod)
    return {k: tuple(x % mod for x in v) for k, v in out.items()}


# -- differential forms -----------------------------------------------------

@dataclass(frozen=True)
class OneForm:
    """Σ_i g_i dX_i"""
    components: Tuple[IterSeries, ...]


@dataclass(frozen=True)
class DiffForm:
    """g dX_1 ∧ ... ∧ dX_n"""
    body: IterSeries
    orientation: int = 1

    def transposed(self) -> 'DiffForm':
        return DiffForm(self.body, -self.orientation)

    def __add__(self, other: 'DiffForm') -> 'DiffForm':
        return DiffForm(self.body.scale(self.orientation) + other.body.scale(other.orientation))

    def scale(self, value) -> 'DiffForm':
        return DiffForm(self.body.scale(value), self.orientation)


# -- operations -------------------------------------------------------------

def series_arith(a: IterSeries, b: IterSeries, op: str) -> IterSeries:
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise ShapeError(f'unknown series operation {op!r}')


def derivative(a: IterSeries, index: int) -> IterSeries:
    """Formal partial derivative ∂/∂X_index"""
    ring = a.ring
    out = {}
    for k, c in a.coeffs.items():
        j = k[index]
        if j:
            shifted = tuple(x - 1 if i == index else x for i, x in enumerate(k))
            out[shifted] = ring.scale(c, j, a.prec)
    return IterSeries.make(ring, a.n, out, a.prec, a.weights,
                           _shift_bound(a.bound, -a.weights[index]))


def delta_twist(a: IterSeries) -> IterSeries:
    """Δ: Frobenius on coefficients and X_i -> X_i^p"""
    ring, p = a.ring, a.ring.p
    out = {tuple(p * x for x in k): ring.frobenius(c, a.prec) for k, c in a.coeffs.items()}
    bound = None if a.bound is None else p * a.bound
    return IterSeries.make(ring, a.n, out, a.prec, a.weights, bound)


def twisted_derivative_over_p(a: IterSeries, index: int) -> IterSeries:
    """(1/p) ∂/∂X_index of Δ(a), computed without dividing: j·Frob(c) at pJ - e_index"""
    ring, p = a.ring, a.ring.p
    out = {}
    for k, c in a.coeffs.items():
        j = k[index]
        if j:
            exp = tuple(p * x - (1 if i == index else 0) for i, x in enumerate(k))
            out[exp] = ring.scale(ring.frobenius(c, a.prec), j, a.prec)
    bound = None if a.bound is None else p * a.bound - a.weights[index]
    return IterSeries.make(ring, a.n, out, a.prec, a.weights, bound)


def invert_unit(a: IterSeries, bound: Optional[int] = None) -> IterSeries:
    """
    Inverse of a = c X^J (1 + h) where c is a unit, J is the tuple-order
    leading exponent and h has nonnegative weight, p-divisible in weight 0.
    """
    if a.is_zero():
        raise ShapeError('cannot invert the zero series')
    ring = a.ring
    lead = a.leading_exponent()
    c = a.coeffs[lead]
    if not ring.is_unit(c):
        raise ShapeError(f'leading coefficient {c} at {lead} is not a unit')
    v = a.weight(lead)
    for k, coef in a.coeffs.items():
        wk = a.weight(k)
        if k != lead and (wk < v or (wk == v and ring.is_unit(coef))):
            raise ShapeError(f'exponent {k} competes with the leading term {lead}')

    c_inv = ring.inverse(c, a.prec)
    neg_lead = tuple(-x for x in lead)
    start = IterSeries.make(ring, a.n, {neg_lead: c_inv}, a.prec, a.weights)
    if len(a.coeffs) == 1 and a.bound is None:
        return start

    target = _min_bound(None if a.bound is None else a.bound - 2 * v, bound)
    if target is None:
        raise WindowTooSmall('inverting an infinite series needs an explicit window')
    one = IterSeries.constant(ring, a.n, 1, a.prec, a.weights)
    inv = start
    for _ in range(_MAX_NEWTON_STEPS):
        prod = IterSeries.make(ring, a.n, _convolve(a, inv, target + v, a.prec), a.prec, a.weights)
        t = (one - prod).truncate(target + v)
        if t.is_zero():
            return IterSeries.make(ring, a.n, inv.coeffs, a.prec, a.weights, target)
        inv = inv + IterSeries.make(ring, a.n, _convolve(inv, t, target, a.prec), a.prec, a.weights)
        inv = inv.truncate(target)
        inv = IterSeries.make(ring, a.n, inv.coeffs, a.prec, a.weights)
    raise PrecisionFault('series inversion did not converge')


def _log_series(w: IterSeries, shift: int, bound: Optional[int]) -> IterSeries:
    """
    Σ_{k>=1} (-1)^(k+1) p^(k-1+shift)/k · w^k for integral w; every
    coefficient p^(k-1+shift)/k is p-integral when p is odd and shift >= 0.
    """
    ring, p, prec = w.ring, w.ring.p, w.prec
    vw = w.valuation()
    if vw is None:
        return w
    bound = _min_bound(w.bound, bound)
    if vw < 0:
        raise ShapeError('logarithm argument has negative weight')
    total = IterSeries.make(ring, w.n, {}, prec, w.weights, bound)
    power = w.truncate(bound)
    k = 1
    while True:
        vk = _vp(k, p)
        e = k - 1 + shift - vk
        if e < prec and not power.is_zero():
            unit = k // p ** vk
            factor = pow(p, e) * pow(unit, -1, ring.pn(prec)) * (-1) ** (k + 1)
            total = total + power.scale(factor)
        done_padic = (k - 1 + shift - math.log(k + 1, p)) >= prec
        done_window = vw > 0 and bound is not None and (k + 1) * vw >= bound
        if done_padic or done_window or power.is_zero():
            break
        power = (power * w).truncate(bound)
        k += 1
    return IterSeries.make(ring, w.n, total.coeffs, prec, w.weights, bound)


def _vp(k: int, p: int) -> int:
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def log_unit(a: IterSeries, bound: Optional[int] = None) -> IterSeries:
    """
    log(1 + u) for a = 1 + u. When u ≡ 0 (mod p) the p-adic series is used
    and one digit is lost; otherwise u must have positive weight and every
    term u^k with p | k must be divisible by p^{v_p(k)}.
    """
    ring = a.ring
    u = a - 1
    if u.is_zero():
        return u
    if u.is_p_divisible():
        return _log_series(u.divide_by_p(), 1, bound)
    vu = u.valuation()
    if vu is None or vu <= 0:
        raise ShapeError('log_unit needs a ≡ 1 modulo (p, X)')
    bound = _min_bound(u.bound, bound)
    if bound is None:
        raise WindowTooSmall('the logarithm of a polynomial needs an explicit window')
    p, prec = ring.p, a.prec
    total = IterSeries.make(ring, a.n, {}, prec, a.weights, bound)
    power = u.truncate(bound)
    lost = 0
    k = 1
    while not power.is_zero():
        vk = _vp(k, p)
        term = power
        for _ in range(vk):
            if not term.is_p_divisible():
                raise PrecisionFault(f'log term of degree {k} is not integral')
            term = term.divide_by_p()
        lost = max(lost, vk)
        unit = k // p ** vk
        term = term.scale(pow(unit, -1, ring.pn(term.prec)) * (-1) ** (k + 1))
        total = total.truncate(prec=term.prec) + term
        power = (power * u).truncate(bound)
        k += 1
    return IterSeries.make(ring, a.n, total.coeffs, prec - lost, a.weights, bound)


def log_p_small(w: IterSeries, bound: Optional[int] = None) -> IterSeries:
    """(1/p) log(1 + p w), the form the l-operator needs"""
    return _log_series(w, 0, bound)


@lru_cache(maxsize=None)
def artin_hasse_coefficients(p: int, count: int) -> Tuple[Fraction, ...]:
    """First `count` coefficients of exp(Σ_k Y^{p^k}/p^k)"""
    coeffs = [Fraction(1)]
    for n in range(1, count):
        acc = Fraction(0)
        pk = 1
        while pk <= n:
            acc += coeffs[n - pk]
            pk *= p
        coeffs.append(acc / n)
    for n, c in enumerate(coeffs):
        if c.denominator % p == 0:
            raise PrecisionFault(f'Artin–Hasse coefficient {n} is not p-integral')
    return tuple(coeffs)


def _artin_hasse_at(ring: WittRingSpec, n: int, exponent: Exponent, theta: Coords,
                    prec: int, weights: Sequence[int], bound: int) -> IterSeries:
    wt = _weight(weights, exponent)
    count = (bound - 1) // wt + 1
    mod = ring.pn(prec)
    coeffs = {}
    power = ring.reduce(ring.one(), prec)
    for k, c in enumerate(artin_hasse_coefficients(ring.p, count)):
        scalar = c.numerator * pow(c.denominator, -1, mod) % mod
        coeffs[tuple(k * x for x in exponent)] = ring.scale(power, scalar, prec)
        power = ring.mul(power, theta, prec)
    return IterSeries.make(ring, n, coeffs, prec, weights, bound)


def exp_precision_loss(p: int, order: int, bound: int) -> int:
    """
    Digits E(f) loses when the digit expansion of f stops at the working
    precision: the dropped tail contributes E(g)^{p^N}, which is only
    ≡ 1 mod p^{N − k} up to weight p^k·order.
    """
    top = (bound - 1) // order
    loss = 0
    while p ** (loss + 1) <= top:
        loss += 1
    return loss


def shafarevich_exp(f: IterSeries, bound: Optional[int] = None) -> IterSeries:
    """
    E(f) = exp((1 + Δ/p + Δ²/p² + ...) f), assembled as the product of
    Artin–Hasse exponentials AH(θ X^J)^{p^k} over the Teichmüller digits
    of every coefficient of f. The result is exact modulo
    p^{prec − exp_precision_loss}.
    """
    ring = f.ring
    bound = _min_bound(f.bound, bound)
    if bound is None:
        raise WindowTooSmall('E(f) needs an explicit window')
    result = IterSeries.constant(ring, f.n, 1, f.prec, f.weights).truncate(bound)
    if f.is_zero():
        return result
    order = f.valuation()
    if order <= 0:
        raise ShapeError('E(f) needs f of positive order')
    loss = exp_precision_loss(ring.p, order, bound)
    if loss >= f.prec:
        raise PrecisionFault(f'E(f) at window {bound} needs more than {f.prec} digits')
    for exponent, c in sorted(f.coeffs.items(), key=lambda kv: order_key(kv[0])):
        for k, digit in enumerate(ring.teichmuller_digits(c, f.prec)):
            if not any(digit):
                continue
            theta = ring.teichmuller(digit, f.prec)
            factor = _artin_hasse_at(ring, f.n, exponent, theta, f.prec, f.weights, bound)
            for _ in range(k):
                factor = factor ** ring.p
            result = result * factor
    return result.truncate(prec=f.prec - loss)


def dlog(a: IterSeries, bound: Optional[int] = None) -> OneForm:
    """d a / a as a one-form (∂_1 a / a, ..., ∂_n a / a)"""
    inv = invert_unit(a, bound)
    return OneForm(tuple(derivative(a, i) * inv for i in range(a.n)))


def wedge(*forms: OneForm) -> DiffForm:
    """Top-degree wedge of n one-forms in n variables"""
    if not forms:
        raise ShapeError('wedge of no forms')
    n = len(forms[0].components)
    if len(forms) != n:
        raise ShapeError(f'wedge of {len(forms)} one-forms in {n} variables is not a top form')
    if n == 1:
        return DiffForm(forms[0].components[0])
    (a1, a2), (b1, b2) = forms[0].components, forms[1].components
    return DiffForm(a1 * b2 - a2 * b1)


def residue(w: DiffForm) -> WittElement:
    """Coefficient of X_1^-1 ... X_n^-1 times the orientation"""
    body = w.body
    target = (-1,) * body.n
    return body.coefficient(target) * w.orientation


@dataclass(frozen=True)
class MixedInverse:
    """Σ_k p^k T_k with T_k series; term k matters modulo p^(prec - k)"""
    terms: Tuple[Tuple[int, IterSeries], ...]
    K_max: int

    def product_with(self, s: IterSeries) -> IterSeries:
        ring = s.ring
        total = None
        for k, t in self.terms:
            term = (s * t).scale(ring.p ** k)
            total = term if total is None else total + term
        return total


def invert_s(s: IterSeries, prec_target: int, bound: Optional[int] = None) -> MixedInverse:
    """
    Write s = s0 + p s1 with s0 the part of weight at least that of the first
    unit monomial, so that 1/s = s0^{-1} Σ_k (-p s1 s0^{-1})^k.
    """
    ring = s.ring
    units = [k for k, c in s.coeffs.items() if ring.is_unit(c)]
    if not units:
        raise ShapeError('s has no unit coefficient')
    c = min(units, key=lambda k: (s.weight(k), order_key(k)))
    vc = s.weight(c)
    s0 = {k: v for k, v in s.coeffs.items() if s.weight(k) >= vc}
    low = {k: v for k, v in s.coeffs.items() if s.weight(k) < vc}
    s0 = IterSeries.make(ring, s.n, s0, s.prec, s.weights, s.bound)
    s1 = IterSeries.make(ring, s.n, low, s.prec, s.weights, s.bound)
    if not s1.is_p_divisible():
        raise ShapeError('s is not an X-power times a unit plus a p-divisible tail')
    t0 = invert_unit(s0, bound)
    terms = [(0, t0)]
    if not s1.is_zero():
        r = -(s1.divide_by_p() * t0)
        current = t0
        for k in range(1, prec_target):
            current = current * r
            terms.append((k, current))
    return MixedInverse(tuple(terms), prec_target)


def residue_mixed(w: DiffForm, inverse: MixedInverse, prec: int) -> WittElement:
    """res(w · Σ p^k T_k), summed term by term modulo p^prec"""
    ring = w.body.ring
    total = ring.element(0, prec)
    for k, t in inverse.terms:
        if k >= prec:
            break
        part = residue(DiffForm(w.body * t, w.orientation))
        total = total + part.reduce(prec) * (ring.p ** k)
    return total
