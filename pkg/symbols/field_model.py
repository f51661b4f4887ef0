"""
The fields under test and exact arithmetic inside them.

n = 1: K = Q_p(ζ) with ζ = ζ_{p^m}, π = ζ − 1, O_K = W[π] / minpoly(π).
n = 2: K = Q_p(ζ){{t₁}} with t₂ = π; an element is a finite sum of
t₁-columns, each column an element of the one-dimensional field.

A column is the coordinate vector of Σ_{k<e} c_k π^k with c_k ∈ W(F_q).
Every FieldElement stores integral numerators over a common denominator
p^denom; the numerators are known modulo p^prec.
"""

import ast
import logging
import math
import random
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from sympy import Poly, symbols

from .exceptions import ElementSyntaxError, PrecisionFault, RingError, ShapeError
from .laurent_series import IterSeries, order_key
from .witt_arith import Coords, WittElement, WittRingSpec, make_ring

logger = logging.getLogger(__name__)

Column = Tuple[Coords, ...]

DEFAULT_PRECISION_EXTRA = 6

_X = symbols('x')


@dataclass(frozen=True)
class FieldSpec:
    """Q_p(ζ_{p^m}) (n = 1) or Q_p(ζ_{p^m}){{t₁}} (n = 2) over W(F_{p^f})"""
    p: int
    m: int
    n: int
    ring: WittRingSpec
    # monic Eisenstein polynomial of π = ζ − 1, coefficients a_0, ..., a_e
    minpoly: Tuple[int, ...]

    @property
    def f(self) -> int:
        return self.ring.f

    @property
    def N(self) -> int:
        return self.ring.N

    @property
    def e(self) -> int:
        return len(self.minpoly) - 1

    @property
    def e_vec(self) -> Tuple[int, ...]:
        return (self.e,) if self.n == 1 else (0, self.e)

    @property
    def pm(self) -> int:
        return self.p ** self.m

    @property
    def kind(self) -> str:
        return 'cyclotomic' if self.n == 1 else 'series-over-cyclotomic'

    @property
    def pi_index(self) -> int:
        """Index of the series variable standing for π"""
        return self.n - 1

    def describe(self) -> dict:
        return {
            'kind': self.kind,
            'p': self.p,
            'm': self.m,
            'n': self.n,
            'f': self.f,
            'N': self.N,
            'e': self.e,
            'minpoly': list(self.minpoly),
        }

    # -- distinguished elements -------------------------------------------

    def constant(self, value, prec: Optional[int] = None) -> 'FieldElement':
        prec = self.N if prec is None else prec
        if isinstance(value, WittElement):
            coords = self.ring.reduce(value.coords, prec)
        elif isinstance(value, int):
            coords = self.ring.from_int(value, prec)
        else:
            coords = self.ring.reduce(value, prec)
        col = (coords,) + (self.ring.zero(),) * (self.e - 1)
        return FieldElement.make(self, {0: col}, 0, prec)

    def one(self, prec: Optional[int] = None) -> 'FieldElement':
        return self.constant(1, prec)

    def pi(self, prec: Optional[int] = None) -> 'FieldElement':
        prec = self.N if prec is None else prec
        col = tuple(self.ring.from_int(1 if k == 1 else 0, prec) for k in range(self.e))
        return FieldElement.make(self, {0: col}, 0, prec)

    def zeta(self, prec: Optional[int] = None) -> 'FieldElement':
        return self.one(prec) + self.pi(prec)

    def t1(self, prec: Optional[int] = None) -> 'FieldElement':
        if self.n == 1:
            return self.pi(prec)
        return self.one(prec).shift_t1(1)

    def teichmuller(self, residue, prec: Optional[int] = None) -> 'FieldElement':
        prec = self.N if prec is None else prec
        return self.constant(self.ring.teichmuller(residue, prec), prec)

    def minpoly_series(self, prec: Optional[int] = None, weights=None) -> IterSeries:
        prec = self.N if prec is None else prec
        coeffs = {}
        for k, a in enumerate(self.minpoly):
            coeffs[_pi_exponent(self, 0, k)] = self.ring.from_int(a, prec)
        return IterSeries.make(self.ring, self.n, coeffs, prec, weights)


def _pi_exponent(spec: FieldSpec, j1: int, k: int) -> Tuple[int, ...]:
    return (k,) if spec.n == 1 else (j1, k)


def _eisenstein_polynomial(p: int, m: int) -> Tuple[int, ...]:
    num = Poly((1 + _X) ** (p ** m) - 1, _X)
    den = Poly((1 + _X) ** (p ** (m - 1)) - 1, _X)
    quotient, remainder = num.div(den)
    if not remainder.is_zero:  # pragma: no cover - cyclotomic identity
        raise RingError(f'(1+X)^{p ** (m - 1)} - 1 does not divide (1+X)^{p ** m} - 1')
    coeffs = tuple(int(c) for c in reversed(quotient.all_coeffs()))
    if coeffs[-1] != 1 or any(c % p for c in coeffs[:-1]) or coeffs[0] % (p * p) == 0:
        raise RingError(f'minimal polynomial {coeffs} is not Eisenstein')
    return coeffs


def cyclotomic_spec(p: int, m: int, n: int = 1, f: int = 1, N: Optional[int] = None) -> FieldSpec:
    """
    Build the field description. The default precision carries
    DEFAULT_PRECISION_EXTRA digits beyond m + 2.
    """
    if n not in (1, 2):
        raise ShapeError(f'dimension n = {n} is not supported')
    if m < 1:
        raise RingError(f'm = {m} must be at least 1')
    N = m + 2 + DEFAULT_PRECISION_EXTRA if N is None else N
    ring = make_ring(p, f, N)
    return FieldSpec(p=p, m=m, n=n, ring=ring, minpoly=_eisenstein_polynomial(p, m))


def with_precision(spec: FieldSpec, N: int) -> FieldSpec:
    if N == spec.N:
        return spec
    return FieldSpec(p=spec.p, m=spec.m, n=spec.n, ring=make_ring(spec.p, spec.f, N), minpoly=spec.minpoly)


# -- column arithmetic in O_{Q_p(ζ)} = W[π] -------------------------------

def _zero_column(spec: FieldSpec) -> Column:
    return (spec.ring.zero(),) * spec.e


def _column_add(spec: FieldSpec, a: Column, b: Column, prec: int) -> Column:
    return tuple(spec.ring.add(x, y, prec) for x, y in zip(a, b))


def _column_scale(spec: FieldSpec, a: Column, c: Coords, prec: int) -> Column:
    return tuple(spec.ring.mul(x, c, prec) for x in a)


def _column_scale_int(spec: FieldSpec, a: Column, k: int, prec: int) -> Column:
    return tuple(spec.ring.scale(x, k, prec) for x in a)


def _column_mul(spec: FieldSpec, a: Column, b: Column, prec: int) -> Column:
    ring, e = spec.ring, spec.e
    prod = [ring.zero()] * (2 * e - 1)
    for i, x in enumerate(a):
        if not any(x):
            continue
        for j, y in enumerate(b):
            if any(y):
                prod[i + j] = ring.add(prod[i + j], ring.mul(x, y, prec), prec)
    # π^e = -(a_0 + a_1 π + ... + a_{e-1} π^{e-1})
    for k in range(2 * e - 2, e - 1, -1):
        top = prod[k]
        if any(top):
            for i in range(e):
                prod[k - e + i] = ring.sub(prod[k - e + i], ring.scale(top, spec.minpoly[i], prec), prec)
    return tuple(prod[:e])


def _column_times_pi(spec: FieldSpec, a: Column, prec: int) -> Column:
    ring, e = spec.ring, spec.e
    top = a[e - 1]
    out = [ring.neg(ring.scale(top, spec.minpoly[0], prec), prec)]
    for k in range(1, e):
        out.append(ring.sub(a[k - 1], ring.scale(top, spec.minpoly[k], prec), prec))
    return tuple(out)


def _column_divide_by_pi(spec: FieldSpec, a: Column, prec: int) -> Column:
    """a / π for a column with p | c_0; the result is good to p^(prec-1)"""
    ring, e = spec.ring, spec.e
    u0 = spec.minpoly[0] // spec.p
    d = ring.divide_by_p(a[0], prec)
    d = ring.scale(d, pow(u0, -1, ring.pn(prec)), prec)
    shifted = list(a[1:]) + [ring.zero()]
    return tuple(ring.sub(shifted[k], ring.scale(d, spec.minpoly[k + 1], prec), prec) for k in range(e))


def _column_valuation(spec: FieldSpec, a: Column, prec: int) -> Optional[int]:
    best = None
    for k, c in enumerate(a):
        if spec.ring.is_zero(c, prec):
            continue
        v = spec.e * spec.ring.valuation(c, prec) + k
        best = v if best is None else min(best, v)
    return best


def _absorb_constant(spec: FieldSpec, a: Column, prec: int) -> Dict[int, Coords]:
    """
    Rewrite a column with p | c_0 as a polynomial in π without constant term,
    using p = -(π^e + a_{e-1}π^{e-1} + ... + a_1 π) / u_0.
    """
    ring, e = spec.ring, spec.e
    u0 = spec.minpoly[0] // spec.p
    d = ring.divide_by_p(a[0], prec)
    d = ring.scale(d, pow(u0, -1, ring.pn(prec)), prec)
    poly = {k: a[k] for k in range(1, e)}
    poly[e] = ring.zero()
    for k in range(1, e + 1):
        poly[k] = ring.sub(poly[k], ring.scale(d, spec.minpoly[k], prec), prec)
    return {k: c for k, c in poly.items() if any(c)}


@dataclass(frozen=True)
class NormalForm:
    """x = t^i · θ · (1 + ψ) with ψ given by its monomials"""
    exponents: Tuple[int, ...]
    theta: Coords
    principal: Dict[Tuple[int, ...], Coords]
    prec: int


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Σ_j t₁^j · column_j / p^denom, numerators modulo p^prec"""
    spec: FieldSpec
    columns: Dict[int, Column]
    denom: int
    prec: int

    @classmethod
    def make(cls, spec: FieldSpec, columns: Dict[int, Column], denom: int = 0,
             prec: Optional[int] = None) -> 'FieldElement':
        prec = spec.N if prec is None else prec
        if prec - denom < 1:
            raise PrecisionFault(f'element precision exhausted (p^{prec} over p^{denom})')
        ring = spec.ring
        clean = {}
        for j, col in columns.items():
            col = tuple(ring.reduce(c, prec) for c in col)
            if any(any(c) for c in col):
                clean[j] = col
        if spec.n == 1 and set(clean) - {0}:
            raise ShapeError('one-dimensional elements have a single column')
        while denom > 0 and clean and all(x % spec.p == 0 for col in clean.values() for c in col for x in c):
            clean = {j: tuple(tuple(x // spec.p for x in c) for c in col) for j, col in clean.items()}
            denom -= 1
            prec -= 1
        if not clean:
            denom = 0
        return cls(spec, clean, denom, prec)

    # -- inspection --------------------------------------------------------

    @property
    def value_prec(self) -> int:
        """The element is known modulo p^value_prec"""
        return self.prec - self.denom

    def is_zero(self) -> bool:
        return not self.columns

    def column(self, j: int = 0) -> Column:
        return self.columns.get(j, _zero_column(self.spec))

    def valuation(self) -> Tuple[int, ...]:
        """(v_π) for n = 1, (i₁, i₂) for n = 2 with i₂ the π-valuation"""
        if self.is_zero():
            raise ShapeError('the zero element has no valuation')
        per_column = {j: _column_valuation(self.spec, col, self.prec) for j, col in self.columns.items()}
        shift = self.spec.e * self.denom
        outer = min(per_column.values())
        if self.spec.n == 1:
            return (outer - shift,)
        inner = min(j for j, v in per_column.items() if v == outer)
        return (inner, outer - shift)

    def equals(self, other: 'FieldElement') -> bool:
        return (self - other).is_zero()

    def __repr__(self):
        return f'FieldElement({self.to_text()}; mod p^{self.value_prec})'

    def to_text(self) -> str:
        terms = []
        for j in sorted(self.columns):
            for k, c in enumerate(self.columns[j]):
                if not any(c):
                    continue
                coeff = str(c[0]) if self.spec.f == 1 else '[' + ','.join(str(x) for x in c) + ']'
                mono = [coeff]
                if j:
                    mono.append(f't1^{j}')
                if k:
                    mono.append(f'pi^{k}')
                terms.append('*'.join(mono))
        body = ' + '.join(terms) or '0'
        if self.denom:
            return f'({body})/{self.spec.p}^{self.denom}'
        return body

    # -- arithmetic --------------------------------------------------------

    def _raised(self, denom: int) -> 'FieldElement':
        shift = denom - self.denom
        if shift <= 0:
            return self
        factor = self.spec.p ** shift
        prec = self.prec + shift
        cols = {j: _column_scale_int(self.spec, col, factor, prec) for j, col in self.columns.items()}
        return FieldElement(self.spec, cols, denom, prec)

    def _coerce(self, other) -> 'FieldElement':
        if isinstance(other, (int, WittElement)):
            return self.spec.constant(other, self.prec)
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise ShapeError('arithmetic between elements of different fields')
        return other

    def __add__(self, other):
        other = self._coerce(other)
        denom = max(self.denom, other.denom)
        a, b = self._raised(denom), other._raised(denom)
        prec = min(a.prec, b.prec)
        cols = dict(a.columns)
        for j, col in b.columns.items():
            cols[j] = _column_add(self.spec, cols[j], col, prec) if j in cols else col
        return FieldElement.make(self.spec, cols, denom, prec)

    __radd__ = __add__

    def __neg__(self):
        ring = self.spec.ring
        cols = {j: tuple(ring.neg(c, self.prec) for c in col) for j, col in self.columns.items()}
        return FieldElement.make(self.spec, cols, self.denom, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        cols: Dict[int, Column] = {}
        for ja, ca in self.columns.items():
            for jb, cb in other.columns.items():
                prod = _column_mul(self.spec, ca, cb, prec)
                j = ja + jb
                cols[j] = _column_add(self.spec, cols[j], prod, prec) if j in cols else prod
        return FieldElement.make(self.spec, cols, self.denom + other.denom, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> 'FieldElement':
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one(self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Coords) -> 'FieldElement':
        cols = {j: _column_scale(self.spec, col, c, self.prec) for j, col in self.columns.items()}
        return FieldElement.make(self.spec, cols, self.denom, self.prec)

    def shift_t1(self, k: int) -> 'FieldElement':
        if self.spec.n == 1:
            return self.shift_pi(k)
        return FieldElement(self.spec, {j + k: col for j, col in self.columns.items()}, self.denom, self.prec)

    def shift_pi(self, k: int) -> 'FieldElement':
        """Multiplication by π^k; negative k goes through the denominator"""
        x = self
        spec = self.spec
        for _ in range(max(k, 0)):
            cols = {j: _column_times_pi(spec, col, x.prec) for j, col in x.columns.items()}
            x = FieldElement(spec, cols, x.denom, x.prec)
        for _ in range(max(-k, 0)):
            x = x._raised(x.denom + 1)
            cols = {j: _column_divide_by_pi(spec, col, x.prec) for j, col in x.columns.items()}
            x = FieldElement(spec, cols, x.denom, x.prec - 1)
        return FieldElement.make(spec, x.columns, x.denom, x.prec)

    def reduce(self, prec: int) -> 'FieldElement':
        return FieldElement.make(self.spec, self.columns, self.denom, min(self.prec, prec + self.denom))

    def inverse(self) -> 'FieldElement':
        """
        Inverse of any nonzero element for n = 1; for n = 2 only elements
        supported on a single t₁-column are inverted.
        """
        if self.is_zero():
            raise ShapeError('cannot invert zero')
        if len(self.columns) != 1:
            raise ShapeError('only single-column elements of Q_p(ζ){{t₁}} are invertible here')
        (j, _), = self.columns.items()
        i = self.valuation()[-1]
        unit = self.shift_t1(-j) if self.spec.n == 2 else self
        unit = unit.shift_pi(-i)
        inv = _unit_inverse(unit)
        inv = inv.shift_pi(-i)
        return inv.shift_t1(-j) if self.spec.n == 2 else inv

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    # -- normal form -------------------------------------------------------

    def normal_form(self) -> NormalForm:
        spec, ring = self.spec, self.spec.ring
        if self.is_zero():
            raise ShapeError('cannot normalise zero')
        exps = self.valuation()
        y = self.shift_t1(-exps[0]) if spec.n == 2 else self
        y = y.shift_pi(-exps[-1])
        if y.denom:
            raise PrecisionFault('unit part kept a denominator')
        prec = y.prec
        theta = ring.teichmuller(ring.reduce(y.column(0)[0], 1), prec)
        u = y.scale(ring.inverse(theta, prec))
        principal: Dict[Tuple[int, ...], Coords] = {}
        for j, col in u.columns.items():
            if j == 0:
                shifted = (ring.sub(col[0], ring.one(), prec),) + col[1:]
                poly = _absorb_constant(spec, shifted, prec)
            elif j < 0:
                poly = _absorb_constant(spec, col, prec)
            else:
                poly = {k: c for k, c in enumerate(col) if any(c)}
            for k, c in poly.items():
                principal[_pi_exponent(spec, j, k)] = c
        return NormalForm(exps, theta, principal, prec)


def _unit_inverse(y: FieldElement) -> FieldElement:
    """Newton iteration z <- z(2 - yz) from the residue inverse"""
    spec, ring = y.spec, y.spec.ring
    if y.denom:
        raise ShapeError('unit inverse needs an integral unit')
    c0 = y.column(0)[0]
    if not ring.is_unit(c0):
        raise ShapeError(f'{y.to_text()} is not a unit')
    z = spec.constant(ring.inverse(ring.reduce(c0, 1), y.prec), y.prec)
    steps = max(1, (spec.e * y.prec).bit_length() + 1)
    for _ in range(steps + 2):
        err = 1 - y * z
        if err.is_zero():
            return z
        z = z + z * err
    raise PrecisionFault('unit inversion did not converge')


# -- lifts ------------------------------------------------------------------

def lift_element(x: FieldElement) -> IterSeries:
    """X^i · θ · (1 + ψ(X)) for the normal form of x"""
    if x.is_zero():
        raise ShapeError('cannot lift the zero element')
    spec, ring = x.spec, x.spec.ring
    nf = x.normal_form()
    coeffs = {nf.exponents: nf.theta}
    for exp, c in nf.principal.items():
        shifted = tuple(a + b for a, b in zip(exp, nf.exponents))
        coeffs[shifted] = ring.mul(c, nf.theta, nf.prec)
    return IterSeries.make(ring, spec.n, coeffs, nf.prec)


def perturb_lift(x: FieldElement, g: Dict[int, Coords]) -> IterSeries:
    """lift_element(x) + g(X) · minpoly(X), n = 1"""
    spec, ring = x.spec, x.spec.ring
    if spec.n != 1:
        raise ShapeError('lift perturbation is only defined for n = 1')
    base = lift_element(x)
    if not g:
        return base
    gs = IterSeries.make(ring, 1, {(k,): c for k, c in g.items()}, base.prec)
    return base + gs * spec.minpoly_series(base.prec)


def relift_random(x: FieldElement, seed, degree: Optional[int] = None) -> IterSeries:
    """A random lift of x: g divisible by X^{max(i, 0) + 1} keeps the leading term θX^i"""
    spec, ring = x.spec, x.spec.ring
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    degree = spec.e if degree is None else degree
    low = max(x.valuation()[0], 0) + 1
    g = {k: ring.random_coords(rng, x.value_prec) for k in range(low, low + rng.randint(0, degree) + 1)}
    return perturb_lift(x, g)


def s_series(spec: FieldSpec, prec: Optional[int] = None, weights=None) -> IterSeries:
    """(1 + X)^{p^m} − 1 in the π-variable"""
    prec = spec.N if prec is None else prec
    coeffs = {}
    for k in range(1, spec.pm + 1):
        coeffs[_pi_exponent(spec, 0, k)] = spec.ring.from_int(math.comb(spec.pm, k), prec)
    return IterSeries.make(spec.ring, spec.n, coeffs, prec, weights)


def evaluate_series(series: IterSeries, spec: FieldSpec) -> FieldElement:
    """Substitute t₁ (and π) into an exact Laurent polynomial"""
    if series.bound is not None:
        raise ShapeError('only exact Laurent polynomials can be evaluated')
    total = spec.constant(0, series.prec)
    for exp, c in sorted(series.coeffs.items(), key=lambda kv: order_key(kv[0])):
        term = spec.constant(c, series.prec).shift_pi(exp[-1])
        if spec.n == 2:
            term = term.shift_t1(exp[0])
        total = total + term
    return total


# -- trace and logarithm (n = 1) ------------------------------------------

def field_trace(x: FieldElement) -> WittElement:
    """Tr_{K/Q_p}(x) as an element of Z_p ⊂ W, via the multiplication matrix"""
    spec, ring = x.spec, x.spec.ring
    if spec.n != 1:
        raise ShapeError('the trace is only implemented for n = 1')
    if x.is_zero():
        return ring.element(0, x.value_prec)
    num = FieldElement(spec, x.columns, 0, x.prec)
    total = ring.zero()
    basis = spec.one(x.prec)
    for j in range(spec.e):
        total = ring.add(total, (num * basis).column(0)[j], x.prec)
        basis = basis.shift_pi(1)
    value = ring.trace(total, x.prec)
    if value % spec.p ** x.denom:
        raise PrecisionFault(f'trace numerator {value} is not divisible by {spec.p}^{x.denom}')
    prec = x.prec - x.denom
    return ring.element(value // spec.p ** x.denom, prec)


def field_log(u: FieldElement) -> FieldElement:
    """log u = Σ (−1)^(k+1) w^k / k for the principal unit u = 1 + w"""
    spec = u.spec
    if spec.n != 1:
        raise ShapeError('the field logarithm is only implemented for n = 1')
    w = u - 1
    if w.is_zero():
        return w
    if w.valuation()[0] < 1 or u.denom:
        raise ShapeError(f'{u.to_text()} is not a principal unit')
    p, e, prec = spec.p, spec.e, u.prec
    vw = w.valuation()[0]
    target = e * prec
    # all terms k > kmax have v_π(w^k / k) >= k·vw − e·log_p(k) >= e·prec
    k, kmax = 1, 1
    while True:
        size = k * vw - e * math.log(k, p)
        if size < target:
            kmax = k
        elif k * vw > e / math.log(p):
            break
        k += 1
    S = int(math.floor(math.log(kmax, p) + 1e-9))
    mod = spec.ring.pn(prec)
    acc = spec.constant(0, prec)
    power = spec.one(prec)
    for k in range(1, kmax + 1):
        power = power * w
        vk, unit = 0, k
        while unit % p == 0:
            unit //= p
            vk += 1
        factor = (-1) ** (k + 1) * p ** (S - vk) * pow(unit, -1, mod)
        acc = acc + power * factor
    return FieldElement.make(spec, acc.columns, S, prec)


# -- random elements --------------------------------------------------------

def random_unit(spec: FieldSpec, rng: random.Random, principal: bool = False,
                prec: Optional[int] = None, level: int = 1) -> FieldElement:
    """A random unit; principal units satisfy v(u − 1) >= level"""
    prec = spec.N if prec is None else prec
    ring = spec.ring
    col = [ring.random_coords(rng, prec) for _ in range(spec.e)]
    if principal:
        w = FieldElement.make(spec, {0: tuple(col)}, 0, prec).shift_pi(level)
        base = spec.one(prec) + w
    else:
        while not ring.is_unit(col[0]):
            col[0] = ring.random_coords(rng, prec)
        base = FieldElement.make(spec, {0: tuple(col)}, 0, prec)
    if spec.n == 2:
        for j in (-1, 1):
            if rng.random() < 0.5:
                extra = tuple(ring.random_coords(rng, prec) for _ in range(spec.e))
                extra = FieldElement.make(spec, {j: extra}, 0, prec)
                # t₁^{-1} terms must sit above the unit level
                base = base + (extra.shift_pi(1) if j < 0 else extra)
    return base


def random_element(spec: FieldSpec, rng: random.Random, prec: Optional[int] = None,
                   exponent_range: Sequence[int] = (-1, 2)) -> FieldElement:
    """t₁^{i₁} π^{i₂} times a random unit"""
    x = random_unit(spec, rng, prec=prec)
    low, high = exponent_range
    x = x.shift_pi(rng.randint(low, high))
    if spec.n == 2:
        x = x.shift_t1(rng.randint(low, high))
    return x


# -- parsing ----------------------------------------------------------------

_BINARY = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_element(text: str, spec: FieldSpec, prec: Optional[int] = None) -> FieldElement:
    """
    Parse the element grammar: integers, p, z = ζ, pi = ζ − 1, t1, t2
    (n = 2, t2 = π; for n = 1, t1 = π), T(c) for a Teichmüller constant,
    with + − * / ^ and parentheses. Only these nodes are accepted; the
    text is never evaluated.
    """
    prec = spec.N if prec is None else prec
    try:
        tree = ast.parse(text.replace('^', '**').strip(), mode='eval')
    except (SyntaxError, ValueError) as exc:
        raise ElementSyntaxError(f'cannot parse {text!r}: {exc}') from exc
    return _build(tree.body, spec, prec, text)


def _as_int(node: ast.AST, text: str) -> int:
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        value = _as_int(node.operand, text)
        return -value if isinstance(node.op, ast.USub) else value
    raise ElementSyntaxError(f'{ast.unparse(node)} in {text!r} is not an integer')


def _invert(x: FieldElement, node: ast.AST, spec: FieldSpec, text: str) -> FieldElement:
    if x.is_zero():
        raise ShapeError(f'division by zero in {text!r}')
    vals = x.valuation()
    single_t1 = spec.n == 2 and len(x.columns) == 1 and vals[-1] == 0
    if vals[-1] != 0 and not single_t1:
        raise ShapeError(f'{ast.unparse(node)} is not a unit of the integral model')
    return x.inverse()


def _build(node: ast.AST, spec: FieldSpec, prec: int, text: str) -> FieldElement:
    if isinstance(node, ast.Constant):
        return spec.constant(_as_int(node, text), prec)
    if isinstance(node, ast.Name):
        return _symbol(node.id, spec, prec, text)
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id != 'T' or len(node.args) != 1 or node.keywords:
            raise ElementSyntaxError(f'unknown function {ast.unparse(node.func)} in {text!r}')
        return spec.teichmuller(_as_int(node.args[0], text), prec)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        x = _build(node.operand, spec, prec, text)
        return -x if isinstance(node.op, ast.USub) else x
    if isinstance(node, ast.BinOp) and isinstance(node.op, _BINARY):
        if isinstance(node.op, ast.Pow):
            k = _as_int(node.right, text)
            x = _build(node.left, spec, prec, text)
            return x ** k if k >= 0 else _invert(x, node.left, spec, text) ** (-k)
        left = _build(node.left, spec, prec, text)
        right = _build(node.right, spec, prec, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        return left * _invert(right, node.right, spec, text)
    raise ElementSyntaxError(f'unsupported expression {ast.unparse(node)} in {text!r}')


def _symbol(name: str, spec: FieldSpec, prec: int, text: str) -> FieldElement:
    if name == 'z':
        return spec.zeta(prec)
    if name == 'pi':
        return spec.pi(prec)
    if name == 'p':
        return spec.constant(spec.p, prec)
    if name == 't1':
        return spec.t1(prec)
    if name == 't2' and spec.n == 2:
        return spec.pi(prec)
    raise ElementSyntaxError(f'unknown name {name!r} in {text!r}')


def parse_elements(texts: Iterable[str], spec: FieldSpec, prec: Optional[int] = None):
    return [parse_element(t, spec, prec) for t in texts]
