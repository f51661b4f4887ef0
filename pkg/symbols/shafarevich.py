"""
Shafarevich bases of K^*/K^{*p^m}: the units ε_J = 1 + θ t^J, the element
ω(a) = E(a·s(X))|_{X=t}, orthogonality against the local parameters,
dual partners, p-th roots and the decomposition of a unit over the basis.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exceptions import DecompositionError, PrecisionFault, SearchFailure, ShapeError
from .field_model import FieldElement, FieldSpec, evaluate_series, s_series, with_precision
from .laurent_series import IterSeries, exp_precision_loss, shafarevich_exp
from .vostokov_pairing import PrecisionPlan, vostokov_exponent
from .witt_arith import Coords, WittElement

logger = logging.getLogger(__name__)

DEFAULT_T1_BOUND = 2

BasisKey = Tuple[Tuple[int, ...], int]


@dataclass(frozen=True)
class BasisUnit:
    """ε = 1 + T(y^k) t^J"""
    J: Tuple[int, ...]
    k: int
    theta: Coords
    element: FieldElement

    @property
    def key(self) -> BasisKey:
        return (self.J, self.k)

    @property
    def label(self) -> str:
        return f'eps{list(self.J)}[{self.k}]'


@dataclass(frozen=True)
class BasisDescription:
    spec: FieldSpec
    m: int
    params: List[FieldElement]
    epsilons: List[BasisUnit]
    omega: FieldElement
    generator: WittElement

    @property
    def level(self) -> int:
        """p·e/(p − 1), the level of ω"""
        return self.spec.p * self.spec.e // (self.spec.p - 1)

    def __len__(self):
        return len(self.epsilons) + self.spec.n + 1

    def unit(self, key: BasisKey) -> BasisUnit:
        for eps in self.epsilons:
            if eps.key == key:
                return eps
        raise KeyError(key)


def _lambda(spec: FieldSpec) -> int:
    level, rest = divmod(spec.p * spec.e, spec.p - 1)
    if rest:  # pragma: no cover - always integral for cyclotomic fields
        raise ShapeError('p·e/(p − 1) is not an integer')
    return level


def index_set(spec: FieldSpec, t1_bound: int = DEFAULT_T1_BOUND) -> List[Tuple[int, ...]]:
    """J with 0 < J < p·e_vec/(p − 1) in tuple order and p ∤ gcd(J)"""
    p, level = spec.p, _lambda(spec)
    if spec.n == 1:
        return [(j,) for j in range(1, level) if j % p]
    out = []
    for j2 in range(0, level + 1):
        for j1 in range(-t1_bound, t1_bound + 1):
            J = (j1, j2)
            if not ((0, 0) < (j2, j1) < (level, 0)):
                continue
            if j1 % p == 0 and j2 % p == 0:
                continue
            out.append(J)
    return out


def _monomial(spec: FieldSpec, J: Tuple[int, ...], theta: Coords, prec: int) -> FieldElement:
    x = spec.constant(theta, prec).shift_pi(J[-1])
    return x.shift_t1(J[0]) if spec.n == 2 else x


def choose_generator(spec: FieldSpec) -> WittElement:
    """a = 1 for f = 1; otherwise the first Teichmüller unit with a unit trace"""
    ring = spec.ring
    if ring.f == 1:
        return ring.element(1)
    for residue in ring.residues():
        if not any(residue):
            continue
        a = ring.element(ring.teichmuller(residue))
        if ring.trace(a.coords) % ring.p:
            return a
    raise SearchFailure('no generator with unit trace')  # pragma: no cover


def omega_element(spec: FieldSpec, a: WittElement) -> FieldElement:
    """ω(a) = E(a·s(X)) evaluated at the local parameters"""
    prec = min(spec.N, a.prec)
    if a.is_zero():
        return spec.one(prec)
    # monomials of weight >= e·prec vanish modulo p^prec after substitution
    bound = spec.e * prec
    loss = exp_precision_loss(spec.p, 1, bound)
    work = with_precision(spec, prec + loss)
    series = shafarevich_exp(s_series(work, work.N).scale(a.coords), bound)
    exact = IterSeries.make(spec.ring, spec.n, series.coeffs, prec, series.weights)
    return evaluate_series(exact, spec)


def build_basis(spec: FieldSpec, m: Optional[int] = None, t1_bound: int = DEFAULT_T1_BOUND,
                generator: Optional[WittElement] = None) -> BasisDescription:
    m = spec.m if m is None else m
    ring = spec.ring
    prec = spec.N
    epsilons = []
    for J in index_set(spec, t1_bound):
        for k in range(ring.f):
            residue = tuple(1 if i == k else 0 for i in range(ring.f))
            theta = ring.teichmuller(residue, prec)
            element = spec.one(prec) + _monomial(spec, J, theta, prec)
            epsilons.append(BasisUnit(J, k, theta, element))
    params = [spec.t1(prec)] if spec.n == 1 else [spec.t1(prec), spec.pi(prec)]
    a = choose_generator(spec) if generator is None else generator
    omega = omega_element(spec, a)
    logger.debug(f'built basis of {len(epsilons)} units for {spec.describe()}')
    return BasisDescription(spec, m, params, epsilons, omega, a)


# -- orthogonality and duality ------------------------------------------------

@dataclass(frozen=True)
class OrthogonalityEntry:
    label: str
    expected: str
    value: int
    passed: bool


@dataclass
class OrthogonalityReport:
    entries: List[OrthogonalityEntry] = field(default_factory=list)

    @property
    def failures(self) -> List[OrthogonalityEntry]:
        return [e for e in self.entries if not e.passed]

    @property
    def all_passed(self) -> bool:
        return not self.failures


def verify_orthogonality(basis: BasisDescription, sign: int = 1,
                         plan: Optional[PrecisionPlan] = None) -> OrthogonalityReport:
    """V({t}, ε_J) = 0 for every J and V({t}, ω) = ±1"""
    spec = basis.spec
    report = OrthogonalityReport()
    for eps in basis.epsilons:
        value = vostokov_exponent(basis.params + [eps.element], spec, plan, sign).value
        report.entries.append(OrthogonalityEntry(eps.label, '0', value, value == 0))
    value = vostokov_exponent(basis.params + [basis.omega], spec, plan, sign).value
    report.entries.append(OrthogonalityEntry('omega', '±1', value, value in (1, spec.pm - 1)))
    for entry in report.failures:
        logger.warning(f'orthogonality failure: {entry.label} gave {entry.value}, expected {entry.expected}')
    return report


@dataclass(frozen=True)
class DualPartner:
    partner: FieldElement
    theta: Coords
    exponent: int


def dual_search(eps: FieldElement, l: int, spec: FieldSpec, m: Optional[int] = None, sign: int = 1,
                plan: Optional[PrecisionPlan] = None) -> DualPartner:
    """
    For ε = 1 + θ t^I find θ' with V({ε, t₁, .., t̂_l, .., tₙ}, 1 + θ' t^{λ·e_vec/e − I}) = ±1,
    preferring the partner with exponent exactly 1.
    """
    ring = spec.ring
    if m is not None and m != spec.m:
        raise ShapeError(f'm = {m} does not match the field (m = {spec.m})')
    if not 1 <= l <= spec.n:
        raise ShapeError(f'slot l = {l} is outside 1..{spec.n}')
    w = eps - 1
    if w.is_zero():
        raise ShapeError('ε = 1 has no dual partner')
    nf = w.normal_form()
    I = nf.exponents
    level = _lambda(spec)
    if I[l - 1] % spec.p == 0:
        raise ShapeError(f'i_{l} = {I[l - 1]} is divisible by p')
    top = (0,) * (spec.n - 1) + (level,)
    if not ((0,) * spec.n < tuple(reversed(I)) < tuple(reversed(top))):
        raise ShapeError(f'I = {I} is outside the open range (0, {top})')
    others = []
    if spec.n == 2:
        others = [spec.pi(eps.prec)] if l == 1 else [spec.t1(eps.prec)]
    target = tuple(t - i for t, i in zip(top, I))
    found: Dict[int, DualPartner] = {}
    for residue in ring.residues():
        if not any(residue):
            continue
        theta = ring.teichmuller(residue, eps.prec)
        partner = spec.one(eps.prec) + _monomial(spec, target, theta, eps.prec)
        value = vostokov_exponent([eps] + others + [partner], spec, plan, sign).value
        if value in (1, spec.pm - 1) and value not in found:
            found[value] = DualPartner(partner, residue, value)
        if 1 in found:
            return found[1]
    if found:
        return next(iter(found.values()))
    raise SearchFailure(f'no θ\' pairs 1 + θ t^{I} to ±1')


# -- roots and decomposition -------------------------------------------------

def _pth_root_once(u: FieldElement) -> FieldElement:
    spec = u.spec
    p = spec.p
    w = u - 1
    if w.is_zero():
        return u
    if u.denom or w.valuation()[0] <= _lambda(spec):
        raise ShapeError(f'v(u − 1) must exceed {_lambda(spec)}')
    r = spec.one(u.prec)
    for _ in range(64):
        # any representative of r is good enough for r^p modulo p^prec
        r_full = FieldElement(spec, r.columns, r.denom, u.prec)
        delta = u * (r_full ** p).inverse() - 1
        if delta.is_zero():
            return r
        correction = FieldElement.make(spec, delta.columns, delta.denom + 1, delta.prec)
        r = r_full + r_full * correction
    raise PrecisionFault('p-th root iteration did not converge')


def pth_root(u: FieldElement, k: int = 1) -> FieldElement:
    """r with r^{p^k} = u for a principal unit with v(u − 1) > p·e/(p − 1)"""
    if u.spec.n != 1:
        raise ShapeError('p-th roots are implemented for n = 1 only')
    r = u
    for _ in range(k):
        r = _pth_root_once(r)
    return r


@dataclass(frozen=True)
class Decomposition:
    """α = t^i · Π ε^{b} · ω^c · certificate^{p^m}"""
    exponents: Tuple[int, ...]
    b: Dict[BasisKey, int]
    c: int
    certificate: FieldElement
    modulus: int

    def vector(self) -> List[int]:
        """Exponents as a vector over Z/p^m, parameters first and ω last"""
        return ([i % self.modulus for i in self.exponents]
                + [self.b[key] % self.modulus for key in sorted(self.b)]
                + [self.c % self.modulus])


def reconstruct(dec: Decomposition, basis: BasisDescription) -> FieldElement:
    x = dec.certificate ** dec.modulus
    x = x.shift_pi(dec.exponents[-1])
    for key, b in dec.b.items():
        if b:
            x = x * basis.unit(key).element ** b
    if dec.c:
        x = x * basis.omega ** dec.c
    return x


def _residue_coords(x: FieldElement, j: int) -> Coords:
    """Residue of (x − 1)/π^j"""
    spec = x.spec
    y = (x - 1).shift_pi(-j)
    return spec.ring.reduce(y.column(0)[0], 1)


def _peel_level(u: FieldElement, basis: BasisDescription, budget: int):
    """
    One p-power level: u = Π ε^{b} · ω^{c} · v^p with b, c in [0, p).
    Returns (b, c, v).
    """
    spec, ring = basis.spec, basis.spec.ring
    p, level = spec.p, basis.level
    b: Dict[BasisKey, int] = {eps.key: 0 for eps in basis.epsilons}
    c = 0
    cur = u
    root = spec.one(u.prec)
    for _ in range(budget):
        w = cur - 1
        if w.is_zero():
            return b, c, root
        j = w.valuation()[0]
        if j > level:
            return b, c, root * pth_root(cur)
        residue = _residue_coords(cur, j)
        if j % p:
            for k, a_k in enumerate(residue):
                if not a_k:
                    continue
                eps = basis.unit(((j,), k))
                cur = cur * eps.element ** (-a_k)
                b[eps.key] = (b[eps.key] + a_k) % p
        elif j < level:
            # x^p = residue in F_q
            x = ring.pow(residue, ring.q // p, 1)
            factor = spec.one(cur.prec) + spec.teichmuller(x, cur.prec).shift_pi(j // p)
            cur = cur * (factor ** p).inverse()
            root = root * factor
        else:
            cur, c0, factor = _peel_omega(cur, basis)
            c = (c + c0) % p
            root = root * factor
    raise DecompositionError(f'no termination within {budget} filtration steps')


def _peel_omega(cur: FieldElement, basis: BasisDescription):
    spec, ring = basis.spec, basis.spec.ring
    level = basis.level
    omega_inv = basis.omega.inverse()
    for c0 in range(spec.p):
        shifted = cur * omega_inv ** c0
        for residue in ring.residues():
            factor = spec.one(cur.prec) + spec.teichmuller(residue, cur.prec).shift_pi(level // spec.p)
            candidate = shifted * (factor ** spec.p).inverse()
            w = candidate - 1
            if w.is_zero() or w.valuation()[0] > level:
                return candidate, c0, factor
    raise DecompositionError(f'level {level} could not be cleared by ω and p-th powers')


def decompose(alpha: FieldElement, basis: BasisDescription, m: Optional[int] = None) -> Decomposition:
    """
    Peel α = π^i θ u, then clear the filtration levels of u one p-power at a
    time, m times, collecting base-p digits of the exponents.
    """
    spec, ring = basis.spec, basis.spec.ring
    m = basis.m if m is None else m
    if spec.n != 1:
        raise ShapeError('decomposition is implemented for n = 1 only')
    if alpha.is_zero():
        raise ShapeError('cannot decompose zero')
    modulus = spec.p ** m
    i = alpha.valuation()[0]
    i_reduced, carry = i % modulus, i // modulus
    nf = alpha.normal_form()
    unit = alpha.shift_pi(-i)
    theta = spec.constant(nf.theta, unit.prec)
    u = unit * theta.inverse()
    # θ ∈ μ_{q−1} is its own p^m-th root raised to p^{-m} mod q − 1
    theta_root = theta ** pow(spec.p ** m, -1, ring.q - 1)
    budget = spec.p * spec.e * (m + 2)
    b_total = {eps.key: 0 for eps in basis.epsilons}
    c_total = 0
    current = u
    for digit in range(m):
        b, c, current = _peel_level(current, basis, budget)
        for key, value in b.items():
            b_total[key] += value * spec.p ** digit
        c_total += c * spec.p ** digit
    certificate = current * theta_root * spec.pi(current.prec) ** carry
    return Decomposition((i_reduced,), b_total, c_total, certificate, modulus)
