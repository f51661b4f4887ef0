"""
Exact arithmetic in the truncated unramified ring W(F_q) / p^N.

Elements are coordinate tuples in the power basis 1, y, ..., y^(f-1) of
(Z/p^N)[y]/(g(y)) where g is a fixed monic lift of an irreducible
polynomial over F_p. The ring carries its Frobenius, precomputed once by
Hensel-lifting the p-power map on y.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Poly, isprime, symbols

from .exceptions import PrecisionFault, RingError, ShapeError

logger = logging.getLogger(__name__)

Coords = Tuple[int, ...]

_Y = symbols('y')


@dataclass(frozen=True)
class WittRingSpec:
    """Description of W(F_q) mod p^N with q = p^f"""
    p: int
    f: int
    N: int
    # lower coefficients (c_0, ..., c_{f-1}) of the monic modulus y^f + ... + c_0
    modulus: Coords
    # Frobenius images of y^0, ..., y^(f-1), exact at precision N
    frobenius_images: Tuple[Coords, ...] = field(default=(), repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.f

    def pn(self, prec: Optional[int] = None) -> int:
        return self.p ** (self.N if prec is None else prec)

    def describe(self) -> dict:
        """Metadata recorded next to every computed value"""
        return {
            'p': self.p,
            'f': self.f,
            'N': self.N,
            'modulus': [*self.modulus, 1],
        }

    # -- coordinate arithmetic -------------------------------------------

    def zero(self) -> Coords:
        return (0,) * self.f

    def one(self) -> Coords:
        return (1,) + (0,) * (self.f - 1)

    def from_int(self, k: int, prec: Optional[int] = None) -> Coords:
        return (k % self.pn(prec),) + (0,) * (self.f - 1)

    def reduce(self, a: Sequence[int], prec: Optional[int] = None) -> Coords:
        mod = self.pn(prec)
        return tuple(c % mod for c in a)

    def add(self, a: Coords, b: Coords, prec: Optional[int] = None) -> Coords:
        mod = self.pn(prec)
        return tuple((x + y) % mod for x, y in zip(a, b))

    def sub(self, a: Coords, b: Coords, prec: Optional[int] = None) -> Coords:
        mod = self.pn(prec)
        return tuple((x - y) % mod for x, y in zip(a, b))

    def neg(self, a: Coords, prec: Optional[int] = None) -> Coords:
        mod = self.pn(prec)
        return tuple(-x % mod for x in a)

    def scale(self, a: Coords, k: int, prec: Optional[int] = None) -> Coords:
        mod = self.pn(prec)
        return tuple(x * k % mod for x in a)

    def mul(self, a: Coords, b: Coords, prec: Optional[int] = None) -> Coords:
        mod = self.pn(prec)
        if self.f == 1:
            return (a[0] * b[0] % mod,)
        f = self.f
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        # y^f = -(c_0 + c_1 y + ... + c_{f-1} y^(f-1))
        for k in range(2 * f - 2, f - 1, -1):
            top = prod[k]
            if top:
                for i, c in enumerate(self.modulus):
                    prod[k - f + i] -= top * c
        return tuple(x % mod for x in prod[:f])

    def pow(self, a: Coords, e: int, prec: Optional[int] = None) -> Coords:
        if e < 0:
            return self.pow(self.inverse(a, prec), -e, prec)
        result = self.reduce(self.one(), prec)
        base = self.reduce(a, prec)
        while e:
            if e & 1:
                result = self.mul(result, base, prec)
            base = self.mul(base, base, prec)
            e >>= 1
        return result

    def is_zero(self, a: Coords, prec: Optional[int] = None) -> bool:
        mod = self.pn(prec)
        return all(x % mod == 0 for x in a)

    def is_unit(self, a: Coords) -> bool:
        return any(x % self.p for x in a)

    def valuation(self, a: Coords, prec: Optional[int] = None) -> int:
        """p-adic valuation, capped at the precision"""
        cap = self.N if prec is None else prec
        v = 0
        while v < cap and all(x % self.p ** (v + 1) == 0 for x in a):
            v += 1
        return v

    def inverse(self, a: Coords, prec: Optional[int] = None) -> Coords:
        """Inverse of a unit: residue inverse a^(q-2), then Newton lifting"""
        if not self.is_unit(a):
            raise ShapeError(f'{a} is not a unit of W(F_{self.q})')
        prec = self.N if prec is None else prec
        inv = self.pow(self.reduce(a, 1), self.q - 2, 1)
        two = self.from_int(2, prec)
        known = 1
        while known < prec:
            known = min(2 * known, prec)
            inv = self.mul(inv, self.sub(two, self.mul(a, inv, prec), prec), prec)
        return inv

    def divide_by_p(self, a: Coords, prec: Optional[int] = None) -> Coords:
        """Exact division by p; the result is meaningful one digit lower"""
        if any(x % self.p for x in a):
            raise PrecisionFault(f'{a} is not divisible by {self.p}')
        return self.reduce(tuple(x // self.p for x in a), prec)

    def frobenius(self, a: Coords, prec: Optional[int] = None) -> Coords:
        if self.f == 1:
            return self.reduce(a, prec)
        mod = self.pn(prec)
        out = [0] * self.f
        for c, image in zip(a, self.frobenius_images):
            if c:
                for i, y in enumerate(image):
                    out[i] += c * y
        return tuple(x % mod for x in out)

    def trace(self, a: Coords, prec: Optional[int] = None) -> int:
        """Tr_{W/Z_p}: sum of the f Frobenius conjugates, returned as an integer"""
        total = self.zero()
        x = self.reduce(a, prec)
        for _ in range(self.f):
            total = self.add(total, x, prec)
            x = self.frobenius(x, prec)
        if any(total[1:]):
            raise PrecisionFault(f'trace {total} is not fixed by Frobenius')
        return total[0]

    def teichmuller(self, c: Union[int, Sequence[int]], prec: Optional[int] = None) -> Coords:
        """Teichmüller lift of a residue-field element given by coordinates mod p"""
        prec = self.N if prec is None else prec
        coords = self.from_int(c, 1) if isinstance(c, int) else self.reduce(c, 1)
        x = self.reduce(coords, prec)
        for _ in range(prec + 1):
            nxt = self.pow(x, self.q, prec)
            if nxt == x:
                return x
            x = nxt
        raise PrecisionFault(f'Teichmüller iteration for {coords} did not settle')

    def teichmuller_digits(self, a: Coords, prec: Optional[int] = None) -> List[Coords]:
        """Residues (θ_0, θ_1, ...) with a = Σ p^k T(θ_k) at the given precision"""
        prec = self.N if prec is None else prec
        digits = []
        x = self.reduce(a, prec)
        for k in range(prec):
            residue = self.reduce(x, 1)
            digits.append(residue)
            x = self.sub(x, self.teichmuller(residue, prec - k), prec - k)
            x = self.divide_by_p(x, prec - k - 1) if prec - k > 1 else self.zero()
        return digits

    def residues(self) -> Iterable[Coords]:
        """All elements of the residue field F_q, in lexicographic order"""
        return itertools.product(range(self.p), repeat=self.f)

    def random_coords(self, rng, prec: Optional[int] = None) -> Coords:
        mod = self.pn(prec)
        return tuple(rng.randrange(mod) for _ in range(self.f))

    def element(self, coords: Union[int, Sequence[int]], prec: Optional[int] = None) -> 'WittElement':
        prec = self.N if prec is None else prec
        if isinstance(coords, int):
            coords = self.from_int(coords, prec)
        return WittElement(self, self.reduce(coords, prec), prec)


@dataclass(frozen=True)
class WittElement:
    """An element of W(F_q) known modulo p^prec"""
    ring: WittRingSpec
    coords: Coords
    prec: int

    def _check(self, other: 'WittElement') -> int:
        if not isinstance(other, WittElement) or other.ring != self.ring:
            raise ShapeError('arithmetic between different coefficient rings')
        return min(self.prec, other.prec)

    def _coerce(self, other) -> 'WittElement':
        if isinstance(other, int):
            return self.ring.element(other, self.prec)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        prec = self._check(other)
        return WittElement(self.ring, self.ring.add(self.coords, other.coords, prec), prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        prec = self._check(other)
        return WittElement(self.ring, self.ring.sub(self.coords, other.coords, prec), prec)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return WittElement(self.ring, self.ring.neg(self.coords, self.prec), self.prec)

    def __mul__(self, other):
        other = self._coerce(other)
        prec = self._check(other)
        return WittElement(self.ring, self.ring.mul(self.coords, other.coords, prec), prec)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return WittElement(self.ring, self.ring.pow(self.coords, e, self.prec), self.prec)

    def inverse(self) -> 'WittElement':
        return WittElement(self.ring, self.ring.inverse(self.coords, self.prec), self.prec)

    def divide_by_p(self) -> 'WittElement':
        if self.prec <= 1:
            raise PrecisionFault('no precision left to divide by p')
        return WittElement(self.ring, self.ring.divide_by_p(self.coords, self.prec - 1), self.prec - 1)

    def reduce(self, prec: int) -> 'WittElement':
        prec = min(prec, self.prec)
        return WittElement(self.ring, self.ring.reduce(self.coords, prec), prec)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.coords, self.prec)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.coords)

    def __int__(self) -> int:
        if any(self.coords[1:]):
            raise ShapeError(f'{self} does not lie in Z_p')
        return self.coords[0]


def _is_irreducible_mod_p(lower: Sequence[int], p: int) -> bool:
    coeffs = [1] + list(reversed(lower))
    return Poly(coeffs, _Y, modulus=p).is_irreducible


def _eval_modulus(ring: WittRingSpec, z: Coords, derivative: bool = False) -> Coords:
    f = ring.f
    terms = list(ring.modulus) + [1]
    total = ring.zero()
    for k, c in enumerate(terms):
        if derivative:
            if k == 0:
                continue
            c, k = c * k, k - 1
        total = ring.add(total, ring.scale(ring.pow(z, k), c))
    return total


def make_ring(p: int, f: int, N: int) -> WittRingSpec:
    """
    Build W(F_{p^f}) mod p^N with the lexicographically smallest irreducible
    modulus and its Frobenius table.
    """
    if not isinstance(p, int) or not isprime(p):
        raise RingError(f'p = {p} is not a prime')
    if p == 2:
        raise RingError('p = 2 is not supported')
    if f < 1 or N < 1:
        raise RingError(f'residue degree f = {f} and precision N = {N} must be positive')

    if f == 1:
        return WittRingSpec(p=p, f=1, N=N, modulus=(0,), frobenius_images=((1,),))

    for lower in itertools.product(range(p), repeat=f):
        # lower is (c_{f-1}, ..., c_0) in lexicographic order
        if _is_irreducible_mod_p(tuple(reversed(lower)), p):
            modulus = tuple(reversed(lower))
            break
    else:  # pragma: no cover - an irreducible polynomial always exists
        raise RingError(f'no irreducible polynomial of degree {f} over F_{p}')

    bare = WittRingSpec(p=p, f=f, N=N, modulus=modulus)
    generator = (0, 1) + (0,) * (f - 2)
    # root of the modulus congruent to y^p, by Newton iteration
    z = bare.pow(generator, p, 1)
    for _ in range(N.bit_length() + 1):
        g = _eval_modulus(bare, z)
        dg = _eval_modulus(bare, z, derivative=True)
        z = bare.sub(z, bare.mul(g, bare.inverse(dg)))
    if not bare.is_zero(_eval_modulus(bare, z)):
        raise PrecisionFault('Frobenius lift failed to converge')
    images = tuple(bare.pow(z, k) for k in range(f))
    logger.debug(f'built W(F_{p}^{f}) mod {p}^{N} with modulus {modulus}')
    return WittRingSpec(p=p, f=f, N=N, modulus=modulus, frobenius_images=images)


def frobenius(x: WittElement) -> WittElement:
    return WittElement(x.ring, x.ring.frobenius(x.coords, x.prec), x.prec)


def teichmuller(ring: WittRingSpec, c: Union[int, Sequence[int]], prec: Optional[int] = None) -> WittElement:
    prec = ring.N if prec is None else prec
    return WittElement(ring, ring.teichmuller(c, prec), prec)


def trace_wzp(x: WittElement) -> int:
    return x.ring.trace(x.coords, x.prec)
