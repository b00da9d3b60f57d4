"""The two concrete PIDs: the integers and univariate polynomials over GF(p).

Each ring object exposes the same small API (normalize, divmod, gcd, xgcd,
factor, ...) so matrix and module code never branches on the ring type.
Atoms are integer labels: a prime is its own label over the integers; a
monic irreducible c_0 + c_1 x + ... over GF(p) is labelled sum c_i p^i.
"""

from __future__ import annotations

import random as _random
from fractions import Fraction

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf, gf_sqf_list

from .errors import DomainError
from .valuation import ExponentVector


class IntegerRing:
    name = "int"

    def __repr__(self):
        return "IntegerRing()"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")

    zero = 0
    one = 1

    def coerce(self, a):
        if isinstance(a, bool) or not isinstance(a, int):
            if isinstance(a, str):
                return int(a)
            if isinstance(a, Fraction) and a.denominator == 1:
                return a.numerator
            raise TypeError(f"cannot coerce {a!r} to an integer")
        return a

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def normalize(self, a):
        return abs(a)

    def unit_part(self, a):
        return -1 if a < 0 else 1

    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        # remainder in [0, |b|) keeps reductions canonical
        q, r = divmod(a, b)
        if r < 0:
            q, r = q + 1, r - b
        return q, r

    def mod(self, a, b):
        return a % abs(b) if b else a

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise DomainError(f"{b} does not divide {a}")
        return q

    def divides(self, a, b):
        if a == 0:
            return b == 0
        return b % a == 0

    def gcd(self, a, b):
        while b:
            a, b = b, a % b
        return abs(a)

    def xgcd(self, a, b):
        """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
        s0, s1, t0, t1 = 1, 0, 0, 1
        while b:
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a < 0:
            a, s0, t0 = -a, -s0, -t0
        return a, s0, t0

    def factor(self, a) -> dict:
        if a == 0:
            raise DomainError("cannot factor zero")
        return {int(p): int(e) for p, e in sympy.factorint(abs(a)).items()}

    def is_prime(self, a):
        return a > 1 and bool(sympy.isprime(a))

    def atom_label(self, prime):
        return int(prime)

    def atom_element(self, label):
        if not self.is_prime(label):
            raise DomainError(f"{label} is not a prime")
        return int(label)

    def to_exponents(self, a) -> ExponentVector:
        if a == 0:
            raise DomainError("zero has no finite exponent vector")
        return ExponentVector(self.factor(a))

    def from_exponents(self, ev: ExponentVector):
        out = 1
        for atom, e in ev.items():
            out *= self.atom_element(atom) ** e
        return out

    def valuation(self, a, prime):
        if a == 0:
            raise DomainError("valuation of zero")
        v = 0
        while a % prime == 0:
            a //= prime
            v += 1
        return v

    # fraction field
    def to_field(self, a):
        return Fraction(a)

    def field_one(self):
        return Fraction(1)

    def field_zero(self):
        return Fraction(0)

    def denominator(self, q):
        return Fraction(q).denominator

    def numerator(self, q):
        return Fraction(q).numerator

    def from_field(self, q):
        q = Fraction(q)
        if q.denominator != 1:
            raise DomainError(f"{q} is not integral")
        return q.numerator

    def random(self, rng: _random.Random, bound=20):
        return rng.randint(-bound, bound)

    def encode(self, a):
        return str(a)

    def decode(self, obj):
        if isinstance(obj, bool):
            raise TypeError("boolean is not an integer")
        if isinstance(obj, int):
            return obj
        if isinstance(obj, str):
            return int(obj.strip())
        raise TypeError(f"expected integer or decimal string, got {type(obj).__name__}")

    def fmt(self, a):
        return str(a)


class Poly:
    """Polynomial over GF(p); ``coeffs`` low degree first, no trailing zeros."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("mixing different characteristics")
            return other
        if isinstance(other, int):
            return Poly(self.p, (other,))
        return NotImplemented

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return Poly(self.p, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return Poly(self.p)
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = Poly(self.p, (1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        inv = pow(o.lead(), p - 2, p)
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly(p), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] * inv % p
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] = (rem[k + j] - c * b) % p
        return Poly(p, quot), Poly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        inv = pow(self.lead(), self.p - 2, self.p)
        return self * inv

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "x" if i == 1 else f"x^{i}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(terms)


class RatFunc:
    """Element of GF(p)(x) kept in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        p = num.p
        if den is None:
            den = Poly(p, (1,))
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = _poly_gcd(num, den)
        num, den = num // g, den // g
        lc = den.lead()
        inv = pow(lc, p - 2, p)
        self.num = num * inv
        self.den = den * inv

    @property
    def p(self):
        return self.num.p

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Poly, int)):
            return RatFunc(Poly(self.p, (other,)) if isinstance(other, int) else other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num:
            raise ZeroDivisionError("rational function division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return f"({self.num})"
        return f"({self.num})/({self.den})"


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic() if a else a


class PolyRing:
    """GF(p)[x]."""

    def __init__(self, p: int):
        if not sympy.isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p
        self.name = f"poly{p}"
        self.zero = Poly(p)
        self.one = Poly(p, (1,))
        self.x = Poly(p, (0, 1))

    def __repr__(self):
        return f"PolyRing({self.p})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.p == self.p

    def __hash__(self):
        return hash(("poly", self.p))

    def coerce(self, a):
        if isinstance(a, Poly):
            if a.p != self.p:
                raise ValueError("characteristic mismatch")
            return a
        if isinstance(a, int) and not isinstance(a, bool):
            return Poly(self.p, (a,))
        if isinstance(a, (list, tuple)):
            return Poly(self.p, a)
        if isinstance(a, RatFunc):
            return self.from_field(a)
        raise TypeError(f"cannot coerce {a!r} into GF({self.p})[x]")

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return bool(a) and a.degree == 0

    def normalize(self, a):
        return a.monic()

    def unit_part(self, a):
        return a.lead() if a else 1

    def size(self, a):
        return a.degree + 1 if a else 0

    def divmod(self, a, b):
        return divmod(a, b)

    def mod(self, a, b):
        return a % b if b else a

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise DomainError(f"{b} does not divide {a}")
        return q

    def divides(self, a, b):
        if not a:
            return not b
        return not (b % a)

    def gcd(self, a, b):
        return _poly_gcd(a, b)

    def xgcd(self, a, b):
        s0, s1, t0, t1 = self.one, self.zero, self.zero, self.one
        while b:
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a:
            inv = pow(a.lead(), self.p - 2, self.p)
            a, s0, t0 = a * inv, s0 * inv, t0 * inv
        return a, s0, t0

    def factor(self, a) -> dict:
        if not a:
            raise DomainError("cannot factor zero")
        f = [ZZ(c) for c in reversed(a.monic().coeffs)]
        out: dict = {}
        _, sqf = gf_sqf_list(f, self.p, ZZ)
        for part, mult in sqf:
            for g in gf_factor_sqf(part, self.p, ZZ)[1]:
                q = Poly(self.p, [int(c) for c in reversed(g)])
                out[q] = out.get(q, 0) + int(mult)
        return out

    def is_prime(self, a):
        if not a or a.degree < 1:
            return False
        fs = self.factor(a)
        return len(fs) == 1 and next(iter(fs.values())) == 1

    def atom_label(self, prime: Poly):
        prime = prime.monic()
        return sum(c * self.p ** i for i, c in enumerate(prime.coeffs))

    def atom_element(self, label):
        cs = []
        n = int(label)
        while n:
            n, c = divmod(n, self.p)
            cs.append(c)
        q = Poly(self.p, cs)
        if not q or q.lead() != 1 or not self.is_prime(q):
            raise DomainError(f"label {label} is not a monic irreducible over GF({self.p})")
        return q

    def to_exponents(self, a) -> ExponentVector:
        if not a:
            raise DomainError("zero has no finite exponent vector")
        return ExponentVector({self.atom_label(q): e for q, e in self.factor(a).items()})

    def from_exponents(self, ev: ExponentVector):
        out = self.one
        for atom, e in ev.items():
            out = out * self.atom_element(atom) ** e
        return out

    def valuation(self, a, prime):
        if not a:
            raise DomainError("valuation of zero")
        v = 0
        while True:
            q, r = divmod(a, prime)
            if r:
                return v
            a, v = q, v + 1

    def to_field(self, a):
        return RatFunc(self.coerce(a))

    def field_one(self):
        return RatFunc(self.one)

    def field_zero(self):
        return RatFunc(self.zero)

    def denominator(self, q):
        return q.den if isinstance(q, RatFunc) else self.one

    def numerator(self, q):
        return q.num if isinstance(q, RatFunc) else self.coerce(q)

    def from_field(self, q):
        if isinstance(q, RatFunc):
            if q.den.degree != 0:
                raise DomainError(f"{q} is not a polynomial")
            return q.num
        return self.coerce(q)

    def random(self, rng: _random.Random, bound=3):
        deg = rng.randint(-1, bound)
        return Poly(self.p, [rng.randrange(self.p) for _ in range(deg + 1)])

    def encode(self, a):
        return list(a.coeffs)

    def decode(self, obj):
        if isinstance(obj, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in obj):
            return Poly(self.p, obj)
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Poly(self.p, (obj,))
        raise TypeError("expected a coefficient array (low degree first)")

    def fmt(self, a):
        return repr(a)


ZZ_RING = IntegerRing()


def ring_from_name(name: str):
    if name == "int":
        return ZZ_RING
    if name.startswith("poly"):
        try:
            p = int(name[4:])
        except ValueError:
            raise ValueError(f"unknown pid {name!r}") from None
        return PolyRing(p)
    raise ValueError(f"unknown pid {name!r}; expected 'int' or 'poly<p>'")
