"""Exact fields: the rationals, Q(zeta_4), Q(zeta_8), F_p and F_{p^m}.

Rational numbers are plain :class:`fractions.Fraction` values.  All other
fields have their own element type supporting ``+ - * / **`` and equality
with Python integers, so generic code can write ``x == 0`` or ``2 * x``
without caring which field it is working in.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _factor_int(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """Base class of the exact fields used throughout the package."""

    characteristic = 0
    order = None  # None for infinite fields

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def is_finite(self):
        return self.order is not None

    def __call__(self, value):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.key == other.key

    def __hash__(self):
        return hash((type(self).__name__, self.key))

    def contains(self, x):
        try:
            self(x)
        except (TypeError, ValueError, ZeroDivisionError):
            return False
        return True

    def random(self, rng, bound=5):
        raise NotImplementedError

    def random_nonzero(self, rng, bound=5):
        while True:
            x = self.random(rng, bound)
            if x != 0:
                return x

    def elements(self):
        raise TypeError(f"{self} is infinite")

    def roots_of_unity(self, n):
        """All n-th roots of unity in the field."""
        from .roots import poly_roots
        from .poly import Poly
        return poly_roots(Poly.monomial(self, n) - 1)

    def primitive_root_of_unity(self, n):
        """A primitive n-th root of unity, or None if the field has none."""
        for z in self.roots_of_unity(n):
            if all(z ** (n // p) != 1 for p in _factor_int(n)):
                return z
        return None

    def sqrt_minus_one(self):
        z = self.primitive_root_of_unity(4)
        if z is None:
            raise ValueError(f"{self} contains no square root of -1")
        return z

    def nth_roots(self, c, n):
        """All x in the field with x**n == c."""
        from .roots import poly_roots
        from .poly import Poly
        return poly_roots(Poly.monomial(self, n) - c)


# ---------------------------------------------------------------- rationals


class Rationals(Field):
    name = "Q"
    key = ()

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, CyclotomicElement):
            if any(c != 0 for c in value.c[1:]):
                raise ValueError("element is not rational")
            return value.c[0]
        raise TypeError(f"cannot coerce {value!r} into Q")

    def random(self, rng, bound=5):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound) if rng.random() < 0.3 else 1
        return Fraction(num, den)

    def descriptor(self):
        return "Q"


QQ = Rationals()


# ------------------------------------------------------------- cyclotomics


class _Element:
    """Shared operator plumbing; subclasses define _add, _mul, _neg, _inv."""

    __slots__ = ()

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        other = self.field._coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._add(other._neg())

    def __rsub__(self, other):
        return (-self) + other

    def __rmul__(self, other):
        return self * other

    def __neg__(self):
        return self._neg()

    def __truediv__(self, other):
        other = self.field._coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._mul(other._inv())

    def __rtruediv__(self, other):
        other = self.field._coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other._mul(self._inv())

    def __add__(self, other):
        other = self.field._coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._add(other)

    def __mul__(self, other):
        other = self.field._coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._mul(other)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self._inv() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result._mul(base)
            base = base._mul(base)
            e >>= 1
        return result

    def __eq__(self, other):
        other = self.field._coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.field.key, self._key()))

    def __bool__(self):
        return self != 0

    def inverse(self):
        return self._inv()


class CyclotomicElement(_Element):
    """Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(d-1)."""

    __slots__ = ("field", "c")

    def __init__(self, field, coords):
        self.field = field
        self.c = tuple(coords)

    def _key(self):
        return self.c

    def _add(self, o):
        return CyclotomicElement(self.field, [a + b for a, b in zip(self.c, o.c)])

    def _neg(self):
        return CyclotomicElement(self.field, [-a for a in self.c])

    def _mul(self, o):
        d = self.field.degree
        out = [Fraction(0)] * d
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(o.c):
                if b == 0:
                    continue
                k = i + j
                # zeta^d = -1 for n in {4, 8}
                if k >= d:
                    out[k - d] -= a * b
                else:
                    out[k] += a * b
        return CyclotomicElement(self.field, out)

    def _inv(self):
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero")
        # product over the nontrivial Galois conjugates gives a rational norm
        conj = [self.field.galois(self, k) for k in self.field.units[1:]]
        prod = self.field.one
        for x in conj:
            prod = prod._mul(x)
        norm = self._mul(prod).c[0]
        return CyclotomicElement(self.field, [a / norm for a in prod.c])

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mon and a == 1:
                terms.append(mon)
            elif mon and a == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{a}{'*' + mon if mon else ''}")
        return " + ".join(terms) if terms else "0"

    def is_rational(self):
        return all(a == 0 for a in self.c[1:])


class Cyclotomic(Field):
    """Q(zeta_n) for n in {4, 8}; zeta is the basis element of index 1."""

    def __init__(self, n):
        if n not in (4, 8):
            raise ValueError(f"cyclotomic order must be 4 or 8, got {n}")
        self.n = n
        self.degree = n // 2
        self.units = [k for k in range(1, n) if k % 2 == 1]
        self.key = (n,)
        self.name = f"Q(zeta{n})"

    def _coerce_or_none(self, value):
        if isinstance(value, CyclotomicElement):
            if value.field.n == self.n:
                return value
            if value.field.n == 4 and self.n == 8:
                # zeta4 = zeta8^2
                c = value.c
                return CyclotomicElement(self, [c[0], 0, c[1], 0])
            return None
        if isinstance(value, (int, Fraction)):
            return CyclotomicElement(self, [Fraction(value)] + [Fraction(0)] * (self.degree - 1))
        return None

    def __call__(self, value):
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise ValueError(f"{self} needs {self.degree} coordinates")
            return CyclotomicElement(self, [Fraction(v) for v in value])
        if isinstance(value, str):
            value = Fraction(value)
        x = self._coerce_or_none(value)
        if x is None:
            raise TypeError(f"cannot coerce {value!r} into {self}")
        return x

    @property
    def zeta(self):
        return self([0, 1] + [0] * (self.degree - 2))

    def primitive_root_of_unity(self, n):
        # canonical choice: a power of the basis element zeta
        if self.n % n == 0:
            return self.zeta ** (self.n // n)
        return super().primitive_root_of_unity(n)

    def galois(self, x, k):
        """Apply zeta -> zeta^k."""
        out = self.zero
        zk = self.zeta ** k
        for i, a in enumerate(x.c):
            if a:
                out = out + a * zk ** i
        return out

    def random(self, rng, bound=5):
        return self([QQ.random(rng, bound) for _ in range(self.degree)])

    def descriptor(self):
        return f"Qzeta{self.n}"


# ------------------------------------------------------------ finite fields


class GFElement(_Element):
    """Element of F_p (coordinate tuple of length 1) or F_{p^m}."""

    __slots__ = ("field", "c")

    def __init__(self, field, coords):
        self.field = field
        self.c = coords

    def _key(self):
        return self.c

    def _add(self, o):
        p = self.field.p
        return GFElement(self.field, tuple((a + b) % p for a, b in zip(self.c, o.c)))

    def _neg(self):
        p = self.field.p
        return GFElement(self.field, tuple((-a) % p for a in self.c))

    def _mul(self, o):
        F = self.field
        if F.m == 1:
            return GFElement(F, ((self.c[0] * o.c[0]) % F.p,))
        return GFElement(F, F._mulmod(self.c, o.c))

    def _inv(self):
        F = self.field
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero")
        if F.m == 1:
            return GFElement(F, (pow(self.c[0], -1, F.p),))
        return self ** (F.order - 2)

    def __int__(self):
        if self.field.m != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.c[0]

    def __repr__(self):
        if self.field.m == 1:
            return str(self.c[0])
        return "[" + ",".join(map(str, self.c)) + "]"


class FiniteField(Field):
    """F_q with q = p^m, p an odd prime; F_{p^m} = F_p[x]/(modulus)."""

    def __init__(self, p, m=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if m < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.m = m
        self.characteristic = p
        self.order = p ** m
        if m == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = tuple(modulus) if modulus is not None else find_irreducible(p, m)
            if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if not _is_irreducible_fp(self.modulus, p):
                raise ValueError("modulus is reducible")
        self.key = (p, m, self.modulus)
        self.name = f"GF({p})" if m == 1 else f"GF({p}^{m})"

    def _mulmod(self, a, b):
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
            prod[k] = 0
        return tuple(v % p for v in prod[:m])

    def _coerce_or_none(self, value):
        if isinstance(value, GFElement):
            if value.field is self or value.field.key == self.key:
                return value
            if value.field.p == self.p and value.field.m == 1:
                return GFElement(self, (value.c[0],) + (0,) * (self.m - 1))
            return None
        if isinstance(value, int):
            return GFElement(self, (value % self.p,) + (0,) * (self.m - 1))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            v = value.numerator * pow(value.denominator, -1, self.p)
            return GFElement(self, (v % self.p,) + (0,) * (self.m - 1))
        return None

    def __call__(self, value):
        if isinstance(value, (list, tuple)):
            if len(value) != self.m:
                raise ValueError(f"{self} needs {self.m} coordinates")
            return GFElement(self, tuple(int(v) % self.p for v in value))
        if isinstance(value, str):
            value = Fraction(value)
        x = self._coerce_or_none(value)
        if x is None:
            raise TypeError(f"cannot coerce {value!r} into {self}")
        return x

    @property
    def generator(self):
        """The class of x in F_p[x]/(modulus)."""
        if self.m == 1:
            raise ValueError("prime field has no polynomial generator")
        return self([0, 1] + [0] * (self.m - 2))

    def elements(self):
        for coords in itertools.product(range(self.p), repeat=self.m):
            yield GFElement(self, tuple(reversed(coords)))

    def random(self, rng, bound=None):
        return GFElement(self, tuple(rng.randrange(self.p) for _ in range(self.m)))

    def frobenius_root(self, x):
        """The unique p-th root of x."""
        return x ** (self.order // self.p)

    def descriptor(self):
        if self.m == 1:
            return {"Fp": self.p}
        return {"Fq": [self.p, self.m]}


def PrimeField(p):
    return _finite_field(p, 1)


def PrimeFieldExt(p, m):
    return _finite_field(p, m)


@lru_cache(maxsize=None)
def _finite_field(p, m):
    return FiniteField(p, m)


# ------------------------------------------------- irreducibility over F_p


def _polymod_fp(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] % p == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        a.pop()
    while a and a[-1] % p == 0:
        a.pop()
    return a


def _is_irreducible_fp(f, p):
    """Exhaustive check: no monic divisor of degree <= deg(f)/2."""
    n = len(f) - 1
    if n <= 0:
        return False
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _polymod_fp(f, g, p):
                return False
    return True


def find_irreducible(p, m):
    """Lexicographically first monic irreducible of degree m over F_p."""
    for tail in itertools.product(range(p), repeat=m):
        f = tuple(reversed(tail)) + (1,)
        if f[0] == 0:
            continue
        if _is_irreducible_fp(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")


# ----------------------------------------------------------------- factory


def field_make(spec):
    """Build a field from a descriptor.

    Accepted forms: ``"Q"``, ``"Qzeta4"``, ``"Qzeta8"``, ``{"Fp": p}``,
    ``{"Fq": [p, m]}``, or tuples ``("Cyclotomic", n)``, ``("PrimeField", p)``,
    ``("PrimeFieldExt", p, m)``.
    """
    if isinstance(spec, Field):
        return spec
    if spec in ("Q", "Rationals"):
        return QQ
    if spec in ("Qzeta4", "Qi"):
        return _cyclotomic(4)
    if spec == "Qzeta8":
        return _cyclotomic(8)
    if isinstance(spec, dict):
        if "Fp" in spec:
            return PrimeField(int(spec["Fp"]))
        if "Fq" in spec:
            p, m = spec["Fq"]
            return PrimeFieldExt(int(p), int(m))
    if isinstance(spec, (tuple, list)) and spec:
        kind = spec[0]
        if kind == "Cyclotomic":
            return _cyclotomic(int(spec[1]))
        if kind == "PrimeField":
            return PrimeField(int(spec[1]))
        if kind == "PrimeFieldExt":
            return PrimeFieldExt(int(spec[1]), int(spec[2]))
    raise ValueError(f"unrecognised field descriptor {spec!r}")


@lru_cache(maxsize=None)
def _cyclotomic(n):
    return Cyclotomic(n)


def element_to_json(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, CyclotomicElement):
        return [element_to_json(a) for a in x.c]
    if isinstance(x, GFElement):
        return x.c[0] if x.field.m == 1 else list(x.c)
    if isinstance(x, int):
        return str(x)
    raise TypeError(f"cannot serialise {x!r}")


def element_from_json(field, v):
    if isinstance(v, list):
        return field(v)
    if isinstance(v, str):
        return field(Fraction(v))
    return field(v)
