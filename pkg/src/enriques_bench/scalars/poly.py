"""Immutable univariate polynomials over an exact field.

Coefficients are stored in ascending degree order with the leading
coefficient nonzero.  The zero polynomial has degree -1.
"""

from __future__ import annotations

from .fields import Field, FiniteField, element_from_json, element_to_json, field_make

ZERO_DEGREE = -1


class Poly:
    __slots__ = ("field", "c", "var")

    def __init__(self, field: Field, coeffs=(), var="t"):
        cs = [field(x) for x in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.c = tuple(cs)
        self.var = var

    # ------------------------------------------------------ constructors

    @classmethod
    def _raw(cls, field, coeffs, var="t"):
        """Build from already-coerced coefficients, trimming zeros."""
        obj = cls.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        obj.field = field
        obj.c = tuple(cs)
        obj.var = var
        return obj

    @classmethod
    def monomial(cls, field, n, coeff=1, var="t"):
        return cls(field, [0] * n + [coeff], var)

    @classmethod
    def constant(cls, field, value, var="t"):
        return cls(field, [value], var)

    @classmethod
    def from_roots(cls, field, roots, var="t"):
        out = cls(field, [1], var)
        for r in roots:
            out = out * cls(field, [-r, 1], var)
        return out

    # ------------------------------------------------------------ basics

    @property
    def degree(self):
        return len(self.c) - 1

    @property
    def lc(self):
        if not self.c:
            return self.field.zero
        return self.c[-1]

    def coeff(self, i):
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.field.zero

    def is_zero(self):
        return not self.c

    def is_constant(self):
        return len(self.c) <= 1

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mon:
                terms.append(f"({a})")
            elif a == 1:
                terms.append(mon)
            else:
                terms.append(f"({a})*{mon}")
        return " + ".join(terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        try:
            other = self.field(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == ((other,) if other != 0 else ())

    def __hash__(self):
        return hash(self.c)

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [other], self.var)

    # -------------------------------------------------------- arithmetic

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly._raw(self.field, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [-x for x in self.c], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self.field(other)
            return Poly._raw(self.field, [s * x for x in self.c], self.var)
        if not self.c or not other.c:
            return Poly._raw(self.field, [], self.var)
        out = [self.field.zero] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j, y in enumerate(other.c):
                out[i + j] = out[i + j] + x * y
        return Poly._raw(self.field, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Poly(self.field, [1], self.var)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        db = other.degree
        inv = 1 / other.lc
        q = [self.field.zero] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            coef = rem[k] * inv
            if coef == 0:
                continue
            q[k - db] = coef
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - coef * other.c[j]
        return Poly._raw(self.field, q, self.var), Poly._raw(self.field, rem[:db] if db > 0 else [], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.exact_div(other)
        inv = 1 / self.field(other)
        return Poly._raw(self.field, [x * inv for x in self.c], self.var)

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def divides(self, other):
        """True if self divides other."""
        return (other % self).is_zero()

    def monic(self):
        if not self.c:
            return self
        return self / self.lc

    def derivative(self):
        return Poly._raw(self.field, [i * x for i, x in enumerate(self.c)][1:], self.var)

    def __call__(self, x):
        """Horner evaluation; x may be a field element or a polynomial."""
        acc = self.field.zero if not isinstance(x, Poly) else Poly(self.field, [], x.var)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def scale_var(self, lam):
        """f(lam * t)."""
        out = []
        p = self.field.one
        for a in self.c:
            out.append(a * p)
            p = p * lam
        return Poly._raw(self.field, out, self.var)

    def shift(self, n):
        """Multiply by t**n (n >= 0)."""
        return Poly._raw(self.field, [self.field.zero] * n + list(self.c), self.var)

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return Poly(field, [fn(a) for a in self.c], self.var)

    def with_var(self, var):
        return Poly._raw(self.field, self.c, var)

    def valuation(self):
        """Order of vanishing at t = 0 (infinity for the zero polynomial)."""
        for i, a in enumerate(self.c):
            if a != 0:
                return i
        return float("inf")

    def order_at(self, place):
        """Multiplicity of the irreducible polynomial `place` in self."""
        if self.is_zero():
            return float("inf")
        k, f = 0, self
        while True:
            q, r = divmod(f, place)
            if not r.is_zero():
                return k
            f, k = q, k + 1

    # ------------------------------------------------------------ serial

    def to_json(self):
        return [element_to_json(a) for a in self.c] or ["0"]

    @classmethod
    def from_json(cls, field, data, var="t"):
        return cls(field, [element_from_json(field, v) for v in data], var)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly(F, [1], a.var), Poly(F, [], a.var)
    t0, t1 = Poly(F, [], a.var), Poly(F, [1], a.var)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def poly_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    out = Poly(base.field, [1], base.var) % mod
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


def _pth_root(f: Poly) -> Poly:
    """g with g**p == f, for f whose exponents are all multiples of p."""
    F = f.field
    p = F.characteristic
    coeffs = []
    for i in range(0, f.degree + 1, p):
        coeffs.append(F.frobenius_root(f.coeff(i)))
    return Poly._raw(F, coeffs, f.var)


def squarefree_decomposition(f: Poly):
    """Return [(S_k, k), ...] with f = lc(f) * prod S_k**k.

    The S_k are monic, squarefree, pairwise coprime and nonconstant,
    sorted by multiplicity.  Works in characteristic 0 (Yun) and over
    finite fields (p-th root recursion).
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    f = f.monic()
    if f.degree <= 0:
        return []
    if f.field.characteristic == 0:
        parts = _yun(f)
    else:
        parts = _sqf_char_p(f)
    merged = {}
    for s, k in parts:
        if s.degree > 0:
            merged[k] = merged[k] * s if k in merged else s
    return [(merged[k].monic(), k) for k in sorted(merged)]


def _yun(f):
    out = []
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _sqf_char_p(f):
    F = f.field
    if not isinstance(F, FiniteField):
        raise TypeError("positive-characteristic decomposition needs a finite field")
    p = F.characteristic
    out = []
    c = poly_gcd(f, f.derivative())
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        for g, k in _sqf_char_p(_pth_root(c).monic()):
            out.append((g, k * p))
    return out


def squarefree_part(f: Poly) -> Poly:
    out = Poly(f.field, [1], f.var)
    for s, _ in squarefree_decomposition(f):
        out = out * s
    return out


def reciprocal_twist(f: Poly, weight: int) -> Poly:
    """s**weight * f(1/s): coefficients reversed inside the weight window."""
    if f.degree > weight:
        raise ValueError(f"degree {f.degree} exceeds weight {weight}")
    coeffs = [f.coeff(weight - i) for i in range(weight + 1)]
    return Poly._raw(f.field, coeffs, "s" if f.var == "t" else "t")


def poly_from_json(obj):
    """Parse {"field": ..., "coeffs": [...]} into a Poly."""
    field = field_make(obj["field"])
    return Poly.from_json(field, obj["coeffs"])
