"""Laurent polynomials in one variable, stored sparsely as {exponent: coeff}."""

from __future__ import annotations

from .poly import Poly


class Laurent:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        for e, c in (terms or {}).items():
            c = field(c)
            if c != 0:
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def from_poly(cls, p: Poly, shift=0):
        return cls(p.field, {i + shift: c for i, c in enumerate(p.c)})

    @classmethod
    def monomial(cls, field, e, coeff=1):
        return cls(field, {e: coeff})

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else -1

    def coeff(self, e):
        return self.terms.get(e, self.field.zero)

    def _lift(self, other):
        if isinstance(other, Laurent):
            return other
        if isinstance(other, Poly):
            return Laurent.from_poly(other)
        return Laurent(self.field, {0: other})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Laurent(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Laurent, Poly)):
            s = self.field(other)
            return Laurent(self.field, {e: s * c for e, c in self.terms.items()})
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return Laurent(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Laurent(self.field, {0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (Laurent, Poly)) or other == 0:
            return (self - self._lift(other)).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def scale_var(self, lam):
        """f(lam * t)."""
        return Laurent(self.field, {e: c * lam ** e for e, c in self.terms.items()})

    def invert_var(self, lam):
        """f((lam * t)^-1)."""
        return Laurent(self.field, {-e: c * lam ** (-e) for e, c in self.terms.items()})

    def shift(self, n):
        return Laurent(self.field, {e + n: c for e, c in self.terms.items()})

    def to_poly(self, var="t"):
        if self.terms and self.min_exp() < 0:
            raise ValueError("Laurent polynomial has negative exponents")
        n = self.max_exp() + 1
        return Poly(self.field, [self.coeff(i) for i in range(n)], var)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*t^{e}" for e, c in sorted(self.terms.items()))
