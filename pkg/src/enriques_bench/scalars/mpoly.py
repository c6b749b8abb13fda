"""Sparse multivariate polynomials over an exact field.

A PolyRing fixes the field and an ordered tuple of variable names; its
elements store {exponent tuple: nonzero coefficient}.
"""

from __future__ import annotations


class PolyRing:
    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        self._zero_exp = (0,) * self.nvars

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def zero(self):
        return MPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        return MPoly(self, {self._zero_exp: c})

    def gen(self, name):
        i = self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps, coeff=1):
        """exps maps variable names to exponents."""
        e = [0] * self.nvars
        for n, k in exps.items():
            e[self.names.index(n)] = k
        return MPoly(self, {tuple(e): coeff})


class MPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        F = ring.field
        clean = {}
        for e, c in terms.items():
            c = F(c)
            if c != 0:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        out = cls.__new__(cls)
        out.ring = ring
        out.terms = terms
        return out

    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise TypeError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            s = self.ring.field(other)
            if s == 0:
                return self.ring.zero()
            return MPoly._raw(self.ring, {e: s * c for e, c in self.terms.items()})
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly) or isinstance(other, int):
            return (self - self._lift(other)).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self, name):
        i = self.ring.names.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def map_coefficients(self, ring, fn):
        """Same exponents, coefficients sent through fn into ring (same names)."""
        if ring.names != self.ring.names:
            raise ValueError("target ring must have the same variables")
        return MPoly(ring, {e: fn(c) for e, c in self.terms.items()})

    def substitute(self, ring, values):
        """Replace some variables by constants of ring.field and drop them.

        ring must carry the remaining variable names in their original order.
        """
        keep = [i for i, n in enumerate(self.ring.names) if n not in values]
        if tuple(self.ring.names[i] for i in keep) != ring.names:
            raise ValueError("target ring variables do not match the kept variables")
        drop = [(i, ring.field(values[n])) for i, n in enumerate(self.ring.names) if n in values]
        out = {}
        for e, c in self.terms.items():
            v = ring.field(c)
            for i, x in drop:
                if e[i]:
                    v = v * x ** e[i]
            k = tuple(e[i] for i in keep)
            out[k] = out[k] + v if k in out else v
        return MPoly(ring, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            parts.append(f"({c})*{mon}" if mon else f"({c})")
        return " + ".join(parts)
