"""First-order jets a + sum_i b_i eps_i with eps_i eps_j = 0.

Evaluating exact polynomial code over a JetRing yields values together
with all first partial derivatives, which gives exact Jacobians.
"""

from __future__ import annotations

from .fields import Field, _Element


class Jet(_Element):
    __slots__ = ("field", "v", "d")

    def __init__(self, ring, value, derivs):
        self.field = ring
        self.v = value
        self.d = tuple(derivs)

    def _key(self):
        return (self.v, self.d)

    def _add(self, o):
        return Jet(self.field, self.v + o.v, [a + b for a, b in zip(self.d, o.d)])

    def _neg(self):
        return Jet(self.field, -self.v, [-a for a in self.d])

    def _mul(self, o):
        return Jet(
            self.field,
            self.v * o.v,
            [self.v * b + o.v * a for a, b in zip(self.d, o.d)],
        )

    def _inv(self):
        if self.v == 0:
            raise ZeroDivisionError("jet with zero value is not invertible")
        iv = 1 / self.v
        iv2 = iv * iv
        return Jet(self.field, iv, [-a * iv2 for a in self.d])

    def __repr__(self):
        return f"Jet({self.v}; {list(self.d)})"


class JetRing(Field):
    """Jets over a base field with n infinitesimal directions."""

    def __init__(self, base: Field, n: int):
        self.base = base
        self.n = n
        self.characteristic = base.characteristic
        self.name = f"{base}[eps x {n}]"
        self.key = (repr(base), n)
        self._zeros = (base.zero,) * n

    def __call__(self, value):
        if isinstance(value, Jet):
            if value.field is self or value.field == self:
                return value
            raise TypeError("jet from a different ring")
        return Jet(self, self.base(value), self._zeros)

    def _coerce_or_none(self, value):
        try:
            return self(value)
        except (TypeError, ValueError):
            return None

    def variable(self, value, i):
        """value + eps_i."""
        d = list(self._zeros)
        d[i] = self.base.one
        return Jet(self, self.base(value), d)

    def constant(self, value):
        return self(value)

    def sqrt_minus_one(self):
        return self(self.base.sqrt_minus_one())

    def random(self, rng, bound=5):
        return self(self.base.random(rng, bound))
