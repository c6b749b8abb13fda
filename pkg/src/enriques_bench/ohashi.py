"""Double covers of P^1 x P^1 with extra automorphisms, checked symbolically.

A double cover w^2 = F(y, z) is stored with its parameters as extra
polynomial variables, so every identity below is checked identically in
the parameters. Function-field elements are written (a + b*w) / d with
a, b, d polynomials in (parameters, y, z) and w^2 reduced to F.

Two families are built in:

* the six-parameter family with the order-4 map
  (w, y, z) -> (i*w / (y^2 z^3), 1/y, 1/z), i^2 = -1;
* the three-parameter family with the map
  (w, y, z) -> (zeta8 * y^3 w / z^4, y/z, y^2/z).

Only birational statements are checked: that a map preserves the
equation and the order of a map in the function field. The action on
bicanonical forms needs the resolved surface and is not computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import Cyclotomic, CyclotomicElement, PrimeField, PrimeFieldExt, is_prime
from .scalars.mpoly import MPoly, PolyRing

COORDS = ("y", "z")


class OrderBoundError(ValueError):
    """No power up to the bound is the identity."""


# ------------------------------------------------------------------ covers


class DoubleCover:
    """w^2 = rhs, rhs a polynomial in (params..., y, z)."""

    def __init__(self, ring: PolyRing, rhs: MPoly, params=(), name="cover"):
        if ring.names != tuple(params) + COORDS:
            raise ValueError("ring variables must be the parameters followed by (y, z)")
        if rhs.ring != ring:
            raise ValueError("equation lives in a different ring")
        if rhs.is_zero():
            raise ValueError("the branch polynomial is zero")
        self.ring = ring
        self.rhs = rhs
        self.params = tuple(params)
        self.name = name
        # a square has even degree in every variable, so an odd degree
        # certifies that w^2 - rhs is irreducible
        self.nonsquare_certified = any(rhs.degree(n) % 2 for n in ring.names)

    @property
    def field(self):
        return self.ring.field

    def element(self, a, b=0, d=1):
        return CoverElement(self, self._poly(a), self._poly(b), self._poly(d))

    def _poly(self, x):
        return x if isinstance(x, MPoly) else self.ring.const(x)

    def w(self):
        return self.element(0, 1)

    def y(self):
        return self.element(self.ring.gen("y"))

    def z(self):
        return self.element(self.ring.gen("z"))

    def with_extra_term(self, name, monomial):
        """The cover w^2 = rhs + name * monomial, with name a new parameter.

        monomial maps 'y'/'z' to exponents.
        """
        params = self.params + (name,)
        ring = PolyRing(self.field, params + COORDS)
        old = self.rhs.terms
        shifted = {e[: len(self.params)] + (0,) + e[len(self.params):]: c for e, c in old.items()}
        exps = dict(monomial)
        exps[name] = 1
        rhs = MPoly(ring, shifted) + ring.monomial(exps)
        return DoubleCover(ring, rhs, params, self.name + f"+{name}")

    def __repr__(self):
        return f"DoubleCover({self.name}: w^2 = {self.rhs})"


class CoverElement:
    """(a + b*w) / d in the function field of a double cover."""

    __slots__ = ("cover", "a", "b", "d")

    def __init__(self, cover, a, b, d):
        if d.is_zero():
            raise ZeroDivisionError("identically zero denominator")
        self.cover = cover
        self.a = a
        self.b = b
        self.d = d
        self._cancel_monomial()

    def _cancel_monomial(self):
        # divide out the largest monomial dividing a, b and d
        terms = list(self.a.terms) + list(self.b.terms) + list(self.d.terms)
        n = self.cover.ring.nvars
        low = [min(e[i] for e in terms) for i in range(n)]
        if any(low):
            def shift(p):
                return MPoly._raw(
                    p.ring, {tuple(x - l for x, l in zip(e, low)): c for e, c in p.terms.items()}
                )

            self.a, self.b, self.d = shift(self.a), shift(self.b), shift(self.d)

    def __add__(self, o):
        return CoverElement(
            self.cover, self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d
        )

    def __neg__(self):
        return CoverElement(self.cover, -self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        F = self.cover.rhs
        return CoverElement(
            self.cover,
            self.a * o.a + self.b * o.b * F,
            self.a * o.b + self.b * o.a,
            self.d * o.d,
        )

    def inverse(self):
        # (a + b w)^-1 = (a - b w) / (a^2 - b^2 F)
        norm = self.a * self.a - self.b * self.b * self.cover.rhs
        if norm.is_zero():
            raise ZeroDivisionError("element is identically zero")
        return CoverElement(self.cover, self.a * self.d, -self.b * self.d, norm)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.cover.element(1)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, o):
        if not isinstance(o, CoverElement):
            return NotImplemented
        return (self.a * o.d - o.a * self.d).is_zero() and (self.b * o.d - o.b * self.d).is_zero()

    def __hash__(self):
        raise TypeError("CoverElement is not hashable")

    def __repr__(self):
        return f"(({self.a}) + ({self.b})*w) / ({self.d})"


# -------------------------------------------------------------------- maps


@dataclass
class CoverMap:
    """Point map (w, y, z) -> (W, Y, Z), images in the function field."""

    cover: DoubleCover
    w_image: CoverElement
    y_image: CoverElement
    z_image: CoverElement
    name: str = "map"

    def images(self):
        return (self.w_image, self.y_image, self.z_image)

    def pull_back(self, f: CoverElement) -> CoverElement:
        """f composed with this map."""
        return (
            _eval_poly(f.a, self) + _eval_poly(f.b, self) * self.w_image
        ) / _eval_poly(f.d, self)

    def after(self, inner: "CoverMap") -> "CoverMap":
        """The point map x -> self(inner(x))."""
        return CoverMap(
            self.cover,
            *(inner.pull_back(f) for f in self.images()),
            name=f"{self.name}*{inner.name}",
        )

    def power(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = identity_map(self.cover)
        for _ in range(k):
            out = self.after(out)
        out.name = f"{self.name}^{k}"
        return out

    def is_identity(self):
        S = self.cover
        return self.w_image == S.w() and self.y_image == S.y() and self.z_image == S.z()

    def __eq__(self, other):
        if not isinstance(other, CoverMap):
            return NotImplemented
        return all(a == b for a, b in zip(self.images(), other.images()))

    def describe(self):
        return {
            "name": self.name,
            "w": repr(self.w_image),
            "y": repr(self.y_image),
            "z": repr(self.z_image),
        }


def _eval_poly(p: MPoly, m: CoverMap) -> CoverElement:
    """p(params, Y, Z) with Y, Z the images of y, z under m."""
    S = m.cover
    ring = S.ring
    iy, iz = ring.names.index("y"), ring.names.index("z")
    dy, dz = max(p.degree("y"), 0), max(p.degree("z"), 0)
    Y, Z = m.y_image, m.z_image
    # work with numerators (a + b w) and a common denominator Dy^dy Dz^dz
    ny, nz = S.element(Y.a, Y.b), S.element(Z.a, Z.b)
    Dy, Dz = S.element(Y.d), S.element(Z.d)
    cache = {}

    def part(base, den, j, top):
        key = (id(base), j)
        if key not in cache:
            cache[key] = base ** j * den ** (top - j)
        return cache[key]

    total = S.element(0)
    for e, c in p.terms.items():
        coeff = list(e)
        j, k = coeff[iy], coeff[iz]
        coeff[iy] = coeff[iz] = 0
        mono = S.element(MPoly._raw(ring, {tuple(coeff): c}))
        total = total + mono * part(ny, Dy, j, dy) * part(nz, Dz, k, dz)
    den = S.element(Y.d) ** dy * S.element(Z.d) ** dz
    return total / den


def identity_map(S: DoubleCover) -> CoverMap:
    return CoverMap(S, S.w(), S.y(), S.z(), name="id")


def deck_map(S: DoubleCover) -> CoverMap:
    return CoverMap(S, -S.w(), S.y(), S.z(), name="deck")


def order_four_map(S: DoubleCover, i=None) -> CoverMap:
    """(w, y, z) -> (i w / (y^2 z^3), 1/y, 1/z) with i^2 = -1."""
    i = S.field.sqrt_minus_one() if i is None else S.field(i)
    if i * i != -1:
        raise ValueError("i must square to -1")
    y, z = S.ring.gen("y"), S.ring.gen("z")
    return CoverMap(
        S,
        S.element(0, S.ring.const(i), y ** 2 * z ** 3),
        S.element(1, 0, y),
        S.element(1, 0, z),
        name="g1",
    )


def eighth_root_map(S: DoubleCover, zeta8=None) -> CoverMap:
    """(w, y, z) -> (zeta8 y^3 w / z^4, y/z, y^2/z)."""
    zeta8 = S.field.primitive_root_of_unity(8) if zeta8 is None else S.field(zeta8)
    if zeta8 ** 4 != -1:
        raise ValueError("zeta8 must be a primitive 8th root of unity")
    y, z = S.ring.gen("y"), S.ring.gen("z")
    return CoverMap(
        S,
        S.element(0, S.ring.const(zeta8) * y ** 3, z ** 4),
        S.element(y, 0, z),
        S.element(y ** 2, 0, z),
        name="g2",
    )


# ---------------------------------------------------------------- families

SIX_PARAMS = ("A", "B", "C", "D", "E", "F")
THREE_PARAMS = ("A", "B", "D")


def six_parameter_family(field=None) -> DoubleCover:
    """w^2 = z(A(y^4z^2 - z^2) + B(y^4z - z^3) + C(y^4 - z^4)
    + D(y^3z^2 - yz^2) + E(y^3z - yz^3) + F(y^2z - y^2z^3))."""
    field = Cyclotomic(4) if field is None else field
    R = PolyRing(field, SIX_PARAMS + COORDS)
    A, B, C, D, E, F, y, z = R.gens()
    inner = (
        A * (y**4 * z**2 - z**2)
        + B * (y**4 * z - z**3)
        + C * (y**4 - z**4)
        + D * (y**3 * z**2 - y * z**2)
        + E * (y**3 * z - y * z**3)
        + F * (y**2 * z - y**2 * z**3)
    )
    return DoubleCover(R, z * inner, SIX_PARAMS, name="six-parameter")


def three_parameter_family(field=None, i=None) -> DoubleCover:
    """w^2 = z(A(y^4z^2 + i z^4 - z^2 - i y^4) + B(y^4z + i y^2z^3 - z^3 - i y^2z)
    + D(y^3z^2 + i yz^3 - yz^2 - i y^3z)) with i = zeta8^2 by default."""
    field = Cyclotomic(8) if field is None else field
    if i is None:
        i = field.primitive_root_of_unity(8) ** 2
    i = field(i)
    if i * i != -1:
        raise ValueError("i must square to -1")
    R = PolyRing(field, THREE_PARAMS + COORDS)
    A, B, D, y, z = R.gens()
    inner = (
        A * (y**4 * z**2 + i * z**4 - z**2 - i * y**4)
        + B * (y**4 * z + i * y**2 * z**3 - z**3 - i * y**2 * z)
        + D * (y**3 * z**2 + i * y * z**3 - y * z**2 - i * y**3 * z)
    )
    return DoubleCover(R, z * inner, THREE_PARAMS, name="three-parameter")


# -------------------------------------------------------------- operations


def equation_residual(S: DoubleCover, m: CoverMap) -> CoverElement:
    """W^2 - F(Y, Z) in the function field of S."""
    W = m.w_image
    if W.cover is not S:
        m = _rebase(m, S)
        W = m.w_image
    return W * W - _eval_poly(S.rhs, m)


def preserves_equation(S: DoubleCover, m: CoverMap) -> bool:
    """True iff the images satisfy the equation of S identically in the parameters."""
    return equation_residual(S, m).is_zero()


def _rebase(m: CoverMap, S: DoubleCover) -> CoverMap:
    """Move m's images into the function field of S (same field, maybe more parameters)."""

    def move(p):
        old = p.ring.names
        new = S.ring.names
        if old == new:
            return MPoly(S.ring, p.terms)
        idx = [new.index(n) for n in old]
        out = {}
        for e, c in p.terms.items():
            k = [0] * len(new)
            for i, x in zip(idx, e):
                k[i] = x
            out[tuple(k)] = c
        return MPoly(S.ring, out)

    imgs = [CoverElement(S, move(f.a), move(f.b), move(f.d)) for f in m.images()]
    return CoverMap(S, *imgs, name=m.name)


def map_order(m: CoverMap, bound: int = 16) -> int:
    """Least k <= bound with m^k the identity of the function field."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    g = m
    for k in range(1, bound + 1):
        if g.is_identity():
            return k
        g = m.after(g)
    raise OrderBoundError(f"order of {m.name} exceeds {bound}")


# ---------------------------------------------------------- specialization


def _root_order(field):
    return field.n if isinstance(field, Cyclotomic) else 1


def _multiplicative_order(p, n):
    k, x = 1, p % n
    while x != 1 % n:
        x = x * p % n
        k += 1
    return k


def specialization_field(S: DoubleCover, p: int, extend: bool = False):
    """F_p (or F_{p^k} when extend) receiving the roots of unity S needs."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    n = _root_order(S.field)
    if (p - 1) % n == 0:
        return PrimeField(p)
    if not extend:
        raise ValueError(f"F_{p} lacks a primitive {n}th root of unity; pass extend=True")
    return PrimeFieldExt(p, _multiplicative_order(p, n))


def _coefficient_map(source, target):
    """Ring map source -> target; zeta_n goes to a fixed primitive nth root."""
    if isinstance(source, Cyclotomic):
        zeta = target.primitive_root_of_unity(source.n)
        powers = [zeta ** k for k in range(source.degree)]

        def fn(c):
            c = source(c)
            out = target.zero
            for a, zk in zip(c.c, powers):
                if a:
                    out = out + target(Fraction(a)) * zk
            return out

        return fn
    return target


def specialize(S: DoubleCover, m: CoverMap, params, p: int, extend: bool = False):
    """(S_p, m_p): parameters set to values and coefficients reduced mod p."""
    target = specialization_field(S, p, extend)
    fn = _coefficient_map(S.field, target)
    if not isinstance(params, dict):
        params = dict(zip(S.params, params))
    missing = set(S.params) - set(params)
    if missing:
        raise ValueError(f"missing parameter values: {sorted(missing)}")
    try:
        values = {
            n: fn(v) if isinstance(v, CyclotomicElement) else target(v)
            for n, v in params.items()
            if n in S.params
        }
        R = PolyRing(target, COORDS)
        full = PolyRing(target, S.ring.names)

        def down(poly):
            return poly.map_coefficients(full, fn).substitute(R, values)

        Sp = DoubleCover(R, down(S.rhs), (), name=f"{S.name}@F{p}")
        m = _rebase(m, S) if m.cover is not S else m
        imgs = [CoverElement(Sp, down(f.a), down(f.b), down(f.d)) for f in m.images()]
    except ZeroDivisionError as exc:
        raise ValueError(f"bad characteristic {p}: {exc}") from exc
    return Sp, CoverMap(Sp, *imgs, name=m.name)


def specialize_and_check(S: DoubleCover, m: CoverMap, params, p: int, extend: bool = False) -> bool:
    """The preservation identity at the specialized parameters over F_p."""
    Sp, mp = specialize(S, m, params, p, extend)
    return preserves_equation(Sp, mp)
