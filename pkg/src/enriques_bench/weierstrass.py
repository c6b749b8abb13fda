"""Weierstrass data y^2 = x^3 + a2 x^2 + a4 x + a6 over the affine t-line.

A family is 2-marked at t = 0 and t = infinity.  The module computes the
discriminant and c4, classifies singular fibers (I_n, II or a catch-all
for reducible types), decides the irreducible-fiber condition (all fibers irreducible and
both marked fibers of type I0 or I1), applies coordinate substitutions and
brings families to normal-form charts.

Substitutions ``(h, u^2, r)`` act by x' = c(t) x + r(t), t' = h(t) with
c = u^-2 for a rotation h(t) = lam t and c = (u t)^-2 for an inversion
h(t) = (lam t)^-1.  ``apply_substitution(W, g)`` returns the family W0 for
which g is an isomorphism W0 -> W; g is an automorphism when W0 == W.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .scalars import Poly, factor_ff, poly_gcd, poly_roots, reciprocal_twist, squarefree_decomposition
from .scalars.fields import Field, element_to_json, field_make
from .scalars.laurent import Laurent
from .scalars.poly import poly_powmod

WEIGHTS = (2, 4, 6)


class NonMinimalError(ValueError):
    pass


class NormalizationError(ValueError):
    pass


# ------------------------------------------------------------------ family


class WeierstrassFamily:
    """Coefficients a2, a4, a6 with deg a_i <= i over an exact field."""

    __slots__ = ("field", "a2", "a4", "a6")

    def __init__(self, field: Field, a2, a4, a6, var="t", check=True):
        if field.characteristic == 2:
            raise ValueError("characteristic 2 is not supported")
        polys = []
        for a, w in zip((a2, a4, a6), WEIGHTS):
            p = a if isinstance(a, Poly) else Poly(field, a, var)
            if p.degree > w:
                raise ValueError(f"a{w} has degree {p.degree} > {w}")
            polys.append(p.with_var(var))
        self.field = field
        self.a2, self.a4, self.a6 = polys
        if check and discriminant(self).is_zero():
            raise ValueError("discriminant vanishes identically")

    @property
    def char(self):
        return self.field.characteristic

    @property
    def var(self):
        return self.a2.var

    def a(self, i):
        return {2: self.a2, 4: self.a4, 6: self.a6}[i]

    def coeff(self, i, j):
        """The coefficient a_ij."""
        return self.a(i).coeff(j)

    def coeffs(self):
        """{(i, j): a_ij} for all 15 coefficient slots."""
        return {(i, j): self.coeff(i, j) for i in WEIGHTS for j in range(i + 1)}

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassFamily)
            and self.a2 == other.a2
            and self.a4 == other.a4
            and self.a6 == other.a6
        )

    def __hash__(self):
        return hash((self.a2, self.a4, self.a6))

    def __repr__(self):
        return f"W[{self.field}](a2={self.a2}, a4={self.a4}, a6={self.a6})"

    def twist_at_infinity(self):
        """The family in s = 1/t: a_i -> s^i a_i(1/s)."""
        return WeierstrassFamily(
            self.field,
            *(reciprocal_twist(self.a(i), i) for i in WEIGHTS),
            var="s",
            check=False,
        )

    def to_json(self):
        return {
            "field": self.field.descriptor(),
            "a2": self.a2.to_json(),
            "a4": self.a4.to_json(),
            "a6": self.a6.to_json(),
        }

    @classmethod
    def from_json(cls, obj, check=True):
        for key in ("field", "a2", "a4", "a6"):
            if key not in obj:
                raise ValueError(f"family is missing '{key}'")
        F = field_make(obj["field"])
        return cls(F, *(Poly.from_json(F, obj[k]) for k in ("a2", "a4", "a6")), check=check)

    @classmethod
    def from_coeffs(cls, field, coeffs, check=True):
        """Build from a mapping {(i, j): value}; missing slots are zero."""
        polys = []
        for i in WEIGHTS:
            polys.append(Poly(field, [coeffs.get((i, j), 0) for j in range(i + 1)]))
        return cls(field, *polys, check=check)


# ------------------------------------------------------- invariants Delta, c4


def _b_quantities(W):
    b2 = W.a2 * 4
    b4 = W.a4 * 2
    b6 = W.a6 * 4
    b8 = W.a2 * W.a6 * 4 - W.a4 * W.a4
    return b2, b4, b6, b8


def discriminant(W) -> Poly:
    """Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6 (a1 = a3 = 0)."""
    if W.field.characteristic == 2:
        raise ValueError("characteristic 2 is not supported")
    b2, b4, b6, b8 = _b_quantities(W)
    return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9


def c4(W) -> Poly:
    """c4 = b2^2 - 24 b4; equals a2^2 in characteristic 3."""
    if W.field.characteristic == 2:
        raise ValueError("characteristic 2 is not supported")
    b2, b4, _, _ = _b_quantities(W)
    return b2 * b2 - b4 * 24


# ------------------------------------------------------------ fiber types


INFINITY = "inf"


@dataclass(frozen=True)
class FiberType:
    kind: str  # "I" (with n >= 0), "II" or "OTHER_REDUCIBLE"
    n: int = 0
    place: object = None
    ord_delta: int = 0
    ord_c4: object = 0

    @property
    def symbol(self):
        if self.kind == "I":
            return f"I{self.n}"
        return self.kind

    @property
    def irreducible(self):
        return self.symbol in ("I0", "I1", "II")

    @property
    def degree(self):
        """Number of geometric points in the place."""
        return 1 if self.place == INFINITY else self.place.degree

    def to_json(self):
        place = self.place if self.place == INFINITY else self.place.to_json()
        return {
            "place": place,
            "degree": self.degree,
            "type": self.symbol,
            "ord_delta": self.ord_delta,
            "ord_c4": self.ord_c4 if self.ord_c4 != float("inf") else "inf",
        }


def _ord(p: Poly, place: Poly):
    return p.order_at(place)


def _check_minimal(od, oc):
    if od >= 12 and oc >= 4:
        raise NonMinimalError("Weierstrass model is not minimal at a place")


def _classify_char3(W, place, n):
    """Fiber over an irreducible place in characteristic 3."""
    oc = _ord(c4(W), place)
    _check_minimal(n, oc)
    if n == 0:
        return FiberType("I", 0, place, 0, oc)
    if not place.divides(W.a2):
        return FiberType("I", n, place, n, oc)
    # additive: the singular point of x^3 + a4 x + a6 mod place sits at the
    # cube root of -a6, computed in the residue field by inverse Frobenius
    q = W.field.order
    residue_size = q ** place.degree
    k = 0
    while 3 ** k < residue_size:
        k += 1
    r = poly_powmod((-W.a6) % place, 3 ** (k - 1), place)
    mod2 = place * place
    shifted = (W.a6 + W.a4 * r + W.a2 * r * r + r * r * r) % mod2
    if not shifted.is_zero():
        return FiberType("II", 0, place, n, oc)
    return FiberType("OTHER_REDUCIBLE", 0, place, n, oc)


def _classify_generic(place, n, oc):
    _check_minimal(n, oc)
    if n == 0:
        return FiberType("I", 0, place, 0, oc)
    if oc == 0:
        return FiberType("I", n, place, n, oc)
    if n == 2:
        return FiberType("II", 0, place, n, oc)
    return FiberType("OTHER_REDUCIBLE", 0, place, n, oc)


def _uniform_order(f: Poly, place: Poly):
    """Order of f along a squarefree place, or None if it varies by factor."""
    if f.is_zero():
        return float("inf")
    k = 0
    while place.divides(f):
        f = f.exact_div(place)
        k += 1
    if poly_gcd(f, place).degree > 0:
        return None
    return k


def fiber_type_at(W, place) -> FiberType:
    """Kodaira-style fiber type over a place (a monic polynomial or 'inf').

    In characteristic 3 the place must be irreducible.  Otherwise a
    squarefree place is accepted when all of its irreducible factors share
    one fiber type, which is decided by gcd computations alone.  A finite
    place must divide the discriminant; infinity may carry a smooth fiber.
    """
    D = discriminant(W)
    if D.is_zero():
        raise ValueError("discriminant vanishes identically")
    if place == INFINITY:
        Winf = W.twist_at_infinity()
        s = Poly(W.field, [0, 1], "s")
        if not s.divides(discriminant(Winf)):
            oc = _uniform_order(c4(Winf), s)
            return FiberType("I", 0, INFINITY, 0, oc)
        ft = fiber_type_at(Winf, s)
        return FiberType(ft.kind, ft.n, INFINITY, ft.ord_delta, ft.ord_c4)
    place = place.with_var(W.var).monic()
    if place.degree < 1:
        raise ValueError("place must be a nonconstant polynomial")
    if W.char == 3:
        fac = factor_ff(place)
        if len(fac) != 1 or fac[0][1] != 1:
            raise ValueError("place must be irreducible")
        n = _ord(D, place)
        if n == 0:
            raise ValueError("place does not divide the discriminant")
        return _classify_char3(W, place, n)
    n = _uniform_order(D, place)
    oc = _uniform_order(c4(W), place)
    if n is None or oc is None:
        raise ValueError("place has factors of different fiber types")
    if n == 0:
        raise ValueError("place does not divide the discriminant")
    return _classify_generic(place, n, oc)


def finite_fibers(W):
    """Singular fibers over finite places, grouped by type when char != 3."""
    D = discriminant(W)
    C = c4(W)
    out = []
    if W.char == 3:
        for place, n in factor_ff(D):
            out.append(_classify_char3(W, place, n))
        return out
    for S, k in squarefree_decomposition(D):
        A = S if C.is_zero() else poly_gcd(S, C)
        B = S.exact_div(A)
        if B.degree > 0:
            out.append(_classify_generic(B, k, 0))
        if A.degree > 0:
            oc = _uniform_order(C, A)
            if oc is None:
                # every factor of A divides c4; only oc >= 1 matters below 12
                oc = 1
            out.append(_classify_generic(A, k, oc))
    return out


@dataclass
class StarReport:
    verdict: bool
    fibers: list = dc_field(default_factory=list)
    ord0: int = 0
    ord_inf: int = 0
    total_order: int = 0

    def type_counts(self):
        """Geometric number of singular fibers of each type."""
        out = {}
        for f in self.fibers:
            out[f.symbol] = out.get(f.symbol, 0) + f.degree
        return out

    def to_json(self):
        return {
            "verdict": self.verdict,
            "type_counts": self.type_counts(),
            "ord0_delta": self.ord0,
            "ord_inf_delta": self.ord_inf,
            "total_order": self.total_order,
            "fibers": [f.to_json() for f in self.fibers],
        }


def star_check(W) -> StarReport:
    """The irreducible-fiber condition with marked points 0 and infinity."""
    D = discriminant(W)
    if D.is_zero():
        raise ValueError("discriminant vanishes identically")
    fibers = finite_fibers(W)
    inf = fiber_type_at(W, INFINITY)
    if inf.ord_delta > 0:
        fibers.append(inf)
    ord0 = D.valuation()
    ord_inf = inf.ord_delta
    total = sum(f.ord_delta * f.degree for f in fibers)
    verdict = all(f.irreducible for f in fibers) and ord0 <= 1 and ord_inf <= 1
    return StarReport(verdict, fibers, ord0, ord_inf, total)


# ------------------------------------------------------------ substitutions


ROT = "rot"
INV = "inv"


@dataclass(frozen=True, eq=False)
class Substitution:
    """(h, u^2, r): h = rotation/inversion with parameter lam, mu = u^2."""

    kind: str
    lam: object
    mu: object
    r: Laurent

    @classmethod
    def rotation(cls, field, lam, mu=1, r=None):
        return cls(ROT, field(lam), field(mu), _as_laurent(field, r))

    @classmethod
    def inversion(cls, field, lam, mu=None, r=None):
        lam = field(lam)
        return cls(INV, lam, lam if mu is None else field(mu), _as_laurent(field, r))

    @classmethod
    def identity(cls, field):
        return cls.rotation(field, 1, 1)

    @property
    def field(self):
        return self.r.field

    def h_is_identity(self):
        return self.kind == ROT and self.lam == 1

    def is_identity(self):
        """Trivial on (x, t); y may still be negated."""
        return self.h_is_identity() and self.mu == 1 and self.r.is_zero()

    def c_exponent(self):
        return 0 if self.kind == ROT else -2

    def apply_h(self, f: Laurent) -> Laurent:
        """f(h(t))."""
        if self.kind == ROT:
            return f.scale_var(self.lam)
        return f.invert_var(self.lam)

    def c_at_h_of(self, other):
        """c_self(h_other(t)) as a Laurent polynomial."""
        e = self.c_exponent()
        c = Laurent.monomial(self.field, e, 1 / self.mu)
        return other.apply_h(c)

    def then(self, other):
        """The composite: apply self first, then other."""
        F = self.field
        lam1, lam2 = self.lam, other.lam
        if self.kind == ROT and other.kind == ROT:
            kind, lam = ROT, lam1 * lam2
        elif self.kind == ROT and other.kind == INV:
            kind, lam = INV, lam1 * lam2
        elif self.kind == INV and other.kind == ROT:
            kind, lam = INV, lam1 / lam2
        else:
            kind, lam = ROT, lam1 / lam2
        c2h = other.c_at_h_of(self)
        c1 = Laurent.monomial(F, self.c_exponent(), 1 / self.mu)
        c = c2h * c1
        e = 0 if kind == ROT else -2
        if set(c.terms) != {e}:
            raise ArithmeticError("composite scale factor has unexpected shape")
        mu = 1 / c.coeff(e)
        r = c2h * self.r + self.apply_h(other.r)
        return Substitution(kind, lam, mu, r)

    def inverse(self):
        F = self.field
        if self.kind == ROT:
            lam, mu = 1 / self.lam, 1 / self.mu
        else:
            lam, mu = self.lam, self.lam * self.lam / self.mu
        inv = Substitution(self.kind, lam, mu, Laurent(F))
        c_inv = Laurent.monomial(F, self.c_exponent(), 1 / mu)
        r = -(c_inv * inv.apply_h(self.r))
        return Substitution(self.kind, lam, mu, r)

    def power(self, n):
        out = Substitution.identity(self.field)
        for _ in range(n):
            out = out.then(self)
        return out

    def order(self, bound=16):
        """Least k <= bound with self^k trivial on (x, t), else None."""
        g = self
        for k in range(1, bound + 1):
            if g.is_identity():
                return k
            g = g.then(self)
        return None

    def h_order(self, bound=16):
        if self.kind == INV:
            return 2
        x = self.lam
        for k in range(1, bound + 1):
            if x == 1:
                return k
            x = x * self.lam
        return None

    def y_scale_of_square(self):
        """u^-6 lam^3 for inversions, u^-6 for rotations: the y-scale of g^2."""
        m3 = self.mu ** 3
        return self.lam ** 3 / m3 if self.kind == INV else 1 / m3

    def __eq__(self, other):
        return (
            isinstance(other, Substitution)
            and self.kind == other.kind
            and self.lam == other.lam
            and self.mu == other.mu
            and (self.r - other.r).is_zero()
        )

    def __hash__(self):
        return hash((self.kind, self.lam, self.mu))

    def to_json(self):
        return {
            "h": "t -> lam*t" if self.kind == ROT else "t -> (lam*t)^-1",
            "lam": element_to_json(self.lam),
            "u2": element_to_json(self.mu),
            "r": {str(e): element_to_json(c) for e, c in sorted(self.r.terms.items())},
        }

    def __repr__(self):
        return f"Sub({self.kind}, lam={self.lam}, u2={self.mu}, r={self.r})"


def _as_laurent(field, r):
    if r is None:
        return Laurent(field)
    if isinstance(r, Laurent):
        return r
    if isinstance(r, Poly):
        return Laurent.from_poly(r)
    if isinstance(r, dict):
        return Laurent(field, r)
    return Laurent(field, {0: r})


def apply_substitution(W, sub: Substitution, check=False):
    """The family W0 such that sub is an isomorphism W0 -> W."""
    F = W.field
    A2, A4, A6 = (sub.apply_h(Laurent.from_poly(W.a(i))) for i in WEIGHTS)
    r = sub.r
    n2 = A2 + r * 3
    n4 = A4 + A2 * r * 2 + r * r * 3
    n6 = A6 + A4 * r + A2 * r * r + r * r * r
    shift = 0 if sub.kind == ROT else 1
    out = []
    for k, n in ((1, n2), (2, n4), (3, n6)):
        scaled = (n * sub.mu ** k).shift(2 * k * shift)
        if scaled.terms and (scaled.min_exp() < 0 or scaled.max_exp() > 2 * k):
            raise ValueError("substitution leaves the degree bounds")
        out.append(scaled.to_poly(W.var))
    return WeierstrassFamily(F, *out, var=W.var, check=check)


def swap_ends(W):
    """The family after t <-> 1/t."""
    return apply_substitution(W, Substitution.inversion(W.field, 1, 1))


# ------------------------------------------------------------ normal forms


@dataclass(frozen=True)
class Chart:
    name: str
    zeros: tuple
    ones: tuple
    fallback: bool = False

    def contains(self, W):
        return all(W.coeff(*z) == 0 for z in self.zeros) and all(W.coeff(*o) == 1 for o in self.ones)

    def equations(self):
        return [f"a{i}{j}" for i, j in self.zeros] + [f"a{i}{j}-1" for i, j in self.ones]


def _chart(zeros, ones, fallback=False):
    eqs = [f"a{i}{j}" for i, j in zeros] + [f"a{i}{j}-1" for i, j in ones]
    return Chart("V(" + ",".join(eqs) + ")", tuple(zeros), tuple(ones), fallback)


_A2_ZERO = ((2, 0), (2, 1), (2, 2))
CHART_40_60 = _chart(_A2_ZERO, ((4, 0), (6, 0)))
CHART_40_66 = _chart(_A2_ZERO, ((4, 0), (6, 6)))
CHART_60_66 = _chart(_A2_ZERO, ((6, 0), (6, 6)))
CHART_40_44 = _chart(_A2_ZERO, ((4, 0), (4, 4)), fallback=True)
CHARTS = (CHART_40_60, CHART_40_66, CHART_60_66, CHART_40_44)

_A4_LOW_ZERO = ((4, 0), (4, 1), (4, 2))
_A6_LOW_ZERO = ((6, 0), (6, 1), (6, 2))
CHART3_20_22 = _chart(_A4_LOW_ZERO, ((2, 0), (2, 2)))
CHART3_20_44 = _chart(_A4_LOW_ZERO, ((2, 0), (4, 4)))
CHART3_40_44 = _chart(_A6_LOW_ZERO, ((4, 0), (4, 4)))
CHARTS3 = (CHART3_20_22, CHART3_20_44, CHART3_40_44)


def charts_for(field):
    return CHARTS3 if field.characteristic == 3 else CHARTS


def chart_of(W):
    """First chart containing W, or None."""
    for ch in charts_for(W.field):
        if ch.contains(W):
            return ch
    return None


def is_normalized(W):
    """The hypotheses of the automorphism classification."""
    if W.char != 3:
        return W.a2.is_zero()
    a = W.coeff
    return (a(2, 0) == 1 and a(4, 0) == a(4, 1) == a(4, 2) == 0) or (
        a(4, 0) == 1 and a(6, 0) == a(6, 1) == a(6, 2) == 0
    )


def _rescale(W, lam, mu):
    return apply_substitution(W, Substitution.rotation(W.field, lam, mu))


def _rescale_to(W, first, second):
    """Rescale so that coefficients `first` (with j = 0) and `second` are 1."""
    F = W.field
    (i1, j1), (i2, j2) = first, second
    c1, c2 = W.coeff(i1, j1), W.coeff(i2, j2)
    if c1 == 0 or c2 == 0:
        return None
    for mu in F.nth_roots(1 / c1, i1 // 2):
        target = 1 / (mu ** (i2 // 2) * c2)
        lams = F.nth_roots(target, j2)
        if lams:
            return _rescale(W, lams[0], mu)
    return None


def normalize(W):
    """Bring W into one of the normal-form charts.

    Returns (family, chart, swapped) where swapped records whether t and
    1/t were interchanged.  Raises NormalizationError when no chart is
    reachable over the base field (missing roots) or the irreducible-fiber condition fails.
    """
    if W.char == 3:
        return _normalize_char3(W)
    F = W.field
    W0 = W
    if not W.a2.is_zero():
        W0 = apply_substitution(W, Substitution.rotation(F, 1, 1, W.a2 * (F(-1) / 3)))
    ch = chart_of(W0)
    if ch is not None:
        return W0, ch, False
    attempts = []
    for swapped in (False, True):
        base = swap_ends(W0) if swapped else W0
        for chart, first, second in (
            (CHART_40_66, (4, 0), (6, 6)),
            (CHART_60_66, (6, 0), (6, 6)),
        ):
            attempts.append((swapped, base, chart, first, second))
    for swapped in (False, True):
        base = swap_ends(W0) if swapped else W0
        attempts.append((swapped, base, CHART_40_44, (4, 0), (4, 4)))
    for swapped, base, chart, first, second in attempts:
        out = _rescale_to(base, first, second)
        if out is not None and chart.contains(out):
            return out, chart, swapped
    raise NormalizationError("no normal-form chart is reachable over the base field")


def _shift(W, r):
    return apply_substitution(W, Substitution.rotation(W.field, 1, 1, r))


def _kill_a4_low(W):
    """x -> x + r with deg r <= 2 making a40 = a41 = a42 = 0 (needs a20 != 0)."""
    F = W.field
    a2 = W.a2
    # char 3: a4 + 2 a2 r; solve a2 r = a4 mod t^3 since -1/2 = 1
    target = [W.coeff(4, k) / (-2) for k in range(3)]
    r = []
    for k in range(3):
        acc = target[k]
        for i in range(1, k + 1):
            acc = acc - a2.coeff(i) * r[k - i]
        r.append(acc / a2.coeff(0))
    return _shift(W, Poly(F, r))


def _truncate(p: Poly, n):
    return Poly(p.field, p.c[:n], p.var)


def _series_inverse(p: Poly, n):
    F = p.field
    inv0 = 1 / p.coeff(0)
    out = [inv0]
    for k in range(1, n):
        acc = F.zero
        for i in range(1, k + 1):
            acc = acc + p.coeff(i) * out[k - i]
        out.append(-acc * inv0)
    return Poly(F, out, p.var)


def _kill_a6_low(W):
    """Shifts x -> x + r (deg r <= 2) with a60 = a61 = a62 = 0, by Hensel lifting."""
    F = W.field
    cubic = Poly(F, [W.coeff(6, 0), W.coeff(4, 0), W.coeff(2, 0), 1])
    out = []
    for r0 in poly_roots(cubic):
        r = Poly(F, [r0])
        der0 = W.coeff(4, 0) + 2 * W.coeff(2, 0) * r0
        if der0 == 0:
            continue
        for _ in range(2):
            val = _truncate(W.a6 + W.a4 * r + W.a2 * r * r + r * r * r, 3)
            der = _truncate(W.a4 + W.a2 * r * 2 + r * r * 3, 3)
            r = _truncate(r - _truncate(val * _series_inverse(der, 3), 3), 3)
        out.append(_shift(W, r))
    return out


def _normalize_char3(W):
    ch = chart_of(W)
    if ch is not None:
        return W, ch, False
    for swapped in (False, True):
        base = swap_ends(W) if swapped else W
        if base.coeff(2, 0) == 0:
            continue
        shifted = _kill_a4_low(base)
        for chart, second in ((CHART3_20_22, (2, 2)), (CHART3_20_44, (4, 4))):
            out = _rescale_to(shifted, (2, 0), second)
            if out is not None and chart.contains(out):
                return out, chart, swapped
    for swapped in (False, True):
        base = swap_ends(W) if swapped else W
        for shifted in _kill_a6_low(base):
            out = _rescale_to(shifted, (4, 0), (4, 4))
            if out is not None and CHART3_40_44.contains(out):
                return out, CHART3_40_44, swapped
    raise NormalizationError("no normal-form chart is reachable over the base field")
