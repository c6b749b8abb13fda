"""Automorphisms of 2-power order of 2-marked rational elliptic surfaces.

The search is complete for normalized families: every automorphism g with
ord(g) a power of 2 acts on the base by t -> lam t with lam^4 = 1 or by an
inversion t -> (lam t)^-1 with u^2 = +-lam, and r is pinned down by the
coefficient relations.  Candidates are generated from those relations and
each one is verified by exact substitution.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .scalars import Poly, poly_gcd, poly_roots
from .scalars.fields import QQ, Cyclotomic, PrimeField, PrimeFieldExt
from .scalars.laurent import Laurent
from .weierstrass import (
    INV,
    ROT,
    Substitution,
    WeierstrassFamily,
    NonMinimalError,
    apply_substitution,
    discriminant,
    is_normalized,
    star_check,
)


class ImageOrderError(AssertionError):
    """The image in Aut(P^1) has order outside {1, 2, 4}."""


class D8ExclusionError(AssertionError):
    """A degenerate dihedral family passed the irreducible-fiber condition."""


def is_automorphism(W, sub, require_normalized=True):
    """Whether sub maps W to itself (all three coefficient relations)."""
    if require_normalized and not is_normalized(W):
        raise ValueError("family is not normalized")
    try:
        return apply_substitution(W, sub) == W
    except ValueError:
        return False


def _is_power_of_two(n):
    return n is not None and n > 0 and n & (n - 1) == 0


# ---------------------------------------------------------- h-part groups


@dataclass(frozen=True)
class BaseMap:
    """t -> lam t (rotation) or t -> (lam t)^-1 (inversion)."""

    kind: str
    lam: object

    def then(self, other):
        a, b = self.lam, other.lam
        if self.kind == ROT and other.kind == ROT:
            return BaseMap(ROT, a * b)
        if self.kind == ROT:
            return BaseMap(INV, a * b)
        if other.kind == ROT:
            return BaseMap(INV, a / b)
        return BaseMap(ROT, a / b)

    def is_identity(self):
        return self.kind == ROT and self.lam == 1

    def order(self, bound=16):
        g = self
        for k in range(1, bound + 1):
            if g.is_identity():
                return k
            g = g.then(self)
        return None

    def describe(self):
        if self.kind == ROT:
            return f"t -> ({self.lam})*t"
        return f"t -> (({self.lam})*t)^-1"


def generated_group(maps, bound=16):
    """Closure of a set of base maps; stops once more than `bound` appear."""
    maps = [m for m in maps]
    if not maps:
        return []
    ident = BaseMap(ROT, maps[0].lam / maps[0].lam)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for m in maps:
                h = g.then(m)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
                    if len(group) > bound:
                        return sorted(group, key=_map_key)
        frontier = nxt
    return sorted(group, key=_map_key)


def _map_key(m):
    return (not m.is_identity(), m.kind != ROT, repr(m.lam))


def image_tag(group):
    n = len(group)
    if n == 1:
        return "trivial"
    if n == 2:
        other = next(g for g in group if not g.is_identity())
        return "C2-rotation" if other.kind == ROT else "C2-inversion"
    if n == 4:
        return "C4" if any(g.order() == 4 for g in group) else "Klein"
    return f"order-{n}"


@dataclass
class AutReport:
    elements: list = dc_field(default_factory=list)
    image: list = dc_field(default_factory=list)

    @property
    def image_order(self):
        return len(self.image)

    @property
    def image_tag(self):
        return image_tag(self.image)

    def to_json(self):
        return {
            "elements": [s.to_json() for s in self.elements],
            "image": {
                "tag": self.image_tag,
                "order": self.image_order,
                "maps": [m.describe() for m in self.image],
            },
        }


# ---------------------------------------------------------- candidates


def _roots_of_binomials(F, constraints):
    """Common roots lam of lam^e = c over F; None if there are no constraints."""
    if not constraints:
        return None
    g = None
    for e, c in constraints:
        p = Poly(F, [-c] + [0] * (e - 1) + [1], "lam")
        g = p if g is None else poly_gcd(g, p)
        if g.degree == 0:
            return []
    return [x for x in poly_roots(g) if x != 0]


def _inversion_lams_no_shift(W, eps):
    """lam with a_im = eps^(i/2) lam^(m - i/2) a_{i,i-m} for r = 0."""
    F = W.field
    constraints = []
    for i in (4, 6):
        sign = eps ** (i // 2)
        for m in range(i // 2, i + 1):
            a, b = W.coeff(i, m), W.coeff(i, i - m)
            e = m - i // 2
            if a == 0 and b == 0:
                continue
            if a == 0 or b == 0:
                return []
            if e == 0:
                if a != sign * b:
                    return []
                continue
            constraints.append((e, a / (sign * b)))
    lams = _roots_of_binomials(F, constraints)
    if lams is None:
        raise ValueError("inversion parameter is unconstrained; the irreducible-fiber condition fails")
    return lams


def _solve_shift_cubic(F, A, R):
    """All r with deg r <= 2 and A r + r^3 = R modulo t^3 (characteristic 3).

    In characteristic 3, r^3 has no t^1 or t^2 terms, so r0 solves a cubic
    and r1, r2 follow linearly.  Needs A(0) != 0.
    """
    a0 = A.coeff(0)
    if a0 == 0:
        return []
    out = []
    cubic = Poly(F, [-R.coeff(0), a0, 0, 1])
    for r0 in poly_roots(cubic):
        r1 = (R.coeff(1) - A.coeff(1) * r0) / a0
        r2 = (R.coeff(2) - A.coeff(1) * r1 - A.coeff(2) * r0) / a0
        out.append([r0, r1, r2])
    return out


def _rotation_candidates(W, lam, mu):
    """Rotations t -> lam t with u^2 = mu; r is forced by the relations."""
    F = W.field
    if W.char != 3:
        return [Substitution.rotation(F, lam, mu)]
    a2s, a4s, a6s = (W.a(i).scale_var(lam) for i in (2, 4, 6))
    if not a2s.is_zero():
        num = W.a4 * (1 / (mu * mu)) - a4s
        den = a2s * 2
        q, rem = divmod(num, den)
        if not rem.is_zero() or q.degree > 2:
            return []
        return [Substitution.rotation(F, lam, mu, q)]
    R = W.a6 * (1 / mu ** 3) - a6s
    return [
        Substitution.rotation(F, lam, mu, Poly(F, r))
        for r in _solve_shift_cubic(F, a4s, R)
    ]


def _reverse(p: Poly, weight):
    """s^weight p(1/s) as a polynomial in s (same variable name)."""
    cs = list(p.c) + [p.field.zero] * (weight + 1 - len(p.c))
    return Poly(p.field, cs[::-1], p.var)


def _inversion_candidates_char3(W, lam, mu):
    """Inversions t -> (lam t)^-1 with u^2 = mu in characteristic 3.

    Writing s = 1/t, the shift r is a polynomial in s of degree <= 2.
    """
    F = W.field
    inv_lam = 1 / lam
    a2s, a4s, a6s = (W.a(i).scale_var(inv_lam) for i in (2, 4, 6))
    if not a2s.is_zero():
        num = _reverse(W.a4, 4) * (1 / (mu * mu)) - a4s
        q, rem = divmod(num, a2s * 2)
        if not rem.is_zero() or q.degree > 2:
            return []
        rs = [list(q.c)]
    else:
        R = _reverse(W.a6, 6) * (1 / mu ** 3) - a6s
        rs = _solve_shift_cubic(F, a4s, R)
    out = []
    for r in rs:
        terms = {-k: c for k, c in enumerate(r)}
        out.append(Substitution.inversion(F, lam, mu, terms))
    return out


def _inversion_lams_char3(W, eps):
    F = W.field
    constraints = []
    pairs = [(2, 2, 0, 1)]  # a22 = eps lam a20
    same = [(2, 1)]  # a21 = eps a21
    if W.a2.is_zero():
        pairs += [(4, 4, 0, 2), (4, 3, 1, 1)]
    for i, m, j, e in pairs:
        sign = eps if i == 2 else 1
        a, b = W.coeff(i, m), W.coeff(i, j)
        if a == 0 and b == 0:
            continue
        if a == 0 or b == 0:
            return []
        constraints.append((e, a / (sign * b)))
    for i, m in same:
        if eps == -1 and W.coeff(i, m) != 0:
            return []
    lams = _roots_of_binomials(F, constraints)
    if lams is None:
        return [x for x in F.elements() if x != 0]
    return lams


def candidates(W):
    """Finite list of candidate substitutions of 2-power order."""
    F = W.field
    out = []
    rot_lams = [F.one] + [z for z in F.roots_of_unity(4) if z != 1]
    for lam in rot_lams:
        for mu in (F.one, -F.one):
            out.extend(_rotation_candidates(W, lam, mu))
    for eps in (1, -1):
        if W.char == 3:
            for lam in _inversion_lams_char3(W, eps):
                out.extend(_inversion_candidates_char3(W, lam, lam * eps))
        else:
            for lam in _inversion_lams_no_shift(W, eps):
                out.append(Substitution.inversion(F, lam, lam * eps))
    return out


def enum_aut2(W, check_star=True):
    """All automorphisms of 2-power order (up to y -> -y) and their image."""
    if not is_normalized(W):
        raise ValueError("family is not normalized")
    if check_star and not star_check(W).verdict:
        raise ValueError("family violates the irreducible-fiber condition")
    elements = []
    for sub in candidates(W):
        if not is_automorphism(W, sub, require_normalized=False):
            continue
        if not _is_power_of_two(sub.order()):
            continue
        if sub not in elements:
            elements.append(sub)
    image = generated_group([BaseMap(s.kind, s.lam) for s in elements])
    report = AutReport(elements, image)
    if report.image_order not in (1, 2, 4):
        raise ImageOrderError(f"image group has order {report.image_order}")
    return report


# ---------------------------------------------------------- table rows


@dataclass(frozen=True)
class TableRow:
    """One row of a classification table, instantiated by free parameters."""

    key: str
    table: str  # "char!=3", "char3:a20=1", "char3:a40=1"
    h: str
    u2: str
    r: str
    params: tuple
    build: object  # (F, p) -> (a2, a4, a6, Substitution)
    needs_zeta4: bool = False

    @property
    def char3(self):
        return self.table.startswith("char3")


def _z(F):
    return F.sqrt_minus_one()


def _rows():
    rows = []

    def add(key, table, h, u2, r, params, build, needs_zeta4=False):
        rows.append(TableRow(key, table, h, u2, r, tuple(params), build, needs_zeta4))

    # characteristic != 3, a2 = 0, r = 0
    t0 = "char!=3"
    add("rot(-1),u2=1", t0, "t -> -t", "1", "0", ["a40", "a42", "a44", "a60", "a62", "a64", "a66"],
        lambda F, p: ([], [p["a40"], 0, p["a42"], 0, p["a44"]],
                      [p["a60"], 0, p["a62"], 0, p["a64"], 0, p["a66"]],
                      Substitution.rotation(F, -1, 1)))
    add("rot(-1),u2=-1", t0, "t -> -t", "-1", "0", ["a40", "a42", "a44", "a61", "a63", "a65"],
        lambda F, p: ([], [p["a40"], 0, p["a42"], 0, p["a44"]],
                      [0, p["a61"], 0, p["a63"], 0, p["a65"]],
                      Substitution.rotation(F, -1, -1)))
    add("rot(zeta4),u2=1", t0, "t -> zeta4 t", "1", "0", ["a40", "a44", "a60", "a64"],
        lambda F, p: ([], [p["a40"], 0, 0, 0, p["a44"]], [p["a60"], 0, 0, 0, p["a64"]],
                      Substitution.rotation(F, _z(F), 1)), True)
    add("rot(zeta4),u2=-1", t0, "t -> zeta4 t", "-1", "0", ["a40", "a44", "a62", "a66"],
        lambda F, p: ([], [p["a40"], 0, 0, 0, p["a44"]], [0, 0, p["a62"], 0, 0, 0, p["a66"]],
                      Substitution.rotation(F, _z(F), -1)), True)

    def inv0(sign):
        def build(F, p):
            lam = p["lam"]
            a4 = [p["a40"], p["a41"], p["a42"], lam * p["a41"], lam ** 2 * p["a40"]]
            a63 = p["a63"] if sign == 1 else 0
            a6 = [p["a60"], p["a61"], p["a62"], a63,
                  sign * lam * p["a62"], sign * lam ** 2 * p["a61"], sign * lam ** 3 * p["a60"]]
            return [], a4, a6, Substitution.inversion(F, lam, sign * lam)
        return build

    add("inv(lam),u2=lam", t0, "t -> (lam t)^-1", "lam", "0",
        ["lam", "a40", "a41", "a42", "a60", "a61", "a62", "a63"], inv0(1))
    add("inv(lam),u2=-lam", t0, "t -> (lam t)^-1", "-lam", "0",
        ["lam", "a40", "a41", "a42", "a60", "a61", "a62"], inv0(-1))

    # characteristic 3, a20 = 1, a40 = a41 = a42 = 0
    t2 = "char3:a20=1"
    add("rot(-1),u2=1", t2, "t -> -t", "1", "0", ["a22", "a44", "a60", "a62", "a64", "a66"],
        lambda F, p: ([1, 0, p["a22"]], [0, 0, 0, 0, p["a44"]],
                      [p["a60"], 0, p["a62"], 0, p["a64"], 0, p["a66"]],
                      Substitution.rotation(F, -1, 1)))
    add("rot(zeta4),u2=1", t2, "t -> zeta4 t", "1", "0", ["a44", "a60", "a64"],
        lambda F, p: ([1], [0, 0, 0, 0, p["a44"]], [p["a60"], 0, 0, 0, p["a64"]],
                      Substitution.rotation(F, _z(F), 1)), True)

    def t2_inv_plus(F, p):
        lam, r0, a21 = p["lam"], p["r0"], p["a21"]
        a60, a61, a62, a63 = p["a60"], p["a61"], p["a62"], p["a63"]
        a2 = [1, a21, lam]
        a4 = [0, 0, 0, -lam * a21 * r0, -lam ** 2 * r0]
        a6 = [a60, a61, a62, a63, lam * (a62 - lam * r0 ** 2), lam ** 2 * (a61 + a21 * r0 ** 2),
              lam ** 3 * (a60 + r0 ** 2 + r0 ** 3)]
        return a2, a4, a6, Substitution.inversion(F, lam, lam, {0: r0, -2: -r0 / lam})

    def t2_inv_minus(F, p):
        lam, r0, r1 = p["lam"], p["r0"], p["r1"]
        a60, a61, a62 = p["a60"], p["a61"], p["a62"]
        a2 = [1, 0, -lam]
        a4 = [0, 0, 0, -lam ** 2 * r1, -lam ** 2 * r0]
        a6 = [a60, a61, a62, lam ** 3 * r1 ** 3 - lam ** 2 * r0 * r1,
              -lam * (a62 + lam * r0 ** 2 + lam ** 2 * r1 ** 2),
              -lam ** 2 * (a61 - lam * r0 * r1),
              -lam ** 3 * (a60 + r0 ** 2 + r0 ** 3)]
        return a2, a4, a6, Substitution.inversion(F, lam, -lam, {0: r0, -1: r1, -2: r0 / lam})

    add("inv(lam),u2=lam", t2, "t -> (lam t)^-1", "lam", "r0 - (r0/lam) t^-2",
        ["lam", "r0", "a21", "a60", "a61", "a62", "a63"], t2_inv_plus)
    add("inv(lam),u2=-lam", t2, "t -> (lam t)^-1", "-lam", "r0 + r1 t^-1 + (r0/lam) t^-2",
        ["lam", "r0", "r1", "a60", "a61", "a62"], t2_inv_minus)

    # characteristic 3, a40 = 1, a60 = a61 = a62 = 0
    t3 = "char3:a40=1"
    add("rot(-1),u2=1", t3, "t -> -t", "1", "0", ["a20", "a22", "a42", "a44", "a64", "a66"],
        lambda F, p: ([p["a20"], 0, p["a22"]], [1, 0, p["a42"], 0, p["a44"]],
                      [0, 0, 0, 0, p["a64"], 0, p["a66"]], Substitution.rotation(F, -1, 1)))

    def t3_rot_minus(variant):
        def build(F, p):
            a21, a42, a44 = p["a21"], p["a42"], p["a44"]
            r = Poly(F, [0]) if variant == "0" else Poly(F, [_z(F), 0, -_z(F) * a42])
            t = Poly(F, [0, 1])
            a2 = Poly(F, [0, a21])
            a4 = Poly(F, [1, 0, a42, 0, a44]) - r * a21 * t
            a6 = Poly(F, [0, 0, 0, p["a63"], 0, p["a65"]]) + r * (a44 - a42 ** 2) * t ** 4
            return a2, a4, a6, Substitution.rotation(F, -1, -1, r)
        return build

    add("rot(-1),u2=-1,r=0", t3, "t -> -t", "-1", "0", ["a21", "a42", "a44", "a63", "a65"],
        t3_rot_minus("0"))
    add("rot(-1),u2=-1,r=zeta4(1-a42t^2)", t3, "t -> -t", "-1", "zeta4 (1 - a42 t^2)",
        ["a21", "a42", "a44", "a63", "a65"], t3_rot_minus("z"), True)
    add("rot(zeta4),u2=1", t3, "t -> zeta4 t", "1", "0", ["a20", "a44", "a64"],
        lambda F, p: ([p["a20"]], [1, 0, 0, 0, p["a44"]], [0, 0, 0, 0, p["a64"]],
                      Substitution.rotation(F, _z(F), 1)), True)

    def t3_zeta_minus(sign):
        def build(F, p):
            a22, a44 = p["a22"], p["a44"]
            r = F(sign) * _z(F)
            a2 = [0, 0, a22]
            a4 = [1, 0, -r * a22, 0, a44]
            a6 = [0, 0, 0, 0, a44 * r, 0, p["a66"]]
            return a2, a4, a6, Substitution.rotation(F, _z(F), -1, Poly(F, [r]))
        return build

    add("rot(zeta4),u2=-1,r=0", t3, "t -> zeta4 t", "-1", "0", ["a22", "a44", "a66"],
        t3_zeta_minus(0), True)
    add("rot(zeta4),u2=-1,r=+zeta4", t3, "t -> zeta4 t", "-1", "+zeta4", ["a22", "a44", "a66"],
        t3_zeta_minus(1), True)
    add("rot(zeta4),u2=-1,r=-zeta4", t3, "t -> zeta4 t", "-1", "-zeta4", ["a22", "a44", "a66"],
        t3_zeta_minus(-1), True)

    def t3_inv_plus(F, p):
        lam, r0 = p["lam"], p["r0"]
        a20, a21, a41, a42, a63 = p["a20"], p["a21"], p["a41"], p["a42"], p["a63"]
        a2 = [a20, a21, lam * a20]
        a4 = [1, a41, a42, lam * (a41 - r0 * a21), lam ** 2 * (1 - r0 * a20)]
        a6 = [0, 0, 0, a63, lam * r0 * (a42 - lam - lam * r0 * a20),
              lam ** 2 * r0 * (a41 + r0 * a21), lam ** 3 * r0 * (1 + a20 * r0 + r0 ** 2)]
        return a2, a4, a6, Substitution.inversion(F, lam, lam, {0: r0, -2: -r0 / lam})

    def t3_inv_minus(F, p):
        lam, r0, r1 = p["lam"], p["r0"], p["r1"]
        a20, a41, a42 = p["a20"], p["a41"], p["a42"]
        a2 = [a20, 0, -lam * a20]
        a4 = [1, a41, a42, lam * (a41 - lam * r1 * a20), lam ** 2 * (1 - r0 * a20)]
        a6 = [0, 0, 0,
              lam ** 3 * r1 ** 3 + lam * a42 * r1 - lam * a41 * r0 - lam ** 2 * a20 * r0 * r1,
              -lam * (lam * r0 + lam * a41 * r1 + a42 * r0 + lam * a20 * r0 ** 2 + lam ** 2 * a20 * r1 ** 2),
              -lam ** 2 * (lam * r1 + a41 * r0 - lam * a20 * r0 * r1),
              -lam ** 3 * (r0 + a20 * r0 ** 2 + r0 ** 3)]
        return a2, a4, a6, Substitution.inversion(F, lam, -lam, {0: r0, -1: r1, -2: r0 / lam})

    add("inv(lam),u2=lam", t3, "t -> (lam t)^-1", "lam", "r0 - (r0/lam) t^-2",
        ["lam", "r0", "a20", "a21", "a41", "a42", "a63"], t3_inv_plus)
    add("inv(lam),u2=-lam", t3, "t -> (lam t)^-1", "-lam", "r0 + r1 t^-1 + (r0/lam) t^-2",
        ["lam", "r0", "r1", "a20", "a41", "a42"], t3_inv_minus)
    return rows


TABLE_ROWS = _rows()


def rows_for(table=None, char=None):
    out = TABLE_ROWS
    if table is not None:
        out = [r for r in out if r.table == table]
    if char is not None:
        out = [r for r in out if r.char3 == (char == 3)]
    return out


def find_row(table, key):
    for r in TABLE_ROWS:
        if r.table == table and r.key == key:
            return r
    raise KeyError(f"no row {key!r} in table {table!r}")


def row_instance(row, F, params):
    """The row's family and substitution for given parameter values."""
    if row.char3 != (F.characteristic == 3):
        raise ValueError("row and field characteristic do not match")
    missing = [k for k in row.params if k not in params]
    if missing:
        raise ValueError(f"missing row parameters {missing}")
    p = {k: F(v) for k, v in params.items()}
    if "lam" in p and p["lam"] == 0:
        raise ValueError("lam must be nonzero")
    a2, a4, a6, sub = row.build(F, p)
    W = WeierstrassFamily(F, a2, a4, a6, check=False)
    return W, sub


@dataclass
class RowCheck:
    automorphism: bool
    order: object
    star: object  # True/False, or None if the discriminant vanishes

    @property
    def ok(self):
        return self.automorphism and _is_power_of_two(self.order)


def verify_table_row(row, F, params):
    """Check the row's substitution is an automorphism of 2-power order."""
    W, sub = row_instance(row, F, params)
    auto = is_automorphism(W, sub, require_normalized=False)
    order = sub.order()
    try:
        star = star_check(W).verdict
    except ValueError:
        star = None
    return RowCheck(auto, order, star)


def row_field(row, char, rng=None):
    """A field suitable for the row: F_9 in char 3, Q(zeta4) when zeta4 is needed."""
    if char == 3:
        return PrimeFieldExt(3, 2)
    if char == 0:
        return Cyclotomic(4) if row.needs_zeta4 else QQ
    F = PrimeField(char)
    if row.needs_zeta4 and (char - 1) % 4:
        raise ValueError(f"F_{char} has no primitive 4th root of unity")
    return F


def random_row_params(row, F, rng):
    out = {}
    for k in row.params:
        out[k] = F.random_nonzero(rng) if k == "lam" else F.random(rng)
    return out


# ---------------------------------------------------------- D8 exclusion


@dataclass
class D8Report:
    instances: list = dc_field(default_factory=list)

    @property
    def all_fail(self):
        return all(not inst["star"] for inst in self.instances)

    def to_json(self):
        return {"all_fail_star": self.all_fail, "instances": self.instances}


def d8_family_generic(F, a40, lam):
    """y^2 = x^3 + (a40 + lam^2 a40 t^4) x."""
    return WeierstrassFamily(F, [], [a40, 0, 0, 0, lam * lam * a40], [], check=False)


def d8_family_char3(F, lam, r0):
    """y^2 = x^3 + (1 + lam^2 t^4) x - lam^2 r0 t^4 with r0^3 + r0 = 0."""
    if r0 ** 3 + r0 != 0:
        raise ValueError("r0 must satisfy r0^3 + r0 = 0")
    return WeierstrassFamily(F, [], [1, 0, 0, 0, lam * lam], [0, 0, 0, 0, -lam * lam * r0], check=False)


def _star_or_false(W):
    try:
        return star_check(W).verdict
    except ValueError:
        return False


def d8_exclusion(trials=20, rng=None):
    """Both degenerate dihedral families fail the irreducible-fiber condition on random instances."""
    rng = rng or random.Random(0)
    report = D8Report()
    for _ in range(trials):
        a40 = QQ(Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)))
        lam = QQ(Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)))
        W = d8_family_generic(QQ, a40, lam)
        report.instances.append(
            {"char": 0, "a40": str(a40), "lam": str(lam), "star": _star_or_false(W)}
        )
    F9 = PrimeFieldExt(3, 2)
    roots = poly_roots(Poly(F9, [0, 1, 0, 1]))
    for _ in range(trials):
        lam = F9.random_nonzero(rng)
        r0 = rng.choice(roots)
        W = d8_family_char3(F9, lam, r0)
        report.instances.append(
            {"char": 3, "lam": repr(lam), "r0": repr(r0), "star": _star_or_false(W)}
        )
    if not report.all_fail:
        raise D8ExclusionError("a degenerate dihedral family satisfies the irreducible-fiber condition")
    return report


# ---------------------------------------------------------- random survey


def random_normalized_family(F, rng):
    """A random family satisfying the normalization hypotheses.

    Outside characteristic 3 this means a2 = 0.  In characteristic 3 one
    of the two shapes a20 = 1, a40 = a41 = a42 = 0 or a40 = 1,
    a60 = a61 = a62 = 0 is picked with equal probability.
    """
    a4 = [F.random(rng) for _ in range(5)]
    a6 = [F.random(rng) for _ in range(7)]
    if F.characteristic != 3:
        return WeierstrassFamily(F, [], a4, a6, check=False)
    a2 = [F.random(rng) for _ in range(3)]
    if rng.random() < 0.5:
        a2[0] = F.one
        a4[:3] = [F.zero] * 3
    else:
        a4[0] = F.one
        a6[:3] = [F.zero] * 3
    return WeierstrassFamily(F, a2, a4, a6, check=False)


def _passes_star(W):
    try:
        return not discriminant(W).is_zero() and star_check(W).verdict
    except NonMinimalError:
        return False


def _symmetric_instance(F, rng):
    """A normalized family built from a random table row, or None."""
    has_zeta4 = isinstance(F, Cyclotomic) or (F.is_finite and (F.order - 1) % 4 == 0)
    rows = [r for r in rows_for(char=F.characteristic) if has_zeta4 or not r.needs_zeta4]
    row = rng.choice(rows)
    try:
        W, _ = row_instance(row, F, random_row_params(row, F, rng))
    except (ValueError, ZeroDivisionError):
        return None
    return W if is_normalized(W) else None


def random_star_family(F, rng, symmetric_share=0.5, max_tries=10000):
    """A random normalized family satisfying the irreducible-fiber condition.

    With probability symmetric_share the family comes from a random row of
    the classification tables, so that nontrivial images are exercised;
    otherwise all free coefficients are uniform random.
    """
    for _ in range(max_tries):
        if rng.random() < symmetric_share:
            W = _symmetric_instance(F, rng)
            if W is None:
                continue
        else:
            W = random_normalized_family(F, rng)
        if _passes_star(W):
            return W
    raise RuntimeError(f"no family with irreducible fibers found in {max_tries} tries over {F}")


@dataclass
class SurveyReport:
    field: str
    families: int = 0
    violations: int = 0
    tags: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "field": self.field,
            "families": self.families,
            "violations": self.violations,
            "tags": dict(sorted(self.tags.items())),
        }


def order_bound_survey(F, n, rng=None, symmetric_share=0.5):
    """Run enum_aut2 on n random families with irreducible fibers; count image orders outside {1, 2, 4}."""
    rng = rng or random.Random(0)
    report = SurveyReport(str(F))
    for _ in range(n):
        W = random_star_family(F, rng, symmetric_share)
        try:
            tag = enum_aut2(W, check_star=False).image_tag
        except ImageOrderError:
            report.violations += 1
            tag = "violation"
        report.families += 1
        report.tags[tag] = report.tags.get(tag, 0) + 1
    return report
