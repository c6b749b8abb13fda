"""Dimensions of loci of normal-form families with prescribed symmetry.

A symmetry class is a set of generators (rotation t -> lam t with a fixed
root of unity, or inversion t -> (lam t)^-1 with u^2 = +-lam) together with
the admissible shape of the shift r.  Its locus inside a chart is

    V = {(a, theta) : a in chart, every generator g(theta) fixes W_a},

with theta collecting the inversion parameters lam and the free
coefficients of r.  At a generic point of V,

    chart_dim = 15 - rank J + rank J_theta,

where J is the Jacobian of all equations in (a, theta) and J_theta its
theta-columns (the second term is the dimension drop of the fiber over a).
The slice fixes every inversion parameter lam = 1, which the residual
reparametrization t -> mu t always allows.  Jacobians are exact: the
equations are evaluated over a ring of first-order jets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .scalars import Poly
from .scalars.fields import Cyclotomic, PrimeFieldExt
from .scalars.jets import JetRing
from .scalars.laurent import Laurent
from .weierstrass import (
    CHART3_20_22,
    CHART3_20_44,
    CHART_40_44,
    CHART_40_60,
    CHART_40_66,
    CHART_60_66,
    INV,
    ROT,
    Substitution,
    WeierstrassFamily,
)
from .aut2 import BaseMap, generated_group

SLOTS = tuple((i, j) for i in (2, 4, 6) for j in range(i + 1))
N_COEFFS = len(SLOTS)  # 15


class EmptyLocusError(ValueError):
    pass


# ------------------------------------------------------------ linear algebra


def _rref(rows, ncols):
    """Row-reduce in place; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def matrix_rank(rows, ncols):
    return len(_rref([list(r) for r in rows], ncols))


def solve_affine(A, b, F, rng):
    """A random solution of A u = b over F, or None if inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    pivots = _rref(aug, n + 1)
    if n in pivots:
        return None
    free = [c for c in range(n) if c not in pivots]
    u = [F.zero] * n
    for c in free:
        u[c] = F.random(rng)
    for i, c in enumerate(pivots):
        row = aug[i]
        u[c] = row[n] - sum((row[k] * u[k] for k in free), F.zero)
    return u


# ------------------------------------------------------------ classes


@dataclass(frozen=True)
class Generator:
    """A generator shape: kind, rotation root or inversion sign, r-shape."""

    kind: str
    rot: str = ""  # "-1" or "zeta4" for rotations
    sign: int = 1  # u^2 = sign (rotation) or sign * lam (inversion)
    shift: bool = False  # inversion r = r0 + r1/t + sign*(r0/lam)/t^2 allowed

    def n_params(self):
        if self.kind == ROT:
            return 0
        return 1 + (0 if not self.shift else (1 if self.sign == 1 else 2))

    def describe(self):
        if self.kind == ROT:
            return f"t -> {self.rot}*t, u2={self.sign}"
        return f"t -> (lam*t)^-1, u2={'+' if self.sign == 1 else '-'}lam"

    def substitution(self, F, theta):
        """Substitution for parameter values theta (lam first, then r0, r1)."""
        if self.kind == ROT:
            lam = F(-1) if self.rot == "-1" else F.sqrt_minus_one()
            return Substitution(ROT, lam, F(self.sign), Laurent(F))
        lam = theta[0]
        mu = lam * self.sign
        if not self.shift:
            return Substitution(INV, lam, mu, Laurent(F))
        r0 = theta[1]
        r1 = theta[2] if self.sign == -1 else F.zero
        # g^2 trivial forces r(t) = -sign * lam^-1 t^-2 r((lam t)^-1) shape
        return Substitution(INV, lam, mu, Laurent(F, {0: r0, -1: r1, -2: -self.sign * r0 / lam}))


@dataclass(frozen=True)
class SymmetryClass:
    name: str
    char: int  # 0 (any char != 3) or 3
    generators: tuple

    def n_theta(self):
        return sum(g.n_params() for g in self.generators)

    def has_inversion(self):
        return any(g.kind == INV for g in self.generators)

    def image_order(self, F):
        maps = []
        for g in self.generators:
            lam = F.one if g.kind == INV else g.substitution(F, ()).lam
            maps.append(BaseMap(g.kind, lam))
        return len(generated_group(maps))

    def to_json(self):
        return {"name": self.name, "char": self.char, "generators": [g.describe() for g in self.generators]}


def _classes(char):
    shift = char == 3
    rot = [
        ("-t,u2=1", Generator(ROT, "-1", 1)),
        ("-t,u2=-1", Generator(ROT, "-1", -1)),
        ("zeta4*t,u2=1", Generator(ROT, "zeta4", 1)),
        ("zeta4*t,u2=-1", Generator(ROT, "zeta4", -1)),
    ]
    inv = [
        ("inv,u2=+lam", Generator(INV, sign=1, shift=shift)),
        ("inv,u2=-lam", Generator(INV, sign=-1, shift=shift)),
    ]
    out = [SymmetryClass(n, char, (g,)) for n, g in rot + inv]
    for rn, rg in rot[:2]:
        for iname, ig in inv:
            out.append(SymmetryClass(f"Klein[{rn};{iname}]", char, (rg, ig)))
    return out


CLASSES_CHAR0 = _classes(0)
CLASSES_CHAR3 = _classes(3)

DESIGNATED_CHART = {0: CHART_40_60, 3: CHART3_20_44}
OTHER_CHARTS = {0: (CHART_40_66, CHART_60_66, CHART_40_44), 3: (CHART3_20_22,)}


def classes_for(char):
    return CLASSES_CHAR3 if char == 3 else CLASSES_CHAR0


def default_field(char):
    """Q(zeta4) in characteristic 0, F_{3^6} in characteristic 3."""
    return PrimeFieldExt(3, 6) if char == 3 else Cyclotomic(4)


# ------------------------------------------------------------ equations


def _family(F, a):
    coeffs = dict(zip(SLOTS, a))
    polys = [Poly(F, [coeffs[(i, j)] for j in range(i + 1)]) for i in (2, 4, 6)]
    return WeierstrassFamily(F, *polys, check=False)


def _split_theta(cls, theta):
    out, k = [], 0
    for g in cls.generators:
        n = g.n_params()
        out.append(theta[k:k + n])
        k += n
    return out


def equations(cls, chart, F, a, theta):
    """All equations as (weight, value) pairs, weight 1, 2, 3 for a2, a4, a6."""
    W = _family(F, a)
    eqs = []
    for (i, j) in chart.zeros:
        eqs.append((i // 2, W.coeff(i, j)))
    for (i, j) in chart.ones:
        eqs.append((i // 2, W.coeff(i, j) - 1))
    for g, th in zip(cls.generators, _split_theta(cls, theta)):
        sub = g.substitution(F, th)
        for k, diff in enumerate(_relation_defects(W, sub), start=1):
            for e in sorted(diff.terms):
                eqs.append((k, diff.terms[e]))
    return eqs


def _relation_defects(W, sub):
    """(pushforward - W) for a2, a4, a6 as Laurent polynomials in t.

    This is apply_substitution without degree checks: every term, including
    those outside the degree bounds, must vanish for an automorphism.
    """
    A = [sub.apply_h(Laurent.from_poly(W.a(i))) for i in (2, 4, 6)]
    r = sub.r
    ns = [A[0] + r * 3, A[1] + A[0] * r * 2 + r * r * 3, A[2] + A[1] * r + A[0] * r * r + r * r * r]
    shift = 0 if sub.kind == ROT else 1
    out = []
    for k, n in enumerate(ns, start=1):
        scaled = (n * sub.mu ** k).shift(2 * k * shift)
        out.append(scaled - Laurent.from_poly(W.a(2 * k)))
    return out


# ------------------------------------------------------------ points


def _stage_system(cls, chart, F, stage, a, theta, unknowns):
    """Affine system of the stage's equations in the given unknown slots."""
    n = len(unknowns)
    J = JetRing(F, n)
    a_j = [J(x) for x in a]
    th_j = [J(x) for x in theta]
    for idx, (kind, pos) in enumerate(unknowns):
        target = a_j if kind == "a" else th_j
        target[pos] = J.variable(target[pos].v, idx)
    rows, rhs = [], []
    for w, e in equations(cls, chart, J, a_j, th_j):
        if w != stage:
            continue
        rows.append(list(e.d))
        rhs.append(-e.v)
    return rows, rhs


def _lam_candidates(F, rng, fixed_lam, attempts):
    """Random inversion parameters first, then an exhaustive or special list."""
    if fixed_lam is not None:
        yield F(fixed_lam)
        return
    for _ in range(attempts):
        yield F.random_nonzero(rng)
    if F.is_finite:
        yield from (x for x in F.elements() if x != 0)
        return
    special = [F(1), F(-1), F(2), F(-2), F(1) / 2, F(-1) / 2]
    try:
        z = F.sqrt_minus_one()
        special += [z, -z]
    except ValueError:
        pass
    yield from special


def sample_point(cls, chart, F, rng, fixed_lam=None, attempts=8):
    """A random point (a, theta) of the locus, solved stage by stage.

    The coefficient relations of weight 1, 2, 3 (for a2, a4, a6) are affine
    in the unknown coefficients of that weight together with the shift
    parameters not yet fixed, once the lower weights are fixed.  Inversion
    parameters are sampled; when a chart pins them down, all candidates are
    tried.
    """
    lam_pos = _inv_positions(cls)
    lam_iter = _lam_candidates(F, rng, fixed_lam, attempts) if lam_pos else iter([None] * attempts)
    for lam in lam_iter:
        point = _staged_solve(cls, chart, F, rng, lam_pos, lam)
        if point is not None:
            return point
    raise EmptyLocusError(f"no point found on the locus of {cls.name} in {chart.name}")


def _staged_solve(cls, chart, F, rng, lam_pos, lam):
    theta = [F.zero] * cls.n_theta()
    for p in lam_pos:
        theta[p] = lam if lam is not None else F.random_nonzero(rng)
    a = [F.zero] * N_COEFFS
    pending_r = [i for i in range(len(theta)) if i not in lam_pos]
    for stage in (1, 2, 3):
        slots = [("a", s) for s, (i, _) in enumerate(SLOTS) if i == 2 * stage]
        unknowns = slots + [("t", p) for p in pending_r]
        base_a, base_t = list(a), list(theta)
        for kind, pos in unknowns:
            (base_a if kind == "a" else base_t)[pos] = F.zero
        rows, rhs = _stage_system(cls, chart, F, stage, base_a, base_t, unknowns)
        used = {c for c in range(len(unknowns)) if any(row[c] != 0 for row in rows)}
        sol = solve_affine(rows, rhs, F, rng) if rows else [F.random(rng) for _ in unknowns]
        if sol is None:
            return None
        for c, ((kind, pos), v) in enumerate(zip(unknowns, sol)):
            if kind == "a":
                a[pos] = v
            elif c in used:
                theta[pos] = v
        pending_r = [p for p in pending_r if unknowns.index(("t", p)) not in used]
        if any(e != 0 for w, e in equations(cls, chart, F, a, theta) if w == stage):
            raise ValueError(f"stage {stage} equations are not affine for {cls.name}")
    for p in pending_r:
        theta[p] = F.random(rng)
    if all(e == 0 for _, e in equations(cls, chart, F, a, theta)):
        return a, theta
    return None


def _dims_at(cls, chart, F, a, theta, theta_cols):
    n = N_COEFFS + len(theta_cols)
    J = JetRing(F, n)
    a_j = [J.variable(x, i) for i, x in enumerate(a)]
    th_j = [J(x) for x in theta]
    for k, p in enumerate(theta_cols):
        th_j[p] = J.variable(theta[p], N_COEFFS + k)
    rows = [list(e.d) for _, e in equations(cls, chart, J, a_j, th_j)]
    rank_full = matrix_rank(rows, n)
    rank_theta = matrix_rank([r[N_COEFFS:] for r in rows], len(theta_cols))
    return rank_full, rank_theta


def _generic_dim(cls, chart, F, rng, cols, fixed_lam, points):
    """15 - rank J + rank J_theta with both ranks at their generic (maximal) values."""
    best_full = best_theta = 0
    witness = None
    for _ in range(points):
        a, th = sample_point(cls, chart, F, rng, fixed_lam=fixed_lam)
        rf, rt = _dims_at(cls, chart, F, a, th, cols)
        best_full, best_theta = max(best_full, rf), max(best_theta, rt)
        witness = witness or (a, th)
    return N_COEFFS - best_full + best_theta, witness


@dataclass
class LocusReport:
    cls: SymmetryClass
    chart: str
    chart_dim: int
    slice_dim: int
    image_order: int
    witness: tuple = ()

    def to_json(self):
        return {
            "class": self.cls.name,
            "generators": [g.describe() for g in self.cls.generators],
            "chart": self.chart,
            "chart_dim": self.chart_dim,
            "slice_dim": self.slice_dim,
            "image_order": self.image_order,
        }


def _inv_positions(cls):
    out, k = [], 0
    for g in cls.generators:
        if g.kind == INV:
            out.append(k)
        k += g.n_params()
    return out


def locus_dimension(cls, chart=None, F=None, rng=None, points=3):
    """Generic dimension of the class's locus in the chart and in the slice.

    Raises EmptyLocusError if the chart contains no point of the locus.  The
    slice dimension is None when no point with lam = 1 exists (charts that
    fix a coefficient moved by t -> mu t leave no residual freedom).
    """
    F = F or default_field(cls.char)
    chart = chart or DESIGNATED_CHART[cls.char]
    rng = rng or random.Random(0)
    lam_pos = _inv_positions(cls)
    all_cols = list(range(cls.n_theta()))
    slice_cols = [c for c in all_cols if c not in lam_pos]
    chart_dim, witness = _generic_dim(cls, chart, F, rng, all_cols, None, points)
    if lam_pos:
        try:
            slice_dim, _ = _generic_dim(cls, chart, F, rng, slice_cols, 1, points)
        except EmptyLocusError:
            slice_dim = None
    else:
        slice_dim = chart_dim
    return LocusReport(cls, chart.name, chart_dim, slice_dim, cls.image_order(F), tuple(witness))


def witness_instance(report, F=None):
    """The witness family and the generator substitutions."""
    F = F or default_field(report.cls.char)
    a, theta = report.witness
    W = _family(F, a)
    subs = [g.substitution(F, th) for g, th in zip(report.cls.generators, _split_theta(report.cls, theta))]
    return W, subs


def all_locus_dimensions(char, chart=None, F=None, rng=None):
    out = []
    for cls in classes_for(char):
        try:
            out.append(locus_dimension(cls, chart, F, rng))
        except EmptyLocusError:
            out.append(None)
    return out


def z_max_dims(char, chart=None, F=None, rng=None):
    """(max slice_dim over image order >= 2, max over image order >= 4)."""
    reports = [r for r in all_locus_dimensions(char, chart, F, rng) if r is not None]
    z2 = max(r.slice_dim for r in reports if r.image_order >= 2 and r.slice_dim is not None)
    z4 = max(r.slice_dim for r in reports if r.image_order >= 4 and r.slice_dim is not None)
    return z2, z4, reports
