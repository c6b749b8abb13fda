"""Independent reference computations used by the tests.

Nothing here imports the package under test.  Each oracle recomputes a
quantity by a different route: closed formulas, brute force, determinantal
divisors, or symbolic expansion with sympy.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import sympy as sp

# ---------------------------------------------------------------- lattices

# E8 Dynkin diagram in Bourbaki numbering (nodes 1..8, node 2 on the branch)
_E8_BOURBAKI_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def e8_gram():
    g = -2 * np.eye(8, dtype=np.int64)
    for i, j in _E8_BOURBAKI_EDGES:
        g[i - 1, j - 1] = g[j - 1, i - 1] = 1
    return g


def e10_gram():
    g = np.zeros((10, 10), dtype=np.int64)
    g[0, 1] = g[1, 0] = 1
    g[2:, 2:] = e8_gram()
    return g


def det_fraction(m):
    """Exact determinant by Gaussian elimination over Fraction."""
    a = [[Fraction(int(x)) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return int(det)


def invariant_factors(m):
    """Smith invariants from determinantal divisors: d_k = gcd of k x k minors."""
    m = [[int(x) for x in row] for row in m]
    rows, cols = len(m), len(m[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, det_fraction([[m[r][c] for c in ci] for r in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# ------------------------------------------------------------- F2 geometry


def f2_vectors_q_b(gram):
    """All 2^n vectors of L/2L as ints, with q and the polar form b as arrays."""
    n = gram.shape[0]
    X = ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(np.int64)
    norms = np.einsum("ij,jk,ik->i", X, gram, X)
    q = (norms // 2) % 2
    return X, q


def isotropic_vectors(gram):
    X, q = f2_vectors_q_b(gram)
    idx = [v for v in range(1, len(q)) if q[v] == 0]
    return idx, X[idx]


def polar_matrix(gram, rows):
    return (rows @ gram @ rows.T) % 2


def orthogonal_plus_order(n, q=2):
    """|O+(2n, q)| = 2 q^{n(n-1)} (q^n - 1) prod_{i<n} (q^{2i} - 1)."""
    out = 2 * q ** (n * (n - 1)) * (q**n - 1)
    for i in range(1, n):
        out *= q ** (2 * i) - 1
    return out


def census_small(gram, n):
    """Unordered n-sets of isotropic vectors, pairwise b = 1, for n <= 3."""
    _, rows = isotropic_vectors(gram)
    A = polar_matrix(gram, rows)
    if n == 1:
        return len(rows)
    if n == 2:
        return int(A.sum()) // 2
    if n == 3:
        return int(np.trace(A @ A @ A)) // 6
    raise ValueError("n must be at most 3")


def cliques_through_edge(gram, size):
    """Number of linearly independent isotropic size-sets, pairwise b = 1,
    containing one fixed pair with b = 1."""
    idx, rows = isotropic_vectors(gram)
    A = polar_matrix(gram, rows)
    m = len(idx)
    nbr = [sum(1 << j for j in range(m) if A[i, j]) for i in range(m)]
    v0 = 0
    v1 = next(j for j in range(m) if A[0, j])
    count = 0

    def extend(chosen_mask, span, cand, depth, last):
        nonlocal count
        if depth == size:
            count += 1
            return
        c = cand >> (last + 1)
        j = last + 1
        while c:
            if c & 1:
                v = idx[j]
                if v not in span:
                    extend(chosen_mask, span | {x ^ v for x in span}, cand & nbr[j], depth + 1, j)
            c >>= 1
            j += 1

    span0 = {0, idx[v0], idx[v1], idx[v0] ^ idx[v1]}
    extend(None, span0, nbr[v0] & nbr[v1], 2, -1)
    return count, len(idx), int(A.sum()) // 2


# ------------------------------------------------------------- Weierstrass


T, X = sp.symbols("t x")


def to_sympy(c):
    """Convert a package scalar (Fraction / cyclotomic / prime field) to sympy."""
    if hasattr(c, "c") and hasattr(c.field, "n"):
        n = c.field.n
        zeta = sp.exp(2 * sp.pi * sp.I / n)
        return sp.nsimplify(sum(sp.Rational(a.numerator, a.denominator) * zeta**k for k, a in enumerate(c.c)))
    if hasattr(c, "c"):
        return sp.Integer(int(c.c[0]))
    if isinstance(c, Fraction):
        return sp.Rational(c.numerator, c.denominator)
    return sp.Integer(c)


def poly_expr(coeffs, var=T):
    return sum(to_sympy(c) * var**j for j, c in enumerate(coeffs))


def weierstrass_discriminant(a2, a4, a6):
    """16 * disc_x(x^3 + a2 x^2 + a4 x + a6), an expression in t."""
    f = X**3 + a2 * X**2 + a4 * X + a6
    return sp.expand(16 * sp.discriminant(f, X))


def weierstrass_c4(a2, a4):
    return sp.expand(16 * (a2**2 - 3 * a4))


def substituted_family(a2, a4, a6, kind, lam, mu, r):
    """Coefficients of the family obtained by t = h(t0), x = x0 / (mu c) + r(t0).

    c = 1 for rotations and t0^2 for inversions; the cubic is multiplied by
    (mu c)^3 so that it is monic in x0.  Returns three sympy expressions in t.
    """
    t0, x0 = sp.symbols("t0 x0")
    h = lam * t0 if kind == "rot" else 1 / (lam * t0)
    c = 1 if kind == "rot" else t0**2
    x = x0 / (mu * c) + r.subs(T, t0)
    f = x**3 + a2.subs(T, h) * x**2 + a4.subs(T, h) * x + a6.subs(T, h)
    g = sp.expand(sp.simplify(f * (mu * c) ** 3))
    P = sp.Poly(g, x0)
    coeffs = [sp.expand(P.coeff_monomial(x0**k)) for k in (2, 1, 0)]
    assert sp.simplify(P.coeff_monomial(x0**3) - 1) == 0
    return [sp.expand(cf.subs(t0, T)) for cf in coeffs]


def fiber_symbols_char0(a2, a4, a6):
    """Kodaira symbols at finite places over Q with their place degrees."""
    D = sp.Poly(weierstrass_discriminant(a2, a4, a6), T)
    C = sp.Poly(weierstrass_c4(a2, a4), T)
    out = []
    _, factors = sp.factor_list(D.as_expr(), T)
    for p, n in factors:
        P = sp.Poly(p, T)
        if P.degree() == 0:
            continue
        multiplicative = not C.is_zero and sp.rem(C, P).is_zero is False
        if multiplicative:
            sym = f"I{n}"
        else:
            sym = {2: "II", 3: "III", 4: "IV"}.get(n, "other")
        out.append((sym, P.degree()))
    return out


def discriminant_place_orders(a2, a4, a6, modulus=None):
    """[(degree of place, ord of Delta)] over all places including infinity."""
    D = sp.Poly(weierstrass_discriminant(a2, a4, a6), T, modulus=modulus)
    _, factors = sp.factor_list(D.as_expr(), T, modulus=modulus) if modulus else sp.factor_list(D.as_expr(), T)
    out = []
    for p, n in factors:
        P = sp.Poly(p, T, modulus=modulus)
        if P.degree() > 0:
            out.append((P.degree(), n))
    inf = 12 - D.degree()
    if inf:
        out.append((1, inf))
    return out


# ----------------------------------------------- automorphisms over F_p


def _poly_scale(coeffs, lam, p):
    return [c * pow(lam, j, p) % p for j, c in enumerate(coeffs)]


def brute_force_base_group(a4, a6, p):
    """Image in PGL2 of automorphisms of y^2 = x^3 + a4 x + a6 over F_p.

    a4, a6 are integer coefficient lists (lengths 5 and 7).  Every lam, mu in
    F_p^* is tried for t -> lam t (a_{2k}(lam t) mu^k = a_{2k}) and for
    t -> 1/(lam t) (t^{2k} a_{2k}(1/(lam t)) mu^k = a_{2k}).  Rotations are
    kept when lam has 2-power order; odd powers of an automorphism then
    realize the same base map with 2-power order.  Returns the generated
    group as a set of ("rot"|"inv", lam).
    """
    a4 = [x % p for x in a4] + [0] * (5 - len(a4))
    a6 = [x % p for x in a6] + [0] * (7 - len(a6))
    two_part = p - 1
    while two_part % 2 == 0:
        two_part //= 2
    e2 = (p - 1) // two_part
    gens = set()
    for lam in range(1, p):
        for mu in range(1, p):
            rot = all(
                [c * pow(mu, k, p) % p for c in _poly_scale(a, lam, p)] == a
                for k, a in ((2, a4), (3, a6))
            )
            if rot and pow(lam, e2, p) == 1:
                gens.add(("rot", lam))
            inv_ok = True
            for k, a in ((2, a4), (3, a6)):
                w = 2 * k
                # t^w a(1/(lam t)) has coefficient a_{w-j} lam^{-(w-j)} at t^j
                img = [a[w - j] * pow(lam, -(w - j), p) * pow(mu, k, p) % p for j in range(w + 1)]
                if img != a:
                    inv_ok = False
                    break
            if inv_ok:
                gens.add(("inv", lam))
    return _close_moebius(gens, p)


def _moebius(m, p):
    kind, lam = m
    # rot: t -> lam t  = [[lam, 0], [0, 1]];  inv: t -> 1/(lam t) = [[0, 1], [lam, 0]]
    return ((lam, 0), (0, 1)) if kind == "rot" else ((0, 1), (lam, 0))


def _normal(M, p):
    (a, b), (c, d) = M
    if c == 0:
        inv = pow(d, -1, p)
        return ("rot", a * inv % p)
    inv = pow(b, -1, p)
    return ("inv", c * inv % p)


def _mul(M, N, p):
    return tuple(
        tuple(sum(M[i][k] * N[k][j] for k in range(2)) % p for j in range(2)) for i in range(2)
    )


def _close_moebius(gens, p):
    group = {("rot", 1)}
    frontier = [("rot", 1)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = _normal(_mul(_moebius(g, p), _moebius(h, p), p), p)
                if k not in group:
                    group.add(k)
                    nxt.append(k)
        frontier = nxt
    return group


# ------------------------------------------------- symmetric loci in a chart

_SLOTS = [(k, j) for k in (1, 2, 3) for j in range(2 * k + 1)]  # a_{2k, j}


def _generator_matrix(kind, lam, mu):
    """Linear action on the 15 coefficients a_{2k,j} of a substitution with r = 0."""
    n = len(_SLOTS)
    M = sp.zeros(n, n)
    for row, (k, j) in enumerate(_SLOTS):
        if kind == "rot":
            M[row, row] = lam**j * mu**k
        else:
            src = _SLOTS.index((k, 2 * k - j))
            M[row, src] = lam ** (-(2 * k - j)) * mu**k
    return M


def fixed_locus_dim(generators, zeros, ones):
    """Dimension of {a : g a = a for all generators, a_z = 0, a_o = 1}, or None if empty.

    generators: (kind, lam, mu) with sympy numbers; zeros/ones: (weight, j) pairs.
    """
    n = len(_SLOTS)
    rows, rhs = [], []
    for kind, lam, mu in generators:
        D = _generator_matrix(kind, lam, mu) - sp.eye(n)
        for i in range(n):
            rows.append(D.row(i))
            rhs.append(0)
    for (w, j), val in [(z, 0) for z in zeros] + [(o, 1) for o in ones]:
        e = sp.zeros(1, n)
        e[_SLOTS.index((w // 2, j))] = 1
        rows.append(e)
        rhs.append(val)
    A = sp.Matrix.vstack(*rows)
    Ab = A.row_join(sp.Matrix(rhs))
    r = A.rank(simplify=True)
    if Ab.rank(simplify=True) != r:
        return None
    return n - r


# ------------------------------------------------------- double-cover maps


def six_parameter_rhs(y, z, A, B, C, D, E, F):
    return z * (
        A * (y**4 * z**2 - z**2)
        + B * (y**4 * z - z**3)
        + C * (y**4 - z**4)
        + D * (y**3 * z**2 - y * z**2)
        + E * (y**3 * z - y * z**3)
        + F * (y**2 * z - y**2 * z**3)
    )


def three_parameter_rhs(y, z, A, B, D, i):
    return z * (
        A * (y**4 * z**2 + i * z**4 - z**2 - i * y**4)
        + B * (y**4 * z + i * y**2 * z**3 - z**3 - i * y**2 * z)
        + D * (y**3 * z**2 + i * y * z**3 - y * z**2 - i * y**3 * z)
    )


def w_linear_residual(rhs, scale, Y, Z, y, z):
    """For (w, y, z) -> (scale * w, Y, Z): scale^2 F(y, z) - F(Y, Z), simplified."""
    return sp.simplify(sp.together(scale**2 * rhs(y, z) - rhs(Y, Z)))


def w_linear_power(scale, Y, Z, y, z, k):
    """k-th iterate of (w, y, z) -> (scale(y, z) w, Y(y, z), Z(y, z)) as (scale, Y, Z)."""
    s, P, Q = sp.Integer(1), y, z
    for _ in range(k):
        # apply the map after the current iterate
        s = sp.simplify(s * scale.subs({y: P, z: Q}, simultaneous=True))
        P, Q = (sp.simplify(Y.subs({y: P, z: Q}, simultaneous=True)),
                sp.simplify(Z.subs({y: P, z: Q}, simultaneous=True)))
    return s, P, Q
