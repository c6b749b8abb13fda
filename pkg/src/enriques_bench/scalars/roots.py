"""Roots and factorisation of univariate polynomials.

Over finite fields: distinct-degree factorisation followed by
Cantor-Zassenhaus equal-degree splitting.  Over Q, Q(zeta_4) and
Q(zeta_8): roots are found p-adically.  A root y of the monic integral
transform of f is an element of Z[zeta]; its images under the embeddings
into Z_p (p = 1 mod 8) are roots of the embedded polynomials, and the
coordinates of y are recovered from those images by a Vandermonde solve
modulo a power of p large enough for the Cauchy bound.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import lcm

from .fields import Cyclotomic, CyclotomicElement, FiniteField, Rationals, is_prime
from .poly import Poly, poly_gcd, poly_powmod, squarefree_part

_SPLIT_SEED = 0x5EED


def poly_roots(f: Poly):
    """Distinct roots of f lying in its base field, in a canonical order."""
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    if f.degree <= 0:
        return []
    F = f.field
    if isinstance(F, FiniteField):
        roots = _ff_roots(f)
        return sorted(roots, key=lambda x: x.c)
    if isinstance(F, (Rationals, Cyclotomic)):
        roots = _padic_roots(f)
        return sorted(roots, key=_q_sort_key)
    raise TypeError(f"no root finder for {F}")


def _q_sort_key(x):
    if isinstance(x, Fraction):
        return (x,)
    return tuple(x.c)


# ------------------------------------------------------------ finite fields


def _x(F, var):
    return Poly(F, [0, 1], var)


def _ff_roots(f: Poly):
    F = f.field
    f = f.monic()
    g = poly_gcd(f, poly_powmod(_x(F, f.var), F.order, f) - _x(F, f.var))
    return [(-h.c[0]) for h in _equal_degree(g, 1)]


def distinct_degree_factorization(f: Poly):
    """Split a monic squarefree f into [(g_d, d)] with g_d the product of
    its irreducible factors of degree d."""
    F = f.field
    q = F.order
    out = []
    x = _x(F, f.var)
    h = x
    rest = f.monic()
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, q, rest)
        g = poly_gcd(rest, h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree(g: Poly, d: int):
    """Monic irreducible factors (each of degree d) of a monic squarefree g."""
    if g.degree <= 0:
        return []
    if g.degree == d:
        return [g.monic()]
    F = g.field
    q = F.order
    rng = random.Random(_SPLIT_SEED + g.degree)
    e = (q ** d - 1) // 2
    while True:
        a = Poly(F, [F.random(rng) for _ in range(g.degree)], g.var)
        if a.degree <= 0:
            continue
        b = poly_gcd(g, poly_powmod(a, e, g) - 1)
        if 0 < b.degree < g.degree:
            return _equal_degree(b, d) + _equal_degree(g.exact_div(b), d)


def factor_ff(f: Poly):
    """Irreducible factorisation over a finite field: [(monic factor, mult)]."""
    from .poly import squarefree_decomposition

    out = []
    for s, k in squarefree_decomposition(f):
        for g, d in distinct_degree_factorization(s):
            for h in _equal_degree(g, d):
                out.append((h, k))
    out.sort(key=lambda fk: (fk[0].degree, [x.c for x in fk[0].c], fk[1]))
    return out


# -------------------------------------------------------------- p-adic


def _primes_1_mod_8():
    p = 17
    while True:
        if is_prime(p):
            yield p
        p += 8


def _hensel_root(coeffs, r, p, N):
    """Lift a simple root r mod p of the integer polynomial to mod p**N."""
    mod = p
    target = p ** N
    while mod < target:
        mod = min(mod * mod, target)
        val = 0
        der = 0
        for c in reversed(coeffs):
            der = (der * r + val) % mod
            val = (val * r + c) % mod
        r = (r - val * pow(der, -1, mod)) % mod
    return r


def _padic_roots(f: Poly):
    F = f.field
    f = squarefree_part(f)
    if isinstance(F, Rationals):
        d, n = 1, 1
        coords = [[Fraction(c)] for c in f.c]
    else:
        d, n = F.degree, F.n
        coords = [list(c.c) for c in f.c]
    # clear denominators
    den = 1
    for cs in coords:
        for x in cs:
            den = lcm(den, x.denominator)
    ints = [[int(x * den) for x in cs] for cs in coords]
    ring = _ZZeta(d)
    deg = len(ints) - 1
    a = ints[-1]
    # monic transform g(y) = a^(deg-1) f(y/a)
    g = []
    apow = ring.one()
    for i in range(deg - 1, -1, -1):
        g.append(ring.mul(ints[i], apow))
        apow = ring.mul(apow, a)
    g.reverse()
    g.append(ring.one())
    bound = 1 + max(sum(abs(x) for x in c) for c in g)
    for p in _primes_1_mod_8():
        omegas = _unit_roots_mod(p, n)
        embedded = [[ring.embed(c, w, p) for c in g] for w in omegas]
        if all(_simple_mod_p(e, p) for e in embedded):
            break
    N = 1
    while p ** N <= 2 * bound + 1:
        N += 1
    M = p ** N
    omega_lift = [_hensel_root(_cyclo_poly(n), w, p, N) for w in omegas]
    root_lists = []
    for w, wl in zip(omegas, omega_lift):
        e_mod_p = [ring.embed(c, w, p) for c in g]
        e_mod_M = [ring.embed(c, wl, M) for c in g]
        rs = [r for r in range(p) if _eval_mod(e_mod_p, r, p) == 0]
        root_lists.append([_hensel_root(e_mod_M, r, p, N) for r in rs])
    vinv = _vandermonde_inverse(omega_lift, M)
    found = []
    a_elem = _to_field(F, a)
    for combo in product(*root_lists):
        ys = []
        for row in vinv:
            v = sum(rc * cc for rc, cc in zip(row, combo)) % M
            if v > M // 2:
                v -= M
            ys.append(v)
        if any(abs(v) > bound for v in ys):
            continue
        y = _to_field(F, ys)
        x = y / a_elem
        if f(x) == 0 and x not in found:
            found.append(x)
    return found


def _to_field(F, ints):
    if isinstance(F, Rationals):
        return Fraction(ints[0])
    return CyclotomicElement(F, [Fraction(v) for v in ints])


class _ZZeta:
    """Arithmetic in Z[zeta] with zeta^d = -1 (d a power of 2), or Z (d=1)."""

    def __init__(self, d):
        self.d = d

    def one(self):
        return [1] + [0] * (self.d - 1)

    def mul(self, a, b):
        d = self.d
        out = [0] * d
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        k = i + j
                        if k >= d:
                            out[k - d] -= x * y
                        else:
                            out[k] += x * y
        return out

    def embed(self, a, w, m):
        acc = 0
        for x in reversed(a):
            acc = (acc * w + x) % m
        return acc


def _cyclo_poly(n):
    """Integer coefficients of x^(n/2) + 1 (or x - 1 for n = 1)."""
    if n == 1:
        return [-1, 1]
    return [1] + [0] * (n // 2 - 1) + [1]


def _unit_roots_mod(p, n):
    """Roots of the n-th cyclotomic polynomial mod p, in increasing order."""
    if n == 1:
        return [1]
    cp = _cyclo_poly(n)
    return [w for w in range(p) if _eval_mod(cp, w, p) == 0]


def _eval_mod(coeffs, x, m):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def _simple_mod_p(coeffs, p):
    """True if the polynomial has no repeated roots in F_p-bar."""
    from .fields import PrimeField

    F = PrimeField(p)
    f = Poly(F, coeffs)
    if f.degree < len(coeffs) - 1:
        return False
    return poly_gcd(f, f.derivative()).degree == 0


def _vandermonde_inverse(nodes, M):
    """Inverse modulo M of V[k][j] = nodes[k]**j, via Gauss-Jordan."""
    d = len(nodes)
    A = [[pow(w, j, M) for j in range(d)] + [1 if i == k else 0 for i in range(d)] for k, w in enumerate(nodes)]
    for col in range(d):
        piv = next(r for r in range(col, d) if A[r][col] % M and _is_unit(A[r][col], M))
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], -1, M)
        A[col] = [(x * inv) % M for x in A[col]]
        for r in range(d):
            if r != col and A[r][col]:
                c = A[r][col]
                A[r] = [(x - c * y) % M for x, y in zip(A[r], A[col])]
    # rows of the inverse map embedded values to coordinates
    return [row[d:] for row in A]


def _is_unit(x, M):
    try:
        pow(x, -1, M)
        return True
    except ValueError:
        return False
