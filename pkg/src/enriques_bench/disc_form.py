"""Discriminant groups L^v/L with their finite quadratic forms.

Elements of a discriminant group are residue tuples with respect to the
invariant factors d_1 | d_2 | ... (those > 1) of the Smith normal form of
the Gram matrix.  Quadratic values live in Q/2Z and bilinear values in Q/Z,
both represented by fractions reduced into [0, 2) and [0, 1).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .lattice import IntLattice, LatIsometry


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a):
    """Return (U, D, V) with U * a * V = D diagonal, d_i | d_{i+1}, d_i >= 0.

    U and V are unimodular integer matrices (lists of rows).
    """
    A = [[int(x) for x in row] for row in a]
    m, n = len(A), len(A[0]) if A else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for M in (A, V):
            for row in M:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                return U, A, V
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * (x.numerator // (2 * x.denominator))


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class FinQuadModule:
    """The discriminant group of an even nondegenerate lattice."""

    def __init__(self, lattice: IntLattice):
        if lattice.det() == 0:
            raise ValueError("Gram matrix is singular")
        self.lattice = lattice
        G = [[int(x) for x in row] for row in lattice.gram]
        n = lattice.rank
        U, D, V = smith_normal_form(G)
        idx = [i for i in range(n) if D[i][i] != 1]
        self.invariants = tuple(D[i][i] for i in idx)
        self._U_rows = [U[i] for i in idx]
        # generator lifts V e_i / d_i in lattice coordinates
        self.lifts = [[Fraction(V[r][i], D[i][i]) for r in range(n)] for i in idx]
        self._G = G
        self.order = 1
        for d in self.invariants:
            self.order *= d

    def __repr__(self):
        return f"FinQuadModule({self.invariants})"

    @property
    def ngens(self):
        return len(self.invariants)

    @property
    def zero(self):
        return (0,) * self.ngens

    def gen(self, i):
        return tuple(int(j == i) for j in range(self.ngens))

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariants))

    def scale(self, k, x):
        return tuple((k * a) % d for a, d in zip(x, self.invariants))

    def elements(self):
        return [tuple(c) for c in product(*(range(d) for d in self.invariants))]

    def lift(self, x):
        n = self.lattice.rank
        v = [Fraction(0)] * n
        for a, g in zip(x, self.lifts):
            if a:
                v = [vi + a * gi for vi, gi in zip(v, g)]
        return v

    def reduce(self, v):
        """Residues of a dual-lattice vector given in lattice coordinates."""
        y = [sum(Fraction(g) * vi for g, vi in zip(row, v)) for row in self._G]
        if any(c.denominator != 1 for c in y):
            raise ValueError("vector is not in the dual lattice")
        y = [int(c) for c in y]
        return tuple(sum(u * c for u, c in zip(row, y)) % d for row, d in zip(self._U_rows, self.invariants))

    def _pair(self, v, w):
        return sum(v[i] * self._G[i][j] * w[j] for i in range(len(v)) for j in range(len(w)) if v[i] and w[j])

    @property
    def _gen_pairs(self):
        """Rational pairings of the generator lifts, computed once."""
        if not hasattr(self, "_pairs_cache"):
            self._pairs_cache = [[self._pair(v, w) for w in self.lifts] for v in self.lifts]
        return self._pairs_cache

    def q(self, x):
        P = self._gen_pairs
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                total += a * a * P[i][i]
                for j in range(i + 1, len(x)):
                    if x[j]:
                        total += 2 * a * x[j] * P[i][j]
        return _mod2(total)

    def b(self, x, y):
        P = self._gen_pairs
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    if c:
                        total += a * c * P[i][j]
        return _mod1(total)

    def q_table(self):
        """q on generators (diagonal, mod 2) and b between generators (mod 1)."""
        gs = self.gens()
        return [[self.q(g) if i == j else self.b(g, h) for j, h in enumerate(gs)] for i, g in enumerate(gs)]

    def span(self, gens):
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen


def disc_group(L: IntLattice) -> FinQuadModule:
    return FinQuadModule(L)


class FinIsometry:
    """An automorphism of a FinQuadModule, given by generator images."""

    def __init__(self, module: FinQuadModule, images, check=True):
        self.module = module
        self.images = [tuple(int(a) % d for a, d in zip(im, module.invariants)) for im in images]
        if len(self.images) != module.ngens:
            raise ValueError("one image per generator is required")
        if check:
            self._validate()

    def _validate(self):
        M = self.module
        for i, (im, d) in enumerate(zip(self.images, M.invariants)):
            if M.scale(d, im) != M.zero:
                raise ValueError(f"image of generator {i} has the wrong order")
        # q(sum a_i g_i) = sum a_i^2 q(g_i) + 2 sum_{i<j} a_i a_j b(g_i, g_j),
        # so q is preserved once it and b are preserved on generators
        gens = M.gens()
        for i, g in enumerate(gens):
            if M.q(self.images[i]) != M.q(g):
                raise ValueError("map does not preserve q")
            for j in range(i + 1, len(gens)):
                if M.b(self.images[i], self.images[j]) != M.b(g, gens[j]):
                    raise ValueError("map does not preserve q")
        if len(M.span(self.images)) != M.order:
            raise ValueError("map is not bijective")

    def __call__(self, x):
        M = self.module
        out = M.zero
        for a, im in zip(x, self.images):
            if a:
                out = M.add(out, M.scale(a, im))
        return out

    def __matmul__(self, other):
        return FinIsometry(self.module, [self(im) for im in other.images], check=False)

    def __eq__(self, other):
        return isinstance(other, FinIsometry) and self.images == other.images

    def __hash__(self):
        return hash(tuple(self.images))

    def is_identity(self):
        return self.images == self.module.gens()


def induced_disc_isometry(module: FinQuadModule, g: LatIsometry) -> FinIsometry:
    """Action of a lattice isometry on the discriminant group."""
    if g.lattice != module.lattice:
        raise ValueError("isometry and module live on different lattices")
    m = g.matrix
    n = module.lattice.rank
    images = []
    for v in module.lifts:
        gv = [sum(int(m[i, j]) * v[j] for j in range(n)) for i in range(n)]
        images.append(module.reduce(gv))
    return FinIsometry(module, images)


# ------------------------------------------------------------------ gluing


class GlueError(ValueError):
    pass


class GlueData:
    """Subgroups H_S, H_K and an isomorphism gamma between them."""

    def __init__(self, S_disc: FinQuadModule, K_disc: FinQuadModule, hs_gens, hk_images):
        self.S = S_disc
        self.K = K_disc
        self.hs_gens = [tuple(h) for h in hs_gens]
        self.hk_images = [tuple(h) for h in hk_images]
        if len(self.hs_gens) != len(self.hk_images):
            raise GlueError("gamma needs one image per generator of H_S")
        self.table = self._build_table()
        self._check_isotropic()

    def _build_table(self):
        """Extend gamma from generators to all of H_S, checking consistency."""
        S, K = self.S, self.K
        table = {S.zero: K.zero}
        frontier = [S.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in zip(self.hs_gens, self.hk_images):
                    y = S.add(x, g)
                    gy = K.add(table[x], img)
                    if y in table:
                        if table[y] != gy:
                            raise GlueError("gamma is not well defined on H_S")
                    else:
                        table[y] = gy
                        nxt.append(y)
            frontier = nxt
        if len(set(table.values())) != len(table):
            raise GlueError("gamma is not injective")
        return table

    def _check_isotropic(self):
        for h, k in self.table.items():
            if _mod2(self.S.q(h) + self.K.q(k)) != 0:
                raise GlueError("graph of gamma is not isotropic for q_S + q_K")

    @property
    def H_S(self):
        return set(self.table)

    @property
    def H_K(self):
        return set(self.table.values())

    def gamma(self, h):
        return self.table[h]


def nikulin_extends(glue: GlueData, alpha: LatIsometry, beta: LatIsometry) -> bool:
    """Whether (alpha, beta) on S + K lifts to the overlattice defined by glue."""
    a = induced_disc_isometry(glue.S, alpha)
    b = induced_disc_isometry(glue.K, beta)
    HS, HK = glue.H_S, glue.H_K
    if {a(h) for h in HS} != HS:
        return False
    if {b(k) for k in HK} != HK:
        return False
    return all(b(glue.gamma(h)) == glue.gamma(a(h)) for h in glue.hs_gens)


def overlattice_gram(S: IntLattice, K: IntLattice, glue: GlueData):
    """Gram matrix and basis of the overlattice M = S + K + glue vectors.

    Returns (gram, basis) where basis rows are rational coordinates in S + K.
    """
    n_s, n_k = S.rank, K.rank
    vecs = [[Fraction(int(i == j)) for j in range(n_s + n_k)] for i in range(n_s + n_k)]
    for h, k in glue.table.items():
        if h == glue.S.zero:
            continue
        vecs.append(glue.S.lift(h) + glue.K.lift(k))
    basis = _hermite_basis(vecs)
    G = [[0] * (n_s + n_k) for _ in range(n_s + n_k)]
    for i in range(n_s):
        for j in range(n_s):
            G[i][j] = int(S.gram[i, j])
    for i in range(n_k):
        for j in range(n_k):
            G[n_s + i][n_s + j] = int(K.gram[i, j])
    gram = [[sum(u[i] * G[i][j] * v[j] for i in range(len(u)) for j in range(len(v))) for v in basis] for u in basis]
    if any(x.denominator != 1 for row in gram for x in row):
        raise GlueError("glue vectors do not pair integrally")
    return [[int(x) for x in row] for row in gram], basis


def _hermite_basis(vecs):
    """A Z-basis of the lattice spanned by rational vectors."""
    from math import lcm

    den = 1
    for v in vecs:
        for x in v:
            den = lcm(den, x.denominator)
    ints = [[int(x * den) for x in v] for v in vecs]
    U, D, V = smith_normal_form(ints)
    # rows of U * ints = D * V^{-1}; the nonzero rows give a basis
    rows = [[sum(U[i][k] * ints[k][j] for k in range(len(ints))) for j in range(len(ints[0]))] for i in range(len(ints))]
    basis = [r for r in rows if any(r)]
    return [[Fraction(x, den) for x in r] for r in basis]


# ----------------------------------------------------- glue from lifts


def glue_from_lifts(S: IntLattice, K: IntLattice, pairs) -> GlueData:
    """GlueData from pairs (s, k) of dual vectors in lattice coordinates.

    Each pair says that gamma sends the class of s to the class of k.
    """
    Sd, Kd = disc_group(S), disc_group(K)
    hs, hk = [], []
    for s, k in pairs:
        hs.append(Sd.reduce([Fraction(x) for x in s]))
        hk.append(Kd.reduce([Fraction(x) for x in k]))
    return GlueData(Sd, Kd, hs, hk)


def gluing_examples():
    """Worked gluing cases with their expected extendability verdicts."""
    out = []
    U = IntLattice([[0, 1], [1, 0]], name="U")
    swap = LatIsometry(U, [[0, 1], [1, 0]])
    out.append({
        "name": "unimodular, no glue",
        "S": U, "K": U, "glue": glue_from_lifts(U, U, []),
        "alpha": swap, "beta": -U.identity(), "expected": True,
    })
    S = IntLattice([[2]], name="<2>")
    K = IntLattice([[-2]], name="<-2>")
    glue = glue_from_lifts(S, K, [(["1/2"], ["1/2"])])
    for a in (1, -1):
        for b in (1, -1):
            out.append({
                "name": f"<2>+<-2> in U, signs ({a:+d}, {b:+d})",
                "S": S, "K": K, "glue": glue,
                "alpha": LatIsometry(S, [[a]]), "beta": LatIsometry(K, [[b]]),
                "expected": True,
            })
    S2 = IntLattice([[2, 0], [0, 2]], name="<2>^2")
    K2 = IntLattice([[-2, 0], [0, -2]], name="<-2>^2")
    glue2 = glue_from_lifts(S2, K2, [(["1/2", 0], ["1/2", 0]), ([0, "1/2"], [0, "1/2"])])
    out.append({
        "name": "rank-4 diagonal glue, swap against identity",
        "S": S2, "K": K2, "glue": glue2,
        "alpha": LatIsometry(S2, [[0, 1], [1, 0]]), "beta": K2.identity(),
        "expected": False,
    })
    return out


# ------------------------------------------- transport to the F_2 form


def transport_to_f2(module: FinQuadModule):
    """Images v-bar in F_2^n (bit masks) of the generators v/2 of L(2)^v / L(2).

    Valid when the module is the discriminant group of a lattice rescaled
    by 2, so every generator lift is half an integral vector.
    """
    out = []
    for lift in module.lifts:
        v = [2 * x for x in lift]
        if any(x.denominator != 1 for x in v):
            raise ValueError("generator lift is not half an integral vector")
        out.append(sum((int(x) % 2) << i for i, x in enumerate(v)))
    return out


def transport_check(module: FinQuadModule, Q) -> bool:
    """q(v/2) = q_F2(v-bar) and b(v/2, w/2) = b_F2(v-bar, w-bar)/2 on generators,
    and the generator images form a basis of F_2^n."""
    bars = transport_to_f2(module)
    if Q.rank_of(bars) != len(bars) or len(bars) != Q.dim:
        return False
    gens = module.gens()
    for i, g in enumerate(gens):
        if module.q(g) != Q.qv(bars[i]):
            return False
        for j, h in enumerate(gens):
            if module.b(g, h) != Fraction(Q.b(bars[i], bars[j]), 2):
                return False
    return True
