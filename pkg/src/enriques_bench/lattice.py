"""Even integral lattices given by Gram matrices.

Basis conventions:

* ``u()`` has basis (e, f) with e.e = f.f = 0 and e.f = 1.
* ``e8()`` is negative definite.  Its basis vectors a1..a8 have square -2
  and a_i.a_j = 1 exactly along the Dynkin edges
  a1-a3, a3-a4, a4-a5, a5-a6, a6-a7, a7-a8 and a2-a4 (the branch node is a4).
* ``e10()`` is the orthogonal sum u() + e8() in the order (e, f, a1, ..., a8).

Matrices use numpy object arrays so that entries are Python integers and
never overflow, even for long products of reflections.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# 0-based Dynkin edges of E8 in the a1..a8 numbering above
E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


def int_matrix(rows):
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a matrix")
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


def det_bareiss(m):
    """Exact integer determinant by fraction-free elimination."""
    a = [[int(x) for x in row] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def signature(gram):
    """(n_plus, n_minus) of a symmetric rational matrix, by congruence."""
    a = [[Fraction(int(x)) for x in row] for row in gram]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/column i += row/column j makes a[i][i] = 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            c = a[i][piv] / d
            if c:
                for k in range(n):
                    a[i][k] -= c * a[piv][k]
                for k in range(n):
                    a[k][i] -= c * a[k][piv]
    return pos, neg


class IntLattice:
    """An even lattice: a symmetric integer Gram matrix with even diagonal."""

    def __init__(self, gram, name=None):
        g = int_matrix(gram)
        n = g.shape[0]
        if g.shape != (n, n):
            raise ValueError("Gram matrix must be square")
        if any(g[i, j] != g[j, i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        if any(g[i, i] % 2 for i in range(n)):
            raise ValueError("lattice is not even")
        g.setflags(write=False)
        self.gram = g
        self.rank = n
        self.name = name or f"L{n}"

    def __repr__(self):
        return f"IntLattice({self.name}, rank={self.rank})"

    def __eq__(self, other):
        return isinstance(other, IntLattice) and np.array_equal(self.gram, other.gram)

    def __hash__(self):
        return hash(tuple(map(int, self.gram.flat)))

    def det(self):
        return det_bareiss(self.gram)

    def signature(self):
        return signature(self.gram)

    def vec(self, coords):
        v = np.array([int(x) for x in coords], dtype=object)
        if v.shape != (self.rank,):
            raise ValueError(f"vector of length {v.shape[0]} in a rank-{self.rank} lattice")
        return v

    def basis(self, i):
        v = np.zeros(self.rank, dtype=object)
        v[:] = 0
        v[i] = 1
        return v

    def inner(self, v, w):
        v, w = self.vec(v), self.vec(w)
        return int(v.dot(self.gram.dot(w)))

    def norm(self, v):
        return self.inner(v, v)

    def identity(self):
        return LatIsometry(self, np.identity(self.rank, dtype=int).astype(object))

    def to_json(self):
        return [[int(x) for x in row] for row in self.gram]


def inner(L, v, w):
    return L.inner(v, w)


def u():
    return IntLattice([[0, 1], [1, 0]], name="U")


def e8():
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in E8_EDGES:
        g[i][j] = g[j][i] = 1
    return IntLattice(g, name="E8")


def direct_sum(*lattices, name=None):
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                g[off + i][off + j] = int(L.gram[i, j])
        off += L.rank
    return IntLattice(g, name=name or "+".join(L.name for L in lattices))


def e10():
    return direct_sum(u(), e8(), name="E10")


def rescale(L, m):
    if m == 0:
        raise ValueError("rescaling by zero")
    return IntLattice(L.gram * m, name=f"{L.name}({m})")


class LatIsometry:
    """An integer matrix M (acting on column vectors) with M^T G M = G."""

    def __init__(self, lattice, matrix, check=True):
        m = int_matrix(matrix)
        n = lattice.rank
        if m.shape != (n, n):
            raise ValueError(f"isometry of a rank-{n} lattice needs an {n}x{n} matrix")
        if check and not np.array_equal(m.T.dot(lattice.gram).dot(m), lattice.gram):
            raise ValueError("matrix does not preserve the Gram matrix")
        m.setflags(write=False)
        self.lattice = lattice
        self.matrix = m

    def __matmul__(self, other):
        if not isinstance(other, LatIsometry) or other.lattice != self.lattice:
            return NotImplemented
        return LatIsometry(self.lattice, self.matrix.dot(other.matrix))

    def __call__(self, v):
        return self.matrix.dot(self.lattice.vec(v))

    def __eq__(self, other):
        return isinstance(other, LatIsometry) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(tuple(map(int, self.matrix.flat)))

    def __neg__(self):
        return LatIsometry(self.lattice, -self.matrix, check=False)

    def is_identity(self):
        return np.array_equal(self.matrix, np.identity(self.lattice.rank, dtype=int))

    def __repr__(self):
        return f"LatIsometry({self.lattice.name}, {self.matrix.tolist()})"


def reflect(L, alpha):
    """The reflection x -> x + (x.alpha) alpha in a (-2)-vector alpha."""
    a = L.vec(alpha)
    if L.norm(a) != -2:
        raise ValueError("reflection vector must have square -2")
    row = L.gram.dot(a)  # x.alpha = row . x
    m = np.identity(L.rank, dtype=int).astype(object) + np.outer(a, row)
    return LatIsometry(L, m)


def e10_roots():
    """A fixed list of (-2)-vectors of e10(): the E8 basis, e - f and f + a1."""
    L = e10()
    roots = [L.basis(i) for i in range(2, 10)]
    roots.append(L.vec([1, -1] + [0] * 8))
    roots.append(L.vec([0, 1, 1] + [0] * 7))
    return roots


def random_reflection_word(L, roots, rng, length):
    g = L.identity()
    for _ in range(length):
        g = reflect(L, roots[rng.randrange(len(roots))]) @ g
    return g
