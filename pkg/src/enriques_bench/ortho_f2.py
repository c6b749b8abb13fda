"""The quadratic space E10/2E10 over F_2 and its orthogonal group.

Vectors of F_2^10 are packed into ints: bit i is the coordinate on the
i-th basis vector of ``lattice.e10()`` (so bit 0 is e, bit 1 is f).
"""

from __future__ import annotations

import math
import random

import numpy as np

from .lattice import IntLattice, LatIsometry, e10
from .stabchain import build_chain, orbit

O_PLUS_10_2 = 2**21 * 3**5 * 5**2 * 7 * 17 * 31
O_PLUS_10_2_FACTORS = {2: 21, 3: 5, 5: 2, 7: 1, 17: 1, 31: 1}

FLAG_COUNTS = {1: 527, 2: 67456, 3: 2698240, 10: 12951552}
FLAG_COUNT_FACTORS = {
    1: {17: 1, 31: 1},
    2: {2: 7, 17: 1, 31: 1},
    3: {2: 10, 5: 1, 17: 1, 31: 1},
    10: {2: 13, 3: 1, 17: 1, 31: 1},
}

CENSUS_CAVEAT = (
    "census values rest on identifying orbit counts with isotropic flag counts "
    "modulo reordering; a mismatch would indict this model, not the published table"
)


def popcount(x):
    return bin(x).count("1")


def factorize(n):
    out = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class QuadSpaceF2:
    """F_2^dim with the quadratic form q(x) = x.x/2 mod 2 of an even lattice."""

    def __init__(self, lattice: IntLattice):
        n = lattice.rank
        g = lattice.gram
        self.dim = n
        self.size = 1 << n
        # rows of the Gram matrix mod 2 as bit masks
        rows = [sum((int(g[i, j]) % 2) << j for j in range(n)) for i in range(n)]
        self.rows = rows
        bmask = [0] * self.size
        q = np.zeros(self.size, dtype=np.uint8)
        diag = [int(g[i, i]) // 2 for i in range(n)]
        for x in range(1, self.size):
            low = (x & -x).bit_length() - 1
            rest = x & (x - 1)
            bmask[x] = bmask[rest] ^ rows[low]
            # q(rest + e_low) = q(rest) + q(e_low) + b(rest, e_low)
            q[x] = (int(q[rest]) + diag[low] + (popcount(rest & rows[low]) & 1)) % 2
        self.bmask = bmask
        self.q = q

    @classmethod
    def e10(cls):
        return cls(e10())

    def b(self, x, y):
        return popcount(x & self.bmask[y]) & 1

    def qv(self, x):
        return int(self.q[x])

    def isotropic(self):
        return [v for v in range(1, self.size) if self.q[v] == 0]

    def anisotropic(self):
        return [v for v in range(1, self.size) if self.q[v] == 1]

    def span(self, vectors):
        s = {0}
        for v in vectors:
            s |= {x ^ v for x in s}
        return s

    def rank_of(self, vectors):
        return len(self.span(vectors)).bit_length() - 1

    def from_lattice_vector(self, v):
        return sum((int(c) % 2) << i for i, c in enumerate(v))


# ----------------------------------------------------------------- maps


class F2Map:
    """A q-preserving linear map of F_2^dim; ``cols[i]`` is the image of e_i."""

    def __init__(self, Q: QuadSpaceF2, cols, check=True):
        cols = tuple(int(c) for c in cols)
        if len(cols) != Q.dim:
            raise ValueError("wrong number of columns")
        self.Q = Q
        self.cols = cols
        perm = np.zeros(Q.size, dtype=np.int32)
        for x in range(1, Q.size):
            low = (x & -x).bit_length() - 1
            perm[x] = perm[x & (x - 1)] ^ cols[low]
        self.perm = perm
        if check:
            if len(set(perm.tolist())) != Q.size:
                raise ValueError("map is not invertible")
            if not np.array_equal(Q.q[perm], Q.q):
                raise ValueError("map does not preserve q")

    def __call__(self, x):
        return int(self.perm[x])

    def __matmul__(self, other):
        return F2Map(self.Q, [self(c) for c in other.cols], check=False)

    def __eq__(self, other):
        return isinstance(other, F2Map) and self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def is_identity(self):
        return all(c == 1 << i for i, c in enumerate(self.cols))

    def bit_matrix(self):
        """Rows x columns 0/1 matrix (column i = image of e_i)."""
        return [[(self.cols[j] >> i) & 1 for j in range(self.Q.dim)] for i in range(self.Q.dim)]

    def __repr__(self):
        return f"F2Map({list(self.cols)})"


def identity_map(Q):
    return F2Map(Q, [1 << i for i in range(Q.dim)])


def transvection(Q, v):
    """x -> x + b(x, v) v for an anisotropic v."""
    if v <= 0 or v >= Q.size or Q.qv(v) != 1:
        raise ValueError("transvection vector must satisfy q(v) = 1")
    return F2Map(Q, [(1 << i) ^ (v if Q.b(1 << i, v) else 0) for i in range(Q.dim)])


def reduce_mod2(g: LatIsometry, Q: QuadSpaceF2 | None = None):
    """Entrywise reduction of a lattice isometry."""
    Q = Q or QuadSpaceF2(g.lattice)
    m = g.matrix
    cols = [sum((int(m[i, j]) % 2) << i for i in range(Q.dim)) for j in range(Q.dim)]
    try:
        return F2Map(Q, cols)
    except ValueError as exc:
        raise ValueError(f"reduction is not an isometry of q: {exc}") from None


def all_transvections(Q):
    return [transvection(Q, v) for v in Q.anisotropic()]


def group_chain(gens):
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    return build_chain([g.perm for g in gens], gens[0].Q.size)


def group_order(gens):
    """Exact order of the group generated by the F2Maps in gens."""
    return group_chain(gens).order()


def isotropic_orbit_size(gens, v):
    return len(orbit([g.perm for g in gens], v))


# ---------------------------------------------------------------- census


def isotropic_census(Q):
    return len(Q.isotropic())


def _check_prefix(Q, prefix):
    for i, p in enumerate(prefix):
        if not 0 < p < Q.size or Q.qv(p) != 0:
            raise ValueError(f"prefix vector {p} is not a nonzero isotropic vector")
        for r in prefix[:i]:
            if Q.b(p, r) != 1:
                raise ValueError(f"prefix vectors {r} and {p} do not pair to 1")


def flag_extension_candidates(Q, prefix, exclude_span=False):
    _check_prefix(Q, prefix)
    span = Q.span(prefix) if exclude_span else ()
    return [
        v for v in Q.isotropic()
        if all(Q.b(v, p) == 1 for p in prefix) and v not in span
    ]


def flag_extension_count(Q, prefix):
    """Isotropic v != 0 with b(v, p) = 1 for every prefix member p."""
    return len(flag_extension_candidates(Q, prefix))


def independent_extension_count(Q, prefix):
    """As flag_extension_count, but without candidates in the prefix span.

    A candidate inside the span (the sum of a length-4 or length-8 prefix)
    can never be continued to a full length-10 flag, so the census product
    counts only candidates outside the span.
    """
    return len(flag_extension_candidates(Q, prefix, exclude_span=True))


def standard_flag(Q, n):
    """Lexicographically first flag of length n built by depth-first search."""

    def dfs(prefix):
        if len(prefix) == n:
            return prefix
        for v in flag_extension_candidates(Q, prefix, exclude_span=True):
            found = dfs(prefix + [v])
            if found:
                return found
        return None

    flag = dfs([])
    if flag is None:
        raise ValueError(f"no flag of length {n}")
    return flag


def census_counts(n, Q=None):
    """Per-step extension counts along the standard flag of length n."""
    Q = Q or QuadSpaceF2.e10()
    flag = standard_flag(Q, n)
    raw = [flag_extension_count(Q, flag[:i]) for i in range(n)]
    independent = [independent_extension_count(Q, flag[:i]) for i in range(n)]
    return flag, raw, independent


def census(n, Q=None):
    """Number of unordered isotropic flags of length n: prod(c_i) / n!."""
    if n not in FLAG_COUNTS:
        raise ValueError("census is defined for n in {1, 2, 3, 10}")
    _, _, counts = census_counts(n, Q)
    total = math.prod(counts)
    value, rem = divmod(total, math.factorial(n))
    if rem:
        raise ArithmeticError(f"census product {total} is not divisible by {n}!")
    return value


class HomogeneityError(AssertionError):
    pass


def random_flag_prefix(Q, length, rng):
    prefix = []
    while len(prefix) < length:
        cands = flag_extension_candidates(Q, prefix, exclude_span=True)
        prefix.append(rng.choice(cands))
    return prefix


def homogeneity_check(Q, n, trials, rng=None):
    """Extension counts for random prefixes of each length < n must agree.

    Returns {length: (raw count, independent count)}.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = rng or random.Random(0)
    out = {}
    for length in range(n):
        seen = {}
        for _ in range(trials):
            prefix = random_flag_prefix(Q, length, rng)
            key = (flag_extension_count(Q, prefix), independent_extension_count(Q, prefix))
            seen.setdefault(key, prefix)
        if len(seen) != 1:
            raise HomogeneityError(f"length {length}: counts differ, witnesses {seen}")
        out[length] = next(iter(seen))
    return out


def model_counts(Q=None):
    """Counts of elliptic fibrations and double plane, Enriques and Fano models."""
    n1, n2, n3, n10 = (census(n, Q) for n in (1, 2, 3, 10))
    return {
        "elliptic": n1,
        "double_plane": n2,
        "enriques": 2 * n3,
        "fano": 2 * n10,
    }


MODEL_FACTORS = {
    "elliptic": {17: 1, 31: 1},
    "double_plane": {2: 7, 17: 1, 31: 1},
    "enriques": {2: 11, 5: 1, 17: 1, 31: 1},
    "fano": {2: 14, 3: 1, 17: 1, 31: 1},
}


def witt_plus_check(Q):
    """A basis of a 5-dimensional totally isotropic subspace."""
    half = Q.dim // 2

    def extend(basis, span):
        if len(basis) == half:
            return basis
        for v in Q.isotropic():
            if v in span or v < (basis[-1] if basis else 0):
                continue
            if all(Q.b(v, w) == 0 for w in basis):
                found = extend(basis + [v], span | {x ^ v for x in span})
                if found:
                    return found
        return None

    found = extend([], {0})
    if found is None:
        raise ValueError("no maximal totally isotropic subspace: form is not of plus type")
    return found


def is_totally_isotropic(Q, vectors):
    span = Q.span(vectors)
    return all(Q.qv(x) == 0 for x in span)


def orthogonal_complement(Q, vectors):
    return [x for x in range(Q.size) if all(Q.b(x, v) == 0 for v in vectors)]


def bilinear_rank(Q):
    """Rank of the polar form b over F_2 (10 means nondegenerate)."""
    rows = list(Q.rows)
    rank = 0
    for bit in range(Q.dim):
        piv = next((r for r in rows if (r >> bit) & 1), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [r ^ piv if (r >> bit) & 1 else r for r in rows]
        rank += 1
    return rank


def is_maximal_isotropic(Q, basis):
    """True if span(basis) is totally singular and equals its own complement.

    With b nondegenerate, a totally singular W satisfies W <= W^perp and
    dim W + dim W^perp = dim, so dim W <= dim / 2 and W = W^perp forces
    equality; no totally singular subspace of larger dimension exists.
    """
    span = Q.span(basis)
    return is_totally_isotropic(Q, basis) and set(orthogonal_complement(Q, basis)) == span
