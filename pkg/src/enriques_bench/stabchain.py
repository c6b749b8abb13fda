"""Deterministic Schreier-Sims for permutation groups on range(n).

Permutations are numpy integer arrays ``p`` with ``p[i]`` the image of i.
The product ``g * h`` (apply h first, then g) is ``g[h]``.
"""

from __future__ import annotations

import numpy as np


def identity_perm(n):
    return np.arange(n, dtype=np.int32)


def perm_inverse(p):
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv


def is_identity(p):
    return bool(np.array_equal(p, np.arange(len(p))))


class _Level:
    __slots__ = ("base", "gens", "trans", "trans_inv", "tested")

    def __init__(self, base, ident):
        self.base = base
        self.gens = []  # indices into the strong generating set
        self.trans = {base: ident}  # point -> coset representative u with u[base] = point
        self.trans_inv = {base: ident}
        self.tested = set()  # (point, generator index) Schreier pairs already sifted


class StabChain:
    """Base, strong generating set and transversals of a permutation group."""

    def __init__(self, degree):
        self.degree = degree
        self._ident = identity_perm(degree)
        self.strong_gens = []
        self.levels = []

    # ------------------------------------------------------------- queries

    @property
    def base(self):
        return [lv.base for lv in self.levels]

    def orbit_lengths(self):
        return [len(lv.trans) for lv in self.levels]

    def order(self):
        out = 1
        for lv in self.levels:
            out *= len(lv.trans)
        return out

    def sift(self, g, start=0):
        """Strip g through the chain; return (residue, level reached)."""
        h = g
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            beta = int(h[lv.base])
            u_inv = lv.trans_inv.get(beta)
            if u_inv is None:
                return h, i
            h = u_inv[h]
        return h, len(self.levels)

    def contains(self, g):
        h, i = self.sift(np.asarray(g, dtype=np.int32))
        return i == len(self.levels) and is_identity(h)

    # ----------------------------------------------------------- building

    def _extend_orbit(self, lv):
        pts = list(lv.trans)
        k = 0
        while k < len(pts):
            beta = pts[k]
            k += 1
            u_beta = lv.trans[beta]
            for gi in lv.gens:
                g = self.strong_gens[gi]
                gamma = int(g[beta])
                if gamma not in lv.trans:
                    u = g[u_beta]
                    lv.trans[gamma] = u
                    lv.trans_inv[gamma] = perm_inverse(u)
                    pts.append(gamma)

    def _add_strong_gen(self, y, depth):
        self.strong_gens.append(y)
        gi = len(self.strong_gens) - 1
        if depth == len(self.levels):
            moved = int(np.flatnonzero(y != self._ident)[0])
            self.levels.append(_Level(moved, self._ident))
        for i in range(depth + 1):
            self.levels[i].gens.append(gi)
            self._extend_orbit(self.levels[i])

    def _schreier_sims(self, i):
        while i >= 0:
            lv = self.levels[i]
            restart = None
            for beta in list(lv.trans):
                for gi in list(lv.gens):
                    if (beta, gi) in lv.tested:
                        continue
                    lv.tested.add((beta, gi))
                    g = self.strong_gens[gi]
                    gamma = int(g[beta])
                    h = lv.trans_inv[gamma][g[lv.trans[beta]]]
                    if is_identity(h):
                        continue
                    y, j = self.sift(h, i + 1)
                    if j < len(self.levels) or not is_identity(y):
                        self._add_strong_gen(y, j)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = min(restart, len(self.levels) - 1)

    def add_generator(self, g):
        g = np.asarray(g, dtype=np.int32)
        y, j = self.sift(g)
        if j == len(self.levels) and is_identity(y):
            return False
        self._add_strong_gen(y, j)
        self._schreier_sims(min(j, len(self.levels) - 1))
        return True


def build_chain(gens, degree):
    chain = StabChain(degree)
    for g in gens:
        chain.add_generator(g)
    return chain


def orbit(gens, point):
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen
