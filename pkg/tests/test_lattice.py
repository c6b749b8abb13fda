import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enriques_bench.lattice import (
    IntLattice,
    LatIsometry,
    direct_sum,
    e8,
    e10,
    e10_roots,
    inner,
    random_reflection_word,
    reflect,
    rescale,
    u,
)
from oracles import det_fraction, e10_gram


def test_e10_invariants():
    L = e10()
    assert L.rank == 10
    assert L.det() == -1
    assert det_fraction(e10_gram()) == -1
    assert L.signature() == (1, 9)
    assert all(L.gram[i, i] % 2 == 0 for i in range(10))


def test_e8_block_has_e8_dynkin_shape():
    # off-diagonal entries of the E8 block form a tree with one branch
    # vertex whose arms have lengths 1, 2 and 4
    g = e10().gram
    assert [[int(x) for x in row[:2]] for row in g[:2]] == [[0, 1], [1, 0]]
    assert not g[:2, 2:].any()
    block = g[2:, 2:]
    edges = {(i, j) for i in range(8) for j in range(i + 1, 8) if block[i, j]}
    assert all(block[i, j] == 1 for i, j in edges) and len(edges) == 7
    nbrs = {i: {j for e in edges for j in e if i in e and j != i} for i in range(8)}
    branch = [i for i in range(8) if len(nbrs[i]) == 3]
    assert len(branch) == 1 and all(len(nbrs[i]) <= 3 for i in range(8))

    def arm(start, prev):
        n, cur = 1, start
        while True:
            nxt = nbrs[cur] - {prev}
            if not nxt:
                return n
            prev, cur = cur, nxt.pop()
            n += 1

    b = branch[0]
    assert sorted(arm(v, b) for v in nbrs[b]) == [1, 2, 4]
    assert det_fraction(block) == det_fraction(e10_gram()[2:, 2:]) == 1


def test_u_and_e8_examples():
    U = u()
    assert inner(U, [1, 0], [0, 1]) == 1
    assert inner(U, [1, 0], [1, 0]) == 0
    assert inner(U, [1, 1], [1, 1]) == 2
    E = e8()
    assert all(E.norm(E.basis(i)) == -2 for i in range(8))
    assert E.det() == 1


def test_rescale_determinant():
    assert rescale(e10(), 2).det() == -(2**10)
    with pytest.raises(ValueError):
        rescale(e10(), 0)


def test_rejects_odd_or_asymmetric_gram():
    with pytest.raises(ValueError):
        IntLattice([[1]])
    with pytest.raises(ValueError):
        IntLattice([[2, 1], [0, 2]])


def test_reflection_examples():
    L = e10()
    a = L.vec([1, -1] + [0] * 8)
    s = reflect(L, a)
    assert list(s(a)) == list(-a)
    assert (s @ s).is_identity()
    with pytest.raises(ValueError):
        reflect(L, L.vec([1, 0] + [0] * 8))


def test_random_reflection_products_are_isometries():
    L = e10()
    roots = e10_roots()
    rng = random.Random(7)
    for _ in range(200):
        g = random_reflection_word(L, roots, rng, rng.randint(1, 12))
        m = np.array(g.matrix, dtype=object)
        assert (m.T.dot(L.gram).dot(m) == L.gram).all()


@settings(max_examples=100)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=8), st.lists(st.integers(0, 9), min_size=1, max_size=8))
def test_isometries_closed_under_products(w1, w2):
    L = e10()
    roots = e10_roots()
    g = L.identity()
    for i in w1:
        g = reflect(L, roots[i]) @ g
    h = L.identity()
    for i in w2:
        h = reflect(L, roots[i]) @ h
    prod = g @ h
    assert isinstance(prod, LatIsometry)
    LatIsometry(L, prod.matrix)  # validator re-checks M^T G M = G


def test_direct_sum_block_structure():
    S = direct_sum(u(), u())
    assert S.rank == 4 and S.det() == 1
