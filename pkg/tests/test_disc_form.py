import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from enriques_bench.disc_form import (
    FinIsometry,
    GlueData,
    GlueError,
    disc_group,
    glue_from_lifts,
    gluing_examples,
    induced_disc_isometry,
    nikulin_extends,
    overlattice_gram,
    smith_normal_form,
    transport_check,
    transport_to_f2,
)
from enriques_bench.lattice import IntLattice, LatIsometry, e8, e10, e10_roots, random_reflection_word, rescale, u
from enriques_bench.ortho_f2 import O_PLUS_10_2, F2Map, QuadSpaceF2, group_order, reduce_mod2
from enriques_bench.stabchain import build_chain
from oracles import det_fraction, invariant_factors


@st.composite
def even_lattices(draw, max_rank=3):
    n = draw(st.integers(1, max_rank))
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2 * draw(st.integers(-3, 3))
        for j in range(i + 1, n):
            g[i][j] = g[j][i] = draw(st.integers(-3, 3))
    assume(det_fraction(g) != 0)
    return IntLattice(g)


@settings(max_examples=200)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_normal_form_against_determinantal_divisors(m, n, data):
    a = [[data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(m)]
    U, D, V = smith_normal_form(a)
    assert (np.array(U, dtype=object).dot(np.array(a, dtype=object)).dot(np.array(V, dtype=object)) == np.array(D, dtype=object)).all()
    assert abs(det_fraction(U)) == 1 and abs(det_fraction(V)) == 1
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    nonzero = [d for d in diag if d]
    assert nonzero == invariant_factors(a)
    assert all(d >= 0 for d in diag)


@settings(max_examples=150)
@given(even_lattices())
def test_group_order_is_abs_det_and_form_is_consistent(L):
    M = disc_group(L)
    assert M.order == abs(det_fraction(L.gram))
    assert list(M.invariants) == [d for d in invariant_factors(L.gram) if d != 1]
    elems = M.elements()
    rng = random.Random(0)
    for _ in range(20):
        x, y = rng.choice(elems), rng.choice(elems)
        diff = M.q(M.add(x, y)) - M.q(x) - M.q(y) - 2 * M.b(x, y)
        assert diff.denominator == 1 and diff.numerator % 2 == 0


def test_unimodular_groups_are_trivial():
    for L in (u(), e8(), e10()):
        assert disc_group(L).order == 1


def test_rank_one_example():
    M = disc_group(IntLattice([[2]]))
    assert M.invariants == (2,)
    assert M.q(M.gen(0)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        disc_group(IntLattice([[0, 0], [0, 0]]))


def test_e10_rescaled_is_two_elementary():
    M = disc_group(rescale(e10(), 2))
    assert M.invariants == (2,) * 10 and M.order == 1024


def test_minus_identity_acts_trivially_on_two_elementary_group():
    L = rescale(e10(), 2)
    M = disc_group(L)
    assert induced_disc_isometry(M, L.identity()).is_identity()
    assert induced_disc_isometry(M, -L.identity()).is_identity()


@pytest.fixture(scope="module")
def e10_2():
    L = rescale(e10(), 2)
    return L, disc_group(L), QuadSpaceF2.e10()


def test_transport_matches_f2_form(e10_2):
    _, M, Q = e10_2
    assert transport_check(M, Q)
    bars = transport_to_f2(M)
    for x in itertools.islice(M.elements(), 0, 1024, 7):
        v = 0
        for a, bar in zip(x, bars):
            if a:
                v ^= bar
        assert M.q(x) == Q.qv(v)


def _to_bits(y, bars):
    img = 0
    for a, bar in zip(y, bars):
        if a:
            img ^= bar
    return img


def test_induced_action_matches_mod2_reduction(e10_2):
    L, M, Q = e10_2
    bars = transport_to_f2(M)
    # coordinates of each standard F2 basis vector in terms of the bars
    coords = {_to_bits(x, bars): x for x in M.elements()}
    rng = random.Random(4)
    roots = e10_roots()
    transported, reduced = [], []
    for _ in range(200):
        w = random_reflection_word(e10(), roots, rng, rng.randint(1, 8))
        g = induced_disc_isometry(M, LatIsometry(L, w.matrix))
        cols = [_to_bits(g(coords[1 << i]), bars) for i in range(10)]
        transported.append(F2Map(Q, cols))
        reduced.append(reduce_mod2(w, Q))
    # the discriminant action of v/2 is the mod-2 action on v-bar
    assert transported == reduced
    order = group_order(transported)
    assert O_PLUS_10_2 % order == 0


def test_induced_action_group_on_all_elements(e10_2):
    L, M, Q = e10_2
    rng = random.Random(8)
    roots = e10_roots()
    index = {x: i for i, x in enumerate(M.elements())}
    perms, words = [], []
    for _ in range(6):
        w = random_reflection_word(e10(), roots, rng, rng.randint(1, 8))
        words.append(w)
        g = induced_disc_isometry(M, LatIsometry(L, w.matrix))
        perms.append(np.array([index[g(x)] for x in M.elements()], dtype=np.int32))
        assert all(M.q(g(x)) == M.q(x) for x in M.elements())
    order = build_chain(perms, M.order).order()
    assert order == group_order([reduce_mod2(w, Q) for w in words])


def test_fin_isometry_rejects_non_isometries():
    M = disc_group(IntLattice([[2, 0], [0, 4]]))
    with pytest.raises(ValueError):
        FinIsometry(M, [(0, 1), (1, 0)])


# ------------------------------------------------------------------ gluing


def _u_search(sign_s, sign_k, bound=3):
    """Integer 2x2 matrices preserving U that act by the given signs on
    s = e + f and k = e - f."""
    G = np.array([[0, 1], [1, 0]])
    s, k = np.array([1, 1]), np.array([1, -1])
    found = []
    for entries in itertools.product(range(-bound, bound + 1), repeat=4):
        m = np.array(entries).reshape(2, 2)
        if (m.T @ G @ m == G).all() and (m @ s == sign_s * s).all() and (m @ k == sign_k * k).all():
            found.append(m)
    return found


def _extends_by_integrality(S, K, glue_vectors, alpha, beta):
    """The extension of alpha + beta to the rational span is unique; it lifts
    exactly when it maps every glue vector into the overlattice."""
    n = S.rank + K.rank
    gens = [sp.Matrix([int(i == j) for j in range(n)]) for i in range(n)]
    gens += [sp.Matrix([sp.Rational(str(x)) for x in v]) for v in glue_vectors]
    A = sp.Matrix.hstack(*gens)
    # Z-basis of the overlattice from the Hermite form of the scaled generators
    den = sp.ilcm(*[x.q for x in A])
    H = (A * den).T.applyfunc(int)
    from sympy.matrices.normalforms import hermite_normal_form

    B = hermite_normal_form(H.T).T / den
    basis = sp.Matrix([B.row(i) for i in range(B.rows) if any(B.row(i))]).T
    g = sp.diag(sp.Matrix(alpha), sp.Matrix(beta))
    for v in gens[n:]:
        coords = basis.solve(g * v)
        if any(c.q != 1 for c in coords):
            return False
    return True


def test_u_gluing_against_exhaustive_search():
    cases = [c for c in gluing_examples() if c["name"].startswith("<2>+<-2>")]
    assert len(cases) == 4
    for case in cases:
        a = int(case["alpha"].matrix[0, 0])
        b = int(case["beta"].matrix[0, 0])
        realized = bool(_u_search(a, b))
        assert realized
        assert nikulin_extends(case["glue"], case["alpha"], case["beta"]) == realized == case["expected"]


def test_all_gluing_examples():
    verdicts = [nikulin_extends(c["glue"], c["alpha"], c["beta"]) for c in gluing_examples()]
    assert verdicts == [c["expected"] for c in gluing_examples()]
    assert verdicts[0] is True and verdicts[-1] is False


def _signed_permutations(n):
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            m = [[0] * n for _ in range(n)]
            for i, p in enumerate(perm):
                m[p][i] = signs[i]
            yield m


def test_rank_four_glue_against_integrality_oracle():
    S = IntLattice([[2, 0], [0, 2]])
    K = IntLattice([[-2, 0], [0, -2]])
    glue = glue_from_lifts(S, K, [(["1/2", 0], ["1/2", 0]), ([0, "1/2"], [0, "1/2"])])
    vectors = [["1/2", 0, "1/2", 0], [0, "1/2", 0, "1/2"]]
    seen = set()
    for a in _signed_permutations(2):
        for b in _signed_permutations(2):
            ours = nikulin_extends(glue, LatIsometry(S, a), LatIsometry(K, b))
            assert ours == _extends_by_integrality(S, K, vectors, a, b)
            seen.add(ours)
    assert seen == {True, False}


def test_verdict_is_invariant_under_conjugation_by_glue_preserving_pairs():
    S = IntLattice([[2, 0], [0, 2]])
    K = IntLattice([[-2, 0], [0, -2]])
    glue = glue_from_lifts(S, K, [(["1/2", 0], ["1/2", 0]), ([0, "1/2"], [0, "1/2"])])
    swap = [[0, 1], [1, 0]]
    conj = [(LatIsometry(S, swap), LatIsometry(K, swap)), (LatIsometry(S, [[-1, 0], [0, 1]]), K.identity())]
    for a in _signed_permutations(2):
        for b in _signed_permutations(2):
            A, B = LatIsometry(S, a), LatIsometry(K, b)
            v = nikulin_extends(glue, A, B)
            for s, t in conj:
                sinv = LatIsometry(S, np.array(sp.Matrix(s.matrix.tolist()).inv().tolist(), dtype=object))
                tinv = LatIsometry(K, np.array(sp.Matrix(t.matrix.tolist()).inv().tolist(), dtype=object))
                assert nikulin_extends(glue, s @ A @ sinv, t @ B @ tinv) == v


def test_overlattice_of_u_gluing_is_unimodular():
    S, K = IntLattice([[2]]), IntLattice([[-2]])
    glue = glue_from_lifts(S, K, [(["1/2"], ["1/2"])])
    gram, basis = overlattice_gram(S, K, glue)
    assert abs(det_fraction(gram)) == 1
    assert all(gram[i][i] % 2 == 0 for i in range(2))


def test_malformed_glue_is_rejected():
    S, K = IntLattice([[2]]), IntLattice([[2]])
    with pytest.raises(GlueError):
        glue_from_lifts(S, K, [(["1/2"], ["1/2"])])  # q_S + q_K = 1, not isotropic
    Sd = disc_group(IntLattice([[2]]))
    Kd = disc_group(IntLattice([[-2]]))
    with pytest.raises(GlueError):
        GlueData(Sd, Kd, [(1,)], [])
