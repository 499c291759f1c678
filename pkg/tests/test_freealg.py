"""The free algebra, its twisted coproduct and its bilinear form."""

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uvt import linalg
from uvt.cartan import type_a
from uvt.freealg import FreeAlgebra, FreeElement, TensorElement, render_free, words_of_degree
from uvt.scalars import ONE, T, V, ZERO, monomial, quantum_integer, specialize_t_one
from conftest import SEED, group, pairing


@pytest.fixture(scope="module")
def fa1():
    return FreeAlgebra(type_a(1))


@pytest.fixture(scope="module")
def fa2():
    return FreeAlgebra(type_a(2))


def th(*w):
    return FreeElement.word(tuple(w))


def degrees_up_to(rank, total):
    for nu in itertools.product(range(total + 1), repeat=rank):
        if 0 < sum(nu) <= total:
            yield nu


# ---- products and the coproduct -----------------------------------


def test_free_multiply_basics():
    assert th(0) * th(1) == th(0, 1)
    assert FreeElement.one() * th(0, 1) == th(0, 1)
    assert (th(0) + th(1)) * th(0) == th(0, 0) + th(1, 0)
    x = th(0, 1).scale(V) + th(1, 1)
    assert sum((x.component(nu) for nu in x.degrees(2)), FreeElement()) == x


def test_twisted_tensor_product(fa1, fa2):
    a = TensorElement({((), (0,)): ONE})
    b = TensorElement({((0,), ()): ONE})
    assert fa1.twisted_tensor_multiply(a, b) == TensorElement({((0,), (0,)): V ** 2})
    x = TensorElement({((0,), ()): ONE})
    assert fa2.twisted_tensor_multiply(x, b) == TensorElement({((0, 0), ()): ONE})
    # bilinear in the degrees
    assert fa2.twist((1, 0), (1, 1)) == fa2.twist((1, 0), (1, 0)) * fa2.twist((1, 0), (0, 1))


def test_coproduct_examples(fa1):
    assert fa1.coproduct_r(th(0)) == TensorElement({((0,), ()): ONE, ((), (0,)): ONE})
    assert fa1.coproduct_r(FreeElement.one()) == TensorElement({((), ()): ONE})
    assert fa1.coproduct_r(th(0, 0)) == TensorElement(
        {((0, 0), ()): ONE, ((0,), (0,)): ONE + V ** 2, ((), (0, 0)): ONE}
    )


@given(st.lists(st.integers(0, 1), max_size=3), st.lists(st.integers(0, 1), max_size=3))
def test_coproduct_multiplicative(x, y):
    fa = group(2).free
    lhs = fa.coproduct_r(th(*x) * th(*y))
    rhs = fa.twisted_tensor_multiply(fa.coproduct_r(th(*x)), fa.coproduct_r(th(*y)))
    assert lhs == rhs


# ---- derivations ----------------------------------------------------


def test_r_i_examples(fa1, fa2):
    assert fa2.r_i_map(th(0), 0) == FreeElement.one()
    assert fa2.r_i_map(th(1), 0) == FreeElement()
    assert fa2.r_i_map(FreeElement.one(), 0) == FreeElement()
    assert fa1.r_i_map(th(0, 0), 0) == th(0).scale(ONE + V ** 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_r_i_is_theta_i_component_of_r(n):
    fa = group(n).free
    for nu in degrees_up_to(n, 4):
        for w in words_of_degree(nu):
            r = fa.coproduct_r(th(*w))
            for i in range(n):
                comp = FreeElement({x1: c for (x1, x2), c in r.terms.items() if x2 == (i,)})
                assert comp == fa.r_i_map(th(*w), i, "right")
                left = FreeElement({x2: c for (x1, x2), c in r.terms.items() if x1 == (i,)})
                assert left == fa.r_i_map(th(*w), i, "left")


# ---- the bilinear form ----------------------------------------------


def test_pairing_examples(fa1, fa2):
    for i in range(2):
        assert fa2.pair_words((i,), (i,)) == (ONE - V ** -2).inverse()
    assert fa2.pair_words((0,), (1,)) == ZERO
    assert fa2.pair_words((), ()) == ONE
    assert fa1.pair_words((0, 0), (0, 0)) == (ONE + V ** 2) * T ** 2 * (ONE - V ** -2) ** -2


@pytest.mark.parametrize("n, total", [(1, 5), (2, 5), (3, 4)])
def test_pairing_symmetric_and_two_routes_agree(n, total):
    fa = group(n).free
    for nu in degrees_up_to(n, total):
        ws = words_of_degree(nu)
        rng = random.Random(SEED + sum(nu))
        sample = [(rng.choice(ws), rng.choice(ws)) for _ in range(6)]
        for x, y in sample:
            assert fa.pair_words(x, y) == fa.pair_words(y, x)
            assert fa.pair_words(x, y) == fa.pair_words_via_coproduct(x, y)


def test_mismatched_degrees_pair_to_zero(fa2):
    assert fa2.pair_words((0, 1), (0, 0)) == ZERO
    assert fa2.pairing(th(0) + th(1, 1), th(1)) == ZERO


def _bracket_exponent(datum, w):
    n = datum.rank
    e = 0
    for k in range(len(w)):
        for l in range(k + 1, len(w)):
            ek = tuple(int(i == w[k]) for i in range(n))
            el = tuple(int(i == w[l]) for i in range(n))
            e += datum.square(ek, el)
    return -2 * e


@pytest.mark.parametrize("n, total", [(1, 5), (2, 4), (3, 3)])
def test_free_form_matches_skew_pairing(n, total):
    """(F_y, E_x) = (-v^-1)^tr(nu) t^{-2 sum_{k<l} [y_k, y_l]} (th_y, th_x)."""
    qg = group(n)
    P = pairing(n)
    for nu in degrees_up_to(n, total):
        for y in words_of_degree(nu):
            factor = monomial(-sum(nu), _bracket_exponent(qg.datum, y)) * (-1) ** sum(nu)
            for x in words_of_degree(nu):
                assert P.pair_words(y, x) == factor * qg.free.pair_words(y, x)


# ---- Serre elements and graded bases ---------------------------------


def test_serre_element_a2(fa2):
    s = fa2.serre_element(0, 1)
    two = quantum_integer(2)
    expected = (
        th(1, 0, 0).scale(two.inverse())
        - th(0, 1, 0).scale(T ** -2)
        + th(0, 0, 1).scale(T ** -2 * two.inverse())
    )
    assert s == expected
    with pytest.raises(ValueError):
        fa2.serre_element(1, 1)


def test_serre_element_orthogonal_pair():
    fa = FreeAlgebra(type_a(3))
    s = fa.serre_element(0, 2)
    assert len(s.terms) == 2
    assert s.degrees(3) == {(1, 0, 1)}
    assert fa.in_radical(s)


def test_serre_specializes_to_one_parameter(fa2):
    s = fa2.serre_element(0, 1)
    vals = {w: specialize_t_one(c) for w, c in s.terms.items()}
    b = (V + V.inverse()).inverse()
    assert vals == {(1, 0, 0): b, (0, 1, 0): -ONE, (0, 0, 1): b}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_serre_in_radical(n):
    fa = group(n).free
    for i, j in itertools.permutations(range(n), 2):
        s = fa.serre_element(i, j)
        (nu,) = s.degrees(n)
        for w in words_of_degree(nu):
            assert fa.pairing(s, th(*w)) == ZERO


def test_graded_basis_examples(fa2):
    gb = fa2.graded_basis((1, 1))
    assert sorted(gb.words) == [(0, 1), (1, 0)] and gb.rank == 2 and gb.radical_dim == 0
    gb = fa2.graded_basis((2, 1))
    assert len(gb.words) == 3 and gb.rank == 2 and gb.radical_dim == 1
    # the radical is spanned by the Serre element
    kernel = linalg.nullspace(gb.gram)
    assert len(kernel) == 1
    s = fa2.serre_element(0, 1)
    vec = [s.terms.get(w, ZERO) for w in gb.words]
    assert linalg.rank([kernel[0], vec]) == 1
    assert fa2.graded_basis((1, 0)).rank == 1


def kostant_partitions(datum, nu):
    """Number of ways to write nu as a sum of positive roots (PBW dimension)."""
    roots = datum.positive_roots

    def count(rem, k):
        if not any(rem):
            return 1
        if k == len(roots):
            return 0
        r = roots[k]
        total, cur = 0, tuple(rem)
        while all(x >= 0 for x in cur):
            total += count(cur, k + 1)
            cur = tuple(a - b for a, b in zip(cur, r))
        return total

    return count(tuple(nu), 0)


@pytest.mark.parametrize("n, total", [(1, 5), (2, 5), (3, 4)])
def test_graded_dims_match_pbw(n, total):
    fa = group(n).free
    for nu in degrees_up_to(n, total):
        gb = fa.graded_basis(nu)
        assert gb.rank == kostant_partitions(fa.datum, nu)
        assert gb.rank + gb.radical_dim == len(words_of_degree(nu))


def test_reduce_is_identity_modulo_radical(fa2):
    rng = random.Random(SEED)
    for _ in range(10):
        w = tuple(rng.randrange(2) for _ in range(rng.randint(1, 4)))
        x = th(*w)
        r = fa2.reduce(x)
        assert fa2.in_radical(x - r)
        assert all(b in fa2.graded_basis(fa2.deg(w)).basis for b in r.terms)


def test_render_free():
    assert render_free(th(0, 1) + th(1).scale(V)) in ("th1*th2 + v*th2", "v*th2 + th1*th2")
