"""Harish-Chandra map, characters, central elements and the grading criterion."""

import itertools
import random
from fractions import Fraction

import pytest

from uvt.algebra import UElement
from uvt.cartan import type_a, unit
from uvt.centre import (
    CartanElement,
    CentreError,
    annihilator_split,
    av,
    av_expansion,
    casimir,
    central_solve,
    centre_UJi_check,
    criterion,
    decompose_UJ,
    hc_image_of_trace,
    hc_xi,
    is_central,
    is_weyl_invariant,
    lift_degree_eta,
    lift_functional,
    projection,
    rho_char,
    triangular_remainder,
    weyl_on_flat,
    z_lambda,
)
from uvt.scalars import ONE, ZERO, RationalFunction
from uvt import linalg
from conftest import SEED, group, pairing, random_element


def flat(*pairs):
    """CartanElement from (eta, coefficient) pairs, each term K'_eta K_-eta."""
    out = {}
    for eta, c in pairs:
        out[(tuple(eta), tuple(-x for x in eta))] = RationalFunction(c)
    return CartanElement(out)


@pytest.fixture(scope="module")
def z_a1():
    return z_lambda(group(1), (1,))


@pytest.fixture(scope="module")
def z_a2():
    return z_lambda(group(2), (1, 1))


# ---- xi and characters ----------------------------------------------

def test_xi_on_flat_monomial(qg2):
    d = qg2.datum
    for eta in [(1, 0), (1, -1), (2, 1)]:
        neg = tuple(-x for x in eta)
        u = qg2.cartan(eta, neg)
        got = hc_xi(qg2, u)
        assert got == CartanElement({(neg, eta): qg2.mono(-2 * d.dot(d.rho, eta), 0)})


def test_xi_examples(qg1):
    ef = qg1.E(0) * qg1.F(0)
    c = qg1.qdiff(0).inverse()
    assert projection(ef) == CartanElement.from_uelement((qg1.K(0) - qg1.Kp(0)).scale(c))
    assert not hc_xi(qg1, qg1.F(0) * qg1.K(0) * qg1.E(0))


def u0_element(qg, rng, terms=3):
    """A random element of U_0 (weight zero for the adjoint grading)."""
    out = qg.zero()
    n = qg.rank
    for _ in range(terms):
        y = tuple(rng.randrange(n) for _ in range(rng.randrange(3)))
        x = list(y)
        rng.shuffle(x)
        a = tuple(rng.randint(-1, 1) for _ in range(n))
        b = tuple(rng.randint(-1, 1) for _ in range(n))
        out = out + qg.f_word(y) * qg.cartan(a, b) * qg.e_word(tuple(x)).scale(RationalFunction(rng.randint(1, 3)))
    return out


@pytest.mark.parametrize("n", [1, 2])
def test_xi_is_multiplicative_on_u0(n):
    qg = group(n)
    rng = random.Random(SEED + n)
    for _ in range(8):
        u, w = u0_element(qg, rng), u0_element(qg, rng)
        assert hc_xi(qg, u * w) == hc_xi(qg, u) * hc_xi(qg, w)


def test_rho_char_examples(qg2):
    d = qg2.datum
    for i in range(2):
        ei = unit(2, i)
        k = CartanElement.from_uelement(qg2.K(i))
        # weight character on K_i, matching the module action
        assert rho_char(qg2, "plain", k, lam=(1, 1)) == qg2.mono(d.dot((1, 1), ei), d.antisym((1, 1), ei))
    one = CartanElement.from_uelement(qg2.one())
    assert rho_char(qg2, "pair", one, lam=(1, 0), mu=(0, 1)) == ONE
    for eta in [(1, 0), (1, 1), (-2, 1)]:
        assert rho_char(qg2, "zero", flat((eta, 1)), mu=(3, -1)) == ONE
    with pytest.raises(CentreError):
        rho_char(qg2, "bogus", one)


def test_weyl_action_examples(qg2):
    d = qg2.datum
    w = d.weyl_group
    for i in range(2):
        a = unit(2, i)
        na = tuple(-x for x in a)
        assert weyl_on_flat(d, w.generators[i], flat((a, 1))) == flat((na, 1))
    u = flat(((1, 0), 1), ((1, 1), 2))
    assert weyl_on_flat(d, w.elements[0], u) == u
    with pytest.raises(CentreError):
        weyl_on_flat(d, w.generators[0], CartanElement.from_uelement(qg2.K(0)))


@pytest.mark.parametrize("n", [1, 2])
def test_weyl_equivariance_of_characters(n):
    qg = group(n)
    d = qg.datum
    w = d.weyl_group
    rng = random.Random(SEED)
    for _ in range(10):
        lam = tuple(rng.randint(-2, 2) for _ in range(n))
        mu = tuple(rng.randint(-2, 2) for _ in range(n))
        g = rng.choice(w.elements)
        u = flat(*[(tuple(rng.randint(-2, 2) for _ in range(n)), rng.randint(1, 4)) for _ in range(3)])
        left = rho_char(qg, "pair", u, lam=w.act(g, lam), mu=mu)
        right = rho_char(qg, "pair", weyl_on_flat(d, w.inverse(g), u), lam=lam, mu=mu)
        assert left == right


def test_characters_separate_cartan_monomials(qg2):
    probes = [((0, 0), unit(2, i)) for i in range(2)] + [(unit(2, i), (0, 0)) for i in range(2)]
    seen = {}
    for eta in itertools.product(range(-1, 2), repeat=2):
        for phi in itertools.product(range(-1, 2), repeat=2):
            u = CartanElement({(eta, phi): ONE})
            vec = tuple(rho_char(qg2, "pair", u, lam=lam, mu=mu) for lam, mu in probes)
            assert vec not in seen
            seen[vec] = (eta, phi)


# ---- centrality -----------------------------------------------------

def test_is_central_examples(qg1, qg2):
    assert is_central(qg1, qg1.one())
    assert not is_central(qg1, qg1.E(0))
    assert is_central(qg1, casimir(qg1))
    assert not is_central(qg2, qg2.K(0))


def test_casimir_forms(qg1):
    assert casimir(qg1, 0, "EF") == casimir(qg1, 0, "FE")
    y = casimir(qg1)
    for g in (qg1.E(0), qg1.F(0), qg1.K(0), qg1.Kp(0)):
        assert g * y == y * g


def test_lift_functional_zero_and_cartan(qg1):
    P = pairing(1)
    assert not lift_functional(P, [[ZERO]], (1,), (1,), (0,), (0,))
    assert lift_functional(P, [[ONE]], (0,), (0,), (1,), (-1,)) == qg1.cartan((-1,), (1,))


@pytest.mark.parametrize("mu, nu", [((1,), (1,)), ((2,), (1,)), ((1,), (2,))])
def test_lift_functional_defining_identity(mu, nu):
    qg = group(1)
    P = pairing(1)
    fw, ew = qg.f_basis(mu), qg.e_basis(nu)
    psi = [[RationalFunction(1 + r + 2 * s) for s in range(len(ew))] for r in range(len(fw))]
    eta, phi = (1,), (-2,)
    u = lift_functional(P, psi, mu, nu, eta, phi)
    for eta1 in [(0,), (1,), (-1,)]:
        for phi1 in [(0,), (2,)]:
            for r, y in enumerate(fw):
                for s, x in enumerate(ew):
                    probe = UElement(qg, {(y, phi1, (eta1[0] - mu[0],), x): ONE})
                    want = P.cartan_pair(eta1, phi) * P.cartan_pair(eta, phi1) * psi[r][s]
                    assert P.ad_form(u, probe) == want


# ---- z_lambda -------------------------------------------------------

def test_z_zero_is_one(qg2):
    z = z_lambda(qg2, (0, 0))
    assert z.certified and z.element == qg2.one()


def test_z_lambda_a1(z_a1):
    qg = group(1)
    assert z_a1.certified
    assert hc_xi(qg, z_a1.element) == flat(((1,), 1), ((0,), 1), ((-1,), 1))
    assert z_a1.degree == ((0,), (0,))


def test_z_lambda_a2(z_a2):
    qg = group(2)
    d = qg.datum
    assert z_a2.certified
    xi = hc_xi(qg, z_a2.element)
    assert xi == hc_image_of_trace(d, (1, 1))
    assert xi.terms[((0, 0), (0, 0))] == RationalFunction(2)
    assert len(xi.terms) == 7
    assert is_weyl_invariant(d, xi)


def test_z_lambda_rejects_bad_weights(qg2):
    with pytest.raises(CentreError):
        z_lambda(qg2, (-1, 1))
    with pytest.raises(CentreError):
        z_lambda(qg2, (Fraction(2, 3), Fraction(1, 3)))


@pytest.mark.parametrize("n, lam", [(1, (0,)), (1, (1,)), (1, (3,)), (2, (1, 1)), (2, (2, 1)), (3, (1, 1, 1))])
def test_trace_image_is_weyl_invariant(n, lam):
    d = type_a(n)
    img = hc_image_of_trace(d, lam)
    assert is_weyl_invariant(d, img)
    assert sum(int(str(c)) for c in img.terms.values()) == d.weyl_dimension(lam)


def test_av_examples():
    d = type_a(1)
    assert av(d, (0,)) == flat(((0,), 1))
    assert av(d, (1,)) == flat(((1,), Fraction(1, 2)), ((-1,), Fraction(1, 2)))
    for n in (1, 2, 3):
        d = type_a(n)
        lam = tuple([1] * n)
        assert is_weyl_invariant(d, av(d, lam))


@pytest.mark.parametrize("n, lam", [(1, (1,)), (1, (2,)), (2, (1, 1)), (2, (2, 2)), (3, (1, 2, 1))])
def test_av_triangularity(n, lam):
    d = type_a(n)
    img = hc_image_of_trace(d, lam)
    w = d.weyl_group.order
    coeff = RationalFunction(w // d.weyl_group.stabilizer_size(lam))
    rest = triangular_remainder(d, img, lam, coeff)
    assert rest is not None
    # reassembling the expansion gives back the image
    total = av(d, lam).scale(coeff)
    for mu, c in av_expansion(d, img - av(d, lam).scale(coeff)).items():
        total = total + av(d, mu).scale(c)
    assert total == img


def test_av_expansion_needs_invariance():
    d = type_a(1)
    with pytest.raises(CentreError):
        av_expansion(d, flat(((1,), 1)))


def test_xi_injective_on_constructed_centrals(z_a1):
    qg = group(1)
    zs = [z_lambda(qg, (0,)).element, z_a1.element, z_lambda(qg, (2,)).element]
    images = [hc_xi(qg, z) for z in zs]
    keys = sorted({k for im in images for k in im.terms})
    mat = [[im.terms.get(k, ZERO) for k in keys] for im in images]
    assert linalg.rank(mat) == len(zs)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_a_maps_jointly_nonvanishing(n):
    qg = group(n)
    for nu in itertools.product(range(5), repeat=n):
        if not 0 < sum(nu) <= 4:
            continue
        for y in qg.f_basis(nu):
            fy = qg.f_word(y)
            assert any(qg.commutation_maps(fy, i)[0] for i in range(n))


# ---- the grading criterion ------------------------------------------

def test_criterion_a1():
    qg = group(1)
    rep = criterion(qg, solve=False)
    assert rep["kernel_basis"] == ["a1"]
    assert all(c["central"] for c in rep["certified_elements"])
    assert len(rep["certified_elements"]) == 2


def test_criterion_a3_kernel():
    qg = group(3)
    rep = criterion(qg, solve=False)
    assert rep["kernel_basis"] == ["a1+a3"]
    assert rep["certified_elements"][0]["central"]
    assert rep["counterexamples"] == []


def test_central_solve_small_window_a2():
    qg = group(2)
    for eta in [(1, 0), (1, 1), (0, -1)]:
        res = central_solve(qg, eta, mu_max=1, box=1)
        assert res.nullity == 0 and res.unknowns > 0


def test_central_solve_finds_kernel_element():
    qg = group(1)
    res = central_solve(qg, (1,), mu_max=1, box=1)
    assert res.nullity >= 1
    assert all(is_central(qg, e) for e in res.elements)


def test_lift_degree_eta_rank_one():
    d = type_a(1)
    z = lift_degree_eta(d, (1,))
    assert z.certified
    assert z.degree == ((1,), (1,))
    with pytest.raises(CentreError):
        lift_degree_eta(type_a(2), (1, 0))


# ---- U_J ------------------------------------------------------------

def test_decompose_examples(qg2):
    e1, e2 = qg2.E(0), qg2.E(1)
    assert decompose_UJ(qg2, [0], e2) == (qg2.zero(), e2)
    assert decompose_UJ(qg2, [0], e1) == (e1, qg2.zero())
    assert decompose_UJ(qg2, [], e1) == (qg2.zero(), e1)
    u = random_element(qg2, random.Random(SEED), terms=4)
    assert decompose_UJ(qg2, [0, 1], u) == (u, qg2.zero())
    a, r = decompose_UJ(qg2, [0], u)
    assert a + r == u


@pytest.mark.parametrize("gamma", [(1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_annihilator_split_a2(gamma):
    rep = annihilator_split(group(2), [0], gamma)
    assert rep["direct_sum"]


def test_uji_report(z_a2):
    qg = group(2)
    rep = centre_UJi_check(qg, 0, zs=[z_a2.element])
    assert rep["X_central"] and rep["Y_central"] and rep["Y_forms_agree"]
    assert rep["u_j_components"] == [{"xi_equal": True, "component_central_in_UJ": True}]
    assert all(any(c["central"].values()) for c in rep["condition_elements"])


def test_uji_a3_middle_node():
    qg = group(3)
    rep = centre_UJi_check(qg, 1, box=1, kmax=0)
    zero_k = [c for c in rep["condition_elements"] if c["k"] == 0]
    assert zero_k and all(c["central"]["K_i^k"] for c in zero_k)
