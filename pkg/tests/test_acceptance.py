"""The fourteen acceptance criteria, one PASS/FAIL line each.

Run under pytest (``pytest tests/test_acceptance.py -v``) or directly
(``python tests/test_acceptance.py``).  Every comparison is exact equality
in Q(v,t).
"""

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import SEED, group, pairing, random_monomial  # noqa: E402
from uvt import linalg  # noqa: E402
from uvt.algebra import star_relations  # noqa: E402
from uvt.cartan import type_a  # noqa: E402
from uvt.centre import (  # noqa: E402
    annihilator_split,
    av,
    casimir,
    criterion,
    decompose_UJ,
    hc_image_of_trace,
    hc_xi,
    is_central,
    is_weyl_invariant,
    triangular_remainder,
    weyl_on_flat,
    xi_J,
    z_lambda,
)
from uvt.freealg import FreeElement, words_of_degree  # noqa: E402
from uvt.repmod import simple_module, singular_check, theta  # noqa: E402
from uvt.scalars import ONE, ZERO, RationalFunction  # noqa: E402

TYPES = (1, 2, 3)


def compositions(rank, lo, hi):
    for nu in itertools.product(range(hi + 1), repeat=rank):
        if lo <= sum(nu) <= hi:
            yield nu


_Z = {}


def central_z(n, lam):
    """z_lambda, cached across criteria 7, 8, 13 and 14."""
    key = (n, tuple(lam))
    if key not in _Z:
        _Z[key] = z_lambda(group(n), lam)
    return _Z[key]


# ---------------------------------------------------------------------------
# the criteria; each returns (ok, detail)
# ---------------------------------------------------------------------------


def serre_in_radical():
    checked = 0
    for n in TYPES:
        fa = group(n).free
        for i, j in itertools.permutations(range(n), 2):
            s = fa.serre_element(i, j)
            (nu,) = s.degrees(n)
            for w in words_of_degree(nu):
                if fa.pairing(s, FreeElement.word(w)) != ZERO:
                    return False, f"A{n} ({i+1},{j+1}) pairs nontrivially with {w}"
                checked += 1
    return True, f"{checked} word pairings vanish"


def _bounded_triple(qg, rng, total=4):
    """Three random monomials whose E- and F-words have total length <= total."""
    while True:
        a, b, c = (random_monomial(qg, rng, 2) for _ in range(3))
        size = 0
        for m in (a, b, c):
            ((y, _, _, x),) = m.terms
            size += len(y) + len(x)
        if size <= total:
            return a, b, c


def normal_form_soundness():
    for n in TYPES:
        qg = group(n)
        for i, j in itertools.permutations(range(n), 2):
            s = qg.free.serre_element(i, j)
            if qg.from_free_e(s) or qg.from_free_f(s):
                return False, f"A{n} Serre image ({i+1},{j+1}) is nonzero"
    rng = random.Random(SEED)
    for k in range(200):
        qg = group(TYPES[k % 3])
        a, b, c = _bounded_triple(qg, rng)
        if (a * b) * c != a * (b * c):
            return False, f"associativity fails on {a!r}, {b!r}, {c!r}"
    return True, "Serre images vanish on A1-A3; 200 triples associate"


def hopf_axioms():
    rng = random.Random(SEED + 3)
    count = 0
    for n in TYPES:
        qg = group(n)
        gens = [g for _, g in qg.generators()]
        samples = gens + [random_monomial(qg, rng, 2) for _ in range(100 // len(TYPES) + 1)]
        for u in samples:
            d = qg.coproduct(u)
            if qg.tensor_coproduct(d, 0) != qg.tensor_coproduct(d, 1):
                return False, f"coassociativity fails on {u!r}"
            left, right = qg.zero(), qg.zero()
            for (k1, k2), c in d.terms.items():
                left = left + qg.element({k2: c * qg.counit(qg.element({k1: ONE}))})
                right = right + qg.element({k1: c * qg.counit(qg.element({k2: ONE}))})
            if left != u or right != u:
                return False, f"counit fails on {u!r}"
            eps = qg.scalar(qg.counit(u))
            if qg.tensor_apply(d, 0, qg.antipode).contract() != eps or qg.tensor_apply(d, 1, qg.antipode).contract() != eps:
                return False, f"antipode fails on {u!r}"
            count += 1
    return True, f"{count} elements (generators and random) pass"


def pairing_nondegenerate():
    blocks = 0
    for n in TYPES:
        P = pairing(n)
        for nu in compositions(n, 1, 5):
            fw, ew, g = P.gram(nu)
            if len(fw) != len(ew):
                return False, f"A{n} {nu}: basis sizes differ"
            if linalg.rank_at(g) != len(ew) and linalg.rank(g) != len(ew):
                return False, f"A{n} {nu}: Gram matrix singular"
            blocks += 1
    return True, f"{blocks} graded blocks invertible (tr <= 5)"


def ad_invariance():
    for n in TYPES:
        qg = group(n)
        P = pairing(n)
        rng = random.Random(SEED + 100 * n)
        gens = [g for _, g in qg.generators()]
        for _ in range(100):
            u1 = random_monomial(qg, rng, 1)
            u2 = random_monomial(qg, rng, 1)
            for g in gens:
                if P.ad_form(qg.adjoint(g, u1), u2) != P.ad_form(u1, qg.adjoint(qg.antipode(g), u2)):
                    return False, f"A{n}: fails for {g!r} on ({u1!r}, {u2!r})"
    return True, "100 pairs x all generators on A1-A3"


def casimir_centrality():
    qg = group(1)
    y = casimir(qg, 0, "EF")
    comm = all(g * y == y * g for g in (qg.E(0), qg.F(0), qg.K(0), qg.Kp(0)))
    same = y == casimir(qg, 0, "FE")
    return comm and same, f"commutes={comm}, forms agree={same}"


Z_CASES = [(1, (1,)), (2, (1, 1))]


def central_elements():
    out = []
    for n, lam in Z_CASES:
        z = central_z(n, lam)
        qg = group(n)
        xi = hc_xi(qg, z.element)
        want = hc_image_of_trace(type_a(n), lam)
        if not (z.certified and is_central(qg, z.element)):
            return False, f"A{n} z_{lam} not central"
        if xi != want:
            return False, f"A{n} xi(z_{lam}) = {xi!r}, expected {want!r}"
        out.append(f"A{n} {len(xi.terms)} terms")
    return True, "central, xi matches Freudenthal: " + ", ".join(out)


def weyl_invariance():
    for n, lam in Z_CASES:
        d = type_a(n)
        xi = hc_xi(group(n), central_z(n, lam).element)
        w = d.weyl_group
        if any(weyl_on_flat(d, g, xi) != xi for g in w.generators):
            return False, f"A{n}: xi(z) not fixed by a simple reflection"
        if not is_weyl_invariant(d, xi):
            return False, f"A{n}: not W-invariant"
        # lambda is regular in both cases, so the leading coefficient is |W|
        rest = triangular_remainder(d, xi, lam, RationalFunction(w.order))
        if rest is None:
            return False, f"A{n}: xi(z) - |W| av(lambda) involves weights not below lambda"
        rebuilt = av(d, lam).scale(RationalFunction(w.order))
        for mu, c in rest.items():
            rebuilt = rebuilt + av(d, mu).scale(c)
        if rebuilt != xi:
            return False, f"A{n}: av expansion does not reassemble"
    return True, "fixed by simple reflections; |W| av(lambda) + lower"


def grading_criterion():
    qg2 = group(2)
    if qg2.datum.antisym_kernel():
        return False, "A2 kernel nonzero"
    rep = criterion(qg2, eta_bound=4, mu_max=2, box=1)
    searched = rep["window_bounds"]["searched"]
    if rep["counterexamples"] or any(s["nullity"] for s in searched):
        return False, f"A2 central element found: {rep['counterexamples'][:1]}"
    d3 = type_a(3)
    if [tuple(k) for k in d3.antisym_kernel()] != [(1, 0, 1)]:
        return False, f"A3 kernel {d3.antisym_kernel()}"
    qg3 = group(3)
    if not is_central(qg3, qg3.cartan((1, 0, 1), (1, 0, 1))):
        return False, "A3 K'_eta K_eta not central"
    return True, f"A2 kernel 0, {len(searched)} degrees searched, none central; A3 kernel Z(a1+a3) certified"


def verma_singular_vectors():
    qg1 = group(1)
    for m in range(5):
        if not singular_check(qg1, (Fraction(m, 2),), 0):
            return False, f"A1 lambda.alpha = {m}"
    qg2 = group(2, 3)
    d = qg2.datum
    count = 0
    for fund in itertools.product(range(3), repeat=2):
        lam = d.from_fundamental(fund)
        for i in range(2):
            if not singular_check(qg2, lam, i):
                return False, f"A2 lambda = {fund} (fundamental coordinates), i = {i+1}"
            count += 1
    return True, f"A1 five weights; A2 {count} (lambda, i) cases"


def theta_conjugation():
    for n, lam in Z_CASES:
        qg = group(n)
        mod = simple_module(qg, lam)
        th = theta(mod)
        for name, g in qg.generators():
            s2 = qg.antipode(qg.antipode(g))
            if linalg.matmul(th, mod.action(g)) != linalg.matmul(mod.action(s2), th):
                return False, f"A{n}: fails for {name}"
    return True, "Theta u = S^2(u) Theta on L(a) (A1) and L(a1+a2) (A2)"


def star_bridge():
    qg = group(2)
    flipped = star_relations(qg, "flipped")
    printed = star_relations(qg, "printed")
    if not flipped["t_free"]:
        bad = [r["relation"] for r in flipped["conjugation"] + flipped["commutators"] if not r["t_free"]]
        return False, f"flipped sign leaves t in {bad}"
    if not all(r["vanishes"] for r in flipped["serre"]):
        return False, "flipped star-Serre combination does not vanish"
    residues = {r["relation"]: r["t_exponents"] for r in printed["conjugation"] if not r["t_free"]}
    return True, f"flipped: t-free, one-parameter Serre holds; printed residues {residues}"


def joint_nonvanishing():
    checked = 0
    for n in TYPES:
        qg = group(n)
        for nu in compositions(n, 1, 4):
            for y in qg.f_basis(nu):
                fy = qg.f_word(y)
                if not any(qg.commutation_maps(fy, i)[0] for i in range(n)):
                    return False, f"A{n}: all a_i vanish on F{y}"
                checked += 1
    # injectivity of xi on the span of the constructed central elements
    for n, lams in [(1, [(0,), (1,), (2,)]), (2, [(0, 0), (1, 1)])]:
        qg = group(n)
        images = [hc_xi(qg, central_z(n, lam).element) for lam in lams]
        keys = sorted({k for im in images for k in im.terms})
        mat = [[im.terms.get(k, ZERO) for k in keys] for im in images]
        if linalg.rank(mat) != len(lams):
            return False, f"A{n}: xi images of z_lambda are dependent"
    return True, f"{checked} PBW monomials; xi injective on constructed span"


def uj_decomposition():
    qg = group(2)
    J = [0]
    blocks = 0
    for gamma in compositions(2, 1, 4):
        rep = annihilator_split(qg, J, gamma)
        if not rep["direct_sum"]:
            return False, f"block {gamma} is not a direct sum"
        blocks += 1
    for lam in [(0, 0), (1, 1)]:
        z = central_z(2, lam).element
        zj, r = decompose_UJ(qg, J, z)
        if zj + r != z or hc_xi(qg, z) != xi_J(qg, zj):
            return False, f"xi(z_{lam}) differs from xi_J of its U_J component"
    return True, f"{blocks} blocks split; xi(z) = xi_J(z_J) for two z_lambda"


CRITERIA = [
    (1, "Serre elements in the radical", serre_in_radical),
    (2, "normal-form soundness", normal_form_soundness),
    (3, "Hopf axioms", hopf_axioms),
    (4, "skew pairing non-degenerate", pairing_nondegenerate),
    (5, "ad-invariance", ad_invariance),
    (6, "Casimir centrality", casimir_centrality),
    (7, "central elements z_lambda", central_elements),
    (8, "Weyl invariance and av expansion", weyl_invariance),
    (9, "grading criterion", grading_criterion),
    (10, "Verma singular vectors", verma_singular_vectors),
    (11, "Theta conjugation", theta_conjugation),
    (12, "star-product bridge", star_bridge),
    (13, "a_i joint non-vanishing and xi injectivity", joint_nonvanishing),
    (14, "U_J decomposition", uj_decomposition),
]


def evaluate(number, title, fn):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported on the same line
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - start
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title} ({dt:.1f}s): {detail}"
    return ok, line


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, line = evaluate(number, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
