"""Harish-Chandra map, characters of U^0, central elements and the criterion.

Cartan elements are stored as ``{(eta, phi): c}`` meaning ``sum c K'_eta K_phi``,
the ordering used by the characters below.  Central elements are produced
through the ad-invariant form: the trace functional of a simple module is
lifted block by block with the dual bases of :mod:`uvt.pairing`.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import Key, QuantumGroup, UElement, render_u
from .cartan import CartanDatum, format_vec, tr, unit, vadd, vneg, vscale, vsub
from .pairing import Pairing
from .repmod import WeightModule, simple_module, theta_scalar, weight_character
from .scalars import ONE, ZERO, RationalFunction, render

Vec = Tuple[int, ...]


class CentreError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """Two routes that must agree did not."""


# ---------------------------------------------------------------------------
# Cartan elements
# ---------------------------------------------------------------------------


class CartanElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[Vec, Vec], RationalFunction]] = None):
        self.terms = {k: RationalFunction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def from_uelement(cls, u: UElement) -> "CartanElement":
        out: Dict[Tuple[Vec, Vec], RationalFunction] = {}
        for (y, a, b, x), c in u.terms.items():
            if y or x:
                raise CentreError("element is not in U^0")
            out[(b, a)] = out.get((b, a), ZERO) + c
        return cls(out)

    def to_uelement(self, qg: QuantumGroup) -> UElement:
        return UElement(qg, {((), phi, eta, ()): c for (eta, phi), c in self.terms.items()})

    def __add__(self, other: "CartanElement") -> "CartanElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return CartanElement(out)

    def __sub__(self, other: "CartanElement") -> "CartanElement":
        return self + other.scale(-ONE)

    def __mul__(self, other: "CartanElement") -> "CartanElement":
        out: Dict[Tuple[Vec, Vec], RationalFunction] = {}
        for (e1, p1), c1 in self.terms.items():
            for (e2, p2), c2 in other.terms.items():
                k = (vadd(e1, e2), vadd(p1, p2))
                out[k] = out.get(k, ZERO) + c1 * c2
        return CartanElement(out)

    def scale(self, c) -> "CartanElement":
        c = RationalFunction(c)
        return CartanElement({k: x * c for k, x in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, CartanElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_flat(self) -> bool:
        """Membership in ``U^0_flat = span K'_eta K_{-eta}``."""
        return all(phi == vneg(eta) for eta, phi in self.terms)

    def __repr__(self) -> str:
        return render_cartan(self)


def _cartan_monomial(eta: Sequence[int], phi: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(eta):
        if e:
            parts.append(f"K{i+1}'" if e == 1 else f"K{i+1}'^{e}")
    for i, e in enumerate(phi):
        if e:
            parts.append(f"K{i+1}" if e == 1 else f"K{i+1}^{e}")
    return "*".join(parts) if parts else "1"


def render_cartan(u: CartanElement) -> str:
    if not u.terms:
        return "0"
    pieces = []
    for eta, phi in sorted(u.terms):
        c = u.terms[(eta, phi)]
        m = _cartan_monomial(eta, phi)
        if c == ONE:
            pieces.append(m)
        elif c == -ONE:
            pieces.append("-" + m)
        else:
            cs = render(c)
            if " " in cs and not (cs.startswith("(") and cs.endswith(")^-1") and cs.count("(") == 1):
                cs = f"({cs})"
            pieces.append(cs if m == "1" else f"{cs}*{m}")
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# Harish-Chandra map and characters
# ---------------------------------------------------------------------------


def gamma_rho(qg: QuantumGroup, a: Sequence, b: Sequence) -> RationalFunction:
    """Scalar of ``gamma^{-rho}`` on ``K_a K'_b``:
    ``v^{-rho.(a-b)} t^{<a+b,rho> - <rho,a+b>}``."""
    d = qg.datum
    return qg.mono(-d.dot(d.rho, vsub(a, b)), d.antisym(vadd(a, b), d.rho))


def projection(u: UElement) -> CartanElement:
    """The ``U^0`` component of the triangular decomposition."""
    out: Dict[Tuple[Vec, Vec], RationalFunction] = {}
    for (y, a, b, x), c in u.terms.items():
        if not y and not x:
            out[(b, a)] = out.get((b, a), ZERO) + c
    return CartanElement(out)


def hc_xi(qg: QuantumGroup, u: UElement) -> CartanElement:
    """``xi = gamma^{-rho} o pi``."""
    p = projection(u)
    return CartanElement({(eta, phi): c * gamma_rho(qg, phi, eta) for (eta, phi), c in p.terms.items()})


def rho_char(qg: QuantumGroup, kind: str, u: CartanElement, lam: Sequence = None, mu: Sequence = None) -> RationalFunction:
    """Evaluate ``rho^lam`` (``plain``), ``rho^{0,mu}`` (``zero``) or ``rho^{lam,mu}`` (``pair``).

    ``rho^lam(K'_eta K_phi)`` is the scalar by which ``K'_eta K_phi`` acts on
    a vector of weight ``lam``; ``rho^{0,mu}(K'_eta K_phi) = v^{2(eta+phi).mu}``.
    """
    d = qg.datum
    s = ZERO
    for (eta, phi), c in u.terms.items():
        val = ONE
        if kind in ("plain", "pair"):
            val = val * weight_character(qg, lam, phi, eta)
        if kind in ("zero", "pair"):
            val = val * qg.mono(2 * d.dot(vadd(eta, phi), mu), 0)
        if kind not in ("plain", "zero", "pair"):
            raise CentreError(f"unknown character kind {kind!r}")
        s = s + c * val
    return s


def weyl_on_flat(datum: CartanDatum, sigma, u: CartanElement) -> CartanElement:
    """``sigma(K'_eta K_{-eta}) = K'_{sigma(eta)} K_{-sigma(eta)}``."""
    if not u.is_flat():
        raise CentreError("the Weyl action is only defined on U^0_flat")
    w = datum.weyl_group
    out: Dict[Tuple[Vec, Vec], RationalFunction] = {}
    for (eta, _), c in u.terms.items():
        s = tuple(int(x) for x in w.act(sigma, eta))
        k = (s, vneg(s))
        out[k] = out.get(k, ZERO) + c
    return CartanElement(out)


def is_weyl_invariant(datum: CartanDatum, u: CartanElement) -> bool:
    w = datum.weyl_group
    for i in range(datum.rank):
        g = w.generators[i]
        if weyl_on_flat(datum, g, u) != u:
            return False
    return True


# ---------------------------------------------------------------------------
# centrality
# ---------------------------------------------------------------------------


def _basic_generators(qg: QuantumGroup) -> List[Tuple[str, UElement]]:
    return [(n, g) for n, g in qg.generators() if "^-1" not in n]


def commutes_with_generators(qg: QuantumGroup, u: UElement, indices: Optional[Iterable[int]] = None, cartan_all: bool = True) -> bool:
    idx = set(range(qg.rank) if indices is None else indices)
    for i in range(qg.rank):
        gens = []
        if cartan_all or i in idx:
            gens += [qg.K(i), qg.Kp(i)]
        if i in idx:
            gens += [qg.E(i), qg.F(i)]
        for g in gens:
            if g * u != u * g:
                return False
    return True


def ad_trivial(qg: QuantumGroup, u: UElement) -> bool:
    """``ad(g) u = eps(g) u`` for every generator."""
    for _, g in _basic_generators(qg):
        if qg.adjoint(g, u) != u.scale(qg.counit(g)):
            return False
    return True


def is_central(qg: QuantumGroup, u: UElement) -> bool:
    a = commutes_with_generators(qg, u)
    b = ad_trivial(qg, u)
    if a != b:
        raise InvariantViolation("generator and adjoint centrality tests disagree")
    return a


def casimir(qg: QuantumGroup, i: int = 0, form: str = "EF") -> UElement:
    """``E_iF_i + (v^-1 K_i + v K'_i)/(v - v^-1)^2`` or its ``F_iE_i`` form."""
    c = qg.qdiff(i) ** 2
    c = c.inverse()
    vi = qg.vi(i)
    if form == "EF":
        return qg.E(i) * qg.F(i) + (qg.K(i).scale(qg.mono(-vi, 0)) + qg.Kp(i).scale(qg.mono(vi, 0))).scale(c)
    return qg.F(i) * qg.E(i) + (qg.K(i).scale(qg.mono(vi, 0)) + qg.Kp(i).scale(qg.mono(-vi, 0))).scale(c)


# ---------------------------------------------------------------------------
# lifting functionals through the ad-invariant form
# ---------------------------------------------------------------------------


def lift_functional(P: Pairing, psi: linalg.Matrix, mu: Sequence[int], nu: Sequence[int], eta: Sequence, phi: Sequence) -> UElement:
    """The element ``u`` of ``U^-_{-nu} U^0 U^+_mu`` with
    ``<u | F_y K'_{-mu} K'_eta1 K_phi1 E_x> = (K'_eta1, K_phi)(K'_eta, K_phi1) psi[y][x]``
    for ``y`` in the F-basis of degree ``mu`` and ``x`` in the E-basis of degree ``nu``.
    """
    qg = P.qg
    mu, nu = tuple(mu), tuple(nu)
    ew_mu = qg.e_basis(mu)
    fw_nu = qg.f_basis(nu)
    g_mu = P.gram(mu)[2]
    g_nu = P.gram(nu)[2]
    ginv_mu = linalg.inverse(g_mu) if g_mu else []
    ginv_nu = linalg.inverse(g_nu) if g_nu else []
    # u = sum c[y'][x'] F_y' K_phi K'_{eta - nu} E_x' with
    # sum c[y'][x'] (y', x)(y, x') v^{2 rho.nu} = psi[y][x]
    # i.e. G_mu c^T G_nu = psi v^{-2 rho.nu} (rows y, cols x).
    scale = P.rho_factor(nu).inverse()
    target = [[p * scale if p else ZERO for p in row] for row in psi]
    ct = linalg.matmul(linalg.matmul(ginv_mu, target), ginv_nu)  # rows x' (E_mu), cols y' (F_nu)
    b = vsub(eta, nu)
    out: Dict[Key, RationalFunction] = {}
    for r, x in enumerate(ew_mu):
        for s, y in enumerate(fw_nu):
            c = ct[r][s]
            if c:
                out[(y, tuple(phi), tuple(b), x)] = c
    return UElement(qg, out)


def _module_block_traces(mod: WeightModule, mu: Vec, zeta, fw, ew) -> linalg.Matrix:
    idx = mod.indices(zeta)
    out = []
    for y in fw:
        fm = mod.word_matrix("F", y)
        row = []
        for x in ew:
            em = mod.word_matrix("E", x)
            s = ZERO
            for k in idx:
                for j in range(mod.dim):
                    if fm[k][j] and em[j][k]:
                        s = s + fm[k][j] * em[j][k]
            row.append(s)
        out.append(row)
    return out


def trace_lift(qg: QuantumGroup, lam: Sequence, shift: Optional[Sequence] = None, module: Optional[WeightModule] = None) -> UElement:
    """Preimage under ``u -> <u | .>`` of ``w -> tr_{L(lam)}(w Theta)``.

    With ``shift = s`` every Cartan part ``K_a K'_b`` is replaced by
    ``K_{a+s} K'_{b+s}``; this is how weights outside the root lattice give
    elements of the algebra.
    """
    P = Pairing(qg)
    mod = module or simple_module(qg, lam)
    s = tuple(Fraction(x) for x in (shift or qg.zero_vec))
    weights = mod.weights
    wset = set(weights)
    out: Dict[Key, RationalFunction] = {}
    mus = set()
    for z1 in weights:
        for z2 in weights:
            d = vsub(z2, z1)
            if all(Fraction(x).denominator == 1 and x >= 0 for x in d):
                mus.add(tuple(int(x) for x in d))
    for mu in sorted(mus, key=lambda m: (tr(m), m)):
        fw, ew = qg.f_basis(mu), qg.e_basis(mu)
        if not fw:
            continue
        g = P.gram(mu)[2]
        ginv = linalg.inverse(g)
        for zeta in weights:
            top = vadd(zeta, mu)
            if top not in wset:
                continue
            t = _module_block_traces(mod, mu, zeta, fw, ew)
            if linalg.is_zero_matrix(t):
                continue
            a = vneg(top)
            factor = theta_scalar(qg, zeta) * (P.rho_factor(mu) * P.cartan_pair(mu, a)).inverse()
            target = [[x * factor if x else ZERO for x in row] for row in t]
            ct = linalg.matmul(linalg.matmul(ginv, target), ginv)  # rows E-words, cols F-words
            ka, kb = vadd(a, s), vadd(zeta, s)
            if any(Fraction(x).denominator != 1 for x in ka + kb):
                raise CentreError("Cartan exponents are not integral; choose a shift matching the weight lattice coset")
            ka = tuple(int(x) for x in ka)
            kb = tuple(int(x) for x in kb)
            for r, x in enumerate(ew):
                for c_, y in enumerate(fw):
                    c = ct[r][c_]
                    if c:
                        k = (y, ka, kb, x)
                        out[k] = out.get(k, ZERO) + c
    return UElement(qg, out)


class CentralCandidate:
    def __init__(self, element: UElement, certified: bool, degree, note: str = ""):
        self.element = element
        self.certified = certified
        self.degree = degree
        self.note = note

    def __repr__(self) -> str:
        return f"CentralCandidate(certified={self.certified}, degree={self.degree})"


def z_lambda(qg: QuantumGroup, lam: Sequence, certify: bool = True) -> CentralCandidate:
    d = qg.datum
    lam = tuple(Fraction(x) for x in lam)
    if not (d.is_dominant(lam) and d.in_root_lattice(lam)):
        raise CentreError("z_lambda needs lambda dominant and in the root lattice")
    z = trace_lift(qg, lam)
    ok = is_central(qg, z) if certify else False
    return CentralCandidate(z, ok, qg.degree(z))


def hc_image_of_trace(datum: CartanDatum, lam: Sequence) -> CartanElement:
    """``sum_mu dim L(lam)_mu K'_mu K_{-mu}`` from Freudenthal multiplicities."""
    out = {}
    for mu, m in datum.weight_multiplicities(lam).items():
        e = tuple(int(x) for x in mu)
        out[(e, vneg(e))] = RationalFunction(m)
    return CartanElement(out)


def av(datum: CartanDatum, lam: Sequence) -> CartanElement:
    """``|W|^{-1} sum_sigma K'_{sigma(lam)} K_{-sigma(lam)}``."""
    w = datum.weyl_group
    out: Dict[Tuple[Vec, Vec], RationalFunction] = {}
    inv = RationalFunction(Fraction(1, w.order))
    for g in w.elements:
        e = tuple(int(x) for x in w.act(g, lam))
        k = (e, vneg(e))
        out[k] = out.get(k, ZERO) + inv
    return CartanElement(out)


def av_expansion(datum: CartanDatum, u: CartanElement) -> Dict[tuple, RationalFunction]:
    """Coefficients of a W-invariant flat element in the ``av(mu)`` basis, mu dominant."""
    if not is_weyl_invariant(datum, u):
        raise CentreError("element is not W-invariant")
    out = {}
    w = datum.weyl_group
    for eta, phi in u.terms:
        dom = tuple(int(x) for x in datum.dominant_conjugate(eta))
        if dom in out:
            continue
        # av(mu) has coefficient 1/|orbit| ... times |Stab|/|W|; compare on eta = mu
        c = u.terms[(dom, vneg(dom))]
        out[dom] = c * RationalFunction(Fraction(w.order, w.stabilizer_size(dom)))
    return out


def triangular_remainder(datum: CartanDatum, xi_z: CartanElement, lam: Sequence, coefficient) -> Optional[Dict[tuple, RationalFunction]]:
    """Expansion of ``xi_z - coefficient * av(lam)`` in ``av(mu)``, or ``None`` if
    it involves ``av(mu)`` with ``mu`` not strictly below ``lam``."""
    lam = tuple(int(x) for x in lam)
    rest = xi_z - av(datum, lam).scale(coefficient)
    exp = av_expansion(datum, rest)
    for mu, c in exp.items():
        if c and (mu == lam or not datum.is_below(mu, lam)):
            return None
    return exp


# ---------------------------------------------------------------------------
# the central solver
# ---------------------------------------------------------------------------


def _window_monomials(qg: QuantumGroup, eta: Sequence[int], mu_max: int, box: int) -> List[Key]:
    out = []
    n = qg.rank
    for mu in itertools.product(range(mu_max + 1), repeat=n):
        if sum(mu) > mu_max:
            continue
        fw, ew = qg.f_basis(mu), qg.e_basis(mu)
        rest = vsub(eta, mu)
        for a in itertools.product(range(-box, box + 1), repeat=n):
            b = vsub(rest, a)
            if any(abs(x) > box + max(abs(e) for e in eta) + mu_max for x in b):
                continue
            for y in fw:
                for x in ew:
                    out.append((y, tuple(a), tuple(b), x))
    return out


class SolveResult:
    def __init__(self, eta, unknowns, nullity, elements, certificate, window):
        self.eta = eta
        self.unknowns = unknowns
        self.nullity = nullity
        self.elements: List[UElement] = elements
        self.certificate = certificate
        self.window = window


def central_solve(qg: QuantumGroup, eta: Sequence[int], mu_max: int = 2, box: int = 1, points=linalg.DEFAULT_POINTS) -> SolveResult:
    """All central elements of degree ``(eta, eta)`` supported on the window.

    The window: ``F_y K_a K'_b E_x`` with ``tr(deg x) <= mu_max`` and the
    entries of ``a`` in ``[-box, box]``.  Non-existence is certified by full
    column rank of the commutator system at a rational point (a specialization
    never raises the rank).
    """
    eta = tuple(int(x) for x in eta)
    monos = _window_monomials(qg, eta, mu_max, box)
    gens = []
    for i in range(qg.rank):
        gens += [qg.E(i), qg.F(i)]
    rows: Dict[tuple, Dict[int, RationalFunction]] = {}
    for col, k in enumerate(monos):
        m = UElement(qg, {k: ONE})
        for gi, g in enumerate(gens):
            for k2, c in (g * m - m * g).terms.items():
                rows.setdefault((gi, k2), {})[col] = c
    n = len(monos)
    window = {"mu_max": mu_max, "cartan_box": box, "unknowns": n}
    if not rows:
        elements = [UElement(qg, {k: ONE}) for k in monos]
        return SolveResult(eta, n, n, elements, "no equations", window)
    keys = sorted(rows, key=repr)
    mat = [[rows[r].get(c, ZERO) for c in range(n)] for r in keys]
    for p in points:
        if linalg.rank_at(mat, p) == n:
            return SolveResult(eta, n, 0, [], f"full column rank at (v,t)=({p[0]},{p[1]})", window)
    kernel = linalg.nullspace(mat)
    elements = []
    for vec in kernel:
        elements.append(UElement(qg, {monos[c]: x for c, x in enumerate(vec) if x}))
    return SolveResult(eta, n, len(kernel), elements, "exact nullspace", window)


def eta_window(rank: int, bound: int) -> List[Vec]:
    """Nonzero ``eta`` in Q with ``sum |eta_i| <= bound``."""
    out = []
    for eta in itertools.product(range(-bound, bound + 1), repeat=rank):
        if 0 < sum(abs(x) for x in eta) <= bound:
            out.append(eta)
    return sorted(out, key=lambda e: (sum(abs(x) for x in e), e))


def criterion(qg: QuantumGroup, eta_bound: int = 4, mu_max: int = 2, box: int = 1, solve: bool = True) -> dict:
    """Kernel of the antisymmetric form, certified elements, window search."""
    d = qg.datum
    kernel = d.antisym_kernel()
    certified = []
    for eta in kernel:
        e = tuple(int(x) for x in eta)
        u = qg.cartan(e, e)
        certified.append({"element": render_u(u), "degree": [list(vscale(2, e))] * 2, "central": is_central(qg, u)})
    if d.rank == 1:
        y = casimir(qg, 0)
        certified.append({"element": render_u(y), "degree": [list(x) for x in qg.degree(y)], "central": is_central(qg, y)})
    counter = []
    searched = []
    if solve and not kernel:
        for eta in eta_window(d.rank, eta_bound):
            res = central_solve(qg, eta, mu_max, box)
            searched.append({"eta": list(eta), "unknowns": res.unknowns, "nullity": res.nullity, "certificate": res.certificate})
            for el in res.elements:
                counter.append({"eta": list(eta), "element": render_u(el)})
    return {
        "type": d.name,
        "omega": [list(r) for r in d.omega],
        "kernel_basis": [format_vec(k) for k in kernel],
        "certified_elements": certified,
        "window_bounds": {"eta_l1": eta_bound, "mu_max": mu_max, "cartan_box": box, "searched": searched},
        "counterexamples": counter,
    }


# ---------------------------------------------------------------------------
# U_J decomposition and the rank-one centres
# ---------------------------------------------------------------------------


def _supported(vec: Sequence[int], J) -> bool:
    return all(x == 0 or i in J for i, x in enumerate(vec))


def decompose_UJ(qg: QuantumGroup, J: Iterable[int], u: UElement) -> Tuple[UElement, UElement]:
    """Split ``u = u_J + r`` with ``u_J`` in ``U_J`` and ``r`` in ``R_J``.

    A graded piece ``U^+_gamma`` lies in ``U_J`` when ``gamma`` is supported on
    ``J`` and in ``R^+_J`` otherwise (see :func:`annihilator_split`).
    """
    J = set(J)
    a, r = {}, {}
    for k, c in u.terms.items():
        y, _, _, x = k
        if _supported(qg.deg(y), J) and _supported(qg.deg(x), J):
            a[k] = c
        else:
            r[k] = c
    return UElement(qg, a), UElement(qg, r)


def annihilator_split(qg: QuantumGroup, J: Iterable[int], gamma: Sequence[int]) -> dict:
    """Check ``U^+_gamma = U^+_{J,gamma} (+) R^+_{J,gamma}`` with ``R^+`` computed as the
    annihilator of the F-words in letters of ``J`` under the skew pairing."""
    J = set(J)
    P = Pairing(qg)
    gamma = tuple(gamma)
    ew = qg.e_basis(gamma)
    jwords = [w for w in qg.f_basis(gamma) if all(i in J for i in w)] if _supported(gamma, J) else []
    # R^+ = {c : sum_x c_x (F_w, E_x) = 0 for all J-words w}
    if jwords:
        m = [[P.pair_words(w, x) for x in ew] for w in jwords]
        r_basis = linalg.nullspace(m)
    else:
        r_basis = [[ONE if i == j else ZERO for i in range(len(ew))] for j in range(len(ew))]
    uj_basis = [[ONE if i == j else ZERO for i in range(len(ew))] for j, w in enumerate(ew) if all(k in J for k in w)]
    combined = r_basis + uj_basis
    rank = linalg.rank(combined) if combined else 0
    return {
        "degree": list(gamma),
        "dim": len(ew),
        "dim_UJ": len(uj_basis),
        "dim_R": len(r_basis),
        "direct_sum": rank == len(ew) == len(r_basis) + len(uj_basis),
    }


def xi_J(qg: QuantumGroup, u: UElement) -> CartanElement:
    """Harish-Chandra map of ``U_J``; the same ``rho`` shift as the ambient algebra."""
    return hc_xi(qg, u)


def centre_UJi_check(qg: QuantumGroup, i: int, box: int = 1, kmax: int = 2, zs: Sequence[UElement] = ()) -> dict:
    n = qg.rank
    X = qg.K(i) * qg.Kp(i)
    Y = casimir(qg, i)
    sub = [qg.E(i), qg.F(i), qg.K(i), qg.Kp(i)]
    x_central = all(g * X == X * g for g in sub)
    y_central = all(g * Y == Y * g for g in sub)
    y_forms = casimir(qg, i, "EF") == casimir(qg, i, "FE")
    others = [j for j in range(n) if j != i]
    found = []
    for xs in itertools.product(range(-box, box + 1), repeat=len(others)):
        for ys in itertools.product(range(-box, box + 1), repeat=len(others)):
            x = [0] * n
            y = [0] * n
            for j, a, b in zip(others, xs, ys):
                x[j], y[j] = a, b
            # E_i K_x K'_y = theta K_x K'_y E_i
            theta = qg.cartan_past_e(tuple(x), tuple(y), unit(n, i)).inverse()
            lau = theta.to_laurent() if theta.is_laurent() else None
            if lau is None or len(lau.terms) != 1:
                continue
            (ve, te), coeff = next(iter(lau.terms.items()))
            if te != 0 or coeff != 1 or ve % 2:
                continue
            k = ve // 2
            if abs(k) > kmax:
                continue
            base = qg.cartan(tuple(x), tuple(y))
            results = {}
            for label, kk in (("K_i^k", k), ("K_i^-k", -k)):
                el = base * qg.K(i, kk) * Y if kk else base * Y
                results[label] = commutes_with_generators(qg, el, indices=[i])
            found.append({"x": x, "y": y, "k": k, "central": results})
    prop = []
    for z in zs:
        z1, _ = decompose_UJ(qg, [i], z)
        prop.append({
            "xi_equal": hc_xi(qg, z) == xi_J(qg, z1),
            "component_central_in_UJ": commutes_with_generators(qg, z1, indices=[i]),
        })
    return {
        "index": i + 1,
        "X_central": x_central,
        "Y_central": y_central,
        "Y_forms_agree": y_forms,
        "condition_elements": found,
        "u_j_components": prop,
    }


# ---------------------------------------------------------------------------
# degree-(eta, eta) elements
# ---------------------------------------------------------------------------


def lift_degree_eta(datum: CartanDatum, eta: Sequence[int], base: Optional[QuantumGroup] = None, certify: bool = True) -> CentralCandidate:
    """A central element of degree ``(eta, eta)`` for ``eta`` in the antisymmetric kernel.

    ``nu = parity_lift(eta)`` gives the weight ``nu/2``; the trace lift of
    ``L(nu/2)`` with Cartan parts shifted by ``eta/2`` has integral exponents
    and degree ``(eta, eta)``.  When ``eta = 0`` and a base group is supplied
    the unit element is returned.
    """
    eta = tuple(int(x) for x in eta)
    if not datum.in_antisym_kernel(eta):
        raise CentreError("eta is not in the antisymmetric kernel")
    nu = datum.parity_lift(eta)
    if nu is None:
        raise CentreError("no parity lift found in the search box")
    lam = tuple(Fraction(x, 2) for x in nu)
    shift = tuple(Fraction(x, 2) for x in eta)
    index = _lattice_index(datum)
    z = None
    for troot in (1, index, index * index):
        if base is not None and base.troot == troot:
            qg = base
        else:
            qg = QuantumGroup(datum, troot)
        try:
            z = trace_lift(qg, lam, shift=shift)
            break
        except ValueError:
            # a fractional t-exponent: retry over a finer root of t
            continue
    if z is None:
        raise CentreError("t-exponents not representable")
    ok = is_central(qg, z) if certify else False
    return CentralCandidate(z, ok, qg.degree(z), note=f"nu={list(nu)}, troot={qg.troot}")


def _lattice_index(datum: CartanDatum) -> int:
    """Common denominator of the fundamental weights in root coordinates."""
    out = 1
    for w in datum.fundamental_weights:
        for x in w:
            out = math.lcm(out, Fraction(x).denominator)
    return out
