"""The skew-Hopf pairing between the Borel halves and the ad-invariant form.

The pairing on words is computed from its own axioms rather than from the
free-algebra form: ``(F_y, E_x' E_j)`` is expanded through the coproduct of
``F_y``, whose only contributions pairing with ``E_j`` put a single ``F_j``
in the right tensor factor.
"""

from __future__ import annotations

import threading
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .algebra import Key, QuantumGroup, UElement
from .cartan import unit, vadd
from .freealg import Word
from .scalars import ONE, ZERO, RationalFunction


class PairingError(ValueError):
    pass


class DualBasisPair:
    def __init__(self, degree, e_words, f_words, u, v, gram):
        self.degree = degree
        self.e_words: List[Word] = e_words
        self.f_words: List[Word] = f_words
        self.u: List[UElement] = u  # basis of U^+_nu
        self.v: List[UElement] = v  # dual basis of U^-_{-nu}
        self.gram = gram  # (F_{f_i}, E_{e_j})
        # coefficient matrix of v in the F-basis words
        self.dual_coeffs: linalg.Matrix = []

    def __len__(self) -> int:
        return len(self.u)


class Pairing:
    def __init__(self, qg: QuantumGroup):
        self.qg = qg
        self.datum = qg.datum
        self._lock = threading.Lock()
        self._words: Dict[Tuple[Word, Word], RationalFunction] = {}
        self._duals: Dict[tuple, DualBasisPair] = {}

    # ---- base values -----------------------------------------------
    def cartan_pair(self, mu: Sequence[int], nu: Sequence[int]) -> RationalFunction:
        """``(K'_mu, K_nu) = v^{mu.nu} t^{<mu,nu> - <nu,mu>}``.

        This is the value of the weight-``mu`` character on ``K_nu``, which is
        what the commutation relations between ``K`` and ``E`` force.
        """
        d = self.datum
        return self.qg.mono(d.dot(mu, nu), d.antisym(mu, nu))

    def fe_pair(self, i: int) -> RationalFunction:
        """``(F_i, E_i) = (v_i^{-1} - v_i)^{-1}``."""
        return (-self.qg.qdiff(i)).inverse()

    def pair_words(self, y: Word, x: Word) -> RationalFunction:
        """``(F_y, E_x)`` for words.

        ``(F_y, E_x' E_j) = (Delta(F_y), E_j (x) E_x')``: the left factor must be
        a single ``F_j`` taken from position ``k``; the right factor is then
        ``F_{<k} K'_j F_{>k} = v^{j.post} t^{<j,post>-<post,j>} F_{y without k} K'_j``
        and ``(F K'_j, E_x') = (F, E_x')``.
        """
        qg = self.qg
        if len(y) != len(x) or qg.deg(y) != qg.deg(x):
            return ZERO
        if not x:
            return ONE
        hit = self._words.get((y, x))
        if hit is not None:
            return hit
        j = x[-1]
        head = x[:-1]
        ej = unit(qg.rank, j)
        s = ZERO
        for k, letter in enumerate(y):
            if letter != j:
                continue
            p = self.pair_words(y[:k] + y[k + 1 :], head)
            if not p:
                continue
            post = qg.deg(y[k + 1 :])
            sk = qg.cartan_past_f(qg.zero_vec, ej, post)
            s = s + sk * self.fe_pair(j) * p
        with self._lock:
            return self._words.setdefault((y, x), s)

    # ---- the skew pairing on Borel elements ------------------------
    def skew_pair(self, lower: UElement, upper: UElement) -> RationalFunction:
        """``(lower, upper)`` with ``lower`` in U^<= (F, K') and ``upper`` in U^>= (K, E)."""
        for (y, a, b, x) in lower.terms:
            if x or any(a):
                raise PairingError("first argument must lie in the lower Borel (F_i, K'_i)")
        for (y, a, b, x) in upper.terms:
            if y or any(b):
                raise PairingError("second argument must lie in the upper Borel (E_i, K_i)")
        s = ZERO
        qg = self.qg
        for (y, _, b, _), c1 in lower.terms.items():
            for (_, a, _, x), c2 in upper.terms.items():
                w = self.pair_words(y, x)
                if w:
                    s = s + c1 * c2 * w * self.cartan_pair(vadd(b, qg.deg(y)), a)
        return s

    def gram(self, nu: Sequence[int]) -> Tuple[List[Word], List[Word], linalg.Matrix]:
        """Rows: F-basis words, columns: E-basis words of degree ``nu``."""
        qg = self.qg
        fw = qg.f_basis(nu)
        ew = qg.e_basis(nu)
        return fw, ew, [[self.pair_words(y, x) for x in ew] for y in fw]

    def dual_basis(self, nu: Sequence[int]) -> DualBasisPair:
        nu = tuple(nu)
        hit = self._duals.get(nu)
        if hit is not None:
            return hit
        qg = self.qg
        fw, ew, g = self.gram(nu)
        if len(fw) != len(ew):
            raise PairingError(f"pairing degenerate at degree {nu}")
        try:
            c = linalg.inverse(g) if g else []
        except ZeroDivisionError:
            raise PairingError(f"pairing degenerate at degree {nu}") from None
        # v_i = sum_k C[k][i]... we need (v_i, u_j) = d_ij with v_i = sum_k D[i][k] F_k,
        # i.e. D G = I, so D = G^{-1} read row-wise.
        u = [UElement(qg, {((), qg.zero_vec, qg.zero_vec, x): ONE}) for x in ew]
        v = []
        for i in range(len(ew)):
            v.append(UElement(qg, {(y, qg.zero_vec, qg.zero_vec, ()): c[i][k] for k, y in enumerate(fw)}))
        dp = DualBasisPair(nu, ew, fw, u, v, g)
        dp.dual_coeffs = c
        with self._lock:
            return self._duals.setdefault(nu, dp)

    # ---- characters and the ad-invariant form ----------------------
    def chi(self, eta, phi, eta1, phi1) -> RationalFunction:
        """``chi_{eta,phi}(eta1, phi1) = (K'_eta, K_phi1)(K'_eta1, K_phi)``."""
        return self.cartan_pair(eta, phi1) * self.cartan_pair(eta1, phi)

    def rho_factor(self, nu: Sequence[int]) -> RationalFunction:
        """``v^{2 rho . nu}``."""
        e = 2 * self.datum.dot(self.datum.rho, nu)
        return self.qg.mono(e, 0)

    def ad_form_keys(self, k1: Key, k2: Key) -> RationalFunction:
        qg = self.qg
        y, a, b, x = k1
        y1, a1, b1, x1 = k2
        nu, nu1 = qg.deg(y), qg.deg(y1)
        if qg.deg(x1) != nu or qg.deg(x) != nu1:
            return ZERO
        p1 = self.pair_words(y, x1)
        if not p1:
            return ZERO
        p2 = self.pair_words(y1, x)
        if not p2:
            return ZERO
        eta, eta1 = vadd(b, nu), vadd(b1, nu1)
        return p1 * p2 * self.chi(eta, a, eta1, a1) * self.rho_factor(nu)

    def ad_form(self, u1: UElement, u2: UElement) -> RationalFunction:
        s = ZERO
        for k1, c1 in u1.terms.items():
            for k2, c2 in u2.terms.items():
                w = self.ad_form_keys(k1, k2)
                if w:
                    s = s + c1 * c2 * w
        return s

    def skew_pair_via_coproduct(self, y: Word, x: Word) -> RationalFunction:
        """Independent evaluation of ``(F_y, E_x)`` through ``(xx', Y) = (x (x) x', Delta(Y))``.

        Splits off the first letter: ``(F_i F_y', E_x) = (F_i (x) F_y', Delta(E_x))``
        with the coproduct of :class:`QuantumGroup`, and
        ``(F_y, K_a E_x) = (F_y, E_x)(K'_|y|, K_a)``.
        """
        qg = self.qg
        if qg.deg(y) != qg.deg(x):
            return ZERO
        if not y:
            return ONE
        i, rest = y[0], y[1:]
        ei = unit(qg.rank, i)
        nu_rest = qg.deg(rest)
        delta = qg.coproduct_key(((), qg.zero_vec, qg.zero_vec, x))
        s = ZERO
        for (k1, k2), c in delta.terms.items():
            (_, a1, b1, x1), (_, a2, b2, x2) = k1, k2
            if x1 != (i,) or any(b1) or any(b2):
                continue
            p = self.skew_pair_via_coproduct(rest, x2)
            if p:
                s = s + c * self.fe_pair(i) * self.cartan_pair(ei, a1) * p * self.cartan_pair(nu_rest, a2)
        return s
