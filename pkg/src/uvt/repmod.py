"""Weight modules: truncated Verma modules, simple modules, Theta and traces.

Vectors of a Verma module ``M(lam)`` are stored in the basis ``F_y v_lam``
with ``y`` running over the F-basis words of :class:`QuantumGroup`.  The
simple quotient ``L(lam)`` is obtained weight by weight from the Shapovalov
matrices ``S_nu[x][y] = <v_lam-coefficient of E_x F_y v_lam>``: a vector lies
in the maximal submodule exactly when every ``E_x`` kills its top component,
so ``dim L(lam)_{lam-nu} = rank S_nu``.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .algebra import QuantumGroup, UElement
from .cartan import tr, unit, vadd, vsub
from .freealg import Word
from .scalars import ONE, ZERO, RationalFunction

Weight = Tuple[Fraction, ...]
Vector = Dict[Word, RationalFunction]


class ModuleError(ValueError):
    pass


def _weight(lam: Sequence) -> Weight:
    return tuple(Fraction(x) for x in lam)


def weight_character(qg: QuantumGroup, mu: Sequence, a: Sequence[int], b: Sequence[int]) -> RationalFunction:
    """Scalar by which ``K_a K'_b`` acts on a vector of weight ``mu``.

    ``K_i`` acts by ``v^{i.mu} t^{<mu,i>-<i,mu>}`` and ``K'_i`` by
    ``v^{-i.mu} t^{<mu,i>-<i,mu>}``.
    """
    d = qg.datum
    return qg.mono(d.dot(mu, vsub(a, b)), d.antisym(mu, vadd(a, b)))


class VermaData:
    """Action of ``E_i`` and ``F_i`` on the F-monomial basis of ``M(lam)``."""

    def __init__(self, qg: QuantumGroup, lam: Sequence):
        self.qg = qg
        self.lam = _weight(lam)
        self._lock = threading.Lock()
        self._e: Dict[Tuple[int, Word], Vector] = {}
        self._f: Dict[Tuple[int, Word], Vector] = {}
        self._shap: Dict[tuple, linalg.Matrix] = {}

    def basis(self, nu: Sequence[int]) -> List[Word]:
        return self.qg.f_basis(tuple(nu))

    def e_act(self, i: int, y: Word) -> Vector:
        hit = self._e.get((i, y))
        if hit is not None:
            return hit
        qg = self.qg
        z = qg.zero_vec
        prod = qg.multiply(qg.E(i), UElement(qg, {(y, z, z, ()): ONE}))
        out: Vector = {}
        for (y2, a, b, x), c in prod.terms.items():
            if x:
                continue
            s = c * weight_character(qg, self.lam, a, b)
            out[y2] = out.get(y2, ZERO) + s
        out = {k: c for k, c in out.items() if c}
        with self._lock:
            return self._e.setdefault((i, y), out)

    def f_act(self, i: int, y: Word) -> Vector:
        hit = self._f.get((i, y))
        if hit is not None:
            return hit
        out = {w: c for w, c in self.qg.reduce_f((i,) + y) if c}
        with self._lock:
            return self._f.setdefault((i, y), out)

    def apply(self, kind: str, i: int, vec: Vector) -> Vector:
        act = self.e_act if kind == "E" else self.f_act
        out: Vector = {}
        for y, c in vec.items():
            for y2, c2 in act(i, y).items():
                out[y2] = out.get(y2, ZERO) + c * c2
        return {k: c for k, c in out.items() if c}

    def apply_element(self, u: UElement, vec: Vector) -> Vector:
        """``u . vec`` inside the (untruncated) Verma module."""
        qg = self.qg
        out: Vector = {}
        for (y, a, b, x), c in u.terms.items():
            w = vec
            for i in reversed(x):
                w = self.apply("E", i, w)
            for y2, c2 in w.items():
                mu = vsub(self.lam, qg.deg(y2))
                s = c * c2 * weight_character(qg, mu, a, b)
                w2 = {y2: s}
                for i in reversed(y):
                    w2 = self.apply("F", i, w2)
                for y3, c3 in w2.items():
                    out[y3] = out.get(y3, ZERO) + c3
        return {k: c for k, c in out.items() if c}

    def f_vector(self, word: Sequence[int]) -> Vector:
        """``F_word v_lam`` expressed in the basis."""
        return {w: c for w, c in self.qg.reduce_f(tuple(word)) if c}

    def top_coefficient(self, x: Word, vec: Vector) -> RationalFunction:
        w = vec
        for i in reversed(x):
            w = self.apply("E", i, w)
            if not w:
                return ZERO
        return w.get((), ZERO)

    def shapovalov(self, nu: Sequence[int]) -> linalg.Matrix:
        """Rows: E-basis words, columns: F-basis words of degree ``nu``."""
        nu = tuple(nu)
        hit = self._shap.get(nu)
        if hit is not None:
            return hit
        rows = self.qg.e_basis(nu)
        cols = self.basis(nu)
        m = [[self.top_coefficient(x, {y: ONE}) for y in cols] for x in rows]
        with self._lock:
            return self._shap.setdefault(nu, m)


class WeightModule:
    """A finite weight module given by its generator matrices.

    ``labels[k] = (weight, word)`` names basis vector ``k``; the word is the
    F-monomial whose image (in the Verma module or its quotient) it is.
    """

    def __init__(self, qg: QuantumGroup, highest: Sequence, labels, e_mats, f_mats, truncated: bool):
        self.qg = qg
        self.highest = _weight(highest)
        self.labels: List[Tuple[Weight, Word]] = labels
        self.e_mats: List[linalg.Matrix] = e_mats
        self.f_mats: List[linalg.Matrix] = f_mats
        self.truncated = truncated
        self._cache: Dict[tuple, linalg.Matrix] = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def weights(self) -> List[Weight]:
        out: List[Weight] = []
        for w, _ in self.labels:
            if w not in out:
                out.append(w)
        return out

    def dims(self) -> Dict[Weight, int]:
        out: Dict[Weight, int] = {}
        for w, _ in self.labels:
            out[w] = out.get(w, 0) + 1
        return out

    def indices(self, mu: Sequence) -> List[int]:
        mu = _weight(mu)
        return [k for k, (w, _) in enumerate(self.labels) if w == mu]

    # ---- actions --------------------------------------------------
    def cartan_matrix(self, a: Sequence[int], b: Sequence[int]) -> linalg.Matrix:
        n = self.dim
        m = linalg.zeros(n, n)
        for k, (w, _) in enumerate(self.labels):
            m[k][k] = weight_character(self.qg, w, a, b)
        return m

    def generator(self, kind: str, i: int, power: int = 1) -> linalg.Matrix:
        if kind == "E":
            return self.e_mats[i]
        if kind == "F":
            return self.f_mats[i]
        u = unit(self.qg.rank, i)
        z = self.qg.zero_vec
        p = tuple(power * x for x in u)
        return self.cartan_matrix(p, z) if kind == "K" else self.cartan_matrix(z, p)

    def word_matrix(self, kind: str, word: Word) -> linalg.Matrix:
        key = (kind, word)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        m = linalg.identity(self.dim)
        for i in word:
            m = linalg.matmul(m, self.generator(kind, i))
        self._cache[key] = m
        return m

    def action(self, u: UElement) -> linalg.Matrix:
        n = self.dim
        out = linalg.zeros(n, n)
        for (y, a, b, x), c in u.terms.items():
            m = linalg.matmul(linalg.matmul(self.word_matrix("F", y), self.cartan_matrix(a, b)), self.word_matrix("E", x))
            for r in range(n):
                row = m[r]
                for s in range(n):
                    if row[s]:
                        out[r][s] = out[r][s] + c * row[s]
        return out

    def act(self, u: UElement, vec: Sequence[RationalFunction]) -> List[RationalFunction]:
        return linalg.matvec(self.action(u), vec)

    def basis_vector(self, k: int) -> List[RationalFunction]:
        return [ONE if j == k else ZERO for j in range(self.dim)]

    def to_json(self, render) -> dict:
        names = [n for n, _ in self.qg.generators()]
        gens = dict(zip(names, (g for _, g in self.qg.generators())))
        mats = {}
        for name in names:
            if "^-1" in name:
                continue
            m = self.action(gens[name])
            mats[name] = [[render(x) for x in row] for row in m]
        return {
            "highest_weight": [str(x) for x in self.highest],
            "weights": [[str(x) for x in w] for w in self.weights],
            "dims": [self.dims()[w] for w in self.weights],
            "basis": [{"weight": [str(x) for x in w], "word": [i + 1 for i in y]} for w, y in self.labels],
            "truncated": self.truncated,
            "actions": mats,
        }


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _degrees_up_to(rank: int, depth: int) -> List[tuple]:
    out = [nu for nu in itertools.product(range(depth + 1), repeat=rank) if sum(nu) <= depth]
    return sorted(out, key=lambda nu: (sum(nu), tuple(-x for x in nu)))


def verma_truncated(qg: QuantumGroup, lam: Sequence, depth: int) -> WeightModule:
    """``M(lam)`` restricted to weights ``lam - nu`` with ``tr(nu) <= depth``.

    F-actions leaving the window are dropped, so relations only hold away
    from the bottom layer.
    """
    if depth < 0:
        raise ModuleError("depth must be non-negative")
    vd = VermaData(qg, lam)
    lam = vd.lam
    labels: List[Tuple[Weight, Word]] = []
    index: Dict[Word, int] = {}
    for nu in _degrees_up_to(qg.rank, depth):
        for y in vd.basis(nu):
            index[y] = len(labels)
            labels.append((_weight(vsub(lam, nu)), y))
    n = len(labels)
    e_mats, f_mats = [], []
    for i in range(qg.rank):
        em, fm = linalg.zeros(n, n), linalg.zeros(n, n)
        for k, (_, y) in enumerate(labels):
            for y2, c in vd.e_act(i, y).items():
                em[index[y2]][k] = c
            for y2, c in vd.f_act(i, y).items():
                if y2 in index:
                    fm[index[y2]][k] = c
        e_mats.append(em)
        f_mats.append(fm)
    mod = WeightModule(qg, lam, labels, e_mats, f_mats, truncated=True)
    mod.verma = vd
    return mod


def singular_vectors(mod: WeightModule) -> List[Tuple[Weight, List[RationalFunction]]]:
    """Weight vectors below the top killed by every ``E_i``: a basis per weight."""
    out = []
    for mu in mod.weights:
        if mu == mod.highest:
            continue
        idx = mod.indices(mu)
        rows = []
        for i in range(mod.qg.rank):
            em = mod.e_mats[i]
            for r in range(mod.dim):
                row = [em[r][k] for k in idx]
                if any(row):
                    rows.append(row)
        if rows:
            kernel = linalg.nullspace(rows)
        else:
            kernel = [[ONE if j == s else ZERO for j in range(len(idx))] for s in range(len(idx))]
        for vec in kernel:
            full = [ZERO] * mod.dim
            for k, c in zip(idx, vec):
                full[k] = c
            out.append((mu, full))
    return out


class _Layer:
    def __init__(self, nu, words, sel, proj):
        self.nu = nu
        self.words = words  # Verma basis words
        self.sel = sel  # words kept as a basis of L(lam)_{lam-nu}
        self.proj = proj  # Verma coordinates -> quotient coordinates


def simple_module(qg: QuantumGroup, lam: Sequence) -> WeightModule:
    """``L(lam)`` for dominant ``lam`` as the quotient of ``M(lam)`` by its radical."""
    d = qg.datum
    lam = _weight(lam)
    if not d.is_weight(lam) or not d.is_dominant(lam):
        raise ModuleError(f"weight {lam} is not dominant integral")
    vd = VermaData(qg, lam)
    layers: Dict[tuple, _Layer] = {}
    frontier = [qg.zero_vec]
    seen = {qg.zero_vec}
    while frontier:
        nxt = []
        for nu in frontier:
            words = vd.basis(nu)
            s = vd.shapovalov(nu)
            if nu == qg.zero_vec:
                sel_idx, rows_idx = [0], [0]
            else:
                _, sel_idx = linalg.rref(s)
                _, rows_idx = linalg.rref(linalg.transpose(s))
            if not sel_idx:
                continue
            sub = [[s[r][c] for c in sel_idx] for r in rows_idx]
            inv = linalg.inverse(sub)
            proj = linalg.matmul(inv, [s[r] for r in rows_idx])
            layers[nu] = _Layer(nu, words, [words[c] for c in sel_idx], proj)
            for i in range(qg.rank):
                child = vadd(nu, unit(qg.rank, i))
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
        frontier = sorted(nxt, key=lambda nu: tuple(-x for x in nu))
    order = sorted(layers, key=lambda nu: (tr(nu), tuple(-x for x in nu)))
    labels: List[Tuple[Weight, Word]] = []
    index: Dict[Tuple[tuple, int], int] = {}
    for nu in order:
        for j, y in enumerate(layers[nu].sel):
            index[(nu, j)] = len(labels)
            labels.append((_weight(vsub(lam, nu)), y))
    n = len(labels)

    def coords(nu, vec: Vector) -> List[RationalFunction]:
        layer = layers[nu]
        col = [vec.get(w, ZERO) for w in layer.words]
        return linalg.matvec(layer.proj, col)

    e_mats, f_mats = [], []
    for i in range(qg.rank):
        ei = unit(qg.rank, i)
        em, fm = linalg.zeros(n, n), linalg.zeros(n, n)
        for nu in order:
            for j, y in enumerate(layers[nu].sel):
                k = index[(nu, j)]
                up = vsub(nu, ei)
                if up in layers:
                    for j2, c in enumerate(coords(up, vd.e_act(i, y))):
                        if c:
                            em[index[(up, j2)]][k] = c
                down = vadd(nu, ei)
                if down in layers:
                    for j2, c in enumerate(coords(down, vd.f_act(i, y))):
                        if c:
                            fm[index[(down, j2)]][k] = c
        e_mats.append(em)
        f_mats.append(fm)
    mod = WeightModule(qg, lam, labels, e_mats, f_mats, truncated=False)
    mod.verma = vd
    return mod


# ---------------------------------------------------------------------------
# Theta, traces, matrix coefficients
# ---------------------------------------------------------------------------


def theta_scalar(qg: QuantumGroup, mu: Sequence) -> RationalFunction:
    """``v^{-2 rho . mu}``."""
    return qg.mono(-2 * qg.datum.dot(qg.datum.rho, mu), 0)


def theta(mod: WeightModule) -> linalg.Matrix:
    n = mod.dim
    m = linalg.zeros(n, n)
    for k, (w, _) in enumerate(mod.labels):
        m[k][k] = theta_scalar(mod.qg, w)
    return m


def quantum_trace(mod: WeightModule, u: UElement) -> RationalFunction:
    """``tr_M(u Theta)``."""
    a = mod.action(u)
    s = ZERO
    for k, (w, _) in enumerate(mod.labels):
        if a[k][k]:
            s = s + a[k][k] * theta_scalar(mod.qg, w)
    return s


def matrix_coefficient(mod: WeightModule, f: int, m: Sequence[RationalFunction], u: UElement) -> RationalFunction:
    """``C_{f,m}(u) = f(u.m)`` with ``f`` the coordinate functional of basis vector ``f``."""
    return mod.act(u, m)[f]


def relation_defects(mod: WeightModule) -> List[str]:
    """Names of defining relations failing as matrix identities on ``mod``."""
    qg = mod.qg
    d = qg.datum
    n = qg.rank
    bad = []
    ident = linalg.identity(mod.dim)

    def eq(x, y):
        return all(a == b for ra, rb in zip(x, y) for a, b in zip(ra, rb))

    def sub(x, y):
        return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(x, y)]

    for i in range(n):
        for kind in ("K", "K'"):
            g = mod.generator("K" if kind == "K" else "Kp", i)
            gi = mod.generator("K" if kind == "K" else "Kp", i, -1)
            if not eq(linalg.matmul(g, gi), ident):
                bad.append(f"K-inverse {kind}{i+1}")
    for i in range(n):
        ei = unit(n, i)
        k, ki = mod.generator("K", i), mod.generator("K", i, -1)
        kp, kpi = mod.generator("Kp", i), mod.generator("Kp", i, -1)
        for j in range(n):
            ej = unit(n, j)
            ij = d.dot(ei, ej)
            tt = d.antisym(ej, ei)
            checks = [
                (k, mod.e_mats[j], ki, qg.mono(ij, tt)),
                (kp, mod.e_mats[j], kpi, qg.mono(-ij, tt)),
                (kp, mod.f_mats[j], kpi, qg.mono(ij, -tt)),
                (k, mod.f_mats[j], ki, qg.mono(-ij, -tt)),
            ]
            for a, x, b, s in checks:
                lhs = linalg.matmul(linalg.matmul(a, x), b)
                rhs = [[s * y if y else y for y in row] for row in x]
                if not eq(lhs, rhs):
                    bad.append(f"K-conjugation ({i+1},{j+1})")
                    break
            comm = sub(linalg.matmul(mod.e_mats[i], mod.f_mats[j]), linalg.matmul(mod.f_mats[j], mod.e_mats[i]))
            if i == j:
                c = qg.qdiff(i).inverse()
                rhs = [[c * (a - b) if (a or b) else ZERO for a, b in zip(ra, rb)] for ra, rb in zip(k, kp)]
            else:
                rhs = linalg.zeros(mod.dim, mod.dim)
            if not eq(comm, rhs):
                bad.append(f"EF-commutator ({i+1},{j+1})")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = qg.free.serre_element(i, j)
            if not linalg.is_zero_matrix(mod.action(qg.from_free_e(s))):
                bad.append(f"Serre E ({i+1},{j+1})")
            if not linalg.is_zero_matrix(mod.action(qg.from_free_f(s))):
                bad.append(f"Serre F ({i+1},{j+1})")
    return bad


def singular_check(qg: QuantumGroup, lam: Sequence, i: int) -> bool:
    """``E_j F_i^n v_lam = 0`` for every ``j`` with ``n = lam . alpha_i + 1``."""
    vd = VermaData(qg, lam)
    n = qg.datum.coroot_pairing(vd.lam, i) + 1
    if Fraction(n).denominator != 1 or n < 1:
        raise ModuleError("lam . alpha_i must be a non-negative integer")
    vec = vd.f_vector((i,) * int(n))
    return all(not vd.apply("E", j, vec) for j in range(qg.rank))


def default_depth(qg: QuantumGroup, lam: Sequence) -> int:
    """Sum over simple directions of ``lam . alpha_i + 2`` (at least 1)."""
    s = 0
    for i in range(qg.rank):
        c = qg.datum.coroot_pairing(lam, i)
        s += max(int(c), 0) + 2
    return max(s, 1)
