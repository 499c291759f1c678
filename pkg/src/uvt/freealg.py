"""The free algebra on symbols theta_i, its twisted tensor square and bilinear form.

Words are tuples of 0-based generator indices.  The quotient by the radical
of the form is handled per degree: a deterministic set of basis words is
chosen and every other word is expressed in it by an exact linear solve.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .cartan import CartanDatum, unit, vsub
from .scalars import ONE, ZERO, RationalFunction, monomial, quantum_factorial

Word = Tuple[int, ...]


class FreeElement:
    """Finite linear combination of words with coefficients in Q(v,t)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, RationalFunction]] = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, w: Sequence[int], coeff=ONE) -> "FreeElement":
        return cls({tuple(w): RationalFunction(coeff)})

    @classmethod
    def one(cls) -> "FreeElement":
        return cls({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreeElement") -> "FreeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return FreeElement(out)

    def __neg__(self) -> "FreeElement":
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def scale(self, c) -> "FreeElement":
        c = RationalFunction(c)
        if not c:
            return FreeElement()
        return FreeElement({w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            out: Dict[Word, RationalFunction] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, ZERO) + c1 * c2
            return FreeElement(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def degrees(self, rank: int) -> set:
        return {word_degree(w, rank) for w in self.terms}

    def component(self, nu: Sequence[int]) -> "FreeElement":
        nu = tuple(nu)
        return FreeElement({w: c for w, c in self.terms.items() if word_degree(w, len(nu)) == nu})

    def __repr__(self) -> str:
        return render_free(self)


def word_degree(w: Sequence[int], rank: int) -> tuple:
    d = [0] * rank
    for i in w:
        d[i] += 1
    return tuple(d)


def words_of_degree(nu: Sequence[int]) -> List[Word]:
    """All words of degree ``nu`` in lexicographic order."""
    letters = []
    for i, k in enumerate(nu):
        if k < 0:
            return []
        letters.extend([i] * k)
    return sorted(set(itertools.permutations(letters)))


def render_word(w: Sequence[int], sym: str = "th") -> str:
    return "*".join(f"{sym}{i+1}" for i in w) if w else "1"


def render_free(x: FreeElement, sym: str = "th") -> str:
    from .scalars import render

    if not x.terms:
        return "0"
    parts = []
    for w in sorted(x.terms, key=lambda w: (len(w), w)):
        c = x.terms[w]
        ws = render_word(w, sym)
        if c == ONE:
            parts.append(("+", ws))
        elif c == -ONE:
            parts.append(("-", ws))
        else:
            cs = render(c)
            neg = cs.startswith("-") and " " not in cs
            if neg:
                cs = cs[1:]
            if " " in cs:
                cs = f"({cs})"
            body = cs if not w else f"{cs}*{ws}"
            parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


class TensorElement:
    """Element of the tensor square, keyed by pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[Word, Word], RationalFunction]] = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TensorElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"({c})*[{render_word(a)} (x) {render_word(b)}]" for (a, b), c in self.terms.items()) or "0"


class GradedBasis:
    """Basis words for one degree of the quotient and the reduction data."""

    def __init__(self, degree, words, selected, gram, coords, radical_dim):
        self.degree = degree
        self.words: List[Word] = words
        self.selected: List[int] = selected
        self.gram = gram
        self.coords: Dict[Word, List[RationalFunction]] = coords
        self.radical_dim = radical_dim

    @property
    def basis(self) -> List[Word]:
        return [self.words[i] for i in self.selected]

    @property
    def rank(self) -> int:
        return len(self.selected)

    def __repr__(self) -> str:
        return f"GradedBasis(degree={self.degree}, rank={self.rank}, radical_dim={self.radical_dim})"


class FreeAlgebra:
    """Structure maps of the free algebra for a fixed Cartan datum.

    ``troot`` lets the symbol ``t`` stand for ``t^(1/troot)``; every
    t-exponent is then scaled by ``troot``.  The default is 1.
    """

    def __init__(self, datum: CartanDatum, troot: int = 1):
        self.datum = datum
        self.rank = datum.rank
        self.troot = troot
        self._lock = threading.Lock()
        self._pair: Dict[Tuple[Word, Word], RationalFunction] = {}
        self._ri: Dict[Tuple[int, Word], Dict[Word, RationalFunction]] = {}
        self._bases: Dict[tuple, GradedBasis] = {}

    def mono(self, a, b) -> RationalFunction:
        """``v^a t^b`` honouring ``troot``."""
        bb = Fraction(b) * self.troot
        if bb.denominator != 1 or Fraction(a).denominator != 1:
            raise ValueError(f"exponent v^{a} t^{b} not representable with troot={self.troot}")
        return monomial(int(a), int(bb))

    def _store(self, cache: dict, key, value):
        with self._lock:
            return cache.setdefault(key, value)

    def deg(self, w: Sequence[int]) -> tuple:
        return word_degree(w, self.rank)

    def vi(self, i: int) -> int:
        """Exponent ``k`` with ``v_i = v^k``."""
        return self.datum.omega[i][i]

    def theta_norm(self, i: int) -> RationalFunction:
        """``(theta_i, theta_i) = 1/(1 - v_i^-2)``."""
        return (ONE - self.mono(-2 * self.vi(i), 0)).inverse()

    # ---- products --------------------------------------------------
    def twist(self, y1_deg, x2_deg) -> RationalFunction:
        d = self.datum
        return self.mono(d.dot(y1_deg, x2_deg), d.antisym(y1_deg, x2_deg))

    def twisted_tensor_multiply(self, x: TensorElement, y: TensorElement) -> TensorElement:
        """``(x1 (x) x2)(y1 (x) y2) = v^{|y1|.|x2|} t^{<|y1|,|x2|> - <|x2|,|y1|>} x1y1 (x) x2y2``."""
        out: Dict[Tuple[Word, Word], RationalFunction] = {}
        for (x1, x2), c1 in x.terms.items():
            dx2 = self.deg(x2)
            for (y1, y2), c2 in y.terms.items():
                k = (x1 + y1, x2 + y2)
                out[k] = out.get(k, ZERO) + c1 * c2 * self.twist(self.deg(y1), dx2)
        return TensorElement(out)

    def coproduct_word(self, w: Sequence[int]) -> TensorElement:
        out = TensorElement({((), ()): ONE})
        for i in w:
            out = self.twisted_tensor_multiply(out, TensorElement({((i,), ()): ONE, ((), (i,)): ONE}))
        return out

    def coproduct_r(self, x: FreeElement) -> TensorElement:
        out = TensorElement()
        for w, c in x.terms.items():
            out = out + TensorElement({k: c * v for k, v in self.coproduct_word(w).terms.items()})
        return out

    # ---- derivations -----------------------------------------------
    def r_word(self, w: Word, i: int) -> Dict[Word, RationalFunction]:
        """``r_i`` on a single word, via ``r_i(x th_j) = v^{i.j} t^{<j,i>-<i,j>} r_i(x) th_j + d_ij x``."""
        key = (i, w)
        hit = self._ri.get(key)
        if hit is not None:
            return hit
        out: Dict[Word, RationalFunction] = {}
        if w:
            head, j = w[:-1], w[-1]
            ej, ei = unit(self.rank, j), unit(self.rank, i)
            tw = self.mono(self.datum.dot(ei, ej), self.datum.antisym(ej, ei))
            for u, c in self.r_word(head, i).items():
                out[u + (j,)] = out.get(u + (j,), ZERO) + c * tw
            if j == i:
                out[head] = out.get(head, ZERO) + ONE
            out = {u: c for u, c in out.items() if c}
        return self._store(self._ri, key, out)

    def r_i_map(self, x: FreeElement, i: int, side: str = "right") -> FreeElement:
        if side == "right":
            out = FreeElement()
            for w, c in x.terms.items():
                out = out + FreeElement(self.r_word(w, i)).scale(c)
            return out
        if side == "left":
            out = FreeElement()
            for w, c in x.terms.items():
                out = out + FreeElement(self._ir_word(w, i)).scale(c)
            return out
        raise ValueError("side must be 'left' or 'right'")

    def _ir_word(self, w: Word, i: int) -> Dict[Word, RationalFunction]:
        # _ir(th_j y) = d_ij y + v^{i.j} t^{<i,j>-<j,i>} th_j _ir(y)
        out: Dict[Word, RationalFunction] = {}
        if not w:
            return out
        j, tail = w[0], w[1:]
        if j == i:
            out[tail] = ONE
        ej, ei = unit(self.rank, j), unit(self.rank, i)
        tw = self.mono(self.datum.dot(ei, ej), self.datum.antisym(ei, ej))
        for u, c in self._ir_word(tail, i).items():
            k = (j,) + u
            out[k] = out.get(k, ZERO) + c * tw
        return {u: c for u, c in out.items() if c}

    # ---- the bilinear form -----------------------------------------
    def pair_words(self, x: Word, y: Word) -> RationalFunction:
        """``(x, y' th_i) = t^{2[|x|-i, i]} (th_i, th_i) (r_i(x), y')``."""
        if len(x) != len(y) or self.deg(x) != self.deg(y):
            return ZERO
        if not x:
            return ONE
        key = (x, y) if x <= y else (y, x)
        hit = self._pair.get(key)
        if hit is not None:
            return hit
        head, i = y[:-1], y[-1]
        ei = unit(self.rank, i)
        rest = vsub(self.deg(x), ei)
        s = ZERO
        for u, c in self.r_word(x, i).items():
            p = self.pair_words(u, head)
            if p:
                s = s + c * p
        if s:
            s = s * self.mono(0, 2 * self.datum.square(rest, ei)) * self.theta_norm(i)
        return self._store(self._pair, key, s)

    def pairing(self, x: FreeElement, y: FreeElement) -> RationalFunction:
        s = ZERO
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                p = self.pair_words(w1, w2)
                if p:
                    s = s + c1 * c2 * p
        return s

    def pair_words_via_coproduct(self, x: Word, y: Word, split: Optional[int] = None) -> RationalFunction:
        """Independent evaluation through the full coproduct ``r(x)``.

        ``(x, y'y'') = sum t^{2[|x1|,|x2|]} (x1, y')(x2, y'')`` with ``y = y'y''``
        split at position ``split`` (default: the middle).  Recursion uses
        the same route on both halves; no memoization is shared with
        :meth:`pair_words`.
        """
        if self.deg(x) != self.deg(y):
            return ZERO
        n = len(y)
        if n == 0:
            return ONE
        if n == 1:
            return self.theta_norm(y[0]) if x == y else ZERO
        k = n // 2 if split is None else split
        if k <= 0 or k >= n:
            k = n // 2
        y1, y2 = y[:k], y[k:]
        d1, d2 = self.deg(y1), self.deg(y2)
        s = ZERO
        for (x1, x2), c in self.coproduct_word(x).terms.items():
            if self.deg(x1) != d1 or self.deg(x2) != d2:
                continue
            a = self.pair_words_via_coproduct(x1, y1)
            if not a:
                continue
            b = self.pair_words_via_coproduct(x2, y2)
            if b:
                s = s + c * a * b * self.mono(0, 2 * self.datum.square(d1, d2))
        return s

    # ---- quantum Serre elements -------------------------------------
    def divided_power(self, i: int, n: int) -> FreeElement:
        return FreeElement.word((i,) * n, quantum_factorial(n, self.vi(i), self.vi(i) * self.troot).inverse())

    def serre_element(self, i: int, j: int) -> FreeElement:
        if i == j:
            raise ValueError("serre_element needs i != j")
        d = self.datum
        ei, ej = unit(self.rank, i), unit(self.rank, j)
        ii = d.dot(ei, ei)
        top = 1 - Fraction(2 * d.dot(ei, ej), ii)
        if top.denominator != 1:
            raise ValueError("non-integral Cartan entry")
        top = int(top)
        ti = Fraction(ii, 2)
        out = FreeElement()
        for p in range(top + 1):
            q = top - p
            e = -p * (q - Fraction(2 * d.angle(ei, ej), ii) + Fraction(2 * d.angle(ej, ei), ii)) * ti
            coeff = self.mono(0, e) * (-1) ** p
            term = self.divided_power(i, p) * FreeElement.word((j,)) * self.divided_power(i, q)
            out = out + term.scale(coeff)
        return out

    # ---- graded bases of the quotient --------------------------------
    def gram(self, words: Sequence[Word]) -> linalg.Matrix:
        return [[self.pair_words(a, b) for b in words] for a in words]

    def graded_basis(self, nu: Sequence[int]) -> GradedBasis:
        nu = tuple(int(x) for x in nu)
        hit = self._bases.get(nu)
        if hit is not None:
            return hit
        words = words_of_degree(nu)
        g = self.gram(words)
        gb = None
        for point in linalg.DEFAULT_POINTS:
            sel = linalg.independent_columns_at(g, point)
            gb = self._try_basis(nu, words, g, sel)
            if gb is not None:
                break
        if gb is None:
            _, sel = linalg.rref(g)
            gb = self._try_basis(nu, words, g, sel)
            if gb is None:  # pragma: no cover - exact pivots always succeed
                raise ArithmeticError(f"basis selection failed at degree {nu}")
        return self._store(self._bases, nu, gb)

    def _try_basis(self, nu, words, g, sel) -> Optional[GradedBasis]:
        if not sel:
            coords = {w: [] for w in words}
            if not linalg.is_zero_matrix(g):
                return None
            return GradedBasis(nu, words, [], g, coords, len(words))
        gs = [[g[a][b] for b in sel] for a in sel]
        ginv = linalg.inverse(gs)
        coords = {}
        for k, w in enumerate(words):
            row = [g[k][b] for b in sel]
            coords[w] = [sum((row[a] * ginv[a][b] for a in range(len(sel)) if row[a] and ginv[a][b]), ZERO) for b in range(len(sel))]
        # exact certificate that the chosen words span modulo the radical
        for k, w in enumerate(words):
            cw = coords[w]
            for k2 in range(len(words)):
                val = ZERO
                for a, b in enumerate(sel):
                    if cw[a] and g[b][k2]:
                        val = val + cw[a] * g[b][k2]
                if val != g[k][k2]:
                    return None
        return GradedBasis(nu, words, list(sel), g, coords, len(words) - len(sel))

    def reduce(self, x: FreeElement) -> FreeElement:
        """Rewrite ``x`` in the basis words (equality modulo the radical)."""
        out: Dict[Word, RationalFunction] = {}
        for w, c in x.terms.items():
            gb = self.graded_basis(self.deg(w))
            for b, k in zip(gb.basis, gb.coords[w]):
                if k:
                    out[b] = out.get(b, ZERO) + c * k
        return FreeElement(out)

    def in_radical(self, x: FreeElement) -> bool:
        for nu in x.degrees(self.rank):
            comp = x.component(nu)
            for w in words_of_degree(nu):
                if self.pairing(comp, FreeElement.word(w)):
                    return False
        return True
