"""Cartan data: the matrix Omega, its three bilinear forms, roots, weights and W.

Vectors are tuples of coordinates in the simple-root basis.  Root-lattice
vectors have ``int`` entries; weights may carry ``Fraction`` entries.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import integer_kernel

Vec = Tuple


class CartanError(ValueError):
    pass


def _vec(x: Sequence, n: int) -> tuple:
    if len(x) != n:
        raise CartanError(f"dimension mismatch: expected length {n}, got {len(x)}")
    out = []
    for c in x:
        f = Fraction(c)
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a: Sequence) -> tuple:
    return tuple(k * x for x in a)


def vneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def tr(a: Sequence) -> int:
    return sum(a)


def unit(n: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(n))


def zero(n: int) -> tuple:
    return (0,) * n


class CartanDatum:
    """The matrix Omega with ``<i,j> = Omega_ij``, ``[i,j] = 2 d_ij Omega_ii - Omega_ij``
    and ``i.j = <i,j> + <j,i>``."""

    def __init__(self, omega: Sequence[Sequence[int]], name: str = "custom", weyl_bound: int = 100000):
        self.omega = tuple(tuple(int(x) for x in row) for row in omega)
        self.rank = len(self.omega)
        self.name = name
        self.weyl_bound = weyl_bound
        if self.rank == 0 or any(len(r) != self.rank for r in self.omega):
            raise CartanError("Omega must be a nonempty square matrix")
        om = self.omega
        for i in range(self.rank):
            if om[i][i] <= 0:
                raise CartanError(f"Omega_{i+1}{i+1} must be positive")
            for j in range(self.rank):
                if i != j:
                    if om[i][j] > 0:
                        raise CartanError(f"Omega_{i+1}{j+1} must be <= 0")
                    s = om[i][j] + om[j][i]
                    if s % om[i][i] != 0:
                        raise CartanError(f"(Omega_ij + Omega_ji)/Omega_ii not integral for i={i+1}, j={j+1}")
        g = 0
        for i in range(self.rank):
            g = gcd(g, om[i][i])
        if g != 1:
            raise CartanError("the diagonal entries of Omega must have gcd 1")

    def __repr__(self) -> str:
        return f"CartanDatum({self.name}, omega={[list(r) for r in self.omega]})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CartanDatum) and self.omega == other.omega

    def __hash__(self) -> int:
        return hash(self.omega)

    @property
    def symmetric_type(self) -> bool:
        return all(self.omega[i][i] == 1 for i in range(self.rank))

    def require_symmetric(self) -> None:
        if not self.symmetric_type:
            raise CartanError("algebras are only built for symmetric type (Omega_ii = 1 for all i)")

    # ---- forms -----------------------------------------------------
    def angle(self, a: Sequence, b: Sequence):
        n = self.rank
        if len(a) != n or len(b) != n:
            raise CartanError("dimension mismatch")
        om = self.omega
        return sum(a[i] * om[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])

    def square(self, a: Sequence, b: Sequence):
        n = self.rank
        diag = sum(2 * self.omega[i][i] * a[i] * b[i] for i in range(n))
        return diag - self.angle(a, b)

    def dot(self, a: Sequence, b: Sequence):
        return self.angle(a, b) + self.angle(b, a)

    def antisym(self, a: Sequence, b: Sequence):
        """``<a,b> - <b,a>``; appears as the t-exponent of most commutation rules."""
        return self.angle(a, b) - self.angle(b, a)

    def form(self, kind: str, a: Sequence, b: Sequence):
        a = _vec(a, self.rank)
        b = _vec(b, self.rank)
        if kind == "angle":
            return self.angle(a, b)
        if kind == "square":
            return self.square(a, b)
        if kind == "dot":
            return self.dot(a, b)
        raise CartanError(f"unknown form {kind!r}")

    # ---- lattices --------------------------------------------------
    def simple(self, i: int) -> tuple:
        return unit(self.rank, i)

    def zero(self) -> tuple:
        return zero(self.rank)

    @cached_property
    def cartan_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        n = self.rank
        return tuple(
            tuple(2 * self.dot(unit(n, i), unit(n, j)) // self.dot(unit(n, i), unit(n, i)) for j in range(n))
            for i in range(n)
        )

    def coroot_pairing(self, lam: Sequence, i: int):
        """``2 (lam . a_i) / (a_i . a_i)``."""
        ai = unit(self.rank, i)
        return Fraction(2 * self.dot(lam, ai), self.dot(ai, ai))

    def reflect(self, lam: Sequence, i: int) -> tuple:
        k = self.coroot_pairing(lam, i)
        out = list(lam)
        out[i] = out[i] - k
        return _vec(out, self.rank)

    def is_weight(self, lam: Sequence) -> bool:
        return all(Fraction(self.dot(lam, unit(self.rank, i))).denominator == 1 for i in range(self.rank))

    def is_dominant(self, lam: Sequence) -> bool:
        return self.is_weight(lam) and all(self.dot(lam, unit(self.rank, i)) >= 0 for i in range(self.rank))

    def in_root_lattice(self, lam: Sequence) -> bool:
        return all(Fraction(x).denominator == 1 for x in lam)

    @cached_property
    def fundamental_weights(self) -> List[tuple]:
        """``w_i`` with ``2 (w_i . a_j)/(a_j . a_j) = d_ij``, in root coordinates."""
        import sympy

        n = self.rank
        a = sympy.Matrix(n, n, lambda i, j: sympy.Rational(self.dot(unit(n, i), unit(n, j))))
        inv = a.inv()
        out = []
        for i in range(n):
            half = sympy.Rational(self.dot(unit(n, i), unit(n, i)), 2)
            col = [inv[j, i] * half for j in range(n)]
            out.append(_vec([Fraction(int(c.p), int(c.q)) for c in col], n))
        return out

    def from_fundamental(self, coords: Sequence) -> tuple:
        out = zero(self.rank)
        for c, w in zip(coords, self.fundamental_weights):
            out = vadd(out, vscale(Fraction(c), w))
        return _vec(out, self.rank)

    def to_fundamental(self, lam: Sequence) -> tuple:
        return _vec([self.coroot_pairing(lam, i) for i in range(self.rank)], self.rank)

    # ---- roots and W -----------------------------------------------
    @cached_property
    def positive_roots(self) -> List[tuple]:
        n = self.rank
        seen = set()
        queue = deque(unit(n, i) for i in range(n))
        count = 0
        while queue:
            r = queue.popleft()
            if r in seen:
                continue
            seen.add(r)
            count += 1
            if count > self.weyl_bound:
                raise CartanError("not finite type: root enumeration exceeded the bound")
            for i in range(n):
                s = self.reflect(r, i)
                if s not in seen:
                    queue.append(s)
        pos = [r for r in seen if all(x >= 0 for x in r)]
        return sorted(pos, key=lambda r: (tr(r), r))

    @cached_property
    def rho(self) -> tuple:
        s = zero(self.rank)
        for r in self.positive_roots:
            s = vadd(s, r)
        return _vec([Fraction(x, 2) for x in s], self.rank)

    @cached_property
    def weyl_group(self) -> "WeylGroup":
        return WeylGroup(self)

    # ---- representation theory -------------------------------------
    def dominant_conjugate(self, lam: Sequence) -> tuple:
        lam = _vec(lam, self.rank)
        changed = True
        while changed:
            changed = False
            for i in range(self.rank):
                if self.coroot_pairing(lam, i) < 0:
                    lam = self.reflect(lam, i)
                    changed = True
        return lam

    def is_below(self, mu: Sequence, lam: Sequence) -> bool:
        """``mu <= lam`` in the dominance order (``lam - mu`` in Q^+)."""
        d = vsub(lam, mu)
        return all(Fraction(x).denominator == 1 and x >= 0 for x in d)

    def weight_multiplicities(self, lam: Sequence) -> Dict[tuple, int]:
        """``dim L(lam)_mu`` for all weights, by Freudenthal's recursion."""
        lam = _vec(lam, self.rank)
        if not self.is_dominant(lam):
            raise CartanError(f"weight {lam} is not dominant")
        n = self.rank
        # candidate weights: mu <= lam whose dominant conjugate is <= lam
        top = vsub(lam, self.weyl_group.longest_image(lam))
        ranges = [range(0, int(x) + 1) for x in top]
        cands = []
        for nu in itertools.product(*ranges):
            mu = vsub(lam, nu)
            if self.is_below(self.dominant_conjugate(mu), lam):
                cands.append((tr(nu), mu))
        cands.sort(key=lambda p: (p[0], vneg(p[1])))
        mult: Dict[tuple, int] = {}
        lr = vadd(lam, self.rho)
        norm_lr = self.dot(lr, lr)
        for _, mu in cands:
            if mu == lam:
                mult[mu] = 1
                continue
            num = Fraction(0)
            for a in self.positive_roots:
                k = 1
                while True:
                    w = vadd(mu, vscale(k, a))
                    if not self.is_below(w, lam):
                        break
                    m = mult.get(_vec(w, n), 0)
                    if m:
                        num += m * self.dot(w, a)
                    k += 1
            mr = vadd(mu, self.rho)
            den = norm_lr - self.dot(mr, mr)
            val = 2 * num / den
            if val.denominator != 1:
                raise CartanError("Freudenthal recursion produced a non-integer multiplicity")
            if val:
                mult[mu] = int(val)
        return mult

    def weyl_dimension(self, lam: Sequence) -> int:
        lr = vadd(_vec(lam, self.rank), self.rho)
        num = Fraction(1)
        for a in self.positive_roots:
            num *= Fraction(self.dot(lr, a)) / self.dot(self.rho, a)
        return int(num)

    # ---- the antisymmetric kernel ----------------------------------
    def antisym_kernel(self) -> List[tuple]:
        """Integer basis of ``{eta in Q : <i,eta> = <eta,i> for all i}``."""
        n = self.rank
        a = [[self.omega[i][j] - self.omega[j][i] for j in range(n)] for i in range(n)]
        return [tuple(b) for b in integer_kernel(a)]

    def in_antisym_kernel(self, eta: Sequence) -> bool:
        return all(self.antisym(unit(self.rank, i), eta) == 0 for i in range(self.rank))

    def parity_lift(self, eta: Sequence) -> Optional[tuple]:
        """Smallest ``nu`` with ``nu = eta (mod 2)`` and ``nu/2`` a dominant weight.

        Searches ``|y_i| <= 2 max|x_i| + 4``, ordered by L1 norm then lexicographically.
        """
        x = tuple(int(c) for c in _vec(eta, self.rank))
        if not any(x):
            return x
        bound = 2 * max(abs(c) for c in x) + 4
        axes = [[y for y in range(-bound, bound + 1) if (y - c) % 2 == 0] for c in x]
        best = None
        for y in itertools.product(*axes):
            half = tuple(Fraction(c, 2) for c in y)
            if self.is_dominant(half):
                key = (sum(abs(c) for c in y), y)
                if best is None or key < best[0]:
                    best = (key, y)
        return None if best is None else best[1]


class WeylGroup:
    """Elements stored as reduced words with their action on the root basis."""

    def __init__(self, datum: CartanDatum):
        n = datum.rank
        self.datum = datum
        # matrices acting on column vectors of root coordinates
        gens = []
        for i in range(n):
            cols = [datum.reflect(unit(n, j), i) for j in range(n)]
            gens.append(tuple(tuple(int(cols[j][r]) for j in range(n)) for r in range(n)))
        self.generators = gens
        ident = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
        words = {ident: ()}
        order = [ident]
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for i, s in enumerate(gens):
                h = _matmul(s, g)
                if h not in words:
                    words[h] = (i,) + words[g]
                    order.append(h)
                    queue.append(h)
                    if len(order) > datum.weyl_bound:
                        raise CartanError("not finite type: Weyl group enumeration exceeded the bound")
        self.elements = order
        self.words = words

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def act(self, g, lam: Sequence) -> tuple:
        n = len(lam)
        return _vec([sum(g[r][c] * lam[c] for c in range(n)) for r in range(n)], n)

    def inverse(self, g):
        for h in self.elements:
            if _matmul(g, h) == self.elements[0]:
                return h
        raise CartanError("element without inverse")

    def orbit(self, lam: Sequence) -> List[tuple]:
        seen = []
        for g in self.elements:
            x = self.act(g, lam)
            if x not in seen:
                seen.append(x)
        return seen

    def stabilizer_size(self, lam: Sequence) -> int:
        lam = tuple(lam)
        return sum(1 for g in self.elements if self.act(g, lam) == _vec(lam, len(lam)))

    def longest_image(self, lam: Sequence) -> tuple:
        """The lowest element of the orbit of a dominant weight."""
        best = None
        for x in self.orbit(lam):
            if best is None or tr(x) < tr(best):
                best = x
        return best


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n))


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def type_a(n: int) -> CartanDatum:
    """Upper-triangular preset: ``Omega_ii = 1``, ``Omega_{i,i+1} = -1``."""
    om = [[0] * n for _ in range(n)]
    for i in range(n):
        om[i][i] = 1
        if i + 1 < n:
            om[i][i + 1] = -1
    return CartanDatum(om, name=f"A{n}")


def from_type(name: str, omega: Optional[Sequence[Sequence[int]]] = None) -> CartanDatum:
    if omega is not None:
        return CartanDatum(omega, name="custom" if name in (None, "custom") else name)
    m = re.fullmatch(r"A(\d+)", name or "")
    if not m or int(m.group(1)) < 1:
        raise CartanError(f"unknown type {name!r}; use A1, A2, A3, ... or supply Omega")
    return type_a(int(m.group(1)))


def parse_omega(text: str) -> List[List[int]]:
    """``"1,-1;0,1"`` -> ``[[1,-1],[0,1]]``."""
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";") if r.strip()]
    except ValueError as exc:
        raise CartanError(f"cannot parse Omega {text!r}") from exc
    return rows


def format_vec(v: Sequence, prefix: str = "a") -> str:
    """Render a root-coordinate vector as ``a1+2*a2``."""
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        c = Fraction(c)
        sym = f"{prefix}{i+1}"
        if c == 1:
            body = sym
        elif c == -1:
            body = "-" + sym
        else:
            body = f"{c}*{sym}" if c.denominator == 1 else f"({c})*{sym}"
        parts.append(body)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out
