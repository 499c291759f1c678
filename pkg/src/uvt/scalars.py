"""Exact arithmetic in Q(v, t).

Elements are stored as a reduced quotient of two ordinary polynomials in
``v`` and ``t`` (negative exponents are pushed into the denominator), so
structural equality is mathematical equality.  Polynomial multiplication and
gcd are delegated to FLINT through ``python-flint``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

import flint

CTX = flint.fmpq_mpoly_ctx.get(("v", "t"), "lex")
_PV, _PT = CTX.gens()
_P1 = CTX.from_dict({(0, 0): 1})
_P0 = CTX.from_dict({})

Exponent = Tuple[int, int]


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    # flint.fmpq
    return Fraction(int(c.p), int(c.q))


class LaurentPoly:
    """Finite sum of ``c * v^a * t^b`` with rational ``c`` and integer ``a, b``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Exponent, Fraction] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = _to_fraction(c)
            if c:
                clean[(int(k[0]), int(k[1]))] = c
        self.terms = clean

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "LaurentPoly":
        return cls({(a, b): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def shift(self) -> Exponent:
        """Componentwise minimum exponent (the Laurent shift)."""
        if not self.terms:
            return (0, 0)
        return (min(k[0] for k in self.terms), min(k[1] for k in self.terms))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[Exponent, Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_poly(self):
        """Return ``(p, (a, b))`` with ``self == v^a t^b * p`` and ``p`` a plain polynomial."""
        a, b = self.shift()
        return CTX.from_dict({(i - a, j - b): c for (i, j), c in self.terms.items()}), (a, b)

    def __repr__(self) -> str:
        return f"LaurentPoly({render_laurent(self)})"

    __str__ = __repr__


def _poly_to_laurent(p, shift: Exponent = (0, 0)) -> LaurentPoly:
    return LaurentPoly({(i + shift[0], j + shift[1]): _to_fraction(c) for (i, j), c in p.to_dict().items()})


def _monomial_poly(a: int, b: int):
    return CTX.from_dict({(a, b): 1})


class RationalFunction:
    """An element of Q(v, t) in canonical form.

    ``num/den`` with ``gcd(num, den) = 1`` and the lexicographically least
    term of ``den`` having coefficient 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: Union[int, Fraction, "RationalFunction", LaurentPoly] = 0):
        if isinstance(value, RationalFunction):
            self.num, self.den, self._hash = value.num, value.den, value._hash
            return
        self._hash = None
        if isinstance(value, LaurentPoly):
            p, (a, b) = value.to_poly()
            num, den = p * _monomial_poly(max(a, 0), max(b, 0)), _monomial_poly(max(-a, 0), max(-b, 0))
            self.num, self.den = _reduce(num, den)
        else:
            c = _to_fraction(value)
            self.num = CTX.from_dict({(0, 0): flint.fmpq(c.numerator, c.denominator)}) if c else _P0
            self.den = _P1

    @classmethod
    def _raw(cls, num, den) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_polys(cls, num, den) -> "RationalFunction":
        if den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        return cls._raw(*_reduce(num, den))

    # ---- structure -------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return len(self.den) == 1

    @property
    def numerator(self) -> LaurentPoly:
        return _poly_to_laurent(self.num)

    @property
    def denominator(self) -> LaurentPoly:
        return _poly_to_laurent(self.den)

    def to_laurent(self) -> LaurentPoly:
        """Laurent expansion; only valid when the denominator is a monomial."""
        if len(self.den) != 1:
            raise ValueError(f"{self} is not a Laurent polynomial")
        (a, b), c = self.den.monoms()[0], self.den.coeffs()[0]
        inv = 1 / _to_fraction(c)
        return LaurentPoly({(i - a, j - b): _to_fraction(x) * inv for (i, j), x in self.num.to_dict().items()})

    def t_degrees(self) -> set:
        """Set of t-exponents when Laurent (used to detect t-free constants)."""
        return {k[1] for k in self.to_laurent().terms}

    def is_t_free(self) -> bool:
        return self.num.degrees()[1] == 0 and self.den.degrees()[1] == 0

    # ---- arithmetic ------------------------------------------------
    def __add__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num + other.num, _P1)
        if self.den == other.den:
            return RationalFunction._raw(*_reduce(self.num + other.num, self.den))
        g = self.den.gcd(other.den)
        if g.is_one():
            return RationalFunction._raw(*_reduce(self.num * other.den + other.num * self.den, self.den * other.den))
        d1 = self.den / g
        d2 = other.den / g
        return RationalFunction._raw(*_reduce(self.num * d2 + other.num * d1, d1 * other.den))

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num * other.num, _P1)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num, other.den) if g1.is_one() else (self.num / g1, other.den / g1)
        n2, d1 = (other.num, self.den) if g2.is_one() else (other.num / g2, self.den / g2)
        return RationalFunction._raw(*_normalize(n1 * n2, d1 * d2))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(v,t)")
        return RationalFunction._raw(*_normalize(self.den, self.num))

    def __truediv__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))
        return self._hash

    # ---- evaluation -----------------------------------------------
    def evaluate(self, v0, t0) -> Fraction:
        """Value at a rational point; raises ZeroDivisionError at a pole."""
        fv, ft = flint.fmpq(Fraction(v0).numerator, Fraction(v0).denominator), flint.fmpq(
            Fraction(t0).numerator, Fraction(t0).denominator
        )
        d = self.den(fv, ft)
        if d == 0:
            raise ZeroDivisionError("evaluation point is a pole")
        return _to_fraction(self.num(fv, ft) / d)

    def __repr__(self) -> str:
        return render(self)

    __str__ = __repr__


def _normalize(num, den):
    if den.is_zero():
        raise ZeroDivisionError("denominator is the zero polynomial")
    if num.is_zero():
        return _P0, _P1
    c = den.coeffs()[-1]
    if c != 1:
        num = num / c
        den = den / c
    return num, den


def _reduce(num, den):
    if num.is_zero():
        return _P0, _P1
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    return _normalize(num, den)


def _coerce(x) -> RationalFunction | None:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction(x)
    if isinstance(x, LaurentPoly):
        return RationalFunction(x)
    return None


ZERO = RationalFunction(0)
ONE = RationalFunction(1)


@lru_cache(maxsize=None)
def monomial(a: int, b: int = 0) -> RationalFunction:
    """``v^a t^b`` for integers ``a, b``."""
    if not isinstance(a, int) or not isinstance(b, int):
        if Fraction(a).denominator != 1 or Fraction(b).denominator != 1:
            raise ValueError(f"non-integral exponent v^{a} t^{b}")
        a, b = int(a), int(b)
    return RationalFunction._raw(_monomial_poly(max(a, 0), max(b, 0)), _monomial_poly(max(-a, 0), max(-b, 0)))


V = monomial(1, 0)
T = monomial(0, 1)


def arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Field arithmetic by operator name (``add``, ``sub``, ``mul``, ``div``)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def quantum_integer(n: int, vi_exp: int = 1, ti_exp: int = 1) -> RationalFunction:
    """[n] at ``v_i = v^vi_exp, t_i = t^ti_exp``.

    ``((v_i t_i)^n - (v_i t_i^{-1})^{-n}) / (v_i t_i - (v_i t_i^{-1})^{-1})``.
    """
    if n < 0:
        raise ValueError("quantum integers are defined for n >= 0")
    if n == 0:
        return ZERO
    vt = monomial(vi_exp, ti_exp)
    vti = monomial(vi_exp, -ti_exp)
    return (vt ** n - vti ** (-n)) / (vt - vti.inverse())


def quantum_factorial(n: int, vi_exp: int = 1, ti_exp: int = 1) -> RationalFunction:
    if n < 0:
        raise ValueError("quantum factorial is defined for n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * quantum_integer(k, vi_exp, ti_exp)
    return out


def classical_quantum_integer(n: int) -> RationalFunction:
    """One-parameter ``(v^n - v^-n)/(v - v^-1)``."""
    if n == 0:
        return ZERO
    return (V ** n - V ** (-n)) / (V - V.inverse())


def specialize_t_one(x: RationalFunction) -> RationalFunction:
    """Substitute ``t := 1``."""
    den = x.den.subs({"t": 1})
    if den.is_zero():
        raise ZeroDivisionError(f"denominator of {x} vanishes at t = 1")
    return RationalFunction.from_polys(x.num.subs({"t": 1}), den)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _render_coeff_monomial(c: Fraction, a: int, b: int) -> str:
    parts = []
    for name, e in (("v", a), ("t", b)):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    mono = "*".join(parts)
    ac = abs(c)
    cs = str(ac) if ac.denominator == 1 else f"{ac.numerator}/{ac.denominator}"
    if not mono:
        body = cs
    elif ac == 1:
        body = mono
    elif ac.denominator == 1:
        body = f"{cs}*{mono}"
    else:
        body = f"({cs})*{mono}"
    return ("-" if c < 0 else "+") + body


def render_laurent(p: LaurentPoly) -> str:
    """Render with terms in descending (v, t) exponent order."""
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
    out = ""
    for (a, b), c in items:
        s = _render_coeff_monomial(c, a, b)
        if not out:
            out = s[1:] if s[0] == "+" else s
        else:
            out += f" {s[0]} {s[1:]}"
    return out


def _wrap(s: str) -> str:
    return s if (" " not in s and "/" not in s) else f"({s})"


def render(x: RationalFunction) -> str:
    """Text form in the scalar grammar (``v``, ``t``, ``^``, ``*``, ``+``, ``-``, ``/``)."""
    if x.is_laurent():
        return render_laurent(x.to_laurent())
    num, den = x.numerator, x.denominator
    # balance the denominator around exponent zero
    vs = [k[0] for k in den.terms]
    ts = [k[1] for k in den.terms]
    sh = LaurentPoly.monomial(-((min(vs) + max(vs)) // 2), -((min(ts) + max(ts)) // 2))
    num, den = num * sh, den * sh
    lead = sorted(den.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))[0][1]
    if lead < 0:
        num, den = -num, -den
    dstr = _wrap(render_laurent(den))
    if num == LaurentPoly.monomial(0, 0):
        return f"{dstr}^-1" if dstr.startswith("(") else f"{dstr}^-1"
    if num == LaurentPoly.monomial(0, 0, -1):
        return f"-{dstr}^-1"
    return f"{_wrap(render_laurent(num))}/{dstr}"


def latex(x: RationalFunction) -> str:
    def lp(p: LaurentPoly) -> str:
        s = render_laurent(p)
        return s.replace("*", " ").replace("^", "^{").replace("{-", "{-")

    def fix(s: str) -> str:
        # close braces opened after '^'
        out, open_ = [], False
        for ch in s:
            if open_ and not (ch.isdigit() or ch == "-"):
                out.append("}")
                open_ = False
            out.append(ch)
            if ch == "{":
                open_ = True
        if open_:
            out.append("}")
        return "".join(out)

    if x.is_laurent():
        return fix(lp(x.to_laurent()))
    return r"\frac{" + fix(lp(x.numerator)) + "}{" + fix(lp(x.denominator)) + "}"


def as_scalar(x) -> RationalFunction:
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(v,t)")
    return r


def sum_scalars(xs: Iterable[RationalFunction]) -> RationalFunction:
    out = ZERO
    for x in xs:
        out = out + x
    return out
