"""Exact bivariate algebra in the complex variable z and its conjugate.

Expressions are finite sums of log-Laurent terms

    c * z**a * zb**b * lnz**p * lnzb**q

with exact complex-rational coefficients c, integer exponents a, b (possibly
negative) and nonnegative log exponents p, q.  The term set is closed under
addition, multiplication, conjugation and the Wirtinger derivatives
d/dz = (d/dx - i d/dy)/2 and d/dzb = (d/dx + i d/dy)/2, which is all the
machinery the closed-form stream functions in this package require.

Coefficients are never rounded, so "this expression is identically zero" is a
decidable statement.  Floating-point evaluation is a separate layer (`eval_at`,
`eval_grid`) using the principal log branch.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "ExactComplex",
    "Expression",
    "SingularPointError",
    "Term",
    "Z",
    "ZBAR",
    "LN_Z",
    "LN_ZBAR",
    "ONE",
    "I",
    "const",
    "monomial",
    "x_expr",
    "y_expr",
]


class SingularPointError(ValueError):
    """Raised when a Laurent/log expression is evaluated at z = 0."""


def _as_fraction(v) -> Fraction:
    # floats are rejected on purpose: a binary float silently loses the
    # exactness guarantee (use strings, e.g. "0.3" -> 3/10).
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError(f"exact rational expected, got {type(v).__name__}")


class ExactComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @staticmethod
    def coerce(v) -> "ExactComplex":
        if isinstance(v, ExactComplex):
            return v
        return ExactComplex(_as_fraction(v))

    def __add__(self, other):
        o = ExactComplex.coerce(other)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = ExactComplex.coerce(other)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return ExactComplex.coerce(other) - self

    def __mul__(self, other):
        o = ExactComplex.coerce(other)
        return ExactComplex(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ExactComplex.coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero ExactComplex")
        return ExactComplex((self.re * o.re + self.im * o.im) / d,
                            (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return ExactComplex.coerce(other) / self

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"ExactComplex({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


class Term(NamedTuple):
    """One canonical term: coeff * z^zpow * zb^zbarpow * lnz^lnzpow * lnzb^lnzbarpow."""

    coeff: ExactComplex
    zpow: int
    zbarpow: int
    lnzpow: int
    lnzbarpow: int


def _accumulate(acc: dict, key: tuple, coeff: ExactComplex) -> None:
    cur = acc.get(key)
    new = coeff if cur is None else cur + coeff
    if new.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = new


class Expression:
    """Canonical finite sum of log-Laurent terms.

    Terms with equal exponent keys are merged and zero coefficients dropped on
    every operation, so two Expressions are equal exactly when their term maps
    are equal.  Instances are immutable values and safe to share.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        if terms:
            for key, coeff in terms.items():
                c = ExactComplex.coerce(coeff)
                if c.is_zero():
                    continue
                a, b, p, q = key
                if p < 0 or q < 0:
                    raise ValueError("log exponents must be nonnegative")
                clean[(int(a), int(b), int(p), int(q))] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Expression is immutable")

    # -- construction ----------------------------------------------------

    @staticmethod
    def zero() -> "Expression":
        return _ZERO

    def terms(self) -> tuple[Term, ...]:
        return tuple(Term(self._terms[k], *k) for k in sorted(self._terms))

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(acc, key, coeff)
        return Expression(acc)

    def __sub__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        acc = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(acc, key, -coeff)
        return Expression(acc)

    def __neg__(self):
        return Expression({k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Expression):
            acc: dict = {}
            for (a1, b1, p1, q1), c1 in self._terms.items():
                for (a2, b2, p2, q2), c2 in other._terms.items():
                    _accumulate(acc, (a1 + a2, b1 + b2, p1 + p2, q1 + q2), c1 * c2)
            return Expression(acc)
        scalar = ExactComplex.coerce(other)
        return Expression({k: c * scalar for k, c in self._terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(sorted((k, (c.re, c.im)) for k, c in self._terms.items())))

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        """True iff the expression equals its own conjugate."""
        return self == self.conjugate()

    def has_singular_terms(self) -> bool:
        """True if any term has a pole or a log factor (undefined at z=0)."""
        return any(a < 0 or b < 0 or p > 0 or q > 0 for a, b, p, q in self._terms)

    def has_branch_jump(self) -> bool:
        """True if the value jumps across the negative real axis.

        Continuing analytically across the cut sends lnz -> lnz + 2*pi*i and
        lnzb -> lnzb - 2*pi*i; the expression is invariant under that shift
        exactly when its formal log-derivative difference vanishes.
        """
        return not (self._dlog_z() - self._dlog_zbar()).is_zero()

    def _dlog_z(self) -> "Expression":
        acc: dict = {}
        for (a, b, p, q), c in self._terms.items():
            if p:
                _accumulate(acc, (a, b, p - 1, q), c * p)
        return Expression(acc)

    def _dlog_zbar(self) -> "Expression":
        acc: dict = {}
        for (a, b, p, q), c in self._terms.items():
            if q:
                _accumulate(acc, (a, b, p, q - 1), c * q)
        return Expression(acc)

    # -- calculus ----------------------------------------------------------

    def d_dz(self) -> "Expression":
        # d/dz [z^a zb^b lnz^p lnzb^q] = a z^(a-1) ... + p z^(a-1) lnz^(p-1) ...
        acc: dict = {}
        for (a, b, p, q), c in self._terms.items():
            if a:
                _accumulate(acc, (a - 1, b, p, q), c * a)
            if p:
                _accumulate(acc, (a - 1, b, p - 1, q), c * p)
        return Expression(acc)

    def d_dzbar(self) -> "Expression":
        acc: dict = {}
        for (a, b, p, q), c in self._terms.items():
            if b:
                _accumulate(acc, (a, b - 1, p, q), c * b)
            if q:
                _accumulate(acc, (a, b - 1, p, q - 1), c * q)
        return Expression(acc)

    def dx(self) -> "Expression":
        """Cartesian d/dx = d/dz + d/dzb."""
        return self.d_dz() + self.d_dzbar()

    def dy(self) -> "Expression":
        """Cartesian d/dy = i*(d/dz - d/dzb)."""
        return (self.d_dz() - self.d_dzbar()) * I

    def laplacian(self) -> "Expression":
        """4 * d2/(dz dzb), the plane Laplacian."""
        return self.d_dz().d_dzbar() * 4

    def conjugate(self) -> "Expression":
        return Expression({(b, a, q, p): c.conjugate()
                           for (a, b, p, q), c in self._terms.items()})

    def re_part(self) -> "Expression":
        return (self + self.conjugate()) * Fraction(1, 2)

    def im_part(self) -> "Expression":
        # (e - conj(e)) / (2i) = (e - conj(e)) * (-i/2)
        return (self - self.conjugate()) * ExactComplex(0, Fraction(-1, 2))

    # -- numeric evaluation ----------------------------------------------

    def eval_at(self, x: float, y: float) -> complex:
        """Evaluate at z = x + iy with the principal log branch.

        ln zb is evaluated as ln(conj z), which keeps eval(conj e) equal to
        conj(eval e) on the branch cut as well.
        """
        z = complex(x, y)
        zb = z.conjugate()
        need_log = any(p or q for _, _, p, q in self._terms)
        if z == 0 and self.has_singular_terms():
            raise SingularPointError("expression is singular at z = 0")
        lz = cmath.log(z) if need_log and z != 0 else 0j
        lzb = cmath.log(zb) if need_log and z != 0 else 0j
        total = 0j
        for (a, b, p, q), c in self._terms.items():
            total += c.to_complex() * z**a * zb**b * lz**p * lzb**q
        return total

    def eval_grid(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Vectorized `eval_at` over coordinate arrays; singular nodes give non-finite values."""
        Zc = X + 1j * Y
        Zb = np.conj(Zc)
        out = np.zeros(np.broadcast(X, Y).shape, dtype=complex)
        pow_cache: dict = {}

        def powers(base_name, base, n):
            key = (base_name, n)
            if key not in pow_cache:
                with np.errstate(divide="ignore", invalid="ignore"):
                    pow_cache[key] = base**n
            return pow_cache[key]

        need_log = any(p or q for _, _, p, q in self._terms)
        if need_log:
            with np.errstate(divide="ignore", invalid="ignore"):
                LZ = np.log(Zc)
                LZB = np.log(Zb)
        for (a, b, p, q), c in self._terms.items():
            term = np.full(out.shape, c.to_complex())
            if a:
                term = term * powers("z", Zc, a)
            if b:
                term = term * powers("zb", Zb, b)
            if p:
                term = term * LZ**p
            if q:
                term = term * LZB**q
            out += term
        return out

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        """Strict ordered textual form with bit-exact round-trip via `from_text`."""
        if not self._terms:
            return "0"
        parts = []
        for t in self.terms():
            re = f"{t.coeff.re.numerator}/{t.coeff.re.denominator}"
            im_sign = "+" if t.coeff.im >= 0 else "-"
            im = f"{abs(t.coeff.im).numerator}/{abs(t.coeff.im).denominator}"
            parts.append(f"({re}{im_sign}{im}i) z^{t.zpow} zb^{t.zbarpow}"
                         f" lnz^{t.lnzpow} lnzb^{t.lnzbarpow}")
        return " + ".join(parts)

    @staticmethod
    def from_text(text: str) -> "Expression":
        text = text.strip()
        if text == "0":
            return _ZERO
        acc: dict = {}
        for chunk in text.split(" + "):
            head, za, zba, lpa, lqa = chunk.split(" ")
            if not (head.startswith("(") and head.endswith("i)")):
                raise ValueError(f"malformed term coefficient: {chunk!r}")
            body = head[1:-2]
            # split at the sign of the imaginary part (first +/- after position 0)
            split_at = None
            for i in range(1, len(body)):
                if body[i] in "+-" and body[i - 1] != "/":
                    split_at = i
            if split_at is None:
                raise ValueError(f"malformed term coefficient: {chunk!r}")
            coeff = ExactComplex(Fraction(body[:split_at]), Fraction(body[split_at:]))
            key = (int(za.split("^")[1]), int(zba.split("^")[1]),
                   int(lpa.split("^")[1]), int(lqa.split("^")[1]))
            _accumulate(acc, key, coeff)
        return Expression(acc)

    def __repr__(self):
        return f"Expression({self.to_text()!r})"

    def __str__(self):
        """Human-oriented rendering; use `to_text` for the exact round-trip form."""
        if not self._terms:
            return "0"
        parts = []
        for t in self.terms():
            factors = []
            for name, power in (("z", t.zpow), ("zb", t.zbarpow),
                                ("lnz", t.lnzpow), ("lnzb", t.lnzbarpow)):
                if power == 1:
                    factors.append(name)
                elif power:
                    factors.append(f"{name}^{power}")
            coeff = str(t.coeff)
            if "+" in coeff[1:] or "-" in coeff[1:]:
                coeff = f"({coeff})"
            parts.append("*".join([coeff] + factors) if factors else coeff)
        return " + ".join(parts)


# module-level atoms

_ZERO = Expression()
ONE = Expression({(0, 0, 0, 0): ExactComplex(1)})
Z = Expression({(1, 0, 0, 0): ExactComplex(1)})
ZBAR = Expression({(0, 1, 0, 0): ExactComplex(1)})
LN_Z = Expression({(0, 0, 1, 0): ExactComplex(1)})
LN_ZBAR = Expression({(0, 0, 0, 1): ExactComplex(1)})
I = ExactComplex(0, 1)


def const(re, im=0) -> Expression:
    """Constant expression with exact rational parts (strings for decimals)."""
    c = ExactComplex(_as_fraction(re), _as_fraction(im))
    return Expression({(0, 0, 0, 0): c}) if not c.is_zero() else _ZERO


def monomial(coeff, zpow=0, zbarpow=0, lnzpow=0, lnzbarpow=0) -> Expression:
    c = ExactComplex.coerce(coeff)
    if c.is_zero():
        return _ZERO
    return Expression({(zpow, zbarpow, lnzpow, lnzbarpow): c})


# x = (z + zb)/2 and y = (z - zb)/(2i) as expressions
x_expr = (Z + ZBAR) * Fraction(1, 2)
y_expr = (Z - ZBAR) * ExactComplex(0, Fraction(-1, 2))
