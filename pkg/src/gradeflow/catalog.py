"""Constructors for the bundled closed-form solution families and figure presets.

Seven families are indexed by the shape of their vorticity:

    constant        omega = omega0
    linear_complex  omega = m1 z + conj(m1) zb
    linear_real     omega = B (z + zb)
    linear_shifted  omega = D (z + zb + E)
    linear_imag     omega = B i (z - zb)
    log             omega = B ln(z zb) + D1
    product         omega = B z zb

Each stream function is  psi = -(1/4) iint omega dz dzb + A + conj(A)  for a
family-specific complex function A.  `build_psi` reproduces the bundled
("catalog") coefficients verbatim; where the verifier has established a
corrected coefficient, an alternate variant is available so both can be
compared against the governing equation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .flow import MaterialConstants, StreamFunction
from .wirtinger import (ExactComplex, Expression, I, LN_Z, LN_ZBAR, ONE, Z,
                        ZBAR, const, monomial)

__all__ = [
    "ConstantVorticity",
    "LinearComplexVorticity",
    "LinearRealVorticity",
    "LinearShiftedVorticity",
    "LinearImagVorticity",
    "LogVorticity",
    "ProductVorticity",
    "SolutionFamily",
    "FigurePreset",
    "FAMILY_KINDS",
    "family_kind",
    "family_from_kind",
    "build_psi",
    "omega_of",
    "variants_of",
    "figure_preset",
    "classical_flow",
    "random_family",
]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError("family parameters must be exact rationals")


def _cplx(v) -> ExactComplex:
    return ExactComplex.coerce(v)


@dataclass(frozen=True)
class ConstantVorticity:
    """omega = omega0; quartic complex potential with coefficients a1..a4, a = a5 + conj(a5)."""

    omega0: Fraction = Fraction(0)
    a1: ExactComplex = ExactComplex(0)
    a2: ExactComplex = ExactComplex(0)
    a3: ExactComplex = ExactComplex(0)
    a4: ExactComplex = ExactComplex(0)
    a: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "omega0", _frac(self.omega0))
        for name in ("a1", "a2", "a3", "a4"):
            object.__setattr__(self, name, _cplx(getattr(self, name)))
        object.__setattr__(self, "a", _frac(self.a))


@dataclass(frozen=True)
class LinearComplexVorticity:
    """omega = m1 z + conj(m1) zb with complex m1 != 0; m = m2 + conj(m2)."""

    m1: ExactComplex = ExactComplex(1)
    m: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "m1", _cplx(self.m1))
        object.__setattr__(self, "m", _frac(self.m))
        if self.m1.is_zero():
            raise ValueError("m1 must be nonzero (the cubic coefficient divides by m1)")


@dataclass(frozen=True)
class LinearRealVorticity:
    """omega = B (z + zb) with real B != 0; n = m3 + conj(m3)."""

    B: Fraction = Fraction(1)
    n: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "B", _frac(self.B))
        object.__setattr__(self, "n", _frac(self.n))
        if self.B == 0:
            raise ValueError("B must be nonzero")


@dataclass(frozen=True)
class LinearShiftedVorticity:
    """omega = D (z + zb + E) with real D != 0, E; q = m4 + conj(m4)."""

    D: Fraction = Fraction(1)
    E: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("D", "E", "q"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.D == 0:
            raise ValueError("D must be nonzero")


@dataclass(frozen=True)
class LinearImagVorticity:
    """omega = B i (z - zb) = -2 B y with real B != 0; r = m5 + conj(m5)."""

    B: Fraction = Fraction(1)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "B", _frac(self.B))
        object.__setattr__(self, "r", _frac(self.r))
        if self.B == 0:
            raise ValueError("B must be nonzero")


@dataclass(frozen=True)
class LogVorticity:
    """omega = B ln(z zb) + D1 with real B, D1; log potential weight m6, s = m7 + conj(m7)."""

    B: Fraction = Fraction(1)
    D1: Fraction = Fraction(0)
    m6: Fraction = Fraction(0)
    s: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("B", "D1", "m6", "s"):
            object.__setattr__(self, name, _frac(getattr(self, name)))


@dataclass(frozen=True)
class ProductVorticity:
    """omega = B z zb with real B; t = m8 + conj(m8).  Uses mu, rho from the constants."""

    B: Fraction = Fraction(1)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "B", _frac(self.B))
        object.__setattr__(self, "t", _frac(self.t))


SolutionFamily = Union[
    ConstantVorticity,
    LinearComplexVorticity,
    LinearRealVorticity,
    LinearShiftedVorticity,
    LinearImagVorticity,
    LogVorticity,
    ProductVorticity,
]

FAMILY_KINDS = {
    "constant": ConstantVorticity,
    "linear_complex": LinearComplexVorticity,
    "linear_real": LinearRealVorticity,
    "linear_shifted": LinearShiftedVorticity,
    "linear_imag": LinearImagVorticity,
    "log": LogVorticity,
    "product": ProductVorticity,
}

_KIND_OF = {cls: kind for kind, cls in FAMILY_KINDS.items()}

# alternate formula variants established by the verifier (the "catalog" form is
# always the bundled formula, verbatim)
_VARIANTS = {
    "constant": ("catalog",),
    "linear_complex": ("catalog", "corrected"),
    "linear_real": ("catalog", "quadratic", "corrected"),
    "linear_shifted": ("catalog", "corrected"),
    "linear_imag": ("catalog", "zbar2", "corrected"),
    "log": ("catalog",),
    "product": ("catalog",),
}


def family_kind(family: SolutionFamily) -> str:
    return _KIND_OF[type(family)]


def family_from_kind(kind: str, **params) -> SolutionFamily:
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown family kind {kind!r}; choose from {sorted(FAMILY_KINDS)}")
    return FAMILY_KINDS[kind](**params)


def variants_of(family_or_kind) -> tuple[str, ...]:
    kind = family_or_kind if isinstance(family_or_kind, str) else family_kind(family_or_kind)
    return _VARIANTS[kind]


def _check_variant(kind: str, variant: str) -> None:
    if variant not in _VARIANTS[kind]:
        raise ValueError(f"family {kind!r} has no variant {variant!r}; "
                         f"choose from {_VARIANTS[kind]}")


# -- vorticity declarations -------------------------------------------------


def omega_of(family: SolutionFamily) -> Expression:
    """The declared vorticity of the family, as an expression in z, zb."""
    if isinstance(family, ConstantVorticity):
        return const(family.omega0)
    if isinstance(family, LinearComplexVorticity):
        return monomial(family.m1, 1, 0) + monomial(family.m1.conjugate(), 0, 1)
    if isinstance(family, LinearRealVorticity):
        return (Z + ZBAR) * family.B
    if isinstance(family, LinearShiftedVorticity):
        return (Z + ZBAR + const(family.E)) * family.D
    if isinstance(family, LinearImagVorticity):
        return (Z - ZBAR) * ExactComplex(0, family.B)
    if isinstance(family, LogVorticity):
        return (LN_Z + LN_ZBAR) * family.B + const(family.D1)
    if isinstance(family, ProductVorticity):
        return monomial(family.B, 1, 1)
    raise TypeError(f"not a solution family: {family!r}")


def _rigid_part(family: SolutionFamily) -> Expression:
    """-(1/4) iint omega dz dzb, integrated termwise."""
    om = omega_of(family)
    acc = Expression.zero()
    for t in om.terms():
        a, b, p, q = t.zpow, t.zbarpow, t.lnzpow, t.lnzbarpow
        if p > 1 or q > 1 or a < 0 or b < 0 or ((p or q) and (a or b or (p and q))):
            raise ValueError("vorticity outside the integrable catalog forms")
        # iint z^a zb^b dz dzb = z^(a+1) zb^(b+1) / ((a+1)(b+1));
        # iint lnz dz dzb = z zb (lnz - 1), and symmetrically for lnzb.
        coeff = t.coeff * Fraction(1, (a + 1) * (b + 1))
        piece = monomial(coeff, a + 1, b + 1, p, q)
        if p == 1:
            piece = piece - monomial(coeff, a + 1, b + 1, 0, q)
        if q == 1:
            piece = piece - monomial(coeff, a + 1, b + 1, p, 0)
        acc = acc + piece
    return acc * Fraction(-1, 4)


# -- stream functions ---------------------------------------------------------


def build_psi(family: SolutionFamily, c: MaterialConstants,
              variant: str = "catalog") -> StreamFunction:
    """Assemble the family's stream function for the given material constants.

    `variant="catalog"` is the bundled closed form, verbatim.  The linear
    families also offer `"corrected"` (coefficient 12 lam instead of 20 lam in
    the quadratic correction, which the verifier shows annihilates the
    governing equation) and, where the bundled form is internally inconsistent,
    an intermediate variant (`"quadratic"` / `"zbar2"`).
    """
    kind = family_kind(family)
    _check_variant(kind, variant)
    lam = c.lam
    core = _rigid_part(family)

    if isinstance(family, ConstantVorticity):
        # A = i a1 z^4/24 + a2 z^3/6 + a3 z^2/2 + a4 z  (+ constant)
        A = (monomial(family.a1 * I * Fraction(1, 24), 4, 0)
             + monomial(family.a2 * Fraction(1, 6), 3, 0)
             + monomial(family.a3 * Fraction(1, 2), 2, 0)
             + monomial(family.a4, 1, 0))
        psi = core + A + A.conjugate() + const(family.a)
        label = f"constant vorticity (omega0={family.omega0})"

    elif isinstance(family, LinearComplexVorticity):
        m1 = family.m1
        weight = 12 if variant == "corrected" else 20
        A = (monomial(m1 * m1 / m1.conjugate() * Fraction(-1, 24), 3, 0)
             + monomial(m1 * m1 * ExactComplex(0, -weight) * lam, 2, 0))
        psi = core + A + A.conjugate() + const(family.m)
        label = f"linear complex vorticity (m1={m1})"

    elif isinstance(family, LinearRealVorticity):
        B = family.B
        A = monomial(Fraction(-1, 24) * B, 3, 0)
        if variant == "catalog":
            # bundled form carries the correction linear in z (not quadratic)
            A = A + monomial(ExactComplex(0, -20 * lam * B * B), 1, 0)
        else:
            weight = 12 if variant == "corrected" else 20
            A = A + monomial(ExactComplex(0, -weight * lam * B * B), 2, 0)
        psi = core + A + A.conjugate() + const(family.n)
        label = f"linear real vorticity (B={B})"

    elif isinstance(family, LinearShiftedVorticity):
        D, E = family.D, family.E
        weight = 12 if variant == "corrected" else 20
        A = (monomial(Fraction(-1, 24) * D, 3, 0)
             + monomial(ExactComplex(Fraction(-1, 8) * D * E, -weight * lam * D * D), 2, 0)
             + monomial(ExactComplex(0, -weight * lam * D * D * E), 1, 0))
        psi = core + A + A.conjugate() + const(family.q)
        label = f"linear shifted vorticity (D={D}, E={E})"

    elif isinstance(family, LinearImagVorticity):
        B = family.B
        A = monomial(ExactComplex(0, Fraction(1, 24) * B), 3, 0)
        if variant == "catalog":
            # bundled form puts the lam-correction on the cubic power
            A = A + monomial(ExactComplex(0, 20 * lam * B * B), 3, 0)
        else:
            weight = 12 if variant == "corrected" else 20
            A = A + monomial(ExactComplex(0, weight * lam * B * B), 2, 0)
        psi = core + A + A.conjugate() + const(family.r)
        label = f"linear imaginary vorticity (B={B})"

    elif isinstance(family, LogVorticity):
        A = monomial(family.m6, 0, 0, 1, 0)
        psi = core + A + A.conjugate() + const(family.s)
        label = f"log vorticity (B={family.B}, D1={family.D1})"

    elif isinstance(family, ProductVorticity):
        # A = -(i mu/rho) lnz, so A + conj(A) = -(i mu/rho) ln(z/zb)
        A = monomial(ExactComplex(0, -c.mu / c.rho), 0, 0, 1, 0)
        psi = core + A + A.conjugate() + const(family.t)
        label = f"product vorticity (B={family.B})"

    else:
        raise TypeError(f"not a solution family: {family!r}")

    if variant != "catalog":
        label += f" [{variant}]"
    return StreamFunction(psi, label)


# -- figure presets ---------------------------------------------------------


@dataclass(frozen=True)
class FigurePreset:
    """Family, material constants and plot window for one bundled figure."""

    figure_id: int
    family: SolutionFamily
    constants: MaterialConstants
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    notes: tuple[str, ...] = ()


def _consts(lam="1", mu="1") -> MaterialConstants:
    return MaterialConstants(mu=Fraction(mu), rho=1, alpha1=0, alpha2=0,
                             beta3=Fraction(lam))


_PRESETS = {
    1: lambda: FigurePreset(
        1,
        ConstantVorticity(omega0=-1, a1=ExactComplex(1, 2), a2=ExactComplex(1, 1),
                          a3=ExactComplex(1, 5), a4=ExactComplex(2, Fraction(1, 2)), a=2),
        _consts(),
        (-1.0, 1.0), (-1.0, 1.0),
        ("material constants assumed: mu=1, rho=1, beta3=1",)),
    2: lambda: FigurePreset(
        2,
        LinearComplexVorticity(m1=ExactComplex(1, 2), m=1),
        _consts(lam="3/10"),
        (-1.0, 1.0), (-1.0, 1.0),
        ()),
    3: lambda: FigurePreset(
        3,
        LinearRealVorticity(B=-2, n=1),
        _consts(lam="2"),
        (-10.0, 10.0), (0.0, 10.0),
        ()),
    4: lambda: FigurePreset(
        4,
        LinearShiftedVorticity(D=1, E=1, q=-1),
        _consts(lam="2"),
        (-10.0, 10.0), (-10.0, 10.0),
        ()),
    5: lambda: FigurePreset(
        5,
        LinearImagVorticity(B=-5, r=10),
        _consts(lam="3"),
        (-2.0, 10.0), (0.0, 8.0),
        ()),
    6: lambda: FigurePreset(
        6,
        LogVorticity(B=1, D1=1, m6=2, s=4),
        _consts(),
        (-10.0, 2.0), (-1.0, 2.0),
        ("B, D1 assumed", "material constants assumed: mu=1, rho=1, beta3=1")),
    7: lambda: FigurePreset(
        7,
        ProductVorticity(B=1, t=2),
        _consts(mu="12"),
        (-1.0, 10.0), (-1.0, 10.0),
        ("material constants assumed: beta3=1",)),
}


def figure_preset(n: int) -> FigurePreset:
    """Exact parameter values for the bundled figures 1..7."""
    if n not in _PRESETS:
        raise ValueError(f"figure id must be 1..7, got {n}")
    return _PRESETS[n]()


# -- classical special flows --------------------------------------------------

CLASSICAL_KINDS = ("couette", "spiral_vortex", "elliptic",
                   "concentric_circles", "rectangular_hyperbolae")


def classical_flow(kind: str, c: MaterialConstants | None = None, **params) -> StreamFunction:
    """Classical plane flows realized inside the constant-vorticity family.

    couette(k)                  psi = k y^2 / 2          (u = k y, v = 0)
    concentric_circles(k)       psi = k z zb             (circular streamlines)
    elliptic(p, q)              psi = p x^2 + q y^2      (elliptic streamlines)
    rectangular_hyperbolae(k)   psi = k x y              (hyperbolic streamlines)
    spiral_vortex(a, omega0)    psi = -omega0 z zb/4 + i a ln(z/zb); needs beta3 = 0
    """
    if kind == "couette":
        k = _frac(params.get("k", 1))
        fam = ConstantVorticity(omega0=-k, a3=ExactComplex(Fraction(-1, 4) * k))
        return StreamFunction(build_psi(fam, c or MaterialConstants()).psi,
                              f"couette (k={k})")
    if kind == "concentric_circles":
        k = _frac(params.get("k", 1))
        fam = ConstantVorticity(omega0=-4 * k)
        return StreamFunction(build_psi(fam, c or MaterialConstants()).psi,
                              f"concentric circles (k={k})")
    if kind == "elliptic":
        p = _frac(params.get("p", 2))
        q = _frac(params.get("q", 1))
        if p <= 0 or q <= 0 or p == q:
            raise ValueError("elliptic flow needs p, q > 0 and p != q")
        fam = ConstantVorticity(omega0=-2 * (p + q),
                                a3=ExactComplex((p - q) * Fraction(1, 2)))
        return StreamFunction(build_psi(fam, c or MaterialConstants()).psi,
                              f"elliptic (p={p}, q={q})")
    if kind == "rectangular_hyperbolae":
        k = _frac(params.get("k", 1))
        fam = ConstantVorticity(a3=ExactComplex(0, Fraction(-1, 2) * k))
        return StreamFunction(build_psi(fam, c or MaterialConstants()).psi,
                              f"rectangular hyperbolae (k={k})")
    if kind == "spiral_vortex":
        if c is None or c.beta3 != 0:
            raise ValueError("spiral vortex requires beta3 = 0")
        a = _frac(params.get("a", 1))
        omega0 = _frac(params.get("omega0", -1))
        psi = (monomial(Fraction(-1, 4) * omega0, 1, 1)
               + monomial(ExactComplex(0, a), 0, 0, 1, 0)
               + monomial(ExactComplex(0, -a), 0, 0, 0, 1))
        return StreamFunction(psi, f"spiral vortex (a={a}, omega0={omega0})")
    raise ValueError(f"unsupported classical flow kind {kind!r}; "
                     f"choose from {CLASSICAL_KINDS}")


# -- randomized parameter draws ----------------------------------------------


def _rand_frac(rng: random.Random, nonzero=False) -> Fraction:
    while True:
        f = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
        if not nonzero or f != 0:
            return f


def _rand_cplx(rng: random.Random, nonzero=False) -> ExactComplex:
    while True:
        c = ExactComplex(_rand_frac(rng), _rand_frac(rng))
        if not nonzero or not c.is_zero():
            return c


def random_family(kind: str, rng: random.Random) -> SolutionFamily:
    """Random valid parameters for the given family kind (exact rationals)."""
    if kind == "constant":
        return ConstantVorticity(omega0=_rand_frac(rng), a1=_rand_cplx(rng),
                                 a2=_rand_cplx(rng), a3=_rand_cplx(rng),
                                 a4=_rand_cplx(rng), a=_rand_frac(rng))
    if kind == "linear_complex":
        return LinearComplexVorticity(m1=_rand_cplx(rng, nonzero=True),
                                      m=_rand_frac(rng))
    if kind == "linear_real":
        return LinearRealVorticity(B=_rand_frac(rng, nonzero=True), n=_rand_frac(rng))
    if kind == "linear_shifted":
        return LinearShiftedVorticity(D=_rand_frac(rng, nonzero=True),
                                      E=_rand_frac(rng), q=_rand_frac(rng))
    if kind == "linear_imag":
        return LinearImagVorticity(B=_rand_frac(rng, nonzero=True), r=_rand_frac(rng))
    if kind == "log":
        return LogVorticity(B=_rand_frac(rng), D1=_rand_frac(rng),
                            m6=_rand_frac(rng), s=_rand_frac(rng))
    if kind == "product":
        return ProductVorticity(B=_rand_frac(rng), t=_rand_frac(rng))
    raise ValueError(f"unknown family kind {kind!r}")
