"""Material constants with thermodynamic validation, and stream-function kinematics.

The fluid model is a third-grade incompressible fluid in steady plane flow.
Velocity derives from a real stream function psi (u = psi_y, v = -psi_x),
vorticity is omega = -lap(psi) = -4 psi_{z zb}, and the shear invariant

    M = 4 u_x^2 + 4 v_y^2 + 2 (v_x + u_y)^2  =  32 psi_{zb zb} psi_{z z}

drives the effective shear-dependent viscosity mu_eff = mu + beta3 * M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .wirtinger import ExactComplex, Expression, I, const

__all__ = [
    "MaterialConstants",
    "StreamFunction",
    "KinematicFields",
    "validate_constants",
    "vorticity",
    "shear_invariant",
    "velocity",
    "speed_squared",
    "effective_viscosity",
    "kinematics",
]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    raise TypeError("material constants must be exact rationals "
                    "(int, Fraction, or string like '0.3')")


@dataclass(frozen=True)
class MaterialConstants:
    """Viscosity mu, density rho, second-grade moduli alpha1/alpha2, third-grade modulus beta3.

    Values are exact rationals so that symbolic zero-residual claims stay exact.
    Invalid combinations are representable on purpose; `violations` reports the
    thermodynamic restrictions that fail.
    """

    mu: Fraction = field(default=Fraction(1))
    rho: Fraction = field(default=Fraction(1))
    alpha1: Fraction = field(default=Fraction(0))
    alpha2: Fraction = field(default=Fraction(0))
    beta3: Fraction = field(default=Fraction(1))

    def __post_init__(self):
        for name in ("mu", "rho", "alpha1", "alpha2", "beta3"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.rho <= 0:
            raise ValueError("rho must be positive")

    @property
    def lam(self) -> Fraction:
        """beta3 / rho, the ratio entering the linear-vorticity families."""
        return self.beta3 / self.rho

    def violations(self) -> tuple[str, ...]:
        """Names of the thermodynamic inequalities this record violates.

        Empty tuple means the constants are admissible.  The square-root
        condition is checked as (alpha1+alpha2)^2 <= 24*mu*beta3, exactly.
        """
        out = []
        if self.mu < 0:
            out.append("mu >= 0")
        if self.alpha1 < 0:
            out.append("alpha1 >= 0")
        if self.beta3 < 0:
            out.append("beta3 >= 0")
        if (self.alpha1 + self.alpha2) ** 2 > 24 * self.mu * self.beta3:
            out.append("|alpha1+alpha2| <= sqrt(24*mu*beta3)")
        return tuple(out)

    @property
    def validated(self) -> bool:
        return not self.violations()


def validate_constants(c: MaterialConstants) -> tuple[str, ...]:
    """Violated-inequality names; empty means valid (violations are data, not errors)."""
    return c.violations()


@dataclass(frozen=True)
class StreamFunction:
    """Real-valued stream function with a descriptive label."""

    psi: Expression
    description: str = ""

    def __post_init__(self):
        if not self.psi.is_real():
            raise ValueError("stream function must be a real-valued expression")


def _psi_of(sf) -> Expression:
    return sf.psi if isinstance(sf, StreamFunction) else sf


def vorticity(sf) -> Expression:
    """omega = -4 d2(psi)/(dz dzb); real-valued."""
    psi = _psi_of(sf)
    return psi.d_dz().d_dzbar() * (-4)


def shear_invariant(sf) -> Expression:
    """M = 32 psi_{zb zb} psi_{z z}; real-valued and pointwise nonnegative."""
    psi = _psi_of(sf)
    return psi.d_dzbar().d_dzbar() * psi.d_dz().d_dz() * 32


def velocity(sf) -> tuple[Expression, Expression]:
    """(u, v) with u = psi_y and v = -psi_x, via u + i v = -2i psi_zb."""
    psi = _psi_of(sf)
    w = psi.d_dzbar() * ExactComplex(0, -2)
    return w.re_part(), w.im_part()


def speed_squared(u: Expression, v: Expression) -> Expression:
    """q^2 = u^2 + v^2."""
    return u * u + v * v


def effective_viscosity(c: MaterialConstants, m_value: float) -> float:
    """mu_eff = mu + beta3 * M at a sampled value of the shear invariant."""
    if m_value < 0:
        raise ValueError("shear invariant must be nonnegative")
    return float(c.mu) + float(c.beta3) * m_value


@dataclass(frozen=True)
class KinematicFields:
    """All kinematic expressions derived from one stream function."""

    omega: Expression
    big_m: Expression
    u: Expression
    v: Expression
    speed_sq: Expression


def kinematics(sf) -> KinematicFields:
    u, v = velocity(sf)
    return KinematicFields(
        omega=vorticity(sf),
        big_m=shear_invariant(sf),
        u=u,
        v=v,
        speed_sq=speed_squared(u, v),
    )
