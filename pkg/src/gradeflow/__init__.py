"""gradeflow: exact stream-function solutions for steady plane third-grade
fluid flow, verified symbolically and by an independent finite-difference
oracle, with streamline rendering."""

from .wirtinger import (ExactComplex, Expression, SingularPointError, Term,
                        Z, ZBAR, LN_Z, LN_ZBAR, ONE, I, const, monomial)
from .flow import (MaterialConstants, StreamFunction, KinematicFields,
                   validate_constants, vorticity, shear_invariant, velocity,
                   speed_squared, effective_viscosity, kinematics)
from .catalog import (ConstantVorticity, LinearComplexVorticity,
                      LinearRealVorticity, LinearShiftedVorticity,
                      LinearImagVorticity, LogVorticity, ProductVorticity,
                      FigurePreset, FAMILY_KINDS, family_kind,
                      family_from_kind, build_psi, omega_of, variants_of,
                      figure_preset, classical_flow, random_family)
from .field import (Grid, ScalarField, ContourSet, Polyline, sample,
                    marching_squares, pick_levels, export_field_csv,
                    export_contours_csv)
from .verify import (governing_residual, governing_residual_complex,
                     generating_residual, residual_form_gap,
                     fd_residual_field, fd_residual_at, fd_limit_at,
                     convergence_order, constant_vorticity_condition,
                     ansatz_stream_function, ansatz_residual,
                     catalog_ansatz_coefficients,
                     corrected_ansatz_coefficients,
                     energy_gradient_expressions, energy_gradient,
                     recover_h, recover_pressure, EnergyRecovery,
                     expected_governing_residual, verify_family,
                     VerificationReport)

__version__ = "0.1.0"
