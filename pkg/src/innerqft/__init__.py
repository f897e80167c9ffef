"""Symbolic ladder-operator algebra for fields carrying a second
(inner) momentum label, with exact contact-term bookkeeping, Fock-space
utilities, an on-shell reduction limit, propagator/Wick cross-checks,
and a toy projected-unitarity harness.
"""

from .kinematics import (ETA, FourVector, MassShellMomentum, PolarizationBasis,
                         build_inner_polarizations, build_spacetime_polarizations,
                         cone_classify, dirac_spinor, minkowski_dot,
                         on_shell_energy, slash, spin_sum)
from .opalg import (CRat, LadderOperator, Monomial, OperatorExpr,
                    anticommutator, commutator, delta_resolve, make_monomial,
                    normal_order, reduce_to_normal_form, vev)
from .fock import (FieldMasses, FockState, apply, inner_product,
                   momentum_action, norm_sign, physical_filter)
from .gravlimit import RegularizationConfig, barred, grav_limit_expr, project_state
from .smatrix import (Amplitude, GreenFunction, Leg, LSZRecipe, PropagatorSpec,
                      ToySMatrix, VertexRule, lsz_reduce, propagator_eval,
                      toy_unitarity_check, vacuum_and_one_particle_checks,
                      wick_pairing_oracle, wick_two_point)
from .grammar import ParseError, parse_expression, parse_state, print_expression

__version__ = "0.1.0"
