"""Rotation numbers and Arnold tongues of the driven Josephson circle
flow dx/dt = (gamma cos x + a + b g(t)) / mu.

The Poincare map of this family is conjugate to a Moebius transformation
(u = tan(x/2) turns the equation into a Riccati equation), which the
package exploits to compute rotation numbers to machine precision, trace
tongue-boundary curves, locate adjacency points, and check the
Bessel-function asymptotics of the boundaries numerically.
"""

from .bessel import (BesselEval, bessel_asymptotic, bessel_eval, bessel_j,
                     bessel_j_integral, gen_bessel, gen_bessel_asymptotic)
from .errors import (BracketFailure, DegenerateForcing, DeterminantDrift,
                     DomainTooSmall, JosephsonError, NotMoebius, OutOfRegime,
                     QuadratureStall, SignChange, StepUnderflow)
from .flow import (DEFAULT_CONFIG, IntegratorConfig, Params, SolutionArc,
                   autonomous_rho, in_envelope, integrate_flow, osc_extrema,
                   rhs_eval, step_cap)
from .forcing import ForcingProfile, ForcingZero, TransversalityReport
from .moebius import (FixedPoint, FixedPointSet, MoebiusMap, apply_lifted,
                      classify, fixed_points, identity_defect, monodromy)
from .render import SvgStyle, render_svg
from .residuals import (BatteryConfig, FittedCaps, RegimeConfig,
                        ResidualRecord, adjacency_line_check, avg_diff_check,
                        build_report, eq7_spacing_check, osc_integral_sup,
                        run_battery, thm1_residual, thm2_residual)
from .rotation import (RotationNumber, lifted_poincare, rotation_number,
                       rotation_number_from_map, rotation_number_iterated)
from .scan import ScanCell, ScanGrid, scan_plane
from .tongue import (AdjacencyPoint, BoundaryPoint, BoundaryTrace,
                     boundary_at, find_adjacencies, trace_boundary)

__version__ = "0.1.0"
