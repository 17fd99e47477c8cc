"""Numerical verification toolkit for the complete monotonicity of 1/arctan.

The package checks, to stated tolerances, every constructive step behind the
fact that x -> 1/arctan(x) is logarithmically completely monotonic on
(0, inf) but not a Stieltjes transform:

* ``quadrature``   -- adaptive Gauss-Kronrod engine (real, complex-path and
  oscillatory integrals) used by everything else;
* ``identities``   -- closed forms, the Bernstein density of the negative
  logarithmic derivative, and the real-integral identities tying them together;
* ``keyhole``      -- the keyhole-contour residue computation that produces
  those identities, re-enacted numerically;
* ``monotonicity`` -- generic CM / log-CM / Bernstein sign tables via
  Cauchy-circle differentiation, plus the Stieltjes refutation;
* ``cli``          -- deterministic command-line front end (CSV/JSON reports).
"""

from .quadrature import (
    Interval,
    IntegrandError,
    ParametricPath,
    QuadResult,
    Tolerance,
    integrate_adaptive,
    integrate_complex_path,
    integrate_oscillatory_decaying,
    integrate_semi_infinite,
)
from .identities import (
    DensityPoint,
    OscKernelParams,
    bernstein_density,
    decay_rate,
    decay_rate_via_kernel,
    decay_rate_via_laplace,
    density_amplitude,
    kernel_halves,
    laplace_kernel_check,
    log_cauchy_mass,
    odd_kernel,
    odd_kernel_integral,
    recip_arctan,
)
from .keyhole import (
    ContourGeometryError,
    ContourSpec,
    PoleError,
    ResidueReport,
    arc_bound_check,
    arc_integral,
    cut_jump_integral,
    cut_jump_limit,
    decay_rate_from_cut,
    interior_pole,
    keyhole_integral,
    keyhole_integrand,
    lower_edge_value,
    numeric_residue,
    residue_at_one,
    residue_interior_pole,
    upper_edge_value,
)
from .monotonicity import (
    AnalyticFn,
    ClassReport,
    InconsistencyError,
    SignEntry,
    StieltjesReport,
    arctan_fn,
    bernstein_check,
    bernstein_gap3,
    bernstein_gap3_root,
    cm_sign_table,
    decay_rate_fn,
    log_cm_check,
    nth_derivative,
    recip_arctan_fn,
    stieltjes_refutation,
)

__version__ = "0.1.0"
