"""Time-fractional diffusion with rough Dirichlet data."""

from fractions import Fraction

from ._core import (
    BasisSizeError,
    CompatibilityError,
    ConfigError,
    DomainError,
    EllipticityError,
    Error,
    GridMismatchError,
    IllConditionedError,
    NonConvergenceError,
    backward_integral,
    backward_rl_derivative,
    boundary_data,
    caputo_derivative,
    eigenbasis,
    hrs_norm_Q,
    hrs_norm_Sigma,
    l2_norm_Q,
    mittag_leffler,
    negative_norm_Sigma,
    run_experiment,
    solve_homogeneous,
    solve_transposition,
)
from ._core import _trace_exponents


def trace_exponents(r, s="alpha"):
    """Exact trace index for a space order r (int, Fraction or "p/q") and a time order such as "1/2*alpha"."""
    r = Fraction(r)
    return _trace_exponents(r.numerator, r.denominator, s)
