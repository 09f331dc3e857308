"""Multi-route evaluation of S(k), zeta(2k) and S(k, a).

Exact values come from volumes of the cyclic-sum polytope; series, Bernoulli
and Euler number identities, tanh-sinh quadrature of logarithmic integrals and
Monte Carlo estimates of two geometric probabilities cross-check them.
"""

from .combinatorial import (
    AdmissibleTuple,
    alpha_exponents,
    enumerate_admissible,
    is_admissible,
    s_k_closed,
    tuple_counts,
    tuple_term,
    volume_delta,
    zeta_2k_closed,
)
from .exact import PiMultiple, Rational, bernoulli, euler_number
from .maps import (
    numeric_jacobian_det,
    trig_jacobian_closed,
    trig_map,
    zagier_jacobian_closed,
    zagier_map,
)
from .quadrature import (
    QuadResult,
    cauchy_pv,
    density_normalization,
    j_k_quad,
    j_ka_quad,
    vanishing_integral_check,
    z2_cdf,
)
from .report import VerificationReport, build_report
from .series import (
    SeriesValue,
    j_k_closed,
    s_2a_closed,
    s_3a_closed,
    s_k_from_jk,
    s_k_series,
    s_ka_from_jka,
    s_ka_series,
    zeta_2k_bernoulli,
    zeta_2k_series,
)
from .stochastic import (
    Estimate,
    mc_delta_volume,
    mc_hypertope_prob,
    sample_half_cauchy,
    z2_distribution_check,
)

__all__ = [
    "AdmissibleTuple", "alpha_exponents", "enumerate_admissible", "is_admissible",
    "s_k_closed", "tuple_counts", "tuple_term", "volume_delta", "zeta_2k_closed",
    "PiMultiple", "Rational", "bernoulli", "euler_number",
    "numeric_jacobian_det", "trig_jacobian_closed", "trig_map",
    "zagier_jacobian_closed", "zagier_map",
    "QuadResult", "cauchy_pv", "density_normalization", "j_k_quad", "j_ka_quad",
    "vanishing_integral_check", "z2_cdf",
    "VerificationReport", "build_report",
    "SeriesValue", "j_k_closed", "s_2a_closed", "s_3a_closed", "s_k_from_jk",
    "s_k_series", "s_ka_from_jka", "s_ka_series", "zeta_2k_bernoulli", "zeta_2k_series",
    "Estimate", "mc_delta_volume", "mc_hypertope_prob", "sample_half_cauchy",
    "z2_distribution_check",
]
