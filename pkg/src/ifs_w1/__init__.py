"""Wasserstein distances between stationary measures of interval IFSs."""

from .intervals import ValueInterval
from .maps import (Affine, Dominance, DomainError, HypothesisViolation, IFSystem,
                   QuarterSine, WeightVector, cantor_system, check_weight_dominance,
                   compose_point, cylinder_interval, evaluate_map, flip_system,
                   validate_system)
from .staircase import (Identity, OverlapError, ResourceError, SignedIdentity, Staircase,
                        build_staircase, cdf_difference_sign, eval_cdf, first_moment_closed,
                        integrate_against, plateau_intervals, power_law_envelope,
                        self_affine_check)
from .symbolic import (build_level, crossing_equation_search, geometric_order_check,
                       prec_compare, prefix_sums, segment_symmetry_check)
from .transport import (W1Report, w1_closed_same_ifs, w1_closed_two_ifs, w1_numeric,
                        w1_prop5, w1_report, w1_theorem4)
from .sampler import SampleSet, chaos_game, w1_empirical

__version__ = "0.1.0"
