"""Exact computation of the Takagi function, its level sets and humps."""

__version__ = "0.1.0"

from .digits import (LocalLevelSet, PeriodicReal, Walk, WordClass, classify_word,
                     digits_of, enumerate_balanced, enumerate_leading, local_level_set,
                     reflect_to_X0, walk)
from .errors import (DomainError, PreconditionError, ResourceError, StructuralError,
                     TakagiError)
from .evaluate import (AffinePart, Enclosure, affine_part, lift_into_hump, range_enclosure,
                       takagi, takagi_dyadic, takagi_rational, takagi_series)
from .humps import (Hump, XStarPoint, compose, hits_truncated, hump, hump_level_points,
                    is_right_endpoint_M, staircase, xstar_invert)
from .levelsets import (ClassificationReport, LevelSetReport, LocalClassRecord,
                        approach_sequence, average_count_exact, classify,
                        count_finite_locals, finite_local_reps, jt_mass, member,
                        monte_carlo_average, solve)
from .numerics import (Dyadic, RatInterval, Rational, dyadic_to_rational,
                       interval_scale_shift, normalize)
