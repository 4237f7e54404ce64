"""Newton-polygon decay analysis for bivariate monomial sums.

Exact geometry and symbolic asymptotics for negative powers |f|^-rho near a
degenerate critical point, plus independent numerical oracles for the
predicted Fourier-decay rates.
"""

from .asymptotics import (DecayPair, DecayPrediction, EnvelopePiece,
                          EnvelopeResult, PowerLogSum, PowerLogTerm,
                          decay_pair, dominant_vertex, envelope_pieces,
                          envelope_value, eval_majorant,
                          fourier_decay_prediction, frequency_envelope,
                          make_power_log_sum, slice_expansion)
from .diagnosis import (EdgeZero, WellBehavedReport, edge_zero_free,
                        edge_zero_orders, is_well_behaved)
from .errors import (BudgetExceededError, ConstantTermError,
                     ContractViolationError, DivergenceSuspectedError,
                     DivergentError, EmptySumError, ExpressionError,
                     NewtonDecayError, PreconditionError,
                     ToleranceNotMetError)
from .newton import (CompactEdge, NewtonPolygon, Vertex, build_polygon,
                     edge_polynomial, newton_distance, reflect_polygon)
from .oracle import (ComparabilityReport, CutoffSpec, DecayFit,
                     DyadicRectangle, EquivalenceReport, SharpnessReport,
                     check_comparability, check_majorant_equivalence,
                     fit_power_log, integrate_power_on_rect,
                     oscillatory_decay_fit, oscillatory_transform,
                     sharpness_probe, slice_integral)
from .terms import (MonomialTerm, QuadrantSign, QUADRANTS, TermSum,
                    eval_term_sum, format_terms, make_term_sum, parse_terms,
                    restrict_quadrant, swap_variables)

__version__ = "0.1.0"
