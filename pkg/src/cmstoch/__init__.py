"""Exact solvers for single-controller zero-sum stochastic games and
completely-mixed analysis of their discounted and limiting-average versions."""

__version__ = "0.1.0"

from .average import (best_response_value_p1, best_response_value_p2, cesaro_limit,
                      limiting_average_payoff, solve_undiscounted, undiscounted_value,
                      verify_optimal_undiscounted)
from .cm import (beta_threshold_search, check_cm_discounted, check_cm_undiscounted,
                 theorem11_verify, theorem13_verify, vanishing_discount)
from .discounted import (auxiliary_matrix, discounted_payoff, normalized_values, shapley_iterate,
                         solve_discounted_exact)
from .errors import (CMStochError, ControllerError, GameSyntaxError, GameValidationError,
                     KaplanskyInapplicable, SizeGuardError, SupportVerificationError)
from .matrix import (column_shift, enumerate_optimal_vertices, equalizer_check, is_completely_mixed,
                     kaplansky_value, lemma2_reduce, solve_matrix_game)
from .model import (Controller, StochasticGame, detect_controller, load_game, make_strategy,
                    parse_game, reward_vector, serialize_game, transition_matrix)
