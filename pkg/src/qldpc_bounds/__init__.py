"""Structural bounds for quantum LDPC codes from connectivity-graph geometry.

Codes are read or built (:mod:`.codes`), turned into connectivity graphs
(:mod:`.connectivity`), and measured with separators, treewidth and
spectral estimates. :mod:`.partition` and :mod:`.bounds` turn those
measurements into distance, dimension and transversal-gate bounds.
"""

from .bounds import PowerLaw, RecurrenceParams, TableS, closed_form_check, distance_bound, eval_S_d, formula_bounds, transversal_level_formula
from .codes import StabilizerCode, brute_distance, is_correctable_oracle, make_family, parse_code
from .connectivity import are_decoupled, build_connectivity
from .correctability import dz_correctable
from .errors import BudgetExceeded, InputError, InvariantViolation, ParseError, PreconditionError, SeparationFailed
from .graph import Graph
from .partition import dimension_bound, recursive_separation, transversal_level_empirical
from .separators import Separation, exact_separator, heuristic_separator
from .treewidth import TreeDecomposition, exact_treewidth, heuristic_treewidth_upper, validate_tree_decomposition

__version__ = "0.1.0"
