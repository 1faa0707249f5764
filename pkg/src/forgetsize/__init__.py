"""Size of CNF formulas after forgetting variables.

Resolution closure and prime implicates, redundancy and superredundancy of
clauses, forgetting, minimum-size equivalent formulas, clause splitting and
generators for hardness-reduction instances.
"""
from .core import (Clause, Formula, Literal, Vocabulary, clauses_with_literal, neg, pos, size,
                   substitute)
from .errors import (ClauseNotInFormulaError, ForgetSizeError, ParseError, RepairImpossibleError,
                     ResourceLimitError, SplitError, TautologyError, VariableEscapeError)
from .forgetting import (ForgetSpec, NecessaryLiteralReport, expresses_forgetting, forget_all,
                         forget_by_prime_implicates, forget_one, min_forget_size, necessary_literals)
from .kernels import BACKEND
from .minimization import MinimizationResult, is_minimal, minimize
from .parser import ProblemFile, load_problem, parse_clause_token, parse_formula, print_formula
from .reductions import (Kind, Order, QbfInstance, ReductionInstance, build_general_p2,
                         build_general_s2, build_horn_conp, build_horn_np, qbf_eval,
                         verify_reduction)
from .redundancy import (Method, RedundancyReport, is_redundant, is_superredundant,
                         superirredundant_clauses, superredundant_one_two, superredundant_unit)
from .resolution import (ClosureResult, prime_implicates, resolution_closure, resolve_pair,
                         resolve_sets)
from .sat import consistent_with, entails, equivalent, find_model, satisfiable
from .splitting import (SplitPlan, SplitSafetyReport, analyze_split, make_superirredundant,
                        plan_split, split)

__version__ = "0.1.0"
