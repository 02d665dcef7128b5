"""Exact rational tools for hidden Z-matrices and linear complementarity problems."""

from lcplab.errors import (ConsistencyError, DimensionError, LcplabError, PreconditionError,
                           SingularMatrixError, SizeCapError)
from lcplab.gameval import game_value, value_sign_queries
from lcplab.hiddenz import (Certificate, ClassifyParams, Verdict, classify_hidden,
                            completely_hidden_check, epsilon_bound, find_certificate, perturb,
                            submatrix_certificate, type_d_certificate, verify_certificate)
from lcplab.lcpsolve import (LcpInstance, crisscross_solve, enumerate_solutions, lemke_solve,
                             lp_reformulation_solve, validate_solution)
from lcplab.ratmat import RatMatrix

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "DimensionError", "LcplabError", "PreconditionError",
    "SingularMatrixError", "SizeCapError", "game_value", "value_sign_queries", "Certificate",
    "ClassifyParams", "Verdict", "classify_hidden", "completely_hidden_check", "epsilon_bound",
    "find_certificate", "perturb", "submatrix_certificate", "type_d_certificate",
    "verify_certificate", "LcpInstance", "crisscross_solve", "enumerate_solutions",
    "lemke_solve", "lp_reformulation_solve", "validate_solution", "RatMatrix",
]
