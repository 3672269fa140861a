"""Exact local factors of characters of Q_p^* and local coefficients of the
n-fold cover of SL_2(Q_p)."""

from .exact import CycNum, RatFun
from .factors import (epsilon, epsilon_identities, lfactor, meta_gamma, meta_gamma_rhs, sweet_integral,
                      tate_gamma, theta, theta_tilde, verify_functional_equation)
from .local import AddChar, FieldCtx, MultChar, PadicNum
from .metaplectic import (CoeffMatrix, dmatrix, kubota_cocycle, plancherel, reducible_at_zero,
                          whittaker_dimension)
from .suites import JobConfig, VerifyReport, run_suite
from .zeta import SchwartzFn, mellin

__version__ = "0.1.0"

__all__ = [
    "AddChar", "CoeffMatrix", "CycNum", "FieldCtx", "JobConfig", "MultChar", "PadicNum", "RatFun",
    "SchwartzFn", "VerifyReport", "dmatrix", "epsilon", "epsilon_identities", "kubota_cocycle", "lfactor",
    "mellin", "meta_gamma", "meta_gamma_rhs", "plancherel", "reducible_at_zero", "run_suite",
    "sweet_integral", "tate_gamma", "theta", "theta_tilde", "verify_functional_equation",
    "whittaker_dimension",
]
