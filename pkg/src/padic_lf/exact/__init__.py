from .cyclotomic import CycNum, CyclotomicError, cyc_promote, legendre, q_power, root_angle, sqrt_q
from .ratfun import RatFun, rf_substitute

__all__ = ["CycNum", "CyclotomicError", "RatFun", "cyc_promote", "legendre", "q_power",
           "rf_substitute", "root_angle", "sqrt_q"]
