from .mellin import (mellin, mellin_tilde, oscillatory_integral, stable_depth, tilde_value,
                     tilde_value_direct, zeta_nk, zeta_nk_tilde)
from .schwartz import SchwartzFn, SchwartzTerm, random_schwartz
from .shells import CharWeight, ProductWeight, ShellEngine, WeilWeight, Weight, XiWeight, weight_of, zeta_integral

__all__ = [
    "CharWeight", "ProductWeight", "SchwartzFn", "SchwartzTerm", "ShellEngine", "WeilWeight", "Weight",
    "XiWeight", "mellin", "mellin_tilde", "oscillatory_integral", "random_schwartz", "stable_depth",
    "tilde_value", "tilde_value_direct", "weight_of", "zeta_integral", "zeta_nk", "zeta_nk_tilde",
]
