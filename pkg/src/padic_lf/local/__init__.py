from .characters import AddChar, MultChar, add_char_eval, char_eval
from .field import DEFAULT_PRECISION, FieldCtx, PadicNum, PrecisionError, dlog, smallest_primitive_root
from .symbols import (beta_map, beta_nk, beta_nk_sum, eta_char, eta_pi, hilbert_angle, hilbert_symbol,
                      normalize_uniformizer, quadratic_symbol, xi_angle, xi_splitting)
from .weil import (c_psi, completing_square_lhs, completing_square_rhs, weil_angle, weil_gamma_F,
                   weil_index)

__all__ = [
    "AddChar", "DEFAULT_PRECISION", "FieldCtx", "MultChar", "PadicNum", "PrecisionError",
    "add_char_eval", "beta_map", "completing_square_lhs", "completing_square_rhs", "beta_nk", "beta_nk_sum", "c_psi", "char_eval", "dlog",
    "eta_char", "eta_pi", "hilbert_angle", "hilbert_symbol", "normalize_uniformizer",
    "quadratic_symbol", "smallest_primitive_root", "weil_angle", "weil_gamma_F", "weil_index",
    "xi_angle", "xi_splitting",
]
