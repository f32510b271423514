"""Radial functions on shells and the operators acting on them."""

from .extremal import VARIANTS, epsilon, extremal_hardy_sequence, radialize_change_of_variable_check
from .function import (RadialFunction, TailTerm, add, ball_indicator, complement_indicator, constant, from_shells,
                       linear_combination, mul, mul_power, power_function, restrict, scale, shell_indicator, shift,
                       zero)
from .norms import integrate, lr_norm, lr_norm_pow, weak_norm
from .operators import (adjoint_hardy, hardy, hlp, inner_cumsum, outer_cumsum, radial_convolve, riesz_kernel,
                        riesz_potential, vt_apply, vt_constant)
