"""Frozen reference values for the test suite.

Computed independently of the library with mpmath at 30 significant
digits (root-finding on the exact series for the gauge, tanh-sinh
quadrature with explicit splits for the integrals), then rounded to the
nearest double.
"""

import math

# root of gauge(alpha) = 2
BETA0 = 0.4318705476715142

# gauge values
GAUGE = {
    0.3: 1.5768519423122252,
    0.5: 2.295587149392638,
    0.6: 2.8900513138702549,
    0.9: 10.800642148134161,
    0.999: 1000.9977935911060,
}
# gauge at the six-digit rounding of the root (not exactly 2)
GAUGE_AT_SIX_DIGIT_ROOT = 1.9999978801427497

# embedding constants of the exponential family, BETA0 ** (-1/m)
K0_EXP = {
    1.0: 2.3155086759021405,
    1.5: 1.750240013684873,
    2.0: 1.5216795575620185,
    3.0: 1.3229663690679642,
    100.0: 1.0084316416748072,
}

# threshold where exp_m(2) crosses 1: sqrt(2 ln 2)
Y0_EXP2 = 1.1774100225154747

TWO_LN_TWO = 2.0 * math.log(2.0)

# indicator norms 1/N^{-1}(1/a) in exp_m(2)
INDICATOR_EXP2 = {
    0.1: 0.456635736350237,
    0.5: 0.6746255356221099,
    1.0: 0.849321800288019,
}

# t-form criterion integral for the delta(2) family at scalings 1/k,
# int_{t0}^inf N(t/k) |d 1/N(t)|; finite for every k > 1
DELTA2_CRITERION_T_FORM = {
    1.5: 3.5922012357597827,
    2.0: 1.3398792542136278,
    4.0: 0.2897688958430279,
}
