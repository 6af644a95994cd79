"""Scalar Dormand-Prince 5(4) stepper.

Kept deliberately small: one scalar state, FSAL, standard PI-free
controller.  The step-acceptance loop lives with the caller so it can add
problem-specific rejection rules (see ``oscillation.count_below``).
"""

from __future__ import annotations

# Dormand & Prince (1980), RK5(4)7M
C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# 5th order minus embedded 4th order weights
E1 = 71 / 57600
E3 = -71 / 16695
E4 = 71 / 1920
E5 = -17253 / 339200
E6 = 22 / 525
E7 = -1 / 40

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


def step(f, t, y, k1, h):
    """One trial step.  Returns ``(y_new, k7, err)`` where ``k7 = f(t+h, y_new)``."""
    k2 = f(t + C2 * h, y + h * A21 * k1)
    k3 = f(t + C3 * h, y + h * (A31 * k1 + A32 * k2))
    k4 = f(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3))
    k5 = f(t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
    k6 = f(t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
    y_new = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
    k7 = f(t + h, y_new)
    err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7)
    return y_new, k7, err


def factor(err_norm):
    """Step-size multiplier from a scaled error norm (<= 1 means accept)."""
    if err_norm == 0.0:
        return MAX_FACTOR
    return min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * err_norm ** -0.2))
