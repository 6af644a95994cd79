"""Counting Morse eigenvalues two ways.

The Morse potential Q_k(t) = e^{2t}/4 + k e^t confines a particle on the
half-line [x0, inf).  We count its Dirichlet eigenvalues below T by
integrating the Prufer phase, compare with the Weyl integral, and look at
what is left after subtracting the two-term model

    (sqrt(T) log sqrt(T) + (2 log 2 - 1 - x0) sqrt(T)) / pi.

Run with ``python3 demos/morse_counting.py``.
"""

import time

from morseweyl import AsymptoticModel, Morse, count_below, model_value, weyl_count
from morseweyl.harness import log_grid

model = AsymptoticModel.lagarias(0.0)

print("Morse k=0 and k=1 on [0, inf)")
print(f"{'k':>2} {'T':>10} {'n_osc':>6} {'n_weyl':>12} {'model':>12} {'n_weyl-model':>14}")
for k in (0, 1):
    p = Morse(k)
    for T in (1e2, 1e3, 1e4, 1e5):
        t0 = time.perf_counter()
        n = count_below(p, T).count
        w = weyl_count(p, T).value
        m = model_value(model, T)
        print(f"{k:>2} {T:>10.0e} {n:>6d} {w:>12.4f} {m:>12.4f} {w - m:>14.6f}")

# For k=0 the Weyl integral has a closed form and the model is its two-term
# expansion: the residual is 1/(16 pi sqrt(T)) and vanishes.  For k=1 the
# linear term adds a constant, close to -1/2.
print()
print("residual for k=1 on a finer grid (should settle near a constant)")
for T in log_grid(1e2, 1e6, 2):
    r = weyl_count(Morse(1), T).value - model_value(model, T)
    print(f"  T={T:>12.1f}  residual={r:+.6f}")
