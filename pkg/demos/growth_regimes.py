"""Sub-exponential, exponential and super-exponential potentials.

For V(t) = c e^{a t} the count grows like sqrt(T) log T.  A potential that
grows more slowly than any exponential lets in more eigenvalues, so the
ratio N / (sqrt(T) log T) diverges; one that grows faster squeezes the
ratio to zero.  Both drifts are slow, so we print the ratio at each decade.

Run with ``python3 demos/growth_regimes.py``.
"""

import math

from morseweyl import Exponential, SubExponential, SuperExponential, weyl_count
from morseweyl.asymptotics import occupancy


def ratio(p, T):
    return weyl_count(p, T).value / (math.sqrt(T) * math.log(T))


families = {
    "subexp  e^{sqrt t}": SubExponential(0.5, 1.0),
    "exp     e^{t}": Exponential(1.0, 1.0),
    "exp     e^{2t}": Exponential(2.0, 1.0),
    "superexp e^{t^1.5}": SuperExponential(0.5, 1.0),
}
decades = [10.0**e for e in range(2, 7)]

print(f"{'potential':<20}" + "".join(f"{f'T=1e{int(math.log10(T))}':>10}" for T in decades))
for name, p in families.items():
    print(f"{name:<20}" + "".join(f"{ratio(p, T):>10.4f}" for T in decades))

# The exponential rows sit near 1/(pi a): 0.318 for a=1 and 0.159 for a=2.

# Divergence needs the potential to stay below a sub-exponential envelope
# on a positive fraction of every interval [0, R].
p = SubExponential(0.5, 1.0)
w = SubExponential(0.5, 2.0)
print()
for R in (50.0, 100.0, 200.0):
    print(f"fraction of [0, {R:g}] where V < 2 e^(sqrt t): {occupancy(p, w, 0.0, R):.3f}")

# The super-exponential ratio needs many more decades to fall by a factor of 3.
q = SuperExponential(0.5, 1.0)
print()
for e in (2, 10, 30, 100):
    print(f"superexp ratio at T=1e{e}: {ratio(q, 10.0**e):.4f}")
