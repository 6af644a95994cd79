"""Counting zeta zeros against two closed forms.

The bundled fixture lists the first 100 ordinates gamma of zeros 1/2 + i gamma.
Counting both signs, the Riemann-von Mangoldt formula predicts

    Z(T) ~ (T/pi) log(T / 2pi) - T/pi

with an O(log T) error.  A variant with second coefficient -2 log 2pi is
also available; its deviation grows linearly, which this script shows.

Run with ``python3 demos/zeta_zeros.py``.
"""

from morseweyl.asymptotics import AsymptoticModel, model_value
from morseweyl.zeta import count_zeros_magnitude_below, fixture_path, load_zeros, squared_spectrum_count

z = load_zeros(fixture_path())
print(f"{len(z)} zeros, {z.source}")

classical = AsymptoticModel.zeta_classical()
variant = AsymptoticModel.zeta_paper()

print(f"{'T':>6} {'Z(T)':>6} {'classical':>10} {'dev':>7} {'variant':>10} {'dev':>8}")
for T in range(25, 240, 25):
    Z = count_zeros_magnitude_below(z, T)
    c = model_value(classical, T)
    v = model_value(variant, T)
    print(f"{T:>6} {Z:>6} {c:>10.2f} {Z - c:>7.2f} {v:>10.2f} {Z - v:>8.2f}")

# The variant's deviation is close to (log 2pi / pi) T, about 0.585 T.

# Read as a spectrum, the squares gamma^2 are eigenvalues.  The first one
# is 14.1347^2 = 199.79.
print()
for T in (199.0, 199.79, 199.8, 200.0):
    print(f"eigenvalues gamma^2 below {T}: {squared_spectrum_count(z, T)}")
