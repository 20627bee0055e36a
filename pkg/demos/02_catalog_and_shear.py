"""The map catalog and the shear construction.

A harmonic map is f = h + conj(g) with h, g analytic.  The catalog holds
the classical examples: the harmonic Koebe map K, the half-plane map L,
the half-strip and strip maps S1/S2, and K2 (Koebe sheared with
dilatation z^2), plus the analytic maps k, l, s, q2 they come from.
"""

import math

import numpy as np

from harmschwarz import ExprFunction, catalog, evaluate, shear

# -- catalog maps -------------------------------------------------------------

K = catalog("K")
L = catalog("L")
print("harmonic Koebe K: h'(0) =", complex(K.hp.value(0.0)),
      " omega(0.3) =", complex(K.omega.value(0.3)))
print("half-plane L at 1/2:", complex(evaluate(L, 0.5)),
      "  (h = 3/2, g = -1/2)")

# L maps the disk onto {re w > -1/2}: sample the image near the rim
thetas = np.linspace(0, 2 * math.pi, 64, endpoint=False)
rim = 0.995 * np.exp(1j * thetas)
image = L.values(rim)
print("min re L(0.995 e^{i t}) =", round(float(image.real.min()), 4),
      " (stays right of -1/2)")

# -- shear construction --------------------------------------------------------

# shearing the analytic Koebe k horizontally with dilatation z gives K:
# h' = k'/(1 - z), g' = z h', and h - g = k
sheared = shear(catalog("k"), ExprFunction("z"), theta=0.0)
print("\nshear(k, z, 0) vs catalog K")
print("  h' jets at 0:", sheared.hp.jet(0.0, 3).coeffs.real,
      K.hp.jet(0.0, 3).coeffs.real)
for z in (0.3, 0.2 + 0.25j):
    a, b = evaluate(sheared, z), evaluate(K, z)
    print(f"  f({z}) = {a:.10f} vs {b:.10f}  (|diff| = {abs(a - b):.1e})")

# a sheared map has no closed-form h: values above came from adaptive
# Gauss-Legendre integration of h' along [0, z]

# vertical shear (theta = pi/2) of l(z) = z/(1-z) with dilatation -z
# rebuilds the half-plane map L
vertical = shear(catalog("l"), ExprFunction("-z"), theta=math.pi / 2)
print("\nshear(l, -z, pi/2) h'(0.2) =", complex(vertical.hp.value(0.2)),
      " vs L:", complex(L.hp.value(0.2)))
