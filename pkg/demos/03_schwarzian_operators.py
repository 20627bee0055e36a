"""The pre-Schwarzian and Schwarzian of harmonic maps, with oracles.

For f = h + conj(g) with dilatation w = g'/h':

    P_f = h''/h' - conj(w) w'/(1-|w|^2)          ( = (log J_f)_z )
    S_f = Sh + conj(w)/(1-|w|^2) ((h''/h') w' - w'') - 3/2 (w' conj(w)/(1-|w|^2))^2

Both reduce to the classical operators when g = 0, are invariant under
conjugation and under post-composition with affine maps a w + b conj(w)
+ c, and S_f vanishes exactly on harmonic Moebius maps T + a conj(T).

Three independent computations cross-check S_f at any point.
"""

import numpy as np

from harmschwarz import (
    AffineMap,
    HarmonicMobius,
    MobiusMap,
    affine_compose,
    catalog,
    cdo_schwarzian,
    conjugate,
    lemma1_schwarzian,
    pre_schwarzian,
    schwarzian,
    schwarzian_via_jacobian_fd,
    tamanoi_schwarzian,
)

K = catalog("K")
z = 0.3 + 0.2j

print("S_K(0)        =", complex(schwarzian(K, 0.0)), " (the -19/2 example)")
print("P_L(0)        =", complex(pre_schwarzian(catalog('L'), 0.0)))

# -- four routes to the same number -------------------------------------------

print(f"\nS_K at {z} by four routes:")
print("  defining formula      ", complex(schwarzian(K, z)))
print("  frozen-coefficient    ", complex(lemma1_schwarzian(K, z)),
      "   (classical S of h - conj(w(z0)) g)")
print("  log-Jacobian FD       ", complex(schwarzian_via_jacobian_fd(K, z)),
      "   (delta_zz - delta_z^2/2, delta = log J_f)")
print("  Moebius deviation     ", complex(tamanoi_schwarzian(K, z)),
      "   (6(c30 - c20^2) of M^{-1} o f)")

# -- invariances ---------------------------------------------------------------

A = AffineMap(1.2 - 0.3j, 0.4 + 0.1j, 5.0)
F = affine_compose(A, K)
print("\naffine invariance:  |S_{A o K} - S_K| =",
      float(abs(schwarzian(F, z) - schwarzian(K, z))))
print("conjugation:        |S_conj(K) - S_K| =",
      float(abs(schwarzian(conjugate(K), z) - schwarzian(K, z))))

M = HarmonicMobius(MobiusMap(1, 0.2, 0.3j, 1), 0.4).as_harmonic_map()
print("harmonic Moebius:   |S_M| =", float(abs(schwarzian(M, z))))

# -- the square-root-dilatation Schwarzian -------------------------------------

# when w = q^2 there is an older Schwarzian (from the minimal-surface
# lift); it differs from S_f away from zeros of w
K2 = catalog("K2")  # dilatation z^2, so q(z) = z
a = cdo_schwarzian(K2, 0.5)
b = schwarzian(K2, 0.5)
print("\nK2 at 0.5: lift-based Schwarzian =", complex(np.round(a, 6)),
      " vs S_f =", complex(np.round(b, 6)))
