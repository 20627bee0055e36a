"""Taylor jets and the expression grammar.

A jet carries the Taylor coefficients f^(k)(z0)/k! of an analytic
function at a point.  Arithmetic on jets propagates derivatives exactly
(to rounding), which is how every operator in the package differentiates
without symbolic algebra or finite differences.
"""

import numpy as np

from harmschwarz import ExprFunction, Jet, parse, to_text

# -- jets by hand -----------------------------------------------------------

z = Jet.variable(0.0, 4)

print("geometric series 1/(1-z):", (1.0 / (1.0 - z)).coeffs.real)
print("Koebe map z/(1-z)^2:     ", (z / (1.0 - z) ** 2).coeffs.real)
print("log(1-z) (Mercator):     ", (1.0 - z).log().coeffs.real)

# derivatives come out by coefficient shift: (k+1) c_{k+1}
k_jet = z / (1.0 - z) ** 2
print("k'(0), k''(0), k'''(0):  ",
      [complex(k_jet.derivative_value(i)) for i in (1, 2, 3)])

# -- the expression grammar ---------------------------------------------------

# same function, but from text; the grammar knows +,-,*,/,^, log, exp,
# sqrt, the variable z and the imaginary literal i
k = ExprFunction("z/(1-z)^2")
print("\nparsed and printed back: ", to_text(parse("z/(1-z)^2")))
print("jet of k at 0.25:        ", np.round(k.jet(0.25, 3).coeffs, 6))

# jets evaluate at arrays of points at once; this is what the norm
# searches use to sweep thousands of grid points in a handful of calls
pts = np.array([0.1, 0.2 + 0.3j, -0.4j])
print("k at three points:       ", np.round(k.jet(pts, 0).value, 6))

# strict branch handling: sqrt/log at a zero constant term is an error,
# not a silent branch choice
try:
    ExprFunction("log(z)").jet(0.0, 2)
except Exception as exc:
    print("\nlog(z) at 0 raises:      ", type(exc).__name__, "-", exc)
