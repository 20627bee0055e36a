"""Truncated complex Taylor-jet arithmetic.

A :class:`Jet` stores the coefficients ``c[k] = f^(k)(center)/k!`` of an
analytic function at a point, through a fixed order.  All composite
expressions propagate these coefficients exactly (to rounding), which is
how every derivative in the package is produced: no symbolic algebra, no
finite differences on the primary path.

Coefficients live in a numpy array whose leading axis indexes the
coefficient.  Trailing axes, if any, are broadcast point batches, so the
same recurrences evaluate one expansion point or a whole grid of them.
Jets are immutable by convention: no method mutates ``coeffs``.

The module also hosts :func:`bivariate_extract`, which recovers the
coefficients ``c_{mn}`` of a smooth (not necessarily analytic) map
``F(z) = sum c_{mn} (z-z0)^m conj(z-z0)^n`` by sampling ``F`` on small
circles: an FFT in the angle separates the frequencies ``m - n``, and a
least-squares fit in the radius separates the orders ``m + n``.
"""

import math

import numpy as np

from .errors import (
    BranchPointAtCenter,
    CenterMismatch,
    DivisionByZeroConstantTerm,
    IllConditioned,
    NonFinite,
)

DEFAULT_ORDER = 4


def _as_coeff_array(coeffs):
    arr = np.asarray(coeffs, dtype=np.complex128)
    if arr.ndim == 0:
        raise ValueError("jet coefficients must have a leading coefficient axis")
    return arr


class Jet:
    """Taylor coefficients of an analytic function at ``center``."""

    __slots__ = ("center", "coeffs")

    def __init__(self, center, coeffs):
        coeffs = _as_coeff_array(coeffs)
        if not np.all(np.isfinite(coeffs)):
            raise NonFinite("non-finite jet coefficient")
        if not np.all(np.isfinite(np.asarray(center))):
            raise NonFinite("non-finite jet center")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def constant(cls, value, order, center=0.0, shape=None):
        """Jet of the constant function ``value`` (broadcast over shape)."""
        if shape is None:
            shape = np.shape(value)
        coeffs = np.zeros((order + 1,) + tuple(shape), dtype=np.complex128)
        coeffs[0] = value
        return cls(center, coeffs)

    @classmethod
    def variable(cls, z0, order):
        """Jet of the identity function z at center z0."""
        shape = np.shape(z0)
        coeffs = np.zeros((order + 1,) + shape, dtype=np.complex128)
        coeffs[0] = z0
        if order >= 1:
            coeffs[1] = 1.0
        return cls(z0, coeffs)

    # -- introspection -------------------------------------------------

    @property
    def order(self):
        return self.coeffs.shape[0] - 1

    @property
    def value(self):
        return self.coeffs[0]

    def derivative_value(self, k):
        """The plain derivative f^(k)(center) (coefficient times k!)."""
        return self.coeffs[k] * math.factorial(k)

    def __repr__(self):
        return f"Jet(center={self.center!r}, coeffs={self.coeffs!r})"

    def _match(self, other):
        if self.order != other.order:
            raise CenterMismatch(
                f"jet orders differ: {self.order} vs {other.order}"
            )
        if not np.array_equal(np.asarray(self.center), np.asarray(other.center)):
            raise CenterMismatch("jet centers differ")

    def _lift(self, other):
        if isinstance(other, Jet):
            self._match(other)
            return other
        return Jet.constant(other, self.order, center=self.center,
                            shape=self.coeffs.shape[1:])

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        return Jet(self.center, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return Jet(self.center, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Jet(self.center, -self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.center,
                       self.coeffs * np.asarray(other, dtype=np.complex128))
        self._match(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = np.zeros_like(a)
        for k in range(n + 1):
            for j in range(k + 1):
                out[k] = out[k] + a[j] * b[k - j]
        return Jet(self.center, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        b0 = other.coeffs[0]
        if np.any(b0 == 0):
            raise DivisionByZeroConstantTerm(
                "jet division by zero constant term"
            )
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = np.zeros_like(a)
        out[0] = a[0] / b0
        for k in range(1, n + 1):
            acc = a[k]
            for j in range(1, k + 1):
                acc = acc - b[j] * out[k - j]
            out[k] = acc / b0
        return Jet(self.center, out)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, exponent):
        """Integer power by repeated multiplication (exact path)."""
        if not isinstance(exponent, int):
            raise TypeError("use cpow() for non-integer exponents")
        if exponent < 0:
            return 1.0 / self.__pow__(-exponent)
        result = Jet.constant(1.0, self.order, center=self.center,
                              shape=self.coeffs.shape[1:])
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- transcendental compositions ------------------------------------

    def _require_nonzero_constant(self, what):
        if np.any(self.coeffs[0] == 0):
            raise BranchPointAtCenter(f"{what} of jet with zero constant term")

    def sqrt(self):
        self._require_nonzero_constant("sqrt")
        n = self.order
        a = self.coeffs
        out = np.zeros_like(a)
        out[0] = np.sqrt(a[0])
        for k in range(1, n + 1):
            acc = a[k]
            for j in range(1, k):
                acc = acc - out[j] * out[k - j]
            out[k] = acc / (2.0 * out[0])
        return Jet(self.center, out)

    def log(self):
        self._require_nonzero_constant("log")
        n = self.order
        a = self.coeffs
        out = np.zeros_like(a)
        out[0] = np.log(a[0])
        if n >= 1:
            # (log a)' = a'/a, integrated coefficient-wise
            q = self.derivative() / self.truncate(n - 1)
            for k in range(1, n + 1):
                out[k] = q.coeffs[k - 1] / k
        return Jet(self.center, out)

    def exp(self):
        n = self.order
        a = self.coeffs
        out = np.zeros_like(a)
        out[0] = np.exp(a[0])
        for k in range(1, n + 1):
            acc = np.zeros_like(out[0])
            for j in range(1, k + 1):
                acc = acc + j * a[j] * out[k - j]
            out[k] = acc / k
        return Jet(self.center, out)

    def cpow(self, exponent):
        """Principal-branch complex power a^e = exp(e*log a)."""
        return (self.log() * exponent).exp()

    # -- structure -------------------------------------------------------

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a jet by truncation")
        return Jet(self.center, self.coeffs[: order + 1])

    def derivative(self):
        """Jet of f' at the same center, one order lower."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1).reshape(
            (-1,) + (1,) * (self.coeffs.ndim - 1)
        )
        return Jet(self.center, self.coeffs[1:] * k)

    def compose(self, inner):
        """Jet of outer(inner(.)) at inner.center.

        Requires ``self.center == inner.coeffs[0]`` (the outer expansion
        sits at the inner value) and equal orders.
        """
        if self.order != inner.order:
            raise CenterMismatch("compose requires equal jet orders")
        if not np.array_equal(np.asarray(self.center), np.asarray(inner.value)):
            raise CenterMismatch("outer center must equal inner constant term")
        n = self.order
        shifted = inner.coeffs.copy()
        shifted[0] = 0.0  # Horner in (inner - inner(center))
        w = Jet(inner.center, shifted)
        result = Jet.constant(self.coeffs[n], n, center=inner.center,
                              shape=inner.coeffs.shape[1:])
        for k in range(n - 1, -1, -1):
            result = result * w + self.coeffs[k]
        return result


# ---------------------------------------------------------------------------
# bivariate (z, conj z) coefficient extraction


class BivariateCoeffs:
    """Table of c_{mn} with m+n <= degree for a smooth map around center."""

    def __init__(self, center, degree, table):
        self.center = center
        self.degree = degree
        self.table = dict(table)
        for m in range(degree + 1):
            for n in range(degree + 1 - m):
                if (m, n) not in self.table:
                    raise ValueError(f"incomplete coefficient table: missing {(m, n)}")

    def __getitem__(self, mn):
        return self.table[mn]

    def get(self, m, n):
        return self.table[(m, n)]


def bivariate_extract(F, center, degree=3, radii=(0.01, 0.02, 0.03),
                      angles=64, cond_threshold=1e8):
    """Recover c_{mn} (m+n <= degree) of F(z) = sum c_{mn} t^m conj(t)^n.

    ``F`` is called with a complex ndarray of sample points (a pointwise
    fallback is used if it only accepts scalars).  Sampling happens on
    ``len(radii)`` circles around ``center`` with ``angles`` points each.
    An FFT over the angle isolates each frequency m-n; a least-squares
    solve over the radii separates the powers rho^(m+n).  A few powers
    beyond ``degree`` are kept as nuisance terms so that higher-order
    content of F does not leak into the reported coefficients.

    Raises IllConditioned when the (column-scaled) radial system has
    condition number above ``cond_threshold``.
    """
    radii = [float(r) for r in radii]
    if any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")
    if len(radii) < math.ceil((degree + 1) / 2):
        raise ValueError(f"need at least {math.ceil((degree + 1) / 2)} radii "
                         f"for degree {degree}")
    if angles < 2 * degree + 1:
        raise ValueError(f"need at least {2 * degree + 1} angles for degree {degree}")

    rho = np.asarray(radii, dtype=float)
    theta = 2.0 * np.pi * np.arange(angles) / angles
    pts = center + rho[:, None] * np.exp(1j * theta)[None, :]
    try:
        vals = np.asarray(F(pts), dtype=np.complex128)
        vectorized = vals.shape == pts.shape
    except (TypeError, ValueError):
        vectorized = False
    if not vectorized:
        vals = np.array([[F(p) for p in row] for row in pts], dtype=np.complex128)
    if not np.all(np.isfinite(vals)):
        raise NonFinite("non-finite sample in bivariate extraction")

    dft = np.fft.fft(vals, axis=1) / angles

    table = {}
    for k in range(-degree, degree + 1):
        rhs = dft[:, k % angles]
        needed = (degree - abs(k)) // 2 + 1
        nterms = min(len(radii), needed + 2)
        exps = [abs(k) + 2 * j for j in range(nterms)]
        A = rho[:, None] ** np.asarray(exps)[None, :]
        colscale = np.linalg.norm(A, axis=0)
        As = A / colscale
        if np.linalg.cond(As) > cond_threshold:
            raise IllConditioned(
                f"radial solve for frequency {k} exceeds condition threshold"
            )
        sol, *_ = np.linalg.lstsq(As, rhs, rcond=None)
        sol = sol / colscale
        for e, c in zip(exps, sol):
            if e <= degree:
                m = (e + k) // 2
                n = (e - k) // 2
                table[(m, n)] = complex(c)
    return BivariateCoeffs(center, degree, table)
