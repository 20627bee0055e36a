"""Adaptive Gauss-Legendre integration along straight segments.

Integrands here are analytic functions sampled by value, so a 16-point
rule converges extremely fast; adaptivity is uniform bisection of every
segment with a two-level convergence test.  The batch form integrates
many segments at once (one numpy call per refinement level), which is
what the harmonic-map evaluator and the Tamanoi oracle lean on.
"""

import numpy as np

from .errors import QuadratureFailure

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)

DEFAULT_TOL = 1e-8
DEFAULT_MAX_DEPTH = 12


def _composite(values_fn, z0, z1, pieces):
    """Composite 16-point Gauss-Legendre over each segment split in ``pieces``."""
    frac = (np.arange(pieces)[:, None] + (_GL_NODES[None, :] + 1.0) / 2.0) / pieces
    frac = frac.reshape(-1)  # (pieces*16,)
    w = np.tile(_GL_WEIGHTS, pieces) / (2.0 * pieces)
    span = z1 - z0
    pts = z0[..., None] + span[..., None] * frac
    vals = np.asarray(values_fn(pts), dtype=np.complex128)
    return span * np.sum(vals * w, axis=-1)


def integrate_segments(values_fn, z0, z1, tol=DEFAULT_TOL, max_depth=DEFAULT_MAX_DEPTH):
    """Integrate ``values_fn`` along each straight segment z0[i] -> z1[i].

    ``values_fn`` must accept a complex ndarray and return values of the
    same shape.  Subdivision doubles until two consecutive levels agree
    to ``tol`` (absolute, per segment); exceeding ``max_depth`` raises
    QuadratureFailure.
    """
    z0 = np.asarray(z0, dtype=np.complex128)
    z1 = np.asarray(z1, dtype=np.complex128)
    prev = _composite(values_fn, z0, z1, 1)
    for depth in range(1, max_depth + 1):
        cur = _composite(values_fn, z0, z1, 2 ** depth)
        if np.all(np.abs(cur - prev) <= tol):
            return cur
        prev = cur
    raise QuadratureFailure(
        f"integral did not reach tol={tol} within depth {max_depth}"
    )


def integrate_segment(values_fn, z0, z1, tol=DEFAULT_TOL, max_depth=DEFAULT_MAX_DEPTH):
    """Scalar convenience wrapper around :func:`integrate_segments`."""
    out = integrate_segments(values_fn, np.asarray([z0]), np.asarray([z1]),
                             tol=tol, max_depth=max_depth)
    return complex(out[0])
