"""Pre-Schwarzian and Schwarzian operators for harmonic maps.

All primary-path operators read jets of h' and omega off the map (no
values, so dilatation-form maps never integrate here) and assemble the
closed formulas:

    P_f = h''/h' - conj(w) w' / (1 - |w|^2)
    S_f = Sh + conj(w)/(1-|w|^2) * ((h''/h') w' - w'') - 3/2 (w' conj(w)/(1-|w|^2))^2

with w the dilatation.  1 - |w|^2 is always computed as
(1 - |w|)(1 + |w|) to limit cancellation near the boundary.

Three independent oracles cross-validate S_f:

* ``lemma1_schwarzian``   - classical Schwarzian of h - conj(w(z0)) g;
* ``schwarzian_via_jacobian_fd`` - delta_zz - delta_z^2/2 for
  delta = log J_f, by finite differences on a 5x5 stencil;
* ``tamanoi_schwarzian``  - 6(c30 - c20^2) from the bivariate expansion
  of the deviation from the best harmonic Moebius approximation.

Everything accepts a scalar evaluation point or an ndarray of points.
Sense-reversing maps are routed through their conjugate (P and S are
conjugation invariant; the Jacobian changes sign).
"""

import numpy as np

from .errors import (
    BranchPointAtCenter,
    CriticalPoint,
    DilatationZeroNeedsQ,
    DomainError,
    QMismatch,
    StencilOutsideDomain,
)
from .jets import bivariate_extract
from .maps import PRESERVING, best_harmonic_mobius

DEFAULT_FD_STEP = 1e-3

# fourth-order central-difference stencils on offsets [-2,-1,0,1,2]
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def _one_minus_sq(wabs):
    return (1.0 - wabs) * (1.0 + wabs)


def classical_pre_schwarzian(phi, z):
    """P(phi) = phi''/phi' for an analytic function."""
    j = phi.jet(z, 2)
    d1 = j.coeffs[1]
    if np.any(d1 == 0):
        raise CriticalPoint("phi' vanishes at the evaluation point")
    return 2.0 * j.coeffs[2] / d1


def classical_schwarzian(phi, z):
    """S(phi) = (P phi)' - (P phi)^2/2 for an analytic function."""
    j = phi.jet(z, 3)
    d1 = j.coeffs[1]
    if np.any(d1 == 0):
        raise CriticalPoint("phi' vanishes at the evaluation point")
    p = 2.0 * j.coeffs[2] / d1  # phi''/phi'
    return 6.0 * j.coeffs[3] / d1 - 1.5 * p * p


def _schwarzian_from_derivative_jet(u):
    """Classical Schwarzian from a jet of phi' (order >= 2)."""
    d1 = u.coeffs[0]
    d2 = u.coeffs[1]
    d3 = 2.0 * u.coeffs[2]
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


def pre_schwarzian(f, z):
    """P_f = (log J_f)_z; reduces to h''/h' for analytic maps."""
    hpj, wj = f.derivative_data(z, order_h=1, order_w=1)
    hpp_over_hp = hpj.coeffs[1] / hpj.coeffs[0]
    w, wp = wj.coeffs[0], wj.coeffs[1]
    denom = _one_minus_sq(np.abs(w))
    return hpp_over_hp - np.conjugate(w) * wp / denom


def schwarzian(f, z):
    """S_f = (P_f)_z - (P_f)^2/2 assembled from the canonical pair."""
    hpj, wj = f.derivative_data(z, order_h=2, order_w=2)
    hp = hpj.coeffs[0]
    hpp_over_hp = hpj.coeffs[1] / hp
    Sh = 2.0 * hpj.coeffs[2] / hp - 1.5 * hpp_over_hp ** 2
    w, wp, wpp = wj.coeffs[0], wj.coeffs[1], 2.0 * wj.coeffs[2]
    A = np.conjugate(w) / _one_minus_sq(np.abs(w))
    return Sh + A * (hpp_over_hp * wp - wpp) - 1.5 * (A * wp) ** 2


def cdo_schwarzian(f, z, q=None):
    """The Chuaqui-Duren-Osgood Schwarzian, defined when omega = q^2.

    Without an explicit ``q`` the principal square root of omega is
    used, which requires omega(z) != 0 -- unless omega is identically
    zero through second order (analytic map), where q = 0.  A supplied q
    must satisfy q^2 = omega at z (checked on jets, rel. 1e-8).
    """
    hpj, wj = f.derivative_data(z, order_h=2, order_w=2)
    hp = hpj.coeffs[0]
    hpp_over_hp = hpj.coeffs[1] / hp
    Sh = 2.0 * hpj.coeffs[2] / hp - 1.5 * hpp_over_hp ** 2

    if q is not None:
        qj = q.jet(z, 2)
        sq = qj * qj
        scale = np.maximum(np.abs(wj.coeffs).max(axis=0), 1.0)
        if np.any(np.abs(sq.coeffs - wj.coeffs) > 1e-8 * scale):
            raise QMismatch("q^2 does not match the dilatation at z")
    else:
        if np.all(np.abs(wj.coeffs) == 0):
            qj = wj  # analytic map: q identically 0, correction terms vanish
        else:
            if np.any(wj.coeffs[0] == 0):
                raise DilatationZeroNeedsQ(
                    "omega(z) = 0: supply q with q^2 = omega")
            try:
                qj = wj.sqrt()
            except BranchPointAtCenter as exc:
                raise DilatationZeroNeedsQ(str(exc)) from exc

    qv, qp, qpp = qj.coeffs[0], qj.coeffs[1], 2.0 * qj.coeffs[2]
    B = np.conjugate(qv) / (1.0 + np.abs(qv) ** 2)
    return Sh + 2.0 * B * (qpp - qp * hpp_over_hp) - 4.0 * (qp * B) ** 2


def jacobian(f, z):
    """J_f = |h'|^2 - |g'|^2, via |h'|^2 (1-|w|)(1+|w|); sign follows sense."""
    rep = f.preserving()
    hpj = rep.hp.jet(z, 0)
    wj = rep.omega.jet(z, 0)
    wabs = np.abs(wj.coeffs[0])
    J = np.abs(hpj.coeffs[0]) ** 2 * _one_minus_sq(wabs)
    return J if f.sense == PRESERVING else -J


def dbar_pre_schwarzian(f, z):
    """d(P_f)/d(conj z) = |w'|^2/(1-|w|^2)^2 >= 0."""
    _, wj = f.derivative_data(z, order_h=1, order_w=1)
    denom = _one_minus_sq(np.abs(wj.coeffs[0]))
    return np.abs(wj.coeffs[1]) ** 2 / denom ** 2


def mixed_laplacian_schwarzian(f, z):
    """d^2 S_f / (d conj z, d z); the Laplacian of S_f is 4x this value.

    Vanishes identically iff the dilatation is constant (S_f analytic).
    """
    hpj, wj = f.derivative_data(z, order_h=2, order_w=3)
    hp = hpj.coeffs[0]
    hpp_over_hp = hpj.coeffs[1] / hp
    hppp_over_hp = 2.0 * hpj.coeffs[2] / hp
    w, wp = wj.coeffs[0], wj.coeffs[1]
    wpp, wppp = 2.0 * wj.coeffs[2], 6.0 * wj.coeffs[3]
    phi1 = wp * hpp_over_hp - wpp
    phi1p = wpp * hpp_over_hp + wp * (hppp_over_hp - hpp_over_hp ** 2) - wppp
    phi2 = phi1 * wp - 3.0 * wp * wpp
    D = _one_minus_sq(np.abs(w))
    wb, wpb = np.conjugate(w), np.conjugate(wp)
    return (phi2 * 2.0 * wb * wpb / D ** 3
            + phi1p * wpb / D ** 2
            - 9.0 * wp ** 3 * wb ** 2 * wpb / D ** 4)


def schwarzian_via_jacobian_fd(f, z, step=DEFAULT_FD_STEP):
    """Oracle: delta_zz - delta_z^2/2 for delta = log J_f by central
    finite differences (fourth order, 5x5 stencil in x and y)."""
    z = complex(z)
    f = f.preserving()
    offsets = np.arange(-2, 3)
    pts = z + step * (offsets[:, None] + 1j * offsets[None, :])
    if np.any(np.abs(pts) >= 1.0):
        raise StencilOutsideDomain(
            f"stencil of half-width {2 * step} leaves the unit disk at {z}")
    J = jacobian(f, pts)
    if np.any(J <= 0):
        raise DomainError("log J_f undefined: Jacobian not positive", at=z)
    delta = np.log(J)
    c1 = _D1 / step
    c2 = _D2 / step ** 2
    dx = c1 @ delta[:, 2]
    dy = c1 @ delta[2, :]
    dxx = c2 @ delta[:, 2]
    dyy = c2 @ delta[2, :]
    dxy = c1 @ delta @ c1
    delta_z = 0.5 * (dx - 1j * dy)
    delta_zz = 0.25 * (dxx - dyy - 2j * dxy)
    return delta_zz - 0.5 * delta_z ** 2


def lemma1_schwarzian(f, z0):
    """Oracle: S_f(z0) as the classical Schwarzian of h - conj(w(z0)) g.

    The combination h + lambda g is analytic for each frozen lambda;
    freezing lambda = -conj(w(z0)) reproduces S_f at z0 exactly.
    """
    hpj, wj = f.derivative_data(z0, order_h=2, order_w=2)
    gpj = wj * hpj
    lam = -np.conjugate(wj.coeffs[0])
    u = hpj + lam * gpj  # jet of (h + lambda g)' at z0
    return _schwarzian_from_derivative_jet(u)


def tamanoi_schwarzian(f, z0, radii=(0.01, 0.02, 0.03), angles=64):
    """Oracle: 6(c30 - c20^2) of the deviation F = M^{-1} o f(z0 + .)
    from the best harmonic Moebius approximation M at z0.

    The coefficients come from sampling F on small circles and running
    the bivariate extraction; accuracy is set by the default radii
    (about 1e-7 on the catalog maps).
    """
    z0 = complex(z0)
    f = f.preserving()
    M = best_harmonic_mobius(f, z0)

    def deviation(t):
        return M.invert(f.values(z0 + t))

    coeffs = bivariate_extract(deviation, 0.0, degree=3,
                               radii=radii, angles=angles)
    c20 = coeffs.get(2, 0)
    c30 = coeffs.get(3, 0)
    return 6.0 * (c30 - c20 ** 2)
