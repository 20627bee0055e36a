"""Planar harmonic mappings f = h + conj(g) and their constructions.

A map is held in canonical form: the analytic part ``h``, the
co-analytic part ``g`` (with g(0) = 0 for dilatation-built maps), the
dilatation omega = g'/h', and a sense flag.  Two concrete shapes occur:

* parts form - h and g are explicit analytic functions (the catalog);
* dilatation form - h' and omega are explicit, h and g exist only as
  antiderivatives and their values come from Gauss-Legendre integration
  along [0, z] (the shear construction, partner maps).

Derivative-only consumers (all the Schwarzian operators, the norm
searches) never trigger integration: ``derivative_data`` serves jets of
h' and omega directly in either form.

Sense-reversing maps are stored as such; anything that needs a
sense-preserving representative conjugates on the fly (P and S are
invariant under conjugation, the Jacobian flips sign).
"""

import cmath

import numpy as np

from .errors import (
    DegenerateJet,
    DivisionByZeroConstantTerm,
    DomainError,
    ParameterOutOfRange,
    ShearSingularity,
    UnknownCatalogName,
)
from .expr import (
    AnalyticFunction,
    ConstantFunction,
    DerivedFunction,
    ExprFunction,
)
from .jets import Jet
from .quadrature import integrate_segment, integrate_segments

PRESERVING = "preserving"
REVERSING = "reversing"


def _flip(sense):
    return REVERSING if sense == PRESERVING else PRESERVING


# ---------------------------------------------------------------------------
# Moebius machinery


class MobiusMap:
    """w -> (a*w + b)/(c*w + d) with ad - bc != 0."""

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (complex(a), complex(b),
                                          complex(c), complex(d))
        if self.a * self.d - self.b * self.c == 0:
            raise ParameterOutOfRange("degenerate Moebius map: ad - bc = 0")

    def __call__(self, w):
        return (self.a * w + self.b) / (self.c * w + self.d)

    def inverse(self):
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other):
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def as_function(self):
        num = f"(({_cfmt(self.a)})*z+({_cfmt(self.b)}))"
        den = f"(({_cfmt(self.c)})*z+({_cfmt(self.d)}))"
        return ExprFunction(f"{num}/{den}")

    def __repr__(self):
        return f"MobiusMap({self.a}, {self.b}, {self.c}, {self.d})"


def _cfmt(v):
    v = complex(v)
    return f"{v.real!r}+{v.imag!r}*i"


class HarmonicMobius:
    """T + alpha*conj(T) with T Moebius and |alpha| < 1."""

    def __init__(self, T, alpha):
        alpha = complex(alpha)
        if abs(alpha) >= 1:
            raise ParameterOutOfRange("harmonic Moebius needs |alpha| < 1")
        self.T = T
        self.alpha = alpha

    def __call__(self, w):
        t = self.T(w)
        return t + self.alpha * np.conjugate(t)

    def invert(self, w):
        """Inverse map: first undo the affine part, then the Moebius."""
        a = self.alpha
        u = (w - a * np.conjugate(w)) / (1.0 - abs(a) ** 2)
        return self.T.inverse()(u)

    def as_harmonic_map(self, label="harmonic-mobius"):
        t = self.T.as_function()
        return HarmonicMap.from_parts(
            t, np.conjugate(self.alpha) * t,
            omega=ConstantFunction(np.conjugate(self.alpha)), label=label)


class AffineMap:
    """w -> a*w + b*conj(w) + c with |a| != |b|."""

    def __init__(self, a, b, c):
        self.a, self.b, self.c = complex(a), complex(b), complex(c)
        if abs(self.a) == abs(self.b):
            raise ParameterOutOfRange("degenerate affine map: |a| = |b|")

    def __call__(self, w):
        return self.a * w + self.b * np.conjugate(w) + self.c

    def __repr__(self):
        return f"AffineMap({self.a}, {self.b}, {self.c})"


# ---------------------------------------------------------------------------
# antiderivatives (dilatation-form parts)


class AntiderivativeFunction(AnalyticFunction):
    """h with known derivative: h(z) = value0 + integral of df over [0, z]."""

    def __init__(self, df, value0=0.0, label=None, tol=1e-8, max_depth=12):
        self.df = df
        self.value0 = complex(value0)
        self.label = label
        self.tol = tol
        self.max_depth = max_depth
        self._cache = {}

    def derivative(self):
        return self.df

    def value(self, z, tol=None, max_depth=None):
        use_default = tol is None and max_depth is None
        tol = self.tol if tol is None else tol
        max_depth = self.max_depth if max_depth is None else max_depth
        if np.ndim(z) == 0:
            key = complex(z)
            if use_default and key in self._cache:
                return self._cache[key]
            val = self.value0 + integrate_segment(
                self.df.value, 0.0, key, tol=tol, max_depth=max_depth)
            if use_default:
                self._cache[key] = val
            return val
        zs = np.asarray(z, dtype=np.complex128)
        vals = integrate_segments(self.df.value, np.zeros_like(zs), zs,
                                  tol=tol, max_depth=max_depth)
        return self.value0 + vals

    def jet(self, z, order):
        shape = np.shape(z)
        coeffs = np.zeros((order + 1,) + shape, dtype=np.complex128)
        coeffs[0] = self.value(z)
        if order >= 1:
            dj = self.df.jet(z, order - 1)
            for k in range(1, order + 1):
                coeffs[k] = dj.coeffs[k - 1] / k
        return Jet(z, coeffs)


# ---------------------------------------------------------------------------
# the central object


class HarmonicMap:
    """Canonical pair (h, g) with dilatation omega and a sense flag."""

    def __init__(self, h, g, hp, gp, omega, sense, label="", form="parts",
                 sources=None):
        self.h = h
        self.g = g
        self.hp = hp
        self.gp = gp
        self.omega = omega
        if sense not in (PRESERVING, REVERSING):
            raise ParameterOutOfRange(f"unknown sense flag {sense!r}")
        self.sense = sense
        self.label = label
        self.form = form
        self.sources = sources  # (field, expr-text) pairs for serialization
        self._conj_source = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_parts(cls, h, g, omega=None, sense=PRESERVING, label="",
                   hp=None, gp=None, sources=None):
        if not isinstance(g, AnalyticFunction):
            g = ConstantFunction(g) if np.isscalar(g) else g
        hp = hp if hp is not None else h.derivative()
        gp = gp if gp is not None else g.derivative()
        if omega is None:
            omega = DerivedFunction(
                lambda z, n: gp.jet(z, n) / hp.jet(z, n),
                label="g'/h'")
        return cls(h, g, hp, gp, omega, sense, label=label, form="parts",
                   sources=sources)

    @classmethod
    def from_dilatation(cls, hp, omega, h0=0.0, sense=PRESERVING, label="",
                        sources=None):
        """Map defined by h' and omega; h(0) = h0 and g(0) = 0."""
        gp = DerivedFunction(lambda z, n: omega.jet(z, n) * hp.jet(z, n),
                             label="omega*h'")
        h = AntiderivativeFunction(hp, value0=h0, label="h")
        g = AntiderivativeFunction(gp, value0=0.0, label="g")
        return cls(h, g, hp, gp, omega, sense, label=label, form="dilatation",
                   sources=sources)

    @classmethod
    def from_analytic(cls, fn, label=""):
        """Wrap an analytic function as the harmonic map fn + conj(0)."""
        zero = ConstantFunction(0.0)
        return cls.from_parts(fn, zero, omega=ConstantFunction(0.0),
                              gp=zero, label=label or (fn.label or ""),
                              sources=(("h", fn.source), ("g", "0")))

    def __repr__(self):
        return f"HarmonicMap({self.label or self.form}, sense={self.sense})"

    # -- evaluation --------------------------------------------------------

    def preserving(self):
        """Sense-preserving representative (self, or its conjugate)."""
        return self if self.sense == PRESERVING else conjugate(self)

    def value(self, z):
        """f(z) = h(z) + conj(g(z))."""
        return self.h.value(z) + np.conjugate(self.g.value(z))

    def values(self, zs):
        return self.value(np.asarray(zs, dtype=np.complex128))

    def derivative_data(self, z, order_h=2, order_w=2):
        """Jets of h' and omega of the preserving representative at z.

        Checks local univalence lazily: raises DomainError naming the
        first offending point when h' = 0 or |omega| >= 1.
        """
        rep = self.preserving()
        try:
            hpj = rep.hp.jet(z, order_h)
            wj = rep.omega.jet(z, order_w)
        except DivisionByZeroConstantTerm as exc:
            raise DomainError(f"derivative data unavailable: {exc}",
                              at=_first_point(z)) from exc
        bad = hpj.value == 0
        if np.any(bad):
            raise DomainError("h' vanishes", at=_first_point(z, bad))
        bad = np.abs(wj.value) >= 1.0
        if np.any(bad):
            raise DomainError("|omega| >= 1 (map not sense-preserving)",
                              at=_first_point(z, bad))
        return hpj, wj


def _first_point(z, mask=None):
    arr = np.asarray(z)
    if arr.ndim == 0:
        return complex(arr)
    if mask is None:
        return complex(arr.reshape(-1)[0])
    return complex(arr[mask].reshape(-1)[0])


# ---------------------------------------------------------------------------
# catalog

_CATALOG_ANALYTIC = {
    "k": "z/(1-z)^2",
    "l": "z/(1-z)",
    "s": "0.5*log((1+z)/(1-z))",
    "q2": "z/(1-z^2)",
}

# (h, g, omega, h') closed forms; horizontal/vertical shears of the
# analytic catalog, written out explicitly so evaluation never
# integrates.  The factored h' avoids the quotient-rule cancellation of
# differentiating h near the boundary (h' -> 0 at z = -1 for K while
# the quotient pieces stay O(1)); g' is omega * h', also cancellation
# free.
_CATALOG_HARMONIC = {
    "K": ("(z-0.5*z^2+z^3/6)/(1-z)^3", "(0.5*z^2+z^3/6)/(1-z)^3", "z",
          "(1+z)/(1-z)^4"),
    "L": ("(z-0.5*z^2)/(1-z)^2", "-(0.5*z^2)/(1-z)^2", "-z",
          "1/(1-z)^3"),
    "S1": ("0.5*(z/(1-z)+0.5*log((1+z)/(1-z)))",
           "0.5*(z/(1-z)-0.5*log((1+z)/(1-z)))", "z",
           "1/((1-z)^2*(1+z))"),
    "S2": ("0.5*(z/(1-z^2)+0.5*log((1+z)/(1-z)))",
           "0.5*(z/(1-z^2)-0.5*log((1+z)/(1-z)))", "z^2",
           "1/(1-z^2)^2"),
    "K2": ("(1/(1-z)^3-1)/3", "(z^2-z+1/3)/(1-z)^3-1/3", "z^2",
           "1/(1-z)^4"),
}

CATALOG_NAMES = tuple(_CATALOG_HARMONIC) + tuple(_CATALOG_ANALYTIC)


def catalog(name):
    """Named maps: harmonic K, L, S1, S2, K2 and analytic k, l, s, q2.

    Harmonic names return a HarmonicMap in (h, g) form; analytic names
    return the AnalyticFunction itself.
    """
    if name in _CATALOG_ANALYTIC:
        return ExprFunction(_CATALOG_ANALYTIC[name], label=name)
    if name in _CATALOG_HARMONIC:
        h_src, g_src, w_src, hp_src = _CATALOG_HARMONIC[name]
        omega = ExprFunction(w_src, label=f"{name}.omega")
        hp = ExprFunction(hp_src, label=f"{name}.h'")
        gp = DerivedFunction(lambda z, n, w=omega, d=hp: w.jet(z, n) * d.jet(z, n),
                             label=f"{name}.g'")
        return HarmonicMap.from_parts(
            ExprFunction(h_src, label=f"{name}.h"),
            ExprFunction(g_src, label=f"{name}.g"),
            omega=omega, hp=hp, gp=gp,
            label=name,
            sources=(("h", h_src), ("g", g_src)),
        )
    raise UnknownCatalogName(f"unknown catalog name {name!r}; "
                             f"known: {', '.join(CATALOG_NAMES)}")


def catalog_map(name):
    """Like catalog() but analytic entries come wrapped as harmonic maps."""
    obj = catalog(name)
    if isinstance(obj, AnalyticFunction):
        return HarmonicMap.from_analytic(obj, label=name)
    return obj


# ---------------------------------------------------------------------------
# constructions


def shear(phi, omega, theta=0.0, label=None):
    """Shear construction: the harmonic map with h - e^{2i theta} g = phi
    and dilatation omega, normalized by g(0) = 0 (hence h(0) = phi(0)).

    h' = phi'/(1 - e^{2i theta} omega); evaluation points where that
    denominator vanishes raise ShearSingularity.
    """
    cis = cmath.exp(2j * float(theta))
    phip = phi.derivative()

    def hp_jet(z, n):
        den = 1.0 - cis * omega.jet(z, n)
        try:
            return phip.jet(z, n) / den
        except DivisionByZeroConstantTerm as exc:
            raise ShearSingularity(
                f"1 - e^(2i*theta)*omega vanishes at {_first_point(z)}"
            ) from exc

    hp = DerivedFunction(hp_jet, label="phi'/(1-e^(2i theta) omega)")
    h0 = complex(phi.value(0.0))
    return HarmonicMap.from_dilatation(
        hp, omega, h0=h0,
        label=label or f"shear({phi.label or 'phi'}, theta={float(theta)!r})")


def affine_compose(A, f):
    """Post-composition A o f for an affine A(w) = a*w + b*conj(w) + c.

    Canonical parts: H = a*h + b*g + c, G = conj(b)*h + conj(a)*g; the
    dilatation becomes (conj(b) + conj(a)*omega)/(a + b*omega).  The
    sense flips when |b| > |a|.
    """
    a, b, c = A.a, A.b, A.c
    ac, bc = np.conjugate(a), np.conjugate(b)
    H = a * f.h + b * f.g + c
    G = bc * f.h + ac * f.g
    Hp = a * f.hp + b * f.gp
    Gp = bc * f.hp + ac * f.gp
    w = f.omega
    omega_F = (bc + ac * w) / (a + b * w)
    sense = f.sense if abs(a) > abs(b) else _flip(f.sense)
    return HarmonicMap(H, G, Hp, Gp, omega_F, sense,
                       label=f"affine({f.label})", form=f.form)


def precompose(f, phi):
    """f o phi for analytic phi mapping into f's domain."""
    H = f.h.compose(phi)
    G = f.g.compose(phi)
    phip = phi.derivative()
    Hp = f.hp.compose(phi) * phip
    Gp = f.gp.compose(phi) * phip
    omega_F = f.omega.compose(phi)
    return HarmonicMap(H, G, Hp, Gp, omega_F, f.sense,
                       label=f"{f.label or 'f'}o{phi.label or 'phi'}",
                       form=f.form)


def conjugate(f):
    """conj(f): swaps the canonical parts and flips the sense flag."""
    if f._conj_source is not None:
        return f._conj_source
    omega_c = DerivedFunction(lambda z, n: f.hp.jet(z, n) / f.gp.jet(z, n),
                              label="1/omega")
    out = HarmonicMap(f.g, f.h, f.gp, f.hp, omega_c, _flip(f.sense),
                      label=f"conj({f.label})", form=f.form)
    out._conj_source = f
    return out


def group_apply(f, kind, param):
    """Operators generating the group that preserves Jacobian homothety:

    - ``Rp``: f -> lambda*h + conj(lambda*g), lambda != 0;
    - ``Rq``: f -> h + conj(mu*g), |mu| = 1;
    - ``I``:  f -> f + conj(a*f), a in the unit disk.
    """
    param = complex(param)
    if kind == "Rp":
        if param == 0:
            raise ParameterOutOfRange("Rp requires lambda != 0")
        return HarmonicMap(param * f.h, param * f.g,
                           param * f.hp, param * f.gp,
                           f.omega, f.sense,
                           label=f"Rp({f.label})", form=f.form)
    if kind == "Rq":
        if abs(abs(param) - 1.0) > 1e-12:
            raise ParameterOutOfRange("Rq requires |mu| = 1")
        return HarmonicMap(f.h, param * f.g, f.hp, param * f.gp,
                           param * f.omega, f.sense,
                           label=f"Rq({f.label})", form=f.form)
    if kind == "I":
        if abs(param) >= 1:
            raise ParameterOutOfRange("I requires |a| < 1")
        # I_a(f) = f + conj(a f); dilatation becomes phi_a o omega
        return affine_compose(AffineMap(1.0, np.conjugate(param), 0.0), f)
    raise ParameterOutOfRange(f"unknown group element kind {kind!r}")


def disk_automorphism(a, label=None):
    """phi_a(z) = (a + z)/(1 + conj(a) z), an automorphism of the disk."""
    if abs(a) >= 1:
        raise ParameterOutOfRange("disk automorphism requires |a| < 1")
    a = complex(a)
    src = f"(({_cfmt(a)})+z)/(1+({_cfmt(np.conjugate(a))})*z)"
    return ExprFunction(src, label=label or "phi_a")


def partner_map(f, a, mu, lam, label=None):
    """The equal-pre-Schwarzian partner of f for parameters (a, mu, lam):
    omega_F = mu*(phi_a o omega), H' = lam*h'/sqrt(phi_a' o omega).

    These are exactly the maps sharing P_f (their Jacobians are
    homothetic).  Since phi_a'(w) = (1-|a|^2)/(1+conj(a)w)^2 never
    vanishes on the disk, the square root is branch-safe pointwise.
    """
    if f.sense != PRESERVING:
        raise DomainError("partner_map requires a sense-preserving map")
    a, mu, lam = complex(a), complex(mu), complex(lam)
    if abs(a) >= 1:
        raise ParameterOutOfRange("partner_map requires |a| < 1")
    if abs(abs(mu) - 1.0) > 1e-12:
        raise ParameterOutOfRange("partner_map requires |mu| = 1")
    if lam == 0:
        raise ParameterOutOfRange("partner_map requires lambda != 0")
    ac = np.conjugate(a)
    w = f.omega

    def omega_jet(z, n):
        wj = w.jet(z, n)
        return ((a + wj) / (1.0 + ac * wj)) * mu

    def hp_jet(z, n):
        wj = w.jet(z, n)
        dphi = (1.0 - abs(a) ** 2) / ((1.0 + ac * wj) * (1.0 + ac * wj))
        return f.hp.jet(z, n) * lam / dphi.sqrt()

    return HarmonicMap.from_dilatation(
        DerivedFunction(hp_jet, label="lam*h'/sqrt(phi_a' o omega)"),
        DerivedFunction(omega_jet, label="mu*(phi_a o omega)"),
        h0=0.0, label=label or f"partner({f.label})")


def evaluate(f, z, tol=1e-8, max_depth=12):
    """f(z) = h(z) + conj(g(z)).

    In dilatation form the parts are integrated along [0, z] with
    adaptive Gauss-Legendre to absolute tolerance ``tol``; the segment
    must stay inside the unit disk.
    """
    if np.ndim(z) == 0 and abs(z) >= 1:
        raise DomainError("evaluation point outside the open unit disk", at=z)

    def part_value(part):
        if isinstance(part, AntiderivativeFunction):
            return part.value(z, tol=tol, max_depth=max_depth)
        return part.value(z)

    return part_value(f.h) + np.conjugate(part_value(f.g))


def best_harmonic_mobius(f, z0):
    """Best harmonic Moebius approximation M = T + alpha*conj(T) of f at z0.

    Matches value, both first Wirtinger derivatives, and the second
    z-derivative of f(z0 + t) at t = 0: alpha = conj(omega(z0)), T(0) =
    (f(z0) - alpha*conj(f(z0)))/(1 - |alpha|^2), T'(0) = h'(z0), T''(0)
    = h''(z0), realized as T(t) = a0 + a1 t/(1 - (a2/a1) t).
    """
    f = f.preserving()
    hpj = f.hp.jet(z0, 1)
    wj = f.omega.jet(z0, 0)
    hp = complex(hpj.value)
    hpp = complex(hpj.coeffs[1])  # h'' (first coefficient of the h' jet)
    if hp == 0:
        raise DegenerateJet("best harmonic Moebius needs h'(z0) != 0")
    if abs(complex(wj.value)) >= 1:
        raise DomainError("map not sense-preserving", at=z0)
    alpha = complex(np.conjugate(wj.value))
    v = complex(f.value(z0))
    a0 = (v - alpha * np.conjugate(v)) / (1.0 - abs(alpha) ** 2)
    kappa = hpp / (2.0 * hp)
    T = MobiusMap(hp - a0 * kappa, a0, -kappa, 1.0)
    return HarmonicMobius(T, alpha)


# ---------------------------------------------------------------------------
# JSON interchange


def map_to_json(f):
    """Serializable dict {label, form, h, g|omega, sense}.

    Parts form carries expression text for h and g.  Dilatation form
    carries expression text for h' in the ``h`` field (h itself has no
    closed form for a general shear) plus omega; the loader rebuilds the
    map with h(0) = g(0) = 0.
    """
    if f.sources is None:
        raise ValueError("map has no serializable expression sources")
    src = dict(f.sources)
    out = {"label": f.label, "form": f.form, "h": src["h"]}
    if f.form == "parts":
        out["g"] = src["g"]
    else:
        out["omega"] = src["omega"]
    out["sense"] = f.sense
    return out


def map_from_json(d):
    form = d.get("form")
    sense = d.get("sense", PRESERVING)
    label = d.get("label", "")
    if form == "parts":
        return HarmonicMap.from_parts(
            ExprFunction(d["h"]), ExprFunction(d["g"]),
            sense=sense, label=label,
            sources=(("h", d["h"]), ("g", d["g"])))
    if form == "dilatation":
        return HarmonicMap.from_dilatation(
            ExprFunction(d["h"]), ExprFunction(d["omega"]),
            h0=0.0, sense=sense, label=label,
            sources=(("h", d["h"]), ("omega", d["omega"])))
    raise ValueError(f"unknown map form {form!r}")
