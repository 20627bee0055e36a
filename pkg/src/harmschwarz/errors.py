"""Exception hierarchy shared by all harmschwarz modules.

Every failure mode has its own class so callers (and the CLI exit-code
mapping) can discriminate without string matching.  Errors that refer to
a point in the plane carry it in ``at``; parser errors carry a byte
``offset`` into the source text.
"""


class ToolkitError(Exception):
    """Base class for all harmschwarz errors."""


# ---------------------------------------------------------------------------
# jet arithmetic


class CenterMismatch(ToolkitError):
    """Binary jet operation on jets with different centers or orders."""


class DivisionByZeroConstantTerm(ToolkitError):
    """Jet division where the divisor's constant term vanishes."""


class BranchPointAtCenter(ToolkitError):
    """sqrt/log/pow of a jet whose constant term is exactly 0."""


class NonFinite(ToolkitError):
    """A NaN or infinity appeared where a finite value is required."""


class IllConditioned(ToolkitError):
    """Radial least-squares solve exceeded the condition threshold."""


# ---------------------------------------------------------------------------
# expression parsing


class ExprSyntaxError(ToolkitError):
    """Malformed expression text.  ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class UnknownIdentifier(ToolkitError):
    """Identifier other than log/exp/sqrt in an expression."""

    def __init__(self, name, offset):
        super().__init__(f"unknown identifier {name!r} (offset {offset})")
        self.name = name
        self.offset = offset


# ---------------------------------------------------------------------------
# harmonic maps and operators


class UnknownCatalogName(ToolkitError):
    """Catalog lookup with an unrecognized map name."""


class ShearSingularity(ToolkitError):
    """1 - e^{2i theta} * omega vanished at an evaluation point."""


class DomainError(ToolkitError):
    """Map is not sense-preserving / evaluable at the given point."""

    def __init__(self, message, at=None):
        super().__init__(message if at is None else f"{message} at {at}")
        self.at = at


class ParameterOutOfRange(ToolkitError):
    """Group/affine parameter violates its constraint."""


class DegenerateJet(ToolkitError):
    """Best-Moebius construction with h'(z0) = 0."""


class CriticalPoint(ToolkitError):
    """Classical operator at a point where the derivative vanishes."""


class DilatationZeroNeedsQ(ToolkitError):
    """CDO Schwarzian at a zero of omega without an explicit square root."""


class QMismatch(ToolkitError):
    """Supplied q does not satisfy q^2 = omega at the evaluation point."""


class StencilOutsideDomain(ToolkitError):
    """Finite-difference stencil would leave the map's domain."""


class QuadratureFailure(ToolkitError):
    """Adaptive integration failed to reach tolerance at max depth."""
