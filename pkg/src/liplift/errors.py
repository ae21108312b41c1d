"""Exception types raised across the package.

Every error carries a human-readable message with the offending indices or
values, so verification failures are never silent.
"""


class LipliftError(Exception):
    """Base class for all errors raised by liplift."""


# --- distance matrix validation ---

class AsymmetricMatrix(LipliftError):
    """dist[i][j] != dist[j][i] for some pair."""


class NegativeDistance(LipliftError):
    """A distance entry is negative."""


class ZeroOffDiagonal(LipliftError):
    """Two distinct points at distance zero (duplicate points are rejected)."""


class TriangleViolation(LipliftError):
    """Triangle inequality fails beyond tolerance; message reports the worst triple."""

    def __init__(self, msg, triple=None, excess=None):
        super().__init__(msg)
        self.triple = triple
        self.excess = excess


class EmptySubspace(LipliftError):
    """A subspace must contain at least one point."""


# --- lift calculus ---

class DLessThanOne(LipliftError):
    """Doubling constants are >= 1 by definition."""


class NoAdmissibleRadius(LipliftError):
    """No radius satisfies the dilation constraint R > 4*dist(center, subspace)."""


class PreconditionViolated(LipliftError):
    """A lemma's hypothesis does not hold for the supplied arguments."""


# --- extension operator ---

class EmptyBall(LipliftError):
    """No subspace point lies within the requested averaging radius."""


class NotScalar(LipliftError):
    """Operation requires a scalar (k=1) field."""


class DegenerateSubspace(LipliftError):
    """Operation requires a subspace with at least two points."""


# --- instance I/O and generation ---

class SchemaError(LipliftError):
    """Instance or field file does not match the expected document schema."""


class MetricError(LipliftError):
    """Instance file's distance data fails metric validation (wraps the cause)."""


class MeasureError(LipliftError):
    """Measure is missing, misaligned, or not strictly positive."""


class ParamOutOfRange(LipliftError):
    """Generator parameters outside their documented ranges."""


class IoError(LipliftError):
    """Report or instance file could not be written."""
