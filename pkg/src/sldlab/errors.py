"""Exception types raised by the library.

Everything derives from SldLabError so callers can catch the whole family;
most classes also subclass ValueError because they signal bad arguments.
"""


class SldLabError(Exception):
    """Base class for all library errors."""


class DomainError(SldLabError, ValueError):
    """An argument is outside an operation's documented domain."""


# signal / polynomial plumbing

class DegreeTooLarge(DomainError):
    """Polynomial degree exceeds the 2m bound of the requested harmonic order."""


class ZeroInput(DomainError):
    """An all-zero sequence where a nonzero one is required."""


class ZeroSignal(DomainError):
    """An all-zero signal where a nonzero one is required."""


class ZeroPolynomial(DomainError):
    """The zero polynomial where a nonzero one is required."""


class PeriodMismatch(DomainError):
    """Two signals with different periods cannot be compared."""


# root finding

class NoConvergence(SldLabError):
    """The root iteration exhausted its budget; carries the final residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ZeroArgument(DomainError):
    """Zero passed where the reciprocal conjugate (or an argument angle) is needed."""


class AsymmetricSpectrum(DomainError):
    """Root multiset is not closed under reflection across the unit circle."""


# Blaschke products

class PoleEvaluation(DomainError):
    """Evaluation point coincides with a Blaschke factor's pole."""


class ConditionViolated(DomainError):
    """The per-orbit multiplicity condition for a constant magnitude ratio fails."""


# equivalence

class NotEquivalent(DomainError):
    """Operation requires a pair already verified magnitude-equivalent."""


class DegenerateSampling(DomainError):
    """Too many circle samples fell on near-zeros of the denominator."""


# ambiguity enumeration

class InvalidSpec(DomainError):
    """A flip specification does not match the polynomial's root structure."""


class CombinatorialBlowup(SldLabError):
    """Enumeration would exceed the configured candidate cap."""


class NotAnAutocorrelation(DomainError):
    """Sequence fails the structural test for being a square-law measurement."""


class NegativeIntensity(DomainError):
    """Synthesized intensity dips below zero beyond tolerance."""


# capacity experiments

class OutOfRange(DomainError):
    """Angle outside the quantizer's [-pi, pi) domain."""


class DuplicateSignals(DomainError):
    """Constellation contains two signals that are equal almost everywhere."""


class InvalidNoiseSpec(DomainError):
    """Discrete noise description is inconsistent (rows must sum to one, etc.)."""


class UnsupportedOrder(DomainError):
    """Harmonic order outside the experiment's supported range (m >= 1)."""


class NonInvertibleOnRange(DomainError):
    """Measurement map is not strictly monotone / invertible on the sample range."""


class ZeroDC(DomainError):
    """DC coefficient is zero, so the grid rotation angle is undefined."""


# CLI / serialization

class ParseError(SldLabError):
    """Input file is not valid JSON."""


class SchemaMismatch(SldLabError):
    """JSON parsed but does not match the declared schema."""
