"""Exception types shared across the package.

Every error raised on a bad input or a failed runtime check is a subclass
of FqtError, so callers (and the CLI) can distinguish usage errors from
genuine internal failures.
"""


class FqtError(Exception):
    """Base class for all package-specific errors."""


class NonPrime(FqtError):
    """The characteristic passed to build_field is not a prime number."""


class ReducibleModulus(FqtError):
    """A field modulus is not irreducible (or not monic of the right degree)."""


class EvenCharacteristic(FqtError):
    """An operation requiring odd q was invoked over a field of even order."""


class ResourceLimit(FqtError):
    """An enumeration or table build would exceed the configured cap."""


class NotCoprime(FqtError):
    """The progression parameters a, m are not coprime."""


class RHViolation(FqtError):
    """An inverse root of an L-polynomial does not have absolute value sqrt(q)."""


class NegativeCount(FqtError):
    """A purported L-polynomial yields a negative prime count."""


class TruncationMismatch(FqtError):
    """Binary series operation on series of different truncation orders."""


class BadConstantTerm(FqtError):
    """Series exp/log/power applied to a series with the wrong constant term."""


class NotInvertible(FqtError):
    """A psi sequence does not come from integral generator counts."""


class HypothesisViolation(FqtError):
    """Estimator hypotheses (r <= 1/sqrt(2), c1 in (0,1), coefficient bound) fail."""


class ExpansionOrderTooLarge(FqtError):
    """Expansion order m must be smaller than the target index n."""


class IntegerC1(FqtError):
    """The binomial identity requires a non-integer exponent c1."""
