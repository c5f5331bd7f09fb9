"""Exception hierarchy shared by every hfq module.

All domain errors derive from HfqError so the CLI can map any of them to
exit code 2 (usage / parameter problems) uniformly.
"""


class HfqError(Exception):
    """Base class for all hfq domain errors."""


class NotPrime(HfqError):
    """A modulus that must be prime is not."""


class SizeBudgetExceeded(HfqError):
    """A field / table / ring would exceed the configured size budget."""


class BadDivisor(HfqError):
    """n does not divide the multiplicative group order."""


class BadOrder(HfqError):
    """Requested character order does not divide q - 1."""


class OrderCollapse(HfqError):
    """A norm-composed character came out with order smaller than required."""


class OrderMismatch(HfqError):
    """Cyclotomic operands live in incompatible rings (no divisor embedding)."""


class InexactDivision(HfqError):
    """Exact division in Z[zeta_n] (or of polynomials over it) left a remainder."""


class BadAutomorphism(HfqError):
    """galois_apply called with an exponent not coprime to the order."""


class PreconditionViolated(HfqError):
    """An operation's mathematical precondition does not hold."""


class NotSquarefree(HfqError):
    """A hyperelliptic model polynomial has a repeated factor."""


class Singular(HfqError):
    """An elliptic curve has vanishing discriminant."""


class NotOnCurve(HfqError):
    """A point handed to the isogeny is not on the source curve."""


class InexactNewtonDivision(HfqError):
    """Newton's identities required a non-integer division: counts inconsistent."""


class WeilViolation(HfqError):
    """Power sums exceed the Weil bound slack: counts cannot come from a curve."""


class NonIntegralSum(HfqError):
    """A character-sum total failed to reduce to a rational integer."""


class OutOfRange(HfqError):
    """An index or parameter is outside its documented range."""
