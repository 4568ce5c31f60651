class WalkError(Exception):
    """Base class for every failure raised by the walk toolkit"""


# Exact algebra

class ZeroDenominator(WalkError):
    """A rational function was built with a zero denominator"""


class IdenticallyZeroDenominator(WalkError):
    """A substitution made the denominator vanish identically"""


class ReducibleKernel(WalkError):
    """The kernel splits over the fraction field in (x, z)"""


class ZeroDenominatorOnCurve(WalkError):
    """The denominator vanishes on the kernel curve"""


class PoleAtPoint(WalkError):
    """The denominator vanishes at the evaluation point"""


class DegenerateKernel(WalkError):
    """The kernel is not quadratic in the view variable"""


# Walk model and group

class EmptyStepSet(WalkError):
    """An operation needs at least one step"""


class ParseError(WalkError, ValueError):
    """A step set or command argument could not be parsed"""


class UndefinedGenerator(WalkError):
    """xi or eta is undefined because a boundary sum vanishes"""


class InfiniteGroup(WalkError):
    """The operation needs a finite group but the order exceeded the bound"""


class ConventionError(WalkError):
    """An internal convention guard failed"""


# Series

class TruncationTooShallow(WalkError):
    """The counting box is too small for the requested degree"""


class InsufficientTerms(WalkError):
    """Not enough series terms for the requested guessing bounds"""


# Elliptic layer

class ComplexBranchPoints(WalkError):
    """The discriminant has non-real roots"""


class PoleAtLatticePoint(WalkError):
    """A Weierstrass function was evaluated at a lattice point"""


class PoleOfUniformization(WalkError):
    """The uniformization hits a pole of x(omega)"""


class TranslationNotFound(WalkError):
    """No real translation reproduces the delta map on the covering"""


class RationalityViolated(WalkError):
    """n * omega3 is not an integer multiple of omega2 with a coprime multiplier"""


class SampleAtSingularity(WalkError):
    """A derivative sample sits on a branch point or pole"""


class ToleranceFailure(WalkError):
    """A numeric self-check exceeded its tolerance"""
