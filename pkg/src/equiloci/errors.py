"""Exception and warning classes raised across the package."""


class EquilociError(Exception):
    """Base class for all domain errors."""


class ValidationError(EquilociError):
    """Input is malformed (wrong shape, wrong type, bad scene file)."""


class ToleranceFailure(EquilociError):
    """An internal verification step missed its tolerance."""


class NonNegativePoint(EquilociError):
    pass


class CoincidentPoints(EquilociError):
    pass


class IsotropicInput(EquilociError):
    pass


class NotSelfAdjoint(ValidationError):
    pass


class NotTraceless(ValidationError):
    pass


class NotRankTwo(EquilociError):
    pass


class NotParabolic(EquilociError):
    pass


class DegenerateSpan(EquilociError):
    pass


class FocusInput(EquilociError):
    pass


class NotOnBisector(EquilociError):
    pass


class OnComplexSpine(EquilociError):
    pass


class OnRealSpine(EquilociError):
    pass


class NotOnComplexSpine(EquilociError):
    pass


class DependentBasis(EquilociError):
    pass


class NotOnAllBisectors(EquilociError):
    pass


class ConfocalFamily(EquilociError):
    pass


class NotALinearFamily(EquilociError):
    pass


class EmptyBaseRegion(EquilociError):
    pass


class IsLinearFamily(EquilociError):
    pass


class SpanIsLinearFamily(IsLinearFamily):
    pass


class CollinearTriple(EquilociError):
    pass


class MixedSignature(EquilociError):
    pass


class NonGenericFamily(EquilociError):
    pass


class InsufficientSamples(EquilociError):
    pass


class UnexpectedDimension(EquilociError):
    pass


class NotAZeroDivisor(EquilociError):
    pass


class RankDeficient(EquilociError):
    pass


class IllConditionedWarning(UserWarning):
    """A numerical routine could not reach its residual target."""
