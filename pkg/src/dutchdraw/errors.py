"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class DutchDrawError(Exception):
    """Base class for all library-specific errors."""


class LengthMismatch(DutchDrawError):
    """Paired label/prediction vectors differ in length."""


class NonBinaryValue(DutchDrawError):
    """A label or prediction entry is not 0 or 1."""


class UndefinedMeasure(DutchDrawError):
    """A measure's domain requirements are violated (division by zero).

    Carries the list of violated requirements, e.g. ["P>0", "Phat>0"].
    """

    def __init__(self, measure: str, violations: list[str]):
        self.measure = str(measure)
        self.violations = list(violations)
        super().__init__(f"{self.measure} undefined: needs {', '.join(self.violations)}")


class PtDenominatorZero(DutchDrawError):
    """Prevalence-threshold degenerate case: TPR equals FPR, so the
    defining fraction is 0/0."""


class NonlinearMeasure(DutchDrawError):
    """Operation needs a slope/intercept representation, but the measure is
    not linear in the true-positive count."""


class UnsupportedMeasure(DutchDrawError):
    """Measure is excluded from Dutch Draw expectations and baselines (PT)."""


class ThetaOutOfRange(DutchDrawError):
    """theta must lie in [0, 1]."""


class ShapeMismatch(DutchDrawError):
    """Vector length or positive count disagrees with the problem shape."""


class TooLarge(DutchDrawError):
    """Requested brute-force enumeration exceeds the supported size."""


class DegenerateScale(DutchDrawError):
    """Rescaling hit a zero-width branch (delta_max == delta_min, or the
    codomain top coincides with delta_max)."""
