"""Exception types shared across the package."""


class HypothesisViolation(ValueError):
    """Inputs fall outside the hypotheses of the requested construction."""


class SymbolSpecError(ValueError):
    """A symbol specification (JSON or dict) could not be parsed."""


class VerificationFailure(Exception):
    """A containment or cross-check did not hold within tolerance."""


class SeriesDivergence(ArithmeticError):
    """A coefficient series kept growing; the pairing scale is not usable."""


class SearchExhausted(RuntimeError):
    """An orbit search hit its exponent budget without succeeding."""


class EigensolverError(RuntimeError):
    """The iterative eigensolver failed to reach its threshold."""
