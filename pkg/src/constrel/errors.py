class ConstrelError(Exception):
    """Base class for all domain errors raised by this package."""


class PrecisionError(ConstrelError):
    """Not enough certified precision to perform or certify an operation."""


class EvaluationError(ConstrelError):
    """A continued fraction could not be evaluated (e.g. degenerate convergent)."""


class DivergentError(EvaluationError):
    """The requested evaluation targets a fraction classified as non-convergent."""


class CanonicalizationError(ConstrelError):
    """No admissible shift/equivalence transformation exists within the search bound."""


class TrivialInputError(ConstrelError):
    """Inputs to a relation search are degenerate (zero or duplicate values)."""


class StoreError(ConstrelError):
    """Hypergraph store integrity violation (dangling reference, payload clash)."""
