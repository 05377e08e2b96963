"""Exception hierarchy shared by every layer of the package."""


class SerreTypeError(Exception):
    """Base class for all errors raised by this package."""


# linear algebra
class FieldMismatch(SerreTypeError):
    pass


class DimensionMismatch(SerreTypeError):
    pass


# algebras
class InfiniteDimensional(SerreTypeError):
    pass


class MalformedRelation(SerreTypeError):
    pass


class BimoduleAlgebraMismatch(SerreTypeError):
    pass


class NotIdempotent(SerreTypeError):
    pass


class NotDistinguishedSum(SerreTypeError):
    pass


class NotTwoSidedIdeal(SerreTypeError):
    pass


class DegenerateQuotient(SerreTypeError):
    pass


class SearchBudgetExceeded(SerreTypeError):
    pass


class InvalidStructure(SerreTypeError):
    """Structure constants, actions or idempotents fail their axioms."""


# modules and functors
class AlgebraMismatch(SerreTypeError):
    pass


class RadicalUnavailable(SerreTypeError):
    pass


class SearchExhausted(SerreTypeError):
    pass


class CertificationFailed(SerreTypeError):
    pass


class InconclusiveSearch(SerreTypeError):
    pass


# torsion theory and recollements
class NotATorsionPair(SerreTypeError):
    pass


class HypothesisViolated(SerreTypeError):
    pass


class SplitLiftFailed(SerreTypeError):
    pass


class NotGiraud(SerreTypeError):
    pass


class ExtensionFailed(SerreTypeError):
    pass


class InternalInconsistency(SerreTypeError):
    pass


# classification and command line
class SplitExpectedButFailed(SerreTypeError):
    pass


class ParseError(SerreTypeError):
    def __init__(self, line: int, col: int, expected: str):
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"line {line}, column {col}: expected {expected}")
